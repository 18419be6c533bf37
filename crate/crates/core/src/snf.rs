//! Smith normal form over arbitrary-precision integers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Invariant factors of an integer matrix: the nonzero diagonal entries of
/// its Smith normal form, positive and in divisibility order.
///
/// Pivots are chosen by least absolute value so that entries shrink at every
/// elimination step.
pub fn invariant_factors(rows: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    assert!(m.iter().all(|r| r.len() == ncols), "ragged matrix");
    let mut diag = Vec::new();
    for k in 0..nrows.min(ncols) {
        loop {
            let Some((pi, pj)) = smallest_entry(&m, k) else {
                return finish(diag);
            };
            m.swap(k, pi);
            for row in m.iter_mut() {
                row.swap(k, pj);
            }
            let mut clean = true;
            for i in k + 1..nrows {
                let q = m[i][k].div_floor(&m[k][k]);
                if !q.is_zero() {
                    for j in k..ncols {
                        let t = &q * &m[k][j];
                        m[i][j] -= t;
                    }
                }
                clean &= m[i][k].is_zero();
            }
            for j in k + 1..ncols {
                let q = m[k][j].div_floor(&m[k][k]);
                if !q.is_zero() {
                    for i in k..nrows {
                        let t = &q * &m[i][k];
                        m[i][j] -= t;
                    }
                }
                clean &= m[k][j].is_zero();
            }
            if !clean {
                continue;
            }
            // pivot must divide the remaining block
            let bad = (k + 1..nrows)
                .flat_map(|i| (k + 1..ncols).map(move |j| (i, j)))
                .find(|&(i, j)| !m[i][j].is_multiple_of(&m[k][k]));
            match bad {
                Some((i, _)) => {
                    for j in k..ncols {
                        let t = m[i][j].clone();
                        m[k][j] += t;
                    }
                }
                None => {
                    diag.push(m[k][k].abs());
                    break;
                }
            }
        }
    }
    finish(diag)
}

fn smallest_entry(m: &[Vec<BigInt>], k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in m.iter().enumerate().skip(k) {
        for (j, x) in row.iter().enumerate().skip(k) {
            if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < m[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn finish(mut diag: Vec<BigInt>) -> Vec<BigInt> {
    // elimination already yields a divisibility chain; sorting is a no-op safeguard
    diag.sort();
    diag
}

/// A finitely generated abelian group `Z^rank + Z/c1 + ... + Z/ck`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianInvariants {
    pub rank: usize,
    /// Each at least 2, each dividing the next.
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    /// Cokernel of the map `Z^rows -> Z^ncols` given by the relation rows.
    pub fn from_relations(rows: &[Vec<BigInt>], ncols: usize) -> Self {
        let factors = invariant_factors(rows);
        let rank = ncols - factors.len();
        let torsion = factors.into_iter().filter(|c| !c.is_one()).collect();
        AbelianInvariants { rank, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|c| format!("Z/{c}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}
