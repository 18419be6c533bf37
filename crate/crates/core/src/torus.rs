//! Mapping-torus groups `F3 x|_phi Z` and their first homology.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::fgroup::{induced, letter_automorphism, FreeWord, RANK};
use crate::mcg::MonodromyWord;
use crate::snf::AbelianInvariants;

/// Letter code of generator `g` (`2g`) or its inverse (`2g + 1`).
pub type GenLetter = u32;

/// A finite presentation. Relators are freely reduced words in letter codes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupPresentation {
    generators: Vec<String>,
    relators: Vec<Vec<GenLetter>>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relators: Vec<Vec<GenLetter>>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::Invalid("a presentation needs at least one generator".into()));
        }
        let n = generators.len() as GenLetter;
        if let Some(&bad) = relators.iter().flatten().find(|&&l| l >= 2 * n) {
            return Err(Error::Invalid(format!("letter code {bad} refers to a missing generator")));
        }
        let relators = relators.into_iter().map(|r| free_reduce(&r)).filter(|r| !r.is_empty()).collect();
        Ok(GroupPresentation { generators, relators })
    }

    /// The free group of rank 3 on `x1, x2, x3`.
    pub fn free_rank3() -> Self {
        GroupPresentation { generators: fiber_names(), relators: Vec::new() }
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Vec<GenLetter>] {
        &self.relators
    }

    /// Relation matrix of the abelianization, one row per relator.
    pub fn relation_matrix(&self) -> Vec<Vec<BigInt>> {
        self.relators
            .iter()
            .map(|r| {
                let mut row = vec![0i64; self.rank()];
                for &l in r {
                    row[(l / 2) as usize] += if l % 2 == 0 { 1 } else { -1 };
                }
                row.into_iter().map(BigInt::from).collect()
            })
            .collect()
    }

    pub fn homology(&self) -> AbelianInvariants {
        AbelianInvariants::from_relations(&self.relation_matrix(), self.rank())
    }
}

fn fiber_names() -> Vec<String> {
    (1..=RANK).map(|i| format!("x{i}")).collect()
}

fn free_reduce(w: &[GenLetter]) -> Vec<GenLetter> {
    let mut out: Vec<GenLetter> = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&(l ^ 1)) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    // cyclic reduction does not change the normal closure
    let (mut lo, mut hi) = (0, out.len());
    while hi - lo >= 2 && out[lo] == out[hi - 1] ^ 1 {
        lo += 1;
        hi -= 1;
    }
    out[lo..hi].to_vec()
}

impl fmt::Display for GroupPresentation {
    /// `< x1, x2, x3, t | t x1 t^-1 x2^-1, ... >` with runs written as powers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {} |", self.generators.join(", "))?;
        for (i, r) in self.relators.iter().enumerate() {
            f.write_str(if i == 0 { " " } else { ", " })?;
            let mut first = true;
            let mut j = 0;
            while j < r.len() {
                let mut k = j;
                while k < r.len() && r[k] == r[j] {
                    k += 1;
                }
                let exp = (k - j) as i64 * if r[j] % 2 == 0 { 1 } else { -1 };
                if !first {
                    f.write_str(" ")?;
                }
                first = false;
                let name = &self.generators[(r[j] / 2) as usize];
                if exp == 1 {
                    f.write_str(name)?;
                } else {
                    write!(f, "{name}^{exp}")?;
                }
                j = k;
            }
        }
        f.write_str(" >")
    }
}

/// Index of the stable letter in a mapping-torus presentation.
pub const STABLE_LETTER: usize = RANK;

/// `< x1, x2, x3, t | t xi t^-1 phi(xi)^-1 >` with `phi` induced by `w`.
pub fn presentation(w: &MonodromyWord) -> GroupPresentation {
    let phi = induced(w);
    let t = (2 * STABLE_LETTER) as GenLetter;
    let relators = (0..RANK)
        .map(|i| {
            let mut r = vec![t, (2 * i) as GenLetter, t + 1];
            r.extend(phi.images()[i].inverse().letters().iter().map(|&l| l as GenLetter));
            r
        })
        .collect();
    let mut generators = fiber_names();
    generators.push("t".into());
    GroupPresentation::new(generators, relators).expect("mapping-torus presentation is well formed")
}

/// Action of the monodromy on `H1(F3) = Z^3`, multiplied letter by letter so
/// the (exponentially long) induced words are never built.
pub fn fiber_action(w: &MonodromyWord) -> [[i64; RANK]; RANK] {
    let mut m = [[0; RANK]; RANK];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    for &l in w.letters() {
        let a = letter_automorphism(l).abelianization();
        m = std::array::from_fn(|i| std::array::from_fn(|j| (0..RANK).map(|k| m[i][k] * a[k][j]).sum()));
    }
    m
}

/// First homology of the mapping torus: the abelianized relators
/// `x_i - phi(x_i)` with the `t` column zero, so `Z + coker(A - I)`.
pub fn homology(w: &MonodromyWord) -> AbelianInvariants {
    let a = fiber_action(w);
    let rows: Vec<Vec<BigInt>> = (0..RANK)
        .map(|i| {
            let mut row: Vec<BigInt> = (0..RANK).map(|j| BigInt::from(i64::from(i == j) - a[j][i])).collect();
            row.push(BigInt::from(0));
            row
        })
        .collect();
    AbelianInvariants::from_relations(&rows, RANK + 1)
}

/// Thurston norm of the fibered class: `-chi` of the four-punctured sphere.
pub fn fibered_norm() -> u32 {
    let euler: i32 = 2 - 4;
    (-euler) as u32
}

/// Word in a presentation's letter codes for a fiber element.
pub fn fiber_letters(w: &FreeWord) -> Vec<GenLetter> {
    w.letters().iter().map(|&l| l as GenLetter).collect()
}
