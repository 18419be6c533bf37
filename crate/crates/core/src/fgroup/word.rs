use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::pslz::least_rotation;

/// Letter codes: `2*g` is generator `g`, `2*g + 1` its inverse, so the
/// inverse of a letter is `code ^ 1` and the lexicographic order on codes is
/// `x < X < y < Y < z < Z`.
pub type Letter = u8;

pub const RANK: usize = 3;
const SYMBOLS: [char; 6] = ['x', 'X', 'y', 'Y', 'z', 'Z'];

#[inline]
pub fn inverse_letter(l: Letter) -> Letter {
    l ^ 1
}

#[inline]
pub fn generator_of(l: Letter) -> usize {
    (l >> 1) as usize
}

/// A freely reduced word in `F3 = <x, y, z>`, the fundamental group of the
/// four-punctured sphere with `x4 = (xyz)^-1` eliminated.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeWord(Vec<Letter>);

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord(Vec::new())
    }

    pub fn generator(g: usize) -> Self {
        assert!(g < RANK);
        FreeWord(vec![(2 * g) as Letter])
    }

    /// The peripheral element `x4 = (x y z)^-1 = Z Y X`.
    pub fn fourth_puncture() -> Self {
        FreeWord(vec![5, 3, 1])
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out = Vec::new();
        for l in letters {
            assert!(l < 6, "letter code out of range");
            push_reduced(&mut out, l);
        }
        FreeWord(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(|&l| inverse_letter(l)).collect())
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let mut out = self.0.clone();
        for &l in &other.0 {
            push_reduced(&mut out, l);
        }
        FreeWord(out)
    }

    pub fn pow(&self, n: i64) -> FreeWord {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        (0..n.unsigned_abs()).fold(FreeWord::identity(), |acc, _| acc.mul(&base))
    }

    /// `k * self * k^-1`.
    pub fn conjugate_by(&self, k: &FreeWord) -> FreeWord {
        k.mul(self).mul(&k.inverse())
    }

    /// Splits `self = c * core * c^-1` with `core` cyclically reduced.
    pub fn cyclic_reduce(&self) -> (FreeWord, FreeWord) {
        let (lo, hi) = cyclic_bounds(&self.0);
        (FreeWord(self.0[..lo].to_vec()), FreeWord(self.0[lo..hi].to_vec()))
    }

    pub fn cyclic_core(&self) -> &[Letter] {
        let (lo, hi) = cyclic_bounds(&self.0);
        &self.0[lo..hi]
    }

    /// Least rotation of the cyclic reduction: a complete conjugacy invariant.
    pub fn conjugacy_key(&self) -> FreeWord {
        FreeWord(least_rotation(self.cyclic_core()))
    }

    pub fn is_conjugate(&self, other: &FreeWord) -> bool {
        let a = self.cyclic_core();
        let b = other.cyclic_core();
        a.len() == b.len() && is_rotation(a, b)
    }

    /// Exponent sums, i.e. the image in `H1(F3) = Z^3`.
    pub fn abelianize(&self) -> [i64; RANK] {
        let mut v = [0; RANK];
        for &l in &self.0 {
            v[generator_of(l)] += if l & 1 == 0 { 1 } else { -1 };
        }
        v
    }
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last() == Some(&inverse_letter(l)) {
        out.pop();
    } else {
        out.push(l);
    }
}

fn cyclic_bounds(w: &[Letter]) -> (usize, usize) {
    let (mut lo, mut hi) = (0, w.len());
    while hi - lo >= 2 && w[lo] == inverse_letter(w[hi - 1]) {
        lo += 1;
        hi -= 1;
    }
    (lo, hi)
}

pub(crate) fn is_rotation(a: &[Letter], b: &[Letter]) -> bool {
    let n = a.len();
    n == b.len() && (n == 0 || (0..n).any(|i| a[i..].iter().chain(&a[..i]).eq(b.iter())))
}

/// Smallest period of a cyclic word; the word is a proper power iff this is
/// less than its length.
pub(crate) fn cyclic_period(w: &[Letter]) -> usize {
    let n = w.len();
    (1..=n).filter(|d| n.is_multiple_of(*d)).find(|&d| (0..n).all(|i| w[i] == w[(i + d) % n])).unwrap_or(n)
}

/// Whether a cyclically reduced word equals its least rotation.
pub(crate) fn is_least_rotation(w: &[Letter]) -> bool {
    let n = w.len();
    (1..n).all(|i| w[i..].iter().chain(&w[..i]).cmp(w.iter()) != std::cmp::Ordering::Less)
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for &l in &self.0 {
            write!(f, "{}", SYMBOLS[l as usize])?;
        }
        Ok(())
    }
}

impl FromStr for FreeWord {
    type Err = Error;

    /// Letters `x y z`, capitals for inverses, `1` for the identity.
    fn from_str(text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for (pos, ch) in text.char_indices() {
            if ch.is_whitespace() || ch == '1' {
                continue;
            }
            let code = SYMBOLS
                .iter()
                .position(|&c| c == ch)
                .ok_or_else(|| Error::parse(pos, format!("unexpected character {ch:?} in free word")))?;
            letters.push(code as Letter);
        }
        Ok(FreeWord::from_letters(letters))
    }
}
