//! The mapping class group of the four-punctured sphere, realized as
//! `PSL(2,Z) ⋉ (Z/2)^2`.
//!
//! Multiplication convention:
//!
//! ```text
//! (p1, w1) * (p2, w2) = (p1 p2, w1·M(p2) + w2)
//! ```
//!
//! where `w·M(p)` is the row vector `w` times the mod-2 reduction of `p`'s
//! matrix (a right action). The `(Z/2)^2` factor is the Klein four-group of
//! pillowcase involutions: `u = (1,0)` swaps punctures (1 4)(2 3) and
//! `v = (0,1)` swaps (1 2)(3 4). The PSL factor is the stabilizer of
//! puncture 4; the half twists about punctures {1,2} and {2,3} map to
//! `[[1,1],[0,1]]` and `[[1,0],[-1,1]]`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::pslz::{Mod2Matrix, PslWord};

/// A vector in `(Z/2)^2`, stored as two bits.
pub type KleinVector = [u8; 2];

fn add(v: KleinVector, w: KleinVector) -> KleinVector {
    [v[0] ^ w[0], v[1] ^ w[1]]
}

const KLEIN: [KleinVector; 4] = [[0, 0], [1, 0], [0, 1], [1, 1]];

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MappingClass {
    psl: PslWord,
    vec: KleinVector,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// A smallest common power found by [`MappingClass::common_conjugate_power`]:
/// `witness * g^power * witness^-1 == h^(±power)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonPower {
    pub power: u32,
    pub sign: Sign,
    pub witness: MappingClass,
}

impl MappingClass {
    pub fn identity() -> Self {
        MappingClass::default()
    }

    pub fn new(psl: PslWord, vec: KleinVector) -> Self {
        MappingClass { psl, vec: [vec[0] & 1, vec[1] & 1] }
    }

    pub fn psl(&self) -> &PslWord {
        &self.psl
    }

    pub fn vector(&self) -> KleinVector {
        self.vec
    }

    pub fn is_identity(&self) -> bool {
        self.psl.is_identity() && self.vec == [0, 0]
    }

    pub fn multiply(&self, o: &MappingClass) -> MappingClass {
        MappingClass { psl: self.psl.multiply(&o.psl), vec: add(o.psl.mod2().act_on_row(self.vec), o.vec) }
    }

    pub fn inverse(&self) -> MappingClass {
        let inv = self.psl.inverse();
        let vec = inv.mod2().act_on_row(self.vec);
        MappingClass { psl: inv, vec }
    }

    pub fn pow(&self, n: i64) -> MappingClass {
        let mut base = if n < 0 { self.inverse() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = MappingClass::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.multiply(&base);
            }
            base = base.multiply(&base);
            e >>= 1;
        }
        acc
    }

    /// `k * self * k^-1`.
    pub fn conjugate_by(&self, k: &MappingClass) -> MappingClass {
        k.multiply(self).multiply(&k.inverse())
    }

    /// Trace criterion: pseudo-Anosov iff the PSL(2,Z) image is hyperbolic.
    pub fn is_pseudo_anosov(&self) -> bool {
        self.psl.trace_abs() > 2u8.into()
    }

    /// Permutation of the punctures 1..4, as a 0-based image array
    /// (`perm[i]` is where puncture `i+1` goes).
    pub fn puncture_permutation(&self) -> [usize; 4] {
        // (p, w) = (1, w·M(p)^-1) * (p, 0)
        let m = self.psl.mod2();
        let inv = self.psl.inverse().mod2();
        let outer = klein_permutation(inv.act_on_row(self.vec));
        let inner = stabilizer_permutation(&m);
        let mut out = [0; 4];
        for i in 0..4 {
            out[i] = outer[inner[i]];
        }
        out
    }

    /// A `ξ` with `ξ * self * ξ^-1 == other`, if any.
    ///
    /// The PSL part is solved in the free product; the solutions form a coset
    /// `k0 * C(p)`. Only the mod-2 residue of the centralizer element and the
    /// Klein component matter for the remaining equation, so finitely many
    /// candidates are tried, each checked by multiplication.
    pub fn conjugator_to(&self, other: &MappingClass) -> Option<MappingClass> {
        let k0 = self.psl.conjugator_to(&other.psl)?;
        for c in centralizer_mod2_representatives(&self.psl) {
            let k = k0.multiply(&c);
            for x in KLEIN {
                let xi = MappingClass::new(k.clone(), x);
                if self.conjugate_by(&xi) == *other {
                    return Some(xi);
                }
            }
        }
        None
    }

    pub fn is_conjugate(&self, other: &MappingClass) -> bool {
        self.conjugator_to(other).is_some()
    }

    /// Tries `other`, then `other^-1`.
    pub fn conjugator_up_to_inversion(&self, other: &MappingClass) -> Option<(Sign, MappingClass)> {
        if let Some(k) = self.conjugator_to(other) {
            return Some((Sign::Plus, k));
        }
        self.conjugator_to(&other.inverse()).map(|k| (Sign::Minus, k))
    }

    /// Smallest `m <= bound` with `self^m` conjugate to `other^(±m)`.
    pub fn common_conjugate_power(&self, other: &MappingClass, bound: u32) -> Result<Option<CommonPower>> {
        for (g, name) in [(self, "first class"), (other, "second class")] {
            if !g.is_pseudo_anosov() {
                return Err(Error::NotPseudoAnosov(format!("{name} {g}")));
            }
        }
        for m in 1..=bound {
            let gm = self.pow(m as i64);
            let hm = other.pow(m as i64);
            if let Some((sign, witness)) = gm.conjugator_up_to_inversion(&hm) {
                return Ok(Some(CommonPower { power: m, sign, witness }));
            }
        }
        Ok(None)
    }
}

/// Puncture permutation of a Klein involution.
fn klein_permutation(v: KleinVector) -> [usize; 4] {
    match v {
        [1, 0] => [3, 2, 1, 0], // (1 4)(2 3)
        [0, 1] => [1, 0, 3, 2], // (1 2)(3 4)
        [1, 1] => [2, 3, 0, 1], // (1 3)(2 4)
        _ => [0, 1, 2, 3],
    }
}

/// Puncture permutation of an element of the puncture-4 stabilizer, read off
/// from its conjugation action on the Klein involutions: the involution
/// swapping punctures i and 4 is sent to the one swapping π(i) and 4.
fn stabilizer_permutation(m: &Mod2Matrix) -> [usize; 4] {
    // involution swapping puncture i+1 with puncture 4
    const NU: [KleinVector; 3] = [[1, 0], [1, 1], [0, 1]];
    let inv = (0..6)
        .map(|k| (0..k).fold(Mod2Matrix::IDENTITY, |acc, _| acc.multiply(m)))
        .find(|p| p.multiply(m) == Mod2Matrix::IDENTITY)
        .expect("GL(2,2) has exponent 6");
    let mut out = [0, 1, 2, 3];
    for i in 0..3 {
        let image = inv.act_on_row(NU[i]);
        out[i] = NU.iter().position(|&nu| nu == image).unwrap();
    }
    out
}

/// Representatives of the centralizer of `p` modulo the level-2 congruence
/// subgroup (enough to realize every mod-2 residue of a centralizer element).
fn centralizer_mod2_representatives(p: &PslWord) -> Vec<PslWord> {
    if p.is_identity() {
        let mut reps: Vec<PslWord> = Vec::new();
        let mut seen = Vec::new();
        for text in ["1", "s", "r", "R", "sr", "rs"] {
            let w: PslWord = text.parse().unwrap();
            if !seen.contains(&w.mod2()) {
                seen.push(w.mod2());
                reps.push(w);
            }
        }
        debug_assert_eq!(reps.len(), 6);
        return reps;
    }
    match p.centralizer_generator() {
        Ok(root) => (0..6).map(|j| root.root.pow(j)).collect(),
        Err(_) => {
            let order = p.order().unwrap() as i64;
            (0..order).map(|j| p.pow(j)).collect()
        }
    }
}

impl fmt::Display for MappingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {}{})", self.psl, self.vec[0], self.vec[1])
    }
}

/// Generators of the monodromy alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    /// `a`: twist about the curve enclosing punctures 1 and 2.
    A,
    /// `A = a^-1`.
    AInv,
    /// `b`: twist about the curve enclosing punctures 2 and 3, with the
    /// handedness that makes `ab` pseudo-Anosov.
    B,
    /// `B = b^-1`.
    BInv,
    /// `u`: the involution (1 4)(2 3).
    U,
    /// `v`: the involution (1 2)(3 4).
    V,
}

impl Letter {
    pub const ALL: [Letter; 6] = [Letter::A, Letter::AInv, Letter::B, Letter::BInv, Letter::U, Letter::V];

    pub fn inverse(self) -> Letter {
        match self {
            Letter::A => Letter::AInv,
            Letter::AInv => Letter::A,
            Letter::B => Letter::BInv,
            Letter::BInv => Letter::B,
            l => l,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::AInv => 'A',
            Letter::B => 'b',
            Letter::BInv => 'B',
            Letter::U => 'u',
            Letter::V => 'v',
        }
    }

    fn from_symbol(c: char) -> Option<Letter> {
        Letter::ALL.into_iter().find(|l| l.symbol() == c)
    }

    pub fn mapping_class(self) -> MappingClass {
        let psl = |t: &str| t.parse::<PslWord>().unwrap();
        match self {
            // [[1,2],[0,1]]
            Letter::A => MappingClass::new(psl("srsr"), [0, 0]),
            Letter::AInv => MappingClass::new(psl("RsRs"), [0, 0]),
            // [[1,0],[2,1]]
            Letter::B => MappingClass::new(psl("sRsR"), [0, 0]),
            Letter::BInv => MappingClass::new(psl("rsrs"), [0, 0]),
            Letter::U => MappingClass::new(PslWord::identity(), [1, 0]),
            Letter::V => MappingClass::new(PslWord::identity(), [0, 1]),
        }
    }
}

/// A word in the monodromy alphabet `a A b B u v`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonodromyWord {
    letters: Vec<Letter>,
}

impl MonodromyWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        MonodromyWord { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> MonodromyWord {
        MonodromyWord { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    pub fn concat(&self, other: &MonodromyWord) -> MonodromyWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        MonodromyWord { letters }
    }

    pub fn pow(&self, n: u32) -> MonodromyWord {
        MonodromyWord { letters: self.letters.repeat(n as usize) }
    }

    pub fn eval(&self) -> MappingClass {
        self.letters.iter().fold(MappingClass::identity(), |acc, l| acc.multiply(&l.mapping_class()))
    }
}

impl fmt::Display for MonodromyWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for MonodromyWord {
    type Err = Error;

    /// Letters `a A b B u v`; whitespace ignored; `x^n` repeats the preceding
    /// letter `n` times, negative `n` repeating its inverse.
    fn from_str(text: &str) -> Result<Self> {
        let chars: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        let mut letters = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let (pos, c) = chars[i];
            let letter = Letter::from_symbol(c)
                .ok_or_else(|| Error::parse(pos, format!("unknown monodromy letter {c:?}")))?;
            i += 1;
            if i < chars.len() && chars[i].1 == '^' {
                let caret = chars[i].0;
                i += 1;
                let start = i;
                if i < chars.len() && chars[i].1 == '-' {
                    i += 1;
                }
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().map(|(_, c)| c).collect();
                let n: i64 = digits
                    .parse()
                    .map_err(|_| Error::parse(caret, format!("bad exponent {digits:?}")))?;
                if n.unsigned_abs() > 1 << 20 {
                    return Err(Error::parse(caret, "exponent too large"));
                }
                let l = if n < 0 { letter.inverse() } else { letter };
                letters.extend(std::iter::repeat_n(l, n.unsigned_abs() as usize));
            } else {
                letters.push(letter);
            }
        }
        Ok(MonodromyWord { letters })
    }
}
