//! PSL(2,Z) as the free product C2 * C3 = <s> * <r>.
//!
//! Elements are stored as canonical syllable sequences: syllables alternate
//! between the two free factors and none is trivial. Every constructor
//! canonicalizes, so two `PslWord`s are equal exactly when they represent the
//! same group element.
//!
//! The matrix realization is fixed once and for all:
//!
//! ```text
//! s = [[0,-1],[1,0]]      r = [[0,-1],[1,1]]
//! ```
//!
//! so that `s*r` is projectively `[[1,1],[0,1]]`.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// One syllable of a free-product word. The derived order `S < R < R2` is the
/// fixed syllable ordering used for canonical cyclic forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Syllable {
    /// The involution `s`.
    S,
    /// `r`, of order three.
    R,
    /// `r^2 = r^-1`.
    R2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Factor {
    Two,
    Three,
}

impl Syllable {
    fn factor(self) -> Factor {
        match self {
            Syllable::S => Factor::Two,
            _ => Factor::Three,
        }
    }

    pub fn inverse(self) -> Syllable {
        match self {
            Syllable::S => Syllable::S,
            Syllable::R => Syllable::R2,
            Syllable::R2 => Syllable::R,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Syllable::S => 's',
            Syllable::R => 'r',
            Syllable::R2 => 'R',
        }
    }

    /// Product of two syllables from the same factor; `None` is the identity.
    fn merge(self, other: Syllable) -> Option<Syllable> {
        debug_assert_eq!(self.factor(), other.factor());
        match (self, other) {
            (Syllable::S, Syllable::S) => None,
            (Syllable::R, Syllable::R) => Some(Syllable::R2),
            (Syllable::R2, Syllable::R2) => Some(Syllable::R),
            _ => None,
        }
    }
}

/// An element of PSL(2,Z) in free-product normal form.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PslWord {
    syllables: Vec<Syllable>,
}

fn push_reduced(out: &mut Vec<Syllable>, x: Syllable) {
    match out.last() {
        Some(&y) if y.factor() == x.factor() => {
            out.pop();
            if let Some(z) = y.merge(x) {
                out.push(z);
            }
        }
        _ => out.push(x),
    }
}

impl PslWord {
    pub fn identity() -> Self {
        PslWord::default()
    }

    pub fn s() -> Self {
        PslWord { syllables: vec![Syllable::S] }
    }

    pub fn r() -> Self {
        PslWord { syllables: vec![Syllable::R] }
    }

    /// Canonical form of an arbitrary syllable sequence.
    pub fn canonicalize<I: IntoIterator<Item = Syllable>>(syllables: I) -> Self {
        let mut out = Vec::new();
        for x in syllables {
            push_reduced(&mut out, x);
        }
        PslWord { syllables: out }
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    pub fn multiply(&self, other: &PslWord) -> PslWord {
        let mut out = self.syllables.clone();
        for &x in &other.syllables {
            push_reduced(&mut out, x);
        }
        PslWord { syllables: out }
    }

    pub fn inverse(&self) -> PslWord {
        PslWord { syllables: self.syllables.iter().rev().map(|x| x.inverse()).collect() }
    }

    /// `self^n` by repeated squaring; negative exponents invert first.
    pub fn pow(&self, n: i64) -> PslWord {
        let mut base = if n < 0 { self.inverse() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = PslWord::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.multiply(&base);
            }
            base = base.multiply(&base);
            e >>= 1;
        }
        acc
    }

    pub fn conjugate_by(&self, k: &PslWord) -> PslWord {
        k.multiply(self).multiply(&k.inverse())
    }

    /// Splits `self = c * core * c^-1` with `core` cyclically reduced: of
    /// length at most one, or of even length with first and last syllable in
    /// different factors.
    pub fn cyclic_reduce(&self) -> (PslWord, PslWord) {
        let mut core: VecDeque<Syllable> = self.syllables.iter().copied().collect();
        let mut conj = Vec::new();
        while core.len() >= 2 && core[0].factor() == core[core.len() - 1].factor() {
            let x = core.pop_front().unwrap();
            let y = core.pop_back().unwrap();
            conj.push(x);
            if let Some(z) = y.merge(x) {
                core.push_back(z);
            }
        }
        (PslWord::canonicalize(conj), PslWord { syllables: core.into_iter().collect() })
    }

    /// Elements conjugate into a free factor have finite order.
    pub fn is_finite_order(&self) -> bool {
        self.cyclic_reduce().1.len() <= 1
    }

    /// Order of the element, `None` when infinite.
    pub fn order(&self) -> Option<u32> {
        let (_, core) = self.cyclic_reduce();
        match core.syllables.as_slice() {
            [] => Some(1),
            [Syllable::S] => Some(2),
            [_] => Some(3),
            _ => None,
        }
    }

    /// Lexicographically least rotation of the cyclically reduced core. Two
    /// elements are conjugate iff their keys agree.
    pub fn conjugacy_key(&self) -> Vec<Syllable> {
        let (_, core) = self.cyclic_reduce();
        least_rotation(&core.syllables)
    }

    /// A `k` with `k * self * k^-1 == other`, if one exists. Witnesses are
    /// checked by multiplication before being returned.
    pub fn conjugator_to(&self, other: &PslWord) -> Option<PslWord> {
        let (cu, core_u) = self.cyclic_reduce();
        let (cv, core_v) = other.cyclic_reduce();
        let n = core_u.len();
        if n != core_v.len() {
            return None;
        }
        // core_u = p q and core_v = q p = p^-1 core_u p
        let shift = if n <= 1 {
            (core_u == core_v).then_some(0)?
        } else {
            (0..n).find(|&i| {
                core_u.syllables[i..].iter().chain(&core_u.syllables[..i]).eq(core_v.syllables.iter())
            })?
        };
        let p = PslWord { syllables: core_u.syllables[..shift].to_vec() };
        let k = cv.multiply(&p.inverse()).multiply(&cu.inverse());
        if self.conjugate_by(&k) == *other {
            Some(k)
        } else {
            None
        }
    }

    pub fn is_conjugate(&self, other: &PslWord) -> bool {
        self.conjugacy_key() == other.conjugacy_key()
    }

    /// Primitive root of an infinite-order element: `self == root^exponent`
    /// with `exponent >= 1`, and the centralizer of `self` is `<root>`.
    pub fn centralizer_generator(&self) -> Result<Root> {
        let (c, core) = self.cyclic_reduce();
        let n = core.len();
        if n <= 1 {
            return Err(Error::FiniteOrder(self.to_string()));
        }
        let period = (1..=n)
            .filter(|d| n % d == 0)
            .find(|&d| (0..n).all(|i| core.syllables[i] == core.syllables[(i + d) % n]))
            .unwrap_or(n);
        let p = PslWord { syllables: core.syllables[..period].to_vec() };
        let root = p.conjugate_by(&c);
        Ok(Root { root, exponent: (n / period) as u32 })
    }

    pub fn to_matrix(&self) -> IntMatrix2 {
        let s = IntMatrix2::from_i64(0, -1, 1, 0);
        let r = IntMatrix2::from_i64(0, -1, 1, 1);
        let r2 = r.multiply(&r);
        self.syllables.iter().fold(IntMatrix2::identity(), |acc, x| {
            acc.multiply(match x {
                Syllable::S => &s,
                Syllable::R => &r,
                Syllable::R2 => &r2,
            })
        })
    }

    pub fn trace_abs(&self) -> BigInt {
        self.to_matrix().trace_abs()
    }

    /// Reduction of the matrix realization modulo 2. Well defined on the
    /// projective class since `-I = I` mod 2.
    pub fn mod2(&self) -> Mod2Matrix {
        self.syllables.iter().fold(Mod2Matrix::IDENTITY, |acc, x| {
            acc.multiply(&match x {
                Syllable::S => Mod2Matrix::S,
                Syllable::R => Mod2Matrix::R,
                Syllable::R2 => Mod2Matrix::R.multiply(&Mod2Matrix::R),
            })
        })
    }
}

/// Result of [`PslWord::centralizer_generator`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub root: PslWord,
    pub exponent: u32,
}

pub(crate) fn least_rotation<T: Ord + Copy>(w: &[T]) -> Vec<T> {
    let n = w.len();
    (0..n.max(1))
        .map(|i| w[i.min(n)..].iter().chain(&w[..i.min(n)]).copied().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

impl fmt::Display for PslWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        for x in &self.syllables {
            write!(f, "{}", x.letter())?;
        }
        Ok(())
    }
}

impl FromStr for PslWord {
    type Err = Error;

    /// Letters `s`, `r`, `R` (= r^2); whitespace is ignored and `1` denotes
    /// the identity.
    fn from_str(text: &str) -> Result<Self> {
        let mut out = Vec::new();
        for (pos, ch) in text.char_indices() {
            match ch {
                's' => out.push(Syllable::S),
                'r' => out.push(Syllable::R),
                'R' => out.push(Syllable::R2),
                '1' => {}
                c if c.is_whitespace() => {}
                c => return Err(Error::parse(pos, format!("unexpected character {c:?} in PSL word"))),
            }
        }
        Ok(PslWord::canonicalize(out))
    }
}

/// A 2x2 integer matrix of determinant one, up to sign.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix2 {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl IntMatrix2 {
    pub fn identity() -> Self {
        Self::from_i64(1, 0, 0, 1)
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::new(a.into(), b.into(), c.into(), d.into()).expect("determinant one")
    }

    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self> {
        if &a * &d - &b * &c != BigInt::one() {
            return Err(Error::Invalid("matrix determinant is not 1".into()));
        }
        Ok(IntMatrix2 { a, b, c, d }.normalized())
    }

    /// Sign convention: `c > 0`, or `c == 0` and `d > 0`.
    fn normalized(self) -> Self {
        if self.c.is_negative() || (self.c.is_zero() && self.d.is_negative()) {
            IntMatrix2 { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
        } else {
            self
        }
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn multiply(&self, o: &IntMatrix2) -> IntMatrix2 {
        IntMatrix2 {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
        .normalized()
    }

    pub fn trace_abs(&self) -> BigInt {
        (&self.a + &self.d).abs()
    }
}

impl fmt::Display for IntMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

/// An element of GL(2, F2) = SL(2, F2), entries 0/1 in row-major order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mod2Matrix(pub [u8; 4]);

impl Mod2Matrix {
    pub const IDENTITY: Mod2Matrix = Mod2Matrix([1, 0, 0, 1]);
    const S: Mod2Matrix = Mod2Matrix([0, 1, 1, 0]);
    const R: Mod2Matrix = Mod2Matrix([0, 1, 1, 1]);

    pub fn multiply(&self, o: &Mod2Matrix) -> Mod2Matrix {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = o.0;
        Mod2Matrix([(a * e + b * g) & 1, (a * f + b * h) & 1, (c * e + d * g) & 1, (c * f + d * h) & 1])
    }

    /// Row vector times matrix: the right action on (Z/2)^2.
    pub fn act_on_row(&self, v: [u8; 2]) -> [u8; 2] {
        let [a, b, c, d] = self.0;
        [(v[0] * a + v[1] * c) & 1, (v[0] * b + v[1] * d) & 1]
    }
}
