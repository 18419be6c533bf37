use std::fmt;

use super::word::{generator_of, FreeWord, RANK};
use crate::error::{Error, Result};
use crate::mcg::{Letter as MonodromyLetter, MonodromyWord};

/// An automorphism of F3, stored with the images of its inverse so that
/// composition and inversion never need Nielsen reduction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeAutomorphism {
    images: [FreeWord; RANK],
    inverse_images: [FreeWord; RANK],
}

/// Where a peripheral class goes: `puncture` (0-based) and whether the image
/// is the inverse class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PeripheralImage {
    pub puncture: usize,
    pub inverted: bool,
}

pub(crate) fn substitute(images: &[FreeWord; RANK], w: &FreeWord) -> FreeWord {
    let mut out = FreeWord::identity();
    for &l in w.letters() {
        let img = &images[generator_of(l)];
        out = if l & 1 == 0 { out.mul(img) } else { out.mul(&img.inverse()) };
    }
    out
}

/// The four peripheral elements `x1, x2, x3, x4 = (x1 x2 x3)^-1`.
pub fn peripheral_elements() -> [FreeWord; 4] {
    [FreeWord::generator(0), FreeWord::generator(1), FreeWord::generator(2), FreeWord::fourth_puncture()]
}

/// Parses a word over `x y z w` (capitals inverse) where `w` stands for the
/// fourth peripheral generator `(xyz)^-1`.
fn four(text: &str) -> FreeWord {
    let expanded: String = text
        .chars()
        .map(|c| match c {
            'w' => "ZYX".to_string(),
            'W' => "xyz".to_string(),
            c => c.to_string(),
        })
        .collect();
    expanded.parse().expect("well-formed builtin word")
}

impl FreeAutomorphism {
    pub fn identity() -> Self {
        let gens = [FreeWord::generator(0), FreeWord::generator(1), FreeWord::generator(2)];
        FreeAutomorphism { images: gens.clone(), inverse_images: gens }
    }

    /// Checks that the two maps are mutually inverse on generators.
    pub fn new(images: [FreeWord; RANK], inverse_images: [FreeWord; RANK]) -> Result<Self> {
        let a = FreeAutomorphism { images, inverse_images };
        let id = FreeAutomorphism::identity();
        for j in 0..RANK {
            if substitute(&a.images, &a.inverse_images[j]) != id.images[j]
                || substitute(&a.inverse_images, &a.images[j]) != id.images[j]
            {
                return Err(Error::Invalid("supplied maps are not mutually inverse".into()));
            }
        }
        Ok(a)
    }

    fn from_four(images: [&str; 3], inverse_images: [&str; 3]) -> Self {
        FreeAutomorphism {
            images: images.map(four),
            inverse_images: inverse_images.map(four),
        }
    }

    /// Conjugation `w -> g w g^-1`.
    pub fn inner(g: &FreeWord) -> Self {
        let gi = g.inverse();
        let gens = FreeAutomorphism::identity().images;
        FreeAutomorphism {
            images: gens.clone().map(|x| x.conjugate_by(g)),
            inverse_images: gens.map(|x| x.conjugate_by(&gi)),
        }
    }

    /// Artin half twist exchanging punctures `i` and `i+1` (1-based,
    /// `i` in 1..=3): `x_i -> x_i x_{i+1} x_i^-1`, `x_{i+1} -> x_i`.
    pub fn half_twist(i: usize) -> Self {
        match i {
            1 => Self::from_four(["xyX", "x", "z"], ["y", "Yxy", "z"]),
            2 => Self::from_four(["x", "yzY", "y"], ["x", "z", "Zyz"]),
            3 => Self::from_four(["x", "y", "zwZ"], ["x", "y", "w"]),
            _ => panic!("half twist index must be 1, 2 or 3"),
        }
    }

    /// The cyclic shift `x_i -> x_{i+1}` (indices mod 4).
    pub fn rotation() -> Self {
        Self::from_four(["y", "z", "w"], ["w", "x", "y"])
    }

    pub fn images(&self) -> &[FreeWord; RANK] {
        &self.images
    }

    pub fn inverse_images(&self) -> &[FreeWord; RANK] {
        &self.inverse_images
    }

    pub fn apply(&self, w: &FreeWord) -> FreeWord {
        substitute(&self.images, w)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &FreeAutomorphism) -> FreeAutomorphism {
        FreeAutomorphism {
            images: other.images.clone().map(|w| self.apply(&w)),
            inverse_images: self.inverse_images.clone().map(|w| substitute(&other.inverse_images, &w)),
        }
    }

    pub fn invert(&self) -> FreeAutomorphism {
        FreeAutomorphism { images: self.inverse_images.clone(), inverse_images: self.images.clone() }
    }

    pub fn pow(&self, n: i64) -> FreeAutomorphism {
        let base = if n < 0 { self.invert() } else { self.clone() };
        (0..n.unsigned_abs()).fold(FreeAutomorphism::identity(), |acc, _| acc.compose(&base))
    }

    /// Returns `g` with `self(w) = g w g^-1` for all `w`, if `self` is inner.
    ///
    /// `self(x)` must be `c x c^-1`, which pins `g` to `c x^k`; `k` is then
    /// read off `c^-1 self(y) c = x^k y x^-k` and the result checked on `z`.
    pub fn is_inner(&self) -> Option<FreeWord> {
        let x = FreeWord::generator(0);
        let (c, core) = self.images[0].cyclic_reduce();
        if core != x {
            return None;
        }
        let t = c.inverse().mul(&self.images[1]).mul(&c);
        let letters = t.letters();
        let n = letters.len();
        if n % 2 == 0 {
            return None;
        }
        let half = n / 2;
        if letters[half] != 2 {
            return None;
        }
        let k: i64 = match half {
            0 => 0,
            _ if letters[..half].iter().all(|&l| l == 0) => half as i64,
            _ if letters[..half].iter().all(|&l| l == 1) => -(half as i64),
            _ => return None,
        };
        let g = c.mul(&x.pow(k));
        let gens = FreeAutomorphism::identity().images;
        (0..RANK).all(|j| gens[j].conjugate_by(&g) == self.images[j]).then_some(g)
    }

    /// Equality in Out(F3).
    pub fn outer_equal(&self, other: &FreeAutomorphism) -> bool {
        self.compose(&other.invert()).is_inner().is_some()
    }

    /// Action on the four peripheral classes, or `None` if some peripheral
    /// class is not sent to a peripheral class.
    pub fn peripheral_permutation(&self) -> Option<[PeripheralImage; 4]> {
        let per = peripheral_elements();
        let mut out = [PeripheralImage { puncture: 0, inverted: false }; 4];
        for (i, p) in per.iter().enumerate() {
            let img = self.apply(p);
            let inv = img.inverse();
            out[i] = if let Some(j) = per.iter().position(|q| q.is_conjugate(&img)) {
                PeripheralImage { puncture: j, inverted: false }
            } else {
                let j = per.iter().position(|q| q.is_conjugate(&inv))?;
                PeripheralImage { puncture: j, inverted: true }
            };
        }
        Some(out)
    }

    /// Induced map on `H1(F3) = Z^3`; column `j` is the image of `x_j`.
    pub fn abelianization(&self) -> [[i64; RANK]; RANK] {
        let mut m = [[0; RANK]; RANK];
        for j in 0..RANK {
            let v = self.images[j].abelianize();
            for i in 0..RANK {
                m[i][j] = v[i];
            }
        }
        m
    }

    /// Total length of the generator images.
    pub fn size(&self) -> usize {
        self.images.iter().map(FreeWord::len).sum()
    }
}

impl fmt::Display for FreeAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x -> {}, y -> {}, z -> {}", self.images[0], self.images[1], self.images[2])
    }
}

/// The automorphism of F3 induced by a single monodromy letter.
pub fn letter_automorphism(letter: MonodromyLetter) -> FreeAutomorphism {
    let s1 = FreeAutomorphism::half_twist(1);
    let s2 = FreeAutomorphism::half_twist(2);
    let s3 = FreeAutomorphism::half_twist(3);
    // v = s1 s3^-1 swaps the two sides of the curve around {1,2}
    let v = s1.compose(&s3.invert());
    match letter {
        MonodromyLetter::A => s1.compose(&s1),
        MonodromyLetter::AInv => s1.invert().pow(2),
        MonodromyLetter::B => s2.invert().pow(2),
        MonodromyLetter::BInv => s2.compose(&s2),
        MonodromyLetter::V => v,
        MonodromyLetter::U => {
            let rho = FreeAutomorphism::rotation();
            rho.compose(&v).compose(&rho.invert())
        }
    }
}

/// The automorphism induced by a monodromy word: letters compose as maps in
/// reading order, so `induced(w1 w2) = induced(w1) ∘ induced(w2)`.
pub fn induced(word: &MonodromyWord) -> FreeAutomorphism {
    word.letters()
        .iter()
        .fold(FreeAutomorphism::identity(), |acc, &l| acc.compose(&letter_automorphism(l)))
}
