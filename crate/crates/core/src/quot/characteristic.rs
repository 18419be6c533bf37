//! The characteristic quotients `F3 / K_i`, where `K_i` is the intersection
//! of all subgroups of index at most `i`.

use super::finite_group::{FiniteGroupTable, ELEMENT_LIMIT};
use super::low_index::{low_index_subgroups, SubgroupClass};
use super::perm::{Perm, PermGroup};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fgroup::{FreeAutomorphism, FreeWord, RANK};
use crate::torus::GroupPresentation;

/// `F3 / K_i` realized in the product of the coset actions of one subgroup
/// per conjugacy class (conjugate subgroups have the same core).
pub struct CharacteristicKernelData {
    pub index: usize,
    pub classes: Vec<SubgroupClass>,
    /// Images of `x1, x2, x3`.
    pub images: [Perm; RANK],
    pub group: PermGroup,
    /// Element table, kept only for small quotients.
    pub table: Option<FiniteGroupTable>,
}

impl CharacteristicKernelData {
    pub fn order(&self) -> u128 {
        self.group.order()
    }

    pub fn degree(&self) -> usize {
        self.group.degree()
    }

    /// Image of a free word in the permutation representation.
    pub fn image_of(&self, w: &FreeWord) -> Perm {
        let inv: Vec<Perm> = self.images.iter().map(Perm::inverse).collect();
        w.letters().iter().fold(Perm::identity(self.degree()), |acc, &l| {
            let g = (l / 2) as usize;
            acc.mul(if l % 2 == 0 { &self.images[g] } else { &inv[g] })
        })
    }

    /// Images of the generators under `alpha`, composed with the quotient map.
    pub fn automorphism_images(&self, alpha: &FreeAutomorphism) -> [Perm; RANK] {
        std::array::from_fn(|j| self.image_of(&alpha.images()[j]))
    }

    /// Whether `x_j -> images[j]` defines an endomorphism of the quotient:
    /// the graph `{(g, f(g))}` must have the order of the quotient itself.
    pub fn defines_homomorphism(&self, images: &[Perm; RANK]) -> bool {
        let gens: Vec<Perm> = (0..RANK).map(|j| self.images[j].direct_sum(&images[j])).collect();
        PermGroup::new(2 * self.degree(), gens).order() == self.order()
    }

    /// Checks that a generating set of `Aut(F3)` induces well-defined maps,
    /// which certifies that the kernel is characteristic.
    pub fn verify_characteristic(&self) -> bool {
        nielsen_generators().iter().all(|a| self.defines_homomorphism(&self.automorphism_images(a)))
    }
}

/// Nielsen's generators of `Aut(F3)`: two permutations, an inversion and a
/// transvection.
pub fn nielsen_generators() -> Vec<FreeAutomorphism> {
    let f = |s: &str| s.parse::<FreeWord>().unwrap();
    let make = |img: [&str; 3], inv: [&str; 3]| {
        FreeAutomorphism::new(img.map(f), inv.map(f)).expect("Nielsen generator is invertible")
    };
    vec![
        make(["y", "x", "z"], ["y", "x", "z"]),
        make(["y", "z", "x"], ["z", "x", "y"]),
        make(["X", "y", "z"], ["X", "y", "z"]),
        make(["xy", "y", "z"], ["xY", "y", "z"]),
    ]
}

pub fn characteristic_quotient(i: usize, budget: &Budget) -> Result<CharacteristicKernelData> {
    if i == 0 {
        return Err(Error::Invalid("index bound must be positive".into()));
    }
    let classes = low_index_subgroups(&GroupPresentation::free_rank3(), i, budget)?;
    let degree: usize = classes.iter().map(|c| c.table.index()).sum();
    let images: [Perm; RANK] = std::array::from_fn(|g| {
        let mut img = Vec::with_capacity(degree);
        let mut offset = 0;
        for c in &classes {
            img.extend(c.table.generator_images(g).into_iter().map(|x| x + offset));
            offset += c.table.index() as u32;
        }
        Perm::from_images(img)
    });
    budget.check_time("characteristic quotient")?;
    let group = PermGroup::new(degree, images.to_vec());
    let table = if group.order() <= ELEMENT_LIMIT as u128 {
        Some(FiniteGroupTable::from_generators(degree, &images)?)
    } else {
        None
    };
    Ok(CharacteristicKernelData { index: i, classes, images, group, table })
}
