//! Congruence quotients of the mapping class group: finite actions of
//! `Mod(S_{0,4})` that factor through `Out(F3 / K)` for a characteristic `K`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use super::catalog::{Catalog, Target};
use super::characteristic::{characteristic_quotient, CharacteristicKernelData};
use super::finite_group::{Elt, FiniteGroupTable};
use super::homs::surjection_orbit_representatives;
use super::low_index::CosetTable;
use super::perm::Perm;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fgroup::{induced, letter_automorphism, FreeAutomorphism, RANK};
use crate::mcg::{Letter, MonodromyWord};
use crate::torus::GroupPresentation;

/// Largest quotient for which innerness is decided by exhaustive search.
pub const INNERNESS_LIMIT: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CongruenceSpec {
    /// `Out(F3 / K_i)` itself.
    Characteristic(usize),
    /// The action on conjugacy classes of subgroups of index at most `i`.
    SubgroupClasses(usize),
    /// The action `f -> f . alpha^-1` on `Epi(F3, Q) / Aut(Q)`.
    Epimorphisms(String),
}

impl fmt::Display for CongruenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CongruenceSpec::Characteristic(i) => write!(f, "out:{i}"),
            CongruenceSpec::SubgroupClasses(i) => write!(f, "subgroups:{i}"),
            CongruenceSpec::Epimorphisms(q) => write!(f, "epi:{q}"),
        }
    }
}

impl FromStr for CongruenceSpec {
    type Err = Error;

    /// `out:i`, `subgroups:i` or `epi:NAME`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, arg) = s.split_once(':').ok_or_else(|| Error::parse(0, format!("expected kind:arg, got {s:?}")))?;
        let index = || arg.parse::<usize>().map_err(|_| Error::parse(kind.len() + 1, format!("bad index {arg:?}")));
        match kind {
            "out" => Ok(CongruenceSpec::Characteristic(index()?)),
            "subgroups" => Ok(CongruenceSpec::SubgroupClasses(index()?)),
            "epi" if !arg.is_empty() => Ok(CongruenceSpec::Epimorphisms(arg.to_string())),
            _ => Err(Error::parse(0, format!("unknown congruence quotient {s:?}"))),
        }
    }
}

enum Data {
    Characteristic { kernel: CharacteristicKernelData },
    Subgroups { tables: Vec<CosetTable>, lookup: HashMap<CosetTable, usize> },
    Epimorphisms { target: Target, reps: Vec<Vec<Elt>>, lookup: HashMap<Vec<Elt>, usize> },
}

/// The image of a mapping class in a congruence quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CongruenceImage {
    /// An automorphism of `F3 / K`, as a permutation of its elements.
    Automorphism(Perm),
    /// A permutation of a finite set on which `Mod` acts.
    Permutation(Perm),
}

pub struct CongruenceQuotient {
    spec: CongruenceSpec,
    data: Data,
}

impl CongruenceQuotient {
    pub fn build(spec: &CongruenceSpec, catalog: &Catalog, budget: &Budget) -> Result<Self> {
        let data = match spec {
            CongruenceSpec::Characteristic(i) => {
                let kernel = characteristic_quotient(*i, budget)?;
                match &kernel.table {
                    Some(t) if t.order() <= INNERNESS_LIMIT => {}
                    _ => {
                        return Err(Error::Budget(format!(
                            "F3/K{i} has order {}; exhaustive innerness search is limited to {INNERNESS_LIMIT}",
                            kernel.order()
                        )))
                    }
                }
                Data::Characteristic { kernel }
            }
            CongruenceSpec::SubgroupClasses(i) => {
                let classes = super::low_index::low_index_subgroups(&GroupPresentation::free_rank3(), *i, budget)?;
                let tables: Vec<CosetTable> = classes.into_iter().map(|c| c.table).collect();
                let lookup = tables.iter().cloned().enumerate().map(|(k, t)| (t, k)).collect();
                Data::Subgroups { tables, lookup }
            }
            CongruenceSpec::Epimorphisms(name) => {
                let target = catalog
                    .get(name)
                    .ok_or_else(|| Error::Invalid(format!("no target named {name} in catalog {}", catalog.id)))?;
                let reps = surjection_orbit_representatives(&GroupPresentation::free_rank3(), target.group(), budget)?;
                let lookup = reps.iter().cloned().enumerate().map(|(k, t)| (t, k)).collect();
                Data::Epimorphisms { target: target.clone(), reps, lookup }
            }
        };
        Ok(CongruenceQuotient { spec: spec.clone(), data })
    }

    pub fn spec(&self) -> &CongruenceSpec {
        &self.spec
    }

    /// Size of the underlying finite set (or group).
    pub fn size(&self) -> usize {
        match &self.data {
            Data::Characteristic { kernel } => kernel.table.as_ref().unwrap().order(),
            Data::Subgroups { tables, .. } => tables.len(),
            Data::Epimorphisms { reps, .. } => reps.len(),
        }
    }

    /// Image of an automorphism of `F3`.
    pub fn image(&self, alpha: &FreeAutomorphism) -> CongruenceImage {
        match &self.data {
            Data::Characteristic { kernel } => {
                let t = kernel.table.as_ref().unwrap();
                let imgs = kernel.automorphism_images(alpha).map(|p| t.lookup(&p).expect("image lies in the quotient"));
                // e -> alpha(e), via a word for e in x1, x2, x3
                let map = (0..t.order() as Elt).map(|e| t.eval(t.word_for(e), &imgs)).collect();
                CongruenceImage::Automorphism(Perm::from_images(map))
            }
            Data::Subgroups { tables, lookup } => {
                let map = tables
                    .iter()
                    .map(|h| lookup[&image_subgroup(h, alpha).class_key()] as u32)
                    .collect();
                CongruenceImage::Permutation(Perm::from_images(map))
            }
            Data::Epimorphisms { target, reps, lookup } => {
                let group = target.group();
                let map = reps
                    .iter()
                    .map(|f| {
                        let moved: Vec<Elt> = (0..RANK)
                            .map(|j| group.eval(alpha.inverse_images()[j].letters().iter().map(|&l| l as u32), f))
                            .collect();
                        lookup[&canonical_tuple(group, &moved)] as u32
                    })
                    .collect();
                CongruenceImage::Permutation(Perm::from_images(map))
            }
        }
    }

    /// Image of a monodromy word, composed letter by letter.
    pub fn word_image(&self, w: &MonodromyWord) -> CongruenceImage {
        let letters: HashMap<Letter, CongruenceImage> =
            Letter::ALL.iter().map(|&l| (l, self.image(&letter_automorphism(l)))).collect();
        let identity = self.image(&FreeAutomorphism::identity());
        w.letters().iter().fold(identity, |acc, l| compose(&acc, &letters[l]))
    }

    /// Order of the image of `alpha` in the quotient group.
    pub fn order(&self, image: &CongruenceImage) -> u128 {
        match (image, &self.data) {
            (CongruenceImage::Permutation(p), _) => p.order(),
            (CongruenceImage::Automorphism(p), Data::Characteristic { kernel }) => {
                let t = kernel.table.as_ref().unwrap();
                let mut power = p.clone();
                let mut e = 1u128;
                while !is_inner(t, &power) {
                    power = power.mul(p);
                    e += 1;
                }
                e
            }
            (CongruenceImage::Automorphism(_), _) => unreachable!("automorphism images only arise from characteristic data"),
        }
    }

    pub fn word_order(&self, w: &MonodromyWord) -> u128 {
        self.order(&self.word_image(w))
    }

    pub fn automorphism_order(&self, w: &MonodromyWord) -> u128 {
        self.order(&self.image(&induced(w)))
    }

    pub fn target_name(&self) -> Option<&str> {
        match &self.data {
            Data::Epimorphisms { target, .. } => Some(&target.name),
            _ => None,
        }
    }
}

/// `alpha` then `beta` as maps of `Mod` elements: the image of `alpha * beta`.
fn compose(alpha: &CongruenceImage, beta: &CongruenceImage) -> CongruenceImage {
    match (alpha, beta) {
        // automorphisms of F3/K as element maps: (alpha o beta)(e) = alpha(beta(e))
        (CongruenceImage::Automorphism(a), CongruenceImage::Automorphism(b)) => CongruenceImage::Automorphism(b.mul(a)),
        // left actions on a finite set: apply beta first
        (CongruenceImage::Permutation(a), CongruenceImage::Permutation(b)) => CongruenceImage::Permutation(b.mul(a)),
        _ => unreachable!("images of one quotient share a kind"),
    }
}

fn is_inner(t: &FiniteGroupTable, map: &Perm) -> bool {
    let gens = t.generators();
    (0..t.order() as Elt).any(|h| gens.iter().all(|&g| t.conj(g, h) == map.image(g)))
}

/// Coset table of `alpha(H)`: the coset `c` of `H` corresponds to the coset
/// `alpha(c)` of `alpha(H)`, so generator `x` acts as `alpha^-1(x)` on `H`.
fn image_subgroup(h: &CosetTable, alpha: &FreeAutomorphism) -> CosetTable {
    let letters = 2 * RANK;
    let words: Vec<Vec<u32>> = (0..letters)
        .map(|l| {
            let w = &alpha.inverse_images()[l / 2];
            let w = if l % 2 == 0 { w.clone() } else { w.inverse() };
            w.letters().iter().map(|&x| x as u32).collect()
        })
        .collect();
    let mut rows = Vec::with_capacity(h.index() * letters);
    for c in 0..h.index() as u32 {
        for w in &words {
            rows.push(h.trace(c, w.iter().copied()));
        }
    }
    CosetTable::from_rows(letters, rows)
}

/// Least image of a generator tuple under `Aut(Q)`.
fn canonical_tuple(q: &FiniteGroupTable, tuple: &[Elt]) -> Vec<Elt> {
    q.automorphisms()
        .iter()
        .map(|a| tuple.iter().map(|&x| a[x as usize]).collect::<Vec<Elt>>())
        .min()
        .unwrap()
}

/// The identity `o(g^m) = o(g) / gcd(o(g), m)`.
pub fn expected_power_order(order: u128, m: u128) -> u128 {
    order / order.gcd(&m)
}
