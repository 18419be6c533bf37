//! Finite quotients separating two monodromies, with replayable certificates.
//!
//! Two kinds of evidence are distinguished. A difference in the finite
//! quotients of the mapping-torus groups proves the bundles are not
//! homeomorphic. A difference of orders in a congruence quotient of the
//! mapping class group only proves the monodromies are not conjugate up to
//! inversion.

use std::fmt;

use super::catalog::{Catalog, GroupKind, Target};
use super::congruence::{CongruenceQuotient, CongruenceSpec};
use super::homs::count_surjections_up_to_aut;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::mcg::MonodromyWord;
use crate::snf::AbelianInvariants;
use crate::torus;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// First homology of the mapping tori differs.
    TorusHomology { first: AbelianInvariants, second: AbelianInvariants },
    /// Surjection counts onto `target` (up to its automorphisms) differ.
    TorusSurjections { target: String, kind: GroupKind, counts: [u64; 2] },
    /// Orders of the images in a congruence quotient differ.
    CongruenceOrder { spec: CongruenceSpec, orders: [u128; 2] },
}

impl Certificate {
    /// Whether the certificate distinguishes the fundamental groups of the
    /// mapping tori, not merely the monodromies.
    pub fn separates_bundles(&self) -> bool {
        !matches!(self, Certificate::CongruenceOrder { .. })
    }

    /// Recomputes the evidence from scratch; true iff it reproduces exactly.
    pub fn replay(&self, w1: &MonodromyWord, w2: &MonodromyWord, catalog: &Catalog, budget: &Budget) -> Result<bool> {
        match self {
            Certificate::TorusHomology { first, second } => {
                Ok(torus::homology(w1) == *first && torus::homology(w2) == *second && first != second)
            }
            Certificate::TorusSurjections { target, kind, counts } => {
                let t = Target::new(target.clone(), *kind);
                let c1 = count_surjections_up_to_aut(&torus::presentation(w1), t.group(), budget)?;
                let c2 = count_surjections_up_to_aut(&torus::presentation(w2), t.group(), budget)?;
                Ok([c1, c2] == *counts && c1 != c2)
            }
            Certificate::CongruenceOrder { spec, orders } => {
                let q = CongruenceQuotient::build(spec, catalog, budget)?;
                let o = [q.word_order(w1), q.word_order(w2)];
                Ok(o == *orders && o[0] != o[1])
            }
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::TorusHomology { first, second } => write!(f, "torus homology {first} vs {second}"),
            Certificate::TorusSurjections { target, kind, counts } => {
                write!(f, "torus surjections onto {target} ({kind}) up to automorphism: {} vs {}", counts[0], counts[1])
            }
            Certificate::CongruenceOrder { spec, orders } => {
                write!(f, "congruence quotient {spec}: orders {} vs {}", orders[0], orders[1])
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessOutcome {
    Separated(Certificate),
    /// Nothing found; the reason says which limit was reached.
    Exhausted(String),
}

/// Rejects inputs that are not a pair of pseudo-Anosov classes, or that are
/// conjugate up to inversion.
pub fn check_distinct_pseudo_anosov(w1: &MonodromyWord, w2: &MonodromyWord) -> Result<()> {
    let (g, h) = (w1.eval(), w2.eval());
    for (w, m) in [(w1, &g), (w2, &h)] {
        if !m.is_pseudo_anosov() {
            return Err(Error::NotPseudoAnosov(w.to_string()));
        }
    }
    if let Some((sign, k)) = g.conjugator_up_to_inversion(&h) {
        return Err(Error::Invalid(format!("{w1} and {w2} are conjugate up to inversion ({sign}, witness {k})")));
    }
    Ok(())
}

/// Searches mapping-torus quotients: homology first, then each catalog
/// target in order.
pub fn torus_separation(w1: &MonodromyWord, w2: &MonodromyWord, catalog: &Catalog, budget: &Budget) -> Result<WitnessOutcome> {
    let (p1, p2) = (torus::presentation(w1), torus::presentation(w2));
    let (h1, h2) = (p1.homology(), p2.homology());
    if h1 != h2 {
        return Ok(WitnessOutcome::Separated(Certificate::TorusHomology { first: h1, second: h2 }));
    }
    let mut skipped = Vec::new();
    for t in &catalog.targets {
        let counts = count_surjections_up_to_aut(&p1, t.group(), budget)
            .and_then(|c1| Ok([c1, count_surjections_up_to_aut(&p2, t.group(), budget)?]));
        match counts {
            Ok([c1, c2]) if c1 != c2 => {
                return Ok(WitnessOutcome::Separated(Certificate::TorusSurjections {
                    target: t.name.clone(),
                    kind: t.kind,
                    counts: [c1, c2],
                }))
            }
            Ok(_) => {}
            Err(e) if e.is_budget() => {
                if budget.expired() {
                    return Ok(WitnessOutcome::Exhausted(format!("time budget ran out at target {}", t.name)));
                }
                skipped.push(t.name.clone());
            }
            Err(e) => return Err(e),
        }
    }
    Ok(WitnessOutcome::Exhausted(if skipped.is_empty() {
        format!("all {} targets of catalog {} agree", catalog.targets.len(), catalog.id)
    } else {
        format!("catalog {} agrees except on unfinished targets {}", catalog.id, skipped.join(", "))
    }))
}

/// Congruence quotients tried by [`separating_witness`], cheapest first.
pub fn congruence_candidates(catalog: &Catalog, max_index: usize) -> Vec<CongruenceSpec> {
    let mut specs = vec![CongruenceSpec::Characteristic(2)];
    specs.extend((2..=max_index).map(CongruenceSpec::SubgroupClasses));
    let mut targets: Vec<&Target> = catalog.targets.iter().filter(|t| !t.group().is_abelian()).collect();
    targets.sort_by_key(|t| t.group().order());
    specs.extend(targets.into_iter().map(|t| CongruenceSpec::Epimorphisms(t.name.clone())));
    specs
}

/// The first congruence or mapping-torus quotient separating two
/// non-conjugate pseudo-Anosov monodromies.
pub fn separating_witness(
    w1: &MonodromyWord,
    w2: &MonodromyWord,
    catalog: &Catalog,
    max_index: usize,
    budget: &Budget,
) -> Result<WitnessOutcome> {
    check_distinct_pseudo_anosov(w1, w2)?;
    for spec in congruence_candidates(catalog, max_index) {
        let q = match CongruenceQuotient::build(&spec, catalog, budget) {
            Ok(q) => q,
            Err(e) if e.is_budget() && !budget.expired() => continue,
            Err(e) if e.is_budget() => return Ok(WitnessOutcome::Exhausted(format!("time budget ran out at {spec}"))),
            Err(e) => return Err(e),
        };
        let orders = [q.word_order(w1), q.word_order(w2)];
        if orders[0] != orders[1] {
            return Ok(WitnessOutcome::Separated(Certificate::CongruenceOrder { spec, orders }));
        }
        if budget.expired() {
            return Ok(WitnessOutcome::Exhausted(format!("time budget ran out after {spec}")));
        }
    }
    torus_separation(w1, w2, catalog, budget)
}
