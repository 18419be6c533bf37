//! The bundle decision: conjugacy first, then finite quotients of the
//! mapping-torus groups.

use std::fmt;

use pillowcase::mcg::{MappingClass, MonodromyWord, Sign};
use pillowcase::quot::{torus_separation, Catalog, Certificate, WitnessOutcome};
use pillowcase::{Budget, Result};

use crate::exit;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictKind {
    Homeomorphic,
    Distinct,
    Inconclusive,
    NotPseudoAnosov,
}

impl VerdictKind {
    pub fn exit_code(self) -> i32 {
        match self {
            VerdictKind::Homeomorphic | VerdictKind::Distinct => exit::OK,
            VerdictKind::Inconclusive => exit::INCONCLUSIVE,
            VerdictKind::NotPseudoAnosov => exit::NOT_PSEUDO_ANOSOV,
        }
    }
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictKind::Homeomorphic => "HOMEOMORPHIC",
            VerdictKind::Distinct => "DISTINCT",
            VerdictKind::Inconclusive => "INCONCLUSIVE",
            VerdictKind::NotPseudoAnosov => "NOT_PSEUDO_ANOSOV",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// `witness * first * witness^-1 == second^sign`, checked.
    Homeomorphic { sign: Sign, witness: MappingClass },
    /// The certificate replayed before being reported.
    Distinct { certificate: Certificate },
    Inconclusive { reason: String },
    /// Words (in input order) that are not pseudo-Anosov.
    NotPseudoAnosov { words: Vec<String> },
}

impl Verdict {
    pub fn kind(&self) -> VerdictKind {
        match self {
            Verdict::Homeomorphic { .. } => VerdictKind::Homeomorphic,
            Verdict::Distinct { .. } => VerdictKind::Distinct,
            Verdict::Inconclusive { .. } => VerdictKind::Inconclusive,
            Verdict::NotPseudoAnosov { .. } => VerdictKind::NotPseudoAnosov,
        }
    }
}

/// Conjugacy up to inversion decides homeomorphism; otherwise a separating
/// quotient of the mapping-torus groups is searched for within `budget`.
pub fn distinguish(w1: &MonodromyWord, w2: &MonodromyWord, catalog: &Catalog, budget: &Budget) -> Result<Verdict> {
    let (g, h) = (w1.eval(), w2.eval());
    let bad: Vec<String> =
        [(w1, &g), (w2, &h)].iter().filter(|(_, m)| !m.is_pseudo_anosov()).map(|(w, _)| w.to_string()).collect();
    if !bad.is_empty() {
        return Ok(Verdict::NotPseudoAnosov { words: bad });
    }
    if let Some((sign, witness)) = g.conjugator_up_to_inversion(&h) {
        let target = match sign {
            Sign::Plus => h.clone(),
            Sign::Minus => h.inverse(),
        };
        assert_eq!(g.conjugate_by(&witness), target, "conjugacy witness failed to verify");
        return Ok(Verdict::Homeomorphic { sign, witness });
    }
    match torus_separation(w1, w2, catalog, budget)? {
        WitnessOutcome::Separated(certificate) => {
            if certificate.replay(w1, w2, catalog, &Budget::unlimited())? {
                Ok(Verdict::Distinct { certificate })
            } else {
                Ok(Verdict::Inconclusive { reason: format!("certificate failed to replay: {certificate}") })
            }
        }
        WitnessOutcome::Exhausted(reason) => {
            Ok(Verdict::Inconclusive { reason: format!("monodromies are not conjugate; no separating quotient: {reason}") })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mw(s: &str) -> MonodromyWord {
        s.parse().unwrap()
    }

    #[test]
    fn verdicts() {
        let cat = Catalog::default_catalog();
        let b = Budget::unlimited();
        assert_eq!(distinguish(&mw("ab"), &mw("ba"), &cat, &b).unwrap().kind(), VerdictKind::Homeomorphic);
        let v = distinguish(&mw("aab"), &mw("BAA"), &cat, &b).unwrap();
        assert!(matches!(v, Verdict::Homeomorphic { sign: Sign::Minus, .. }));
        assert_eq!(distinguish(&mw("ab"), &mw("aab"), &cat, &b).unwrap().kind(), VerdictKind::Distinct);
        let v = distinguish(&mw("a"), &mw("ab"), &cat, &b).unwrap();
        assert_eq!(v, Verdict::NotPseudoAnosov { words: vec!["a".into()] });
    }

    #[test]
    fn tiny_catalog_is_inconclusive() {
        // same homology, and C2 alone cannot tell them apart
        let cat = Catalog::parse("C2 cyclic 2", "c2").unwrap();
        let v = distinguish(&mw("ab"), &mw("aabb"), &cat, &Budget::unlimited()).unwrap();
        assert_eq!(v.kind(), VerdictKind::Inconclusive);
        assert_eq!(v.kind().exit_code(), 3);
    }
}
