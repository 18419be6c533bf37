//! Finite quotients: homomorphism counts onto catalog groups, low-index
//! subgroups, characteristic quotients of `F3`, congruence quotients of the
//! mapping class group, and separating certificates.

pub mod catalog;
pub mod characteristic;
pub mod congruence;
pub mod finite_group;
pub mod homs;
pub mod low_index;
pub mod perm;
pub mod witness;

pub use catalog::{Catalog, GroupKind, Target, DEFAULT_CATALOG};
pub use characteristic::{characteristic_quotient, CharacteristicKernelData};
pub use congruence::{CongruenceImage, CongruenceQuotient, CongruenceSpec};
pub use finite_group::{Elt, FiniteGroupTable};
pub use homs::{count_surjections_up_to_aut, enumerate_homs, fingerprint, QuotientFingerprint};
pub use low_index::{all_low_index_subgroups, low_index_subgroups, CosetTable, SubgroupClass};
pub use perm::{Perm, PermGroup};
pub use witness::{check_distinct_pseudo_anosov, separating_witness, torus_separation, Certificate, WitnessOutcome};
