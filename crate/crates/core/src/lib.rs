//! Mapping classes of the four-punctured sphere, their mapping tori, and
//! finite-quotient invariants that distinguish them.

pub mod budget;
pub mod error;
pub mod fgroup;
pub mod mcg;
pub mod pslz;
pub mod quot;
pub mod snf;
pub mod torus;

pub use budget::Budget;
pub use error::{Error, Result};
pub use fgroup::{FreeAutomorphism, FreeWord};
pub use mcg::{MappingClass, MonodromyWord};
pub use pslz::PslWord;
pub use quot::{Catalog, Certificate, CongruenceSpec, FiniteGroupTable, QuotientFingerprint, WitnessOutcome};
pub use snf::AbelianInvariants;
pub use torus::GroupPresentation;
