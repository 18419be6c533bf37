//! The free group `F3 = pi1` of the four-punctured sphere and automorphisms
//! induced by mapping classes.

mod automorphism;
mod fixed;
mod word;

pub use automorphism::{induced, letter_automorphism, peripheral_elements, FreeAutomorphism, PeripheralImage};
pub use fixed::{fixed_classes, fixed_classes_with_budget, FixedClass, FixedClasses, DEFAULT_CLASS_BUDGET};
pub use word::{generator_of, inverse_letter, FreeWord, Letter, RANK};

