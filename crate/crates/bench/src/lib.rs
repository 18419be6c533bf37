//! Fixed inputs shared by the benchmarks.

use pillowcase::mcg::MonodromyWord;
use pillowcase::pslz::PslWord;

/// Pseudo-Anosov monodromies of increasing dilatation.
pub const PSEUDO_ANOSOV: [&str; 4] = ["ab", "aab", "aabb", "aaabbb"];

pub fn monodromy(s: &str) -> MonodromyWord {
    s.parse().expect("benchmark words parse")
}

/// `(sr)^n (sR)^n` repeated: a long hyperbolic word with a large trace.
pub fn long_psl_word(n: usize) -> PslWord {
    let block = format!("{}{}", "sr".repeat(n), "sR".repeat(n));
    block.repeat(4).parse().expect("benchmark words parse")
}
