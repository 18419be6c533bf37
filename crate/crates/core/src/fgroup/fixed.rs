//! Enumeration of primitive conjugacy classes fixed by powers of an
//! automorphism.
//!
//! Every primitive cyclic word up to the length bound is visited once. A
//! candidate must first survive a battery of finite permutation images (a
//! fixed class has conjugate images, hence equal cycle types, in every finite
//! quotient); survivors are then decided exactly by applying the automorphism
//! and comparing cyclic normal forms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::automorphism::{peripheral_elements, FreeAutomorphism};
use super::word::{cyclic_period, inverse_letter, is_least_rotation, is_rotation, FreeWord, Letter, RANK};
use crate::error::{Error, Result};

/// Default cap on the number of enumerated classes.
pub const DEFAULT_CLASS_BUDGET: usize = 4_000_000;
/// Longest intermediate image allowed during exact verification.
const MAX_IMAGE_LEN: usize = 1 << 24;

const FILTER_DEGREE: usize = 12;
const FILTER_COUNT: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedClass {
    /// Least rotation of a cyclically reduced representative.
    pub word: FreeWord,
    /// Smallest exponent `e` with `alpha^e` fixing the class.
    pub power: u32,
    pub peripheral: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedClasses {
    /// Sorted by length, then lexicographically.
    pub classes: Vec<FixedClass>,
    /// Number of primitive classes examined.
    pub enumerated: usize,
}

impl FixedClasses {
    pub fn oriented_count(&self) -> usize {
        self.classes.len()
    }

    /// Classes counted with `[w]` and `[w^-1]` identified.
    pub fn unoriented_count(&self) -> usize {
        self.unoriented(|_| true)
    }

    pub fn peripheral_unoriented(&self) -> usize {
        self.unoriented(|c| c.peripheral)
    }

    pub fn nonperipheral_unoriented(&self) -> usize {
        self.unoriented(|c| !c.peripheral)
    }

    fn unoriented(&self, keep: impl Fn(&FixedClass) -> bool) -> usize {
        let mut keys: Vec<FreeWord> = self
            .classes
            .iter()
            .filter(|c| keep(c))
            .map(|c| c.word.clone().min(c.word.inverse().conjugacy_key()))
            .collect();
        keys.sort();
        keys.dedup();
        keys.len()
    }
}

type Perm = [u8; FILTER_DEGREE];

fn perm_mul(p: &Perm, q: &Perm) -> Perm {
    // apply p, then q
    let mut r = [0u8; FILTER_DEGREE];
    for i in 0..FILTER_DEGREE {
        r[i] = q[p[i] as usize];
    }
    r
}

fn perm_inv(p: &Perm) -> Perm {
    let mut r = [0u8; FILTER_DEGREE];
    for i in 0..FILTER_DEGREE {
        r[p[i] as usize] = i as u8;
    }
    r
}

fn cycle_type(p: &Perm) -> [u8; FILTER_DEGREE + 1] {
    let mut seen = [false; FILTER_DEGREE];
    let mut counts = [0u8; FILTER_DEGREE + 1];
    for i in 0..FILTER_DEGREE {
        if !seen[i] {
            let mut len = 0;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = p[j] as usize;
                len += 1;
            }
            counts[len] += 1;
        }
    }
    counts
}

/// Letter images (generator and inverse) for one permutation representation.
#[derive(Clone)]
struct LetterPerms([Perm; 2 * RANK]);

impl LetterPerms {
    fn new(gens: [Perm; RANK]) -> Self {
        let mut out = [[0; FILTER_DEGREE]; 2 * RANK];
        for g in 0..RANK {
            out[2 * g] = gens[g];
            out[2 * g + 1] = perm_inv(&gens[g]);
        }
        LetterPerms(out)
    }

    fn eval(&self, w: &[Letter]) -> Perm {
        let mut acc: Perm = std::array::from_fn(|i| i as u8);
        for &l in w {
            acc = perm_mul(&acc, &self.0[l as usize]);
        }
        acc
    }

    /// Representation twisted by `alpha`: `x -> rep(alpha(x))`.
    fn twist(&self, alpha: &FreeAutomorphism) -> Self {
        LetterPerms::new(std::array::from_fn(|g| self.eval(alpha.images()[g].letters())))
    }
}

fn random_perm(rng: &mut ChaCha8Rng) -> Perm {
    let mut p: Perm = std::array::from_fn(|i| i as u8);
    for i in (1..FILTER_DEGREE).rev() {
        let j = rng.gen_range(0..=i);
        p.swap(i, j);
    }
    p
}

/// `filters[k][e]` is the k-th random representation twisted by `alpha^e`.
fn build_filters(alpha: &FreeAutomorphism, powers: u32) -> Vec<Vec<LetterPerms>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f1c5);
    (0..FILTER_COUNT)
        .map(|_| {
            let base = LetterPerms::new(std::array::from_fn(|_| random_perm(&mut rng)));
            let mut chain = vec![base];
            for _ in 0..powers {
                let next = chain.last().unwrap().twist(alpha);
                chain.push(next);
            }
            chain
        })
        .collect()
}

/// Exact test whether `alpha^e` fixes the class of the cyclic word `w`.
fn fixed_by_power(alpha: &FreeAutomorphism, w: &[Letter], e: u32) -> Result<bool> {
    let mut cur = FreeWord::from_letters(w.iter().copied());
    for _ in 0..e {
        let next = alpha.apply(&cur);
        let (_, core) = next.cyclic_reduce();
        if core.len() > MAX_IMAGE_LEN {
            return Err(Error::Budget(format!("image of class {} grew beyond {MAX_IMAGE_LEN} letters", cur)));
        }
        cur = core;
    }
    Ok(is_rotation(cur.letters(), w))
}

/// Primitive cyclically reduced words of length `n` that are least rotations,
/// in lexicographic order.
fn primitive_classes(n: usize, first: Letter) -> Vec<Vec<Letter>> {
    let mut out = Vec::new();
    let mut word = vec![first];
    fn extend(word: &mut Vec<Letter>, n: usize, out: &mut Vec<Vec<Letter>>) {
        if word.len() == n {
            if (n == 1 || word[0] != inverse_letter(word[n - 1]))
                && is_least_rotation(word)
                && cyclic_period(word) == n
            {
                out.push(word.clone());
            }
            return;
        }
        let last = *word.last().unwrap();
        for l in 0..(2 * RANK) as Letter {
            // a least rotation never contains a letter smaller than its first
            if l == inverse_letter(last) || l < word[0] {
                continue;
            }
            word.push(l);
            extend(word, n, out);
            word.pop();
        }
    }
    extend(&mut word, n, &mut out);
    out
}

/// Primitive conjugacy classes of cyclic length `<= max_len` fixed by
/// `alpha^e` for some `1 <= e <= powers`.
pub fn fixed_classes(alpha: &FreeAutomorphism, max_len: usize, powers: u32) -> Result<FixedClasses> {
    fixed_classes_with_budget(alpha, max_len, powers, DEFAULT_CLASS_BUDGET)
}

pub fn fixed_classes_with_budget(
    alpha: &FreeAutomorphism,
    max_len: usize,
    powers: u32,
    class_budget: usize,
) -> Result<FixedClasses> {
    if powers == 0 {
        return Err(Error::Invalid("power bound must be positive".into()));
    }
    let filters = build_filters(alpha, powers);
    let peripheral_keys: Vec<FreeWord> = peripheral_elements()
        .iter()
        .flat_map(|p| [p.conjugacy_key(), p.inverse().conjugacy_key()])
        .collect();

    let mut classes = Vec::new();
    let mut enumerated = 0usize;
    for n in 1..=max_len {
        let batches: Vec<Vec<Vec<Letter>>> =
            (0..(2 * RANK) as Letter).into_par_iter().map(|first| primitive_classes(n, first)).collect();
        let count: usize = batches.iter().map(Vec::len).sum();
        enumerated += count;
        if enumerated > class_budget {
            return Err(Error::Budget(format!(
                "more than {class_budget} primitive classes up to length {n}"
            )));
        }
        let found: Vec<Result<Option<FixedClass>>> = batches
            .into_par_iter()
            .flatten()
            .map(|w| {
                for e in 1..=powers {
                    let passes = filters.iter().all(|chain| {
                        cycle_type(&chain[0].eval(&w)) == cycle_type(&chain[e as usize].eval(&w))
                    });
                    if passes && fixed_by_power(alpha, &w, e)? {
                        let word = FreeWord::from_letters(w.iter().copied());
                        let peripheral = peripheral_keys.contains(&word);
                        return Ok(Some(FixedClass { word, power: e, peripheral }));
                    }
                }
                Ok(None)
            })
            .collect();
        for r in found {
            if let Some(c) = r? {
                classes.push(c);
            }
        }
    }
    classes.sort_by(|a, b| a.word.len().cmp(&b.word.len()).then_with(|| a.word.cmp(&b.word)));
    Ok(FixedClasses { classes, enumerated })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgroup::induced;

    fn brute_force_class_count(n: usize) -> usize {
        // all words of length n, grouped by conjugacy key, primitive and cyclically reduced
        let mut keys = std::collections::BTreeSet::new();
        let total = 6usize.pow(n as u32);
        for mut code in 0..total {
            let mut w = Vec::new();
            for _ in 0..n {
                w.push((code % 6) as Letter);
                code /= 6;
            }
            let reduced = (1..n).all(|i| w[i] != inverse_letter(w[i - 1]));
            if !reduced || (n > 1 && w[0] == inverse_letter(w[n - 1])) || cyclic_period(&w) != n {
                continue;
            }
            keys.insert(FreeWord::from_letters(w).conjugacy_key());
        }
        keys.len()
    }

    #[test]
    fn class_enumeration_matches_brute_force() {
        for n in 1..=5 {
            let fast: usize = (0..6).map(|f| primitive_classes(n, f).len()).sum();
            assert_eq!(fast, brute_force_class_count(n), "length {n}");
        }
    }

    #[test]
    fn identity_fixes_everything() {
        let res = fixed_classes(&FreeAutomorphism::identity(), 2, 1).unwrap();
        // length 1: 6 classes; length 2: cyclically reduced primitive pairs up to rotation
        assert_eq!(res.oriented_count(), res.enumerated);
        assert_eq!(res.enumerated, 6 + brute_force_class_count(2));
        assert!(res.classes.iter().all(|c| c.power == 1));
    }

    #[test]
    fn pseudo_anosov_fixes_only_peripheral_classes() {
        let alpha = induced(&"ab".parse().unwrap());
        let res = fixed_classes(&alpha, 6, 3).unwrap();
        assert_eq!(res.oriented_count(), 8);
        assert_eq!(res.peripheral_unoriented(), 4);
        assert_eq!(res.nonperipheral_unoriented(), 0);
    }

    #[test]
    fn single_twist_fixes_its_curve() {
        let alpha = induced(&"a".parse().unwrap());
        let res = fixed_classes(&alpha, 4, 1).unwrap();
        assert!(res.classes.iter().any(|c| c.word == "xy".parse().unwrap()));
        assert!(res.nonperipheral_unoriented() > 0);
    }

    #[test]
    fn budget_is_enforced() {
        let err = fixed_classes_with_budget(&FreeAutomorphism::identity(), 6, 1, 100).unwrap_err();
        assert!(err.is_budget());
    }
}
