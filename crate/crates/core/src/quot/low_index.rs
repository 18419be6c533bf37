//! Subgroups of small index via coset tables (Sims' low-index search).
//!
//! Tables are filled at the first undefined entry in row-major order, and a
//! new coset is only ever introduced there, so every complete table found is
//! in standard form and each subgroup appears exactly once.

use std::collections::HashSet;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::torus::{GenLetter, GroupPresentation};

const UNDEF: u32 = u32::MAX;

/// Right action of the generators on the cosets of a subgroup; coset `0` is
/// the subgroup itself.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetTable {
    letters: usize,
    /// `rows[c * letters + l]` is the coset `c . l`.
    rows: Vec<u32>,
}

impl CosetTable {
    pub fn from_rows(letters: usize, rows: Vec<u32>) -> Self {
        assert!(letters > 0 && rows.len().is_multiple_of(letters));
        CosetTable { letters, rows }
    }

    pub fn index(&self) -> usize {
        self.rows.len() / self.letters
    }

    pub fn rank(&self) -> usize {
        self.letters / 2
    }

    #[inline]
    pub fn act(&self, coset: u32, letter: GenLetter) -> u32 {
        self.rows[coset as usize * self.letters + letter as usize]
    }

    pub fn trace<I: IntoIterator<Item = GenLetter>>(&self, coset: u32, word: I) -> u32 {
        word.into_iter().fold(coset, |c, l| self.act(c, l))
    }

    /// Whether `word` lies in the subgroup.
    pub fn contains<I: IntoIterator<Item = GenLetter>>(&self, word: I) -> bool {
        self.trace(0, word) == 0
    }

    /// Images of coset `0..index` under generator `g`.
    pub fn generator_images(&self, g: usize) -> Vec<u32> {
        (0..self.index() as u32).map(|c| self.act(c, 2 * g as GenLetter)).collect()
    }

    /// Renumbers the cosets in order of first appearance, starting from `root`.
    pub fn standardize(&self, root: u32) -> CosetTable {
        let n = self.index();
        let mut new_of = vec![UNDEF; n];
        let mut order = vec![root];
        new_of[root as usize] = 0;
        let mut k = 0;
        while k < order.len() {
            let c = order[k];
            for l in 0..self.letters as GenLetter {
                let d = self.act(c, l);
                if new_of[d as usize] == UNDEF {
                    new_of[d as usize] = order.len() as u32;
                    order.push(d);
                }
            }
            k += 1;
        }
        assert_eq!(order.len(), n, "coset table is not transitive");
        let mut rows = vec![0; self.rows.len()];
        for (new, &old) in order.iter().enumerate() {
            for l in 0..self.letters {
                rows[new * self.letters + l] = new_of[self.act(old, l as GenLetter) as usize];
            }
        }
        CosetTable { letters: self.letters, rows }
    }

    /// The least standardized table over all roots: a conjugacy-class key.
    pub fn class_key(&self) -> CosetTable {
        (0..self.index() as u32).map(|r| self.standardize(r)).min().unwrap()
    }

    /// Number of distinct conjugates of the subgroup.
    pub fn class_size(&self) -> usize {
        (0..self.index() as u32).map(|r| self.standardize(r)).collect::<HashSet<_>>().len()
    }
}

/// A conjugacy class of subgroups, represented by its class key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupClass {
    pub table: CosetTable,
    pub class_size: usize,
}

struct Partial {
    letters: usize,
    rows: Vec<u32>,
    cosets: usize,
}

impl Partial {
    fn get(&self, c: usize, l: usize) -> u32 {
        self.rows[c * self.letters + l]
    }

    fn set(&mut self, c: usize, l: usize, d: u32) {
        self.rows[c * self.letters + l] = d;
        self.rows[d as usize * self.letters + (l ^ 1)] = c as u32;
    }

    fn unset(&mut self, c: usize, l: usize, d: u32) {
        self.rows[c * self.letters + l] = UNDEF;
        self.rows[d as usize * self.letters + (l ^ 1)] = UNDEF;
    }

    fn first_undefined(&self) -> Option<(usize, usize)> {
        (0..self.cosets * self.letters).find(|&k| self.rows[k] == UNDEF).map(|k| (k / self.letters, k % self.letters))
    }

    /// False if some relator traced from some coset completes without
    /// returning to its start.
    fn consistent(&self, relators: &[Vec<GenLetter>]) -> bool {
        relators.iter().all(|r| {
            (0..self.cosets).all(|c| {
                let mut x = c as u32;
                for &l in r {
                    x = self.get(x as usize, l as usize);
                    if x == UNDEF {
                        return true;
                    }
                }
                x == c as u32
            })
        })
    }
}

/// Every subgroup of index at most `max_index`, as standard coset tables.
pub fn all_low_index_subgroups(p: &GroupPresentation, max_index: usize, budget: &Budget) -> Result<Vec<CosetTable>> {
    if max_index == 0 {
        return Err(Error::Invalid("index bound must be positive".into()));
    }
    let letters = 2 * p.rank();
    let mut partial = Partial { letters, rows: vec![UNDEF; max_index * letters], cosets: 1 };
    let mut out = Vec::new();
    search(&mut partial, max_index, p.relators(), budget, &mut out)?;
    out.sort_by(|a, b| a.index().cmp(&b.index()).then_with(|| a.cmp(b)));
    Ok(out)
}

fn search(t: &mut Partial, max_index: usize, relators: &[Vec<GenLetter>], budget: &Budget, out: &mut Vec<CosetTable>) -> Result<()> {
    budget.charge(1, "low-index search")?;
    let Some((c, l)) = t.first_undefined() else {
        out.push(CosetTable { letters: t.letters, rows: t.rows[..t.cosets * t.letters].to_vec() });
        return Ok(());
    };
    for d in 0..t.cosets {
        if t.get(d, l ^ 1) != UNDEF {
            continue;
        }
        t.set(c, l, d as u32);
        if t.consistent(relators) {
            search(t, max_index, relators, budget, out)?;
        }
        t.unset(c, l, d as u32);
    }
    if t.cosets < max_index {
        let d = t.cosets;
        t.cosets += 1;
        t.set(c, l, d as u32);
        if t.consistent(relators) {
            search(t, max_index, relators, budget, out)?;
        }
        t.unset(c, l, d as u32);
        t.cosets -= 1;
    }
    Ok(())
}

/// One representative per conjugacy class of subgroups of index at most
/// `max_index`, ordered by index, then by table.
pub fn low_index_subgroups(p: &GroupPresentation, max_index: usize, budget: &Budget) -> Result<Vec<SubgroupClass>> {
    let all = all_low_index_subgroups(p, max_index, budget)?;
    let mut classes: Vec<SubgroupClass> = all
        .into_iter()
        .filter(|t| t.class_key() == *t)
        .map(|t| {
            let class_size = t.class_size();
            SubgroupClass { table: t, class_size }
        })
        .collect();
    classes.sort_by(|a, b| a.table.index().cmp(&b.table.index()).then_with(|| a.table.cmp(&b.table)));
    Ok(classes)
}
