//! Homomorphisms from finitely presented groups onto finite targets.
//!
//! Generator images are assigned in presentation order. A relator is checked
//! as soon as its last generator is assigned; before trying candidates for
//! that generator, the relator is compressed into known segments so each
//! candidate costs a handful of multiplications. In orbit mode only tuples
//! that are lexicographically least in their `Aut(Q)` orbit are produced,
//! which is enforced prefix by prefix through the stabilizer of the prefix.

use rayon::prelude::*;

use super::catalog::Catalog;
use super::finite_group::{Elt, FiniteGroupTable};
use crate::budget::Budget;
use crate::error::Result;
use crate::torus::{GenLetter, GroupPresentation};

/// Depth at which the search fans out to parallel workers.
const SPLIT_DEPTH: usize = 2;

#[derive(Clone, Copy)]
enum Item {
    Known(Elt),
    Gen,
    GenInv,
}

struct Search<'a> {
    q: &'a FiniteGroupTable,
    rank: usize,
    /// Relators grouped by their largest generator.
    ready: Vec<Vec<&'a [GenLetter]>>,
    surjective_only: bool,
    orbit_mode: bool,
    budget: &'a Budget,
}

#[derive(Clone)]
struct Node {
    prefix: Vec<Elt>,
    /// Indices into `Aut(Q)` of automorphisms fixing the prefix.
    stabilizer: Vec<u32>,
}

impl<'a> Search<'a> {
    fn new(p: &'a GroupPresentation, q: &'a FiniteGroupTable, surjective_only: bool, orbit_mode: bool, budget: &'a Budget) -> Self {
        let rank = p.rank();
        let mut ready = vec![Vec::new(); rank];
        for r in p.relators() {
            let last = r.iter().map(|&l| (l / 2) as usize).max().unwrap();
            ready[last].push(r.as_slice());
        }
        Search { q, rank, ready, surjective_only, orbit_mode, budget }
    }

    fn root(&self) -> Node {
        let stabilizer = if self.orbit_mode { (1..self.q.automorphisms().len() as u32).collect() } else { Vec::new() };
        Node { prefix: Vec::new(), stabilizer }
    }

    fn compress(&self, r: &[GenLetter], prefix: &[Elt]) -> Vec<Item> {
        let depth = prefix.len();
        let mut out = Vec::new();
        let mut acc = self.q.identity();
        for &l in r {
            let g = (l / 2) as usize;
            if g == depth {
                if acc != self.q.identity() {
                    out.push(Item::Known(acc));
                    acc = self.q.identity();
                }
                out.push(if l % 2 == 0 { Item::Gen } else { Item::GenInv });
            } else {
                let x = prefix[g];
                acc = self.q.mul(acc, if l % 2 == 0 { x } else { self.q.inv(x) });
            }
        }
        if acc != self.q.identity() {
            out.push(Item::Known(acc));
        }
        out
    }

    fn holds(&self, compressed: &[Item], c: Elt, c_inv: Elt) -> bool {
        let mut acc = self.q.identity();
        for item in compressed {
            let x = match *item {
                Item::Known(k) => k,
                Item::Gen => c,
                Item::GenInv => c_inv,
            };
            acc = self.q.mul(acc, x);
        }
        acc == self.q.identity()
    }

    /// Children of `node` that pass every relator ready at this depth.
    fn children(&self, node: &Node) -> Result<Vec<Node>> {
        let depth = node.prefix.len();
        self.budget.charge(1, "homomorphism search")?;
        let compressed: Vec<Vec<Item>> = self.ready[depth].iter().map(|r| self.compress(r, &node.prefix)).collect();
        let auts = if self.orbit_mode { self.q.automorphisms() } else { &[] };
        let mut out = Vec::new();
        for c in 0..self.q.order() as Elt {
            if !node.stabilizer.iter().all(|&s| auts[s as usize][c as usize] >= c) {
                continue;
            }
            let c_inv = self.q.inv(c);
            if !compressed.iter().all(|r| self.holds(r, c, c_inv)) {
                continue;
            }
            let stabilizer = node.stabilizer.iter().copied().filter(|&s| auts[s as usize][c as usize] == c).collect();
            let mut prefix = node.prefix.clone();
            prefix.push(c);
            out.push(Node { prefix, stabilizer });
        }
        Ok(out)
    }

    fn accept(&self, node: &Node) -> bool {
        !self.surjective_only || self.q.generates(&node.prefix)
    }

    fn run(&self, node: Node, out: &mut Vec<Vec<Elt>>) -> Result<()> {
        if node.prefix.len() == self.rank {
            if self.accept(&node) {
                out.push(node.prefix);
            }
            return Ok(());
        }
        for child in self.children(&node)? {
            self.run(child, out)?;
        }
        Ok(())
    }

    fn collect(&self) -> Result<Vec<Vec<Elt>>> {
        let mut frontier = vec![self.root()];
        while frontier.first().is_some_and(|n| n.prefix.len() < SPLIT_DEPTH.min(self.rank)) {
            let mut next = Vec::new();
            for n in &frontier {
                next.extend(self.children(n)?);
            }
            frontier = next;
        }
        let parts: Vec<Result<Vec<Vec<Elt>>>> = frontier
            .into_par_iter()
            .map(|n| {
                let mut out = Vec::new();
                self.run(n, &mut out)?;
                Ok(out)
            })
            .collect();
        let mut all = Vec::new();
        for p in parts {
            all.extend(p?);
        }
        all.sort();
        Ok(all)
    }
}

/// All homomorphisms `p -> q`, as generator-image tuples in lexicographic
/// order.
pub fn enumerate_homs(p: &GroupPresentation, q: &FiniteGroupTable, surjective_only: bool, budget: &Budget) -> Result<Vec<Vec<Elt>>> {
    Search::new(p, q, surjective_only, false, budget).collect()
}

/// One representative (the lexicographically least tuple) of each `Aut(q)`
/// orbit of surjections `p -> q`.
pub fn surjection_orbit_representatives(p: &GroupPresentation, q: &FiniteGroupTable, budget: &Budget) -> Result<Vec<Vec<Elt>>> {
    Search::new(p, q, true, true, budget).collect()
}

/// Number of surjections `p -> q` up to automorphisms of `q`.
pub fn count_surjections_up_to_aut(p: &GroupPresentation, q: &FiniteGroupTable, budget: &Budget) -> Result<u64> {
    Ok(surjection_orbit_representatives(p, q, budget)?.len() as u64)
}

/// Surjection counts onto each catalog target; `None` marks a target whose
/// search ran out of budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientFingerprint {
    pub catalog_id: String,
    pub counts: Vec<(String, Option<u64>)>,
}

impl QuotientFingerprint {
    pub fn is_complete(&self) -> bool {
        self.counts.iter().all(|(_, c)| c.is_some())
    }

    pub fn count(&self, target: &str) -> Option<u64> {
        self.counts.iter().find(|(n, _)| n == target).and_then(|(_, c)| *c)
    }
}

pub fn fingerprint(p: &GroupPresentation, catalog: &Catalog, budget: &Budget) -> Result<QuotientFingerprint> {
    let mut counts = Vec::new();
    for t in &catalog.targets {
        match count_surjections_up_to_aut(p, t.group(), budget) {
            Ok(c) => counts.push((t.name.clone(), Some(c))),
            Err(e) if e.is_budget() => counts.push((t.name.clone(), None)),
            Err(e) => return Err(e),
        }
    }
    Ok(QuotientFingerprint { catalog_id: catalog.id.clone(), counts })
}
