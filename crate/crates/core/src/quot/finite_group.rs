//! Finite groups realized concretely as closed sets of permutations.

use std::collections::HashMap;
use std::sync::OnceLock;

use super::perm::Perm;
use crate::error::{Error, Result};

/// Largest group for which a full multiplication table is kept.
pub const TABLE_LIMIT: usize = 4096;
/// Largest group this type will enumerate.
pub const ELEMENT_LIMIT: usize = 100_000;

/// Element handle: index into the element list; the identity is `0`.
pub type Elt = u32;

/// A finite group given by permutation generators, with its elements listed
/// in breadth-first order from the identity.
pub struct FiniteGroupTable {
    elements: Vec<Perm>,
    index: HashMap<Perm, Elt>,
    /// Indices of the defining generators.
    generators: Vec<Elt>,
    /// `parent[e] = (p, g)` with `e = p * generators[g]`; `None` for the identity.
    parent: Vec<Option<(Elt, usize)>>,
    table: Option<Vec<Elt>>,
    inverses: Vec<Elt>,
    orders: Vec<u32>,
    classes: OnceLock<Vec<Vec<Elt>>>,
    automorphisms: OnceLock<Vec<Vec<Elt>>>,
}

impl FiniteGroupTable {
    pub fn from_generators(degree: usize, gens: &[Perm]) -> Result<Self> {
        let id = Perm::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0)]);
        let mut parent = vec![None];
        let mut k = 0;
        while k < elements.len() {
            for (gi, g) in gens.iter().enumerate() {
                let e = elements[k].mul(g);
                if !index.contains_key(&e) {
                    if elements.len() >= ELEMENT_LIMIT {
                        return Err(Error::Budget(format!("group has more than {ELEMENT_LIMIT} elements")));
                    }
                    index.insert(e.clone(), elements.len() as Elt);
                    elements.push(e);
                    parent.push(Some((k as Elt, gi)));
                }
            }
            k += 1;
        }
        let n = elements.len();
        let generators = gens.iter().map(|g| index[g]).collect();
        let table = (n <= TABLE_LIMIT).then(|| {
            let mut t = vec![0; n * n];
            for a in 0..n {
                for b in 0..n {
                    t[a * n + b] = index[&elements[a].mul(&elements[b])];
                }
            }
            t
        });
        let inverses = elements.iter().map(|e| index[&e.inverse()]).collect();
        let orders = elements.iter().map(|e| e.order() as u32).collect();
        Ok(FiniteGroupTable {
            elements,
            index,
            generators,
            parent,
            table,
            inverses,
            orders,
            classes: OnceLock::new(),
            automorphisms: OnceLock::new(),
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.elements[0].degree()
    }

    pub fn identity(&self) -> Elt {
        0
    }

    pub fn generators(&self) -> &[Elt] {
        &self.generators
    }

    pub fn element(&self, e: Elt) -> &Perm {
        &self.elements[e as usize]
    }

    pub fn lookup(&self, p: &Perm) -> Option<Elt> {
        self.index.get(p).copied()
    }

    #[inline]
    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        match &self.table {
            Some(t) => t[a as usize * self.elements.len() + b as usize],
            None => self.index[&self.elements[a as usize].mul(&self.elements[b as usize])],
        }
    }

    #[inline]
    pub fn inv(&self, a: Elt) -> Elt {
        self.inverses[a as usize]
    }

    pub fn conj(&self, g: Elt, h: Elt) -> Elt {
        // h g h^-1
        self.mul(self.mul(h, g), self.inv(h))
    }

    pub fn element_order(&self, a: Elt) -> u32 {
        self.orders[a as usize]
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter().all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Evaluates a word in letter codes (`2i` generator `i`, `2i+1` inverse)
    /// at the given generator images.
    pub fn eval<I: IntoIterator<Item = u32>>(&self, word: I, images: &[Elt]) -> Elt {
        word.into_iter().fold(0, |acc, l| {
            let x = images[(l / 2) as usize];
            self.mul(acc, if l % 2 == 0 { x } else { self.inv(x) })
        })
    }

    /// Size of the subgroup generated by `gens`.
    pub fn subgroup_order(&self, gens: &[Elt]) -> usize {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = vec![0];
        let mut k = 0;
        while k < queue.len() {
            let a = queue[k];
            for &g in gens {
                let b = self.mul(a, g);
                if !seen[b as usize] {
                    seen[b as usize] = true;
                    queue.push(b);
                }
            }
            k += 1;
        }
        queue.len()
    }

    pub fn generates(&self, gens: &[Elt]) -> bool {
        self.subgroup_order(gens) == self.order()
    }

    pub fn conjugacy_classes(&self) -> &[Vec<Elt>] {
        self.classes.get_or_init(|| {
            let n = self.order();
            let mut class_of = vec![usize::MAX; n];
            let mut classes: Vec<Vec<Elt>> = Vec::new();
            for a in 0..n as Elt {
                if class_of[a as usize] != usize::MAX {
                    continue;
                }
                let id = classes.len();
                let mut members = vec![a];
                class_of[a as usize] = id;
                let mut k = 0;
                while k < members.len() {
                    let x = members[k];
                    for &g in &self.generators {
                        let y = self.conj(x, g);
                        if class_of[y as usize] == usize::MAX {
                            class_of[y as usize] = id;
                            members.push(y);
                        }
                    }
                    k += 1;
                }
                members.sort_unstable();
                classes.push(members);
            }
            classes
        })
    }

    /// `Aut(G)` as permutations of the element indices, the identity first.
    ///
    /// An automorphism is determined by the images of a generating tuple;
    /// candidate images are matched by element order and accepted when the
    /// induced map on the Cayley graph is a bijective homomorphism.
    pub fn automorphisms(&self) -> &[Vec<Elt>] {
        self.automorphisms.get_or_init(|| {
            let gens = self.small_generating_set();
            let (parent, order_of_bfs) = self.bfs_tree(&gens);
            let candidates: Vec<Vec<Elt>> = gens
                .iter()
                .map(|&g| {
                    (0..self.order() as Elt).filter(|&e| self.element_order(e) == self.element_order(g)).collect()
                })
                .collect();
            let mut out = Vec::new();
            let mut choice = vec![0; gens.len()];
            self.search_automorphisms(&gens, &parent, &order_of_bfs, &candidates, 0, &mut choice, &mut out);
            out.sort();
            let id: Vec<Elt> = (0..self.order() as Elt).collect();
            let pos = out.iter().position(|a| *a == id).expect("identity automorphism");
            out.swap(0, pos);
            out
        })
    }

    fn small_generating_set(&self) -> Vec<Elt> {
        let mut by_order: Vec<Elt> = (0..self.order() as Elt).collect();
        by_order.sort_by_key(|&e| (std::cmp::Reverse(self.element_order(e)), e));
        let mut gens = Vec::new();
        let mut size = 1;
        for e in by_order {
            if size == self.order() {
                break;
            }
            let mut trial = gens.clone();
            trial.push(e);
            let s = self.subgroup_order(&trial);
            if s > size {
                gens = trial;
                size = s;
            }
        }
        gens
    }

    /// Breadth-first spanning tree of the Cayley graph for `gens`.
    fn bfs_tree(&self, gens: &[Elt]) -> (Vec<Option<(Elt, usize)>>, Vec<Elt>) {
        let n = self.order();
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = vec![0];
        let mut k = 0;
        while k < queue.len() {
            let a = queue[k];
            for (gi, &g) in gens.iter().enumerate() {
                let b = self.mul(a, g);
                if !seen[b as usize] {
                    seen[b as usize] = true;
                    parent[b as usize] = Some((a, gi));
                    queue.push(b);
                }
            }
            k += 1;
        }
        (parent, queue)
    }

    #[allow(clippy::too_many_arguments)]
    fn search_automorphisms(
        &self,
        gens: &[Elt],
        parent: &[Option<(Elt, usize)>],
        bfs: &[Elt],
        candidates: &[Vec<Elt>],
        depth: usize,
        choice: &mut Vec<Elt>,
        out: &mut Vec<Vec<Elt>>,
    ) {
        if depth == gens.len() {
            if let Some(map) = self.extend_to_automorphism(gens, parent, bfs, choice) {
                out.push(map);
            }
            return;
        }
        for &c in &candidates[depth] {
            choice[depth] = c;
            self.search_automorphisms(gens, parent, bfs, candidates, depth + 1, choice, out);
        }
    }

    fn extend_to_automorphism(
        &self,
        gens: &[Elt],
        parent: &[Option<(Elt, usize)>],
        bfs: &[Elt],
        images: &[Elt],
    ) -> Option<Vec<Elt>> {
        let n = self.order();
        let mut map = vec![0; n];
        for &e in &bfs[1..] {
            let (p, gi) = parent[e as usize].unwrap();
            map[e as usize] = self.mul(map[p as usize], images[gi]);
        }
        let mut hit = vec![false; n];
        for &m in &map {
            if std::mem::replace(&mut hit[m as usize], true) {
                return None;
            }
        }
        for a in 0..n {
            for (gi, &g) in gens.iter().enumerate() {
                let b = self.mul(a as Elt, g);
                if map[b as usize] != self.mul(map[a], images[gi]) {
                    return None;
                }
            }
        }
        Some(map)
    }

    /// Word for `e` in the defining generators, as letter codes.
    pub fn word_for(&self, mut e: Elt) -> Vec<u32> {
        let mut rev = Vec::new();
        while let Some((p, g)) = self.parent[e as usize] {
            rev.push(2 * g as u32);
            e = p;
        }
        rev.reverse();
        rev
    }
}

impl std::fmt::Debug for FiniteGroupTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroupTable").field("order", &self.order()).field("degree", &self.degree()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> FiniteGroupTable {
        let cycle: Vec<u32> = (0..n as u32).collect();
        FiniteGroupTable::from_generators(n, &[Perm::from_cycles(n, &[&[0, 1]]), Perm::from_cycles(n, &[&cycle])])
            .unwrap()
    }

    #[test]
    fn group_axioms_on_s4() {
        let g = sym(4);
        assert_eq!(g.order(), 24);
        for a in 0..24 {
            assert_eq!(g.mul(a, g.inv(a)), 0);
            assert_eq!(g.mul(0, a), a);
            for b in 0..24 {
                for c in 0..24 {
                    assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn classes_and_automorphisms() {
        let s4 = sym(4);
        assert_eq!(s4.conjugacy_classes().len(), 5);
        assert_eq!(s4.automorphisms().len(), 24);
        let s3 = sym(3);
        assert_eq!(s3.automorphisms().len(), 6);
        let c6 = FiniteGroupTable::from_generators(6, &[Perm::from_cycles(6, &[&[0, 1, 2, 3, 4, 5]])]).unwrap();
        assert_eq!(c6.automorphisms().len(), 2);
        assert!(c6.is_abelian());
    }

    #[test]
    fn words_evaluate_back() {
        let g = sym(4);
        for e in 0..24 {
            assert_eq!(g.eval(g.word_for(e), g.generators()), e);
        }
    }
}
