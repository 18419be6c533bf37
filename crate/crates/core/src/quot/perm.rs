//! Permutations and stabilizer chains.

use std::fmt;

use num_integer::Integer;

/// A permutation of `0..degree`, acting on the right: `i^(p*q) = (i^p)^q`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u32).collect())
    }

    /// Panics unless `images` is a bijection of `0..len`.
    pub fn from_images(images: Vec<u32>) -> Self {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            assert!((i as usize) < images.len() && !seen[i as usize], "not a permutation");
            seen[i as usize] = true;
        }
        Perm(images)
    }

    /// Builds a permutation from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Self {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                images[a as usize] = cycle[(k + 1) % cycle.len()];
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn image(&self, i: u32) -> u32 {
        self.0[i as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// `self` then `other`.
    pub fn mul(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut out = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            out[j as usize] = i as u32;
        }
        Perm(out)
    }

    pub fn pow(&self, n: u64) -> Perm {
        let mut acc = Perm::identity(self.degree());
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = self.0[j] as usize;
                len += 1;
            }
            out.push(len);
        }
        out
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> u128 {
        self.cycle_lengths().into_iter().fold(1u128, |acc, l| acc.lcm(&(l as u128)))
    }

    /// Direct sum acting on `0..self.degree() + other.degree()`.
    pub fn direct_sum(&self, other: &Perm) -> Perm {
        let shift = self.0.len() as u32;
        Perm(self.0.iter().copied().chain(other.0.iter().map(|&i| i + shift)).collect())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Perm {
    /// Cycle notation with 1-based points; the identity is `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.0.len()];
        let mut any = false;
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            any = true;
            f.write_str("(")?;
            let mut j = start;
            let mut first = true;
            while !seen[j] {
                seen[j] = true;
                if !first {
                    f.write_str(",")?;
                }
                first = false;
                write!(f, "{}", j + 1)?;
                j = self.0[j] as usize;
            }
            f.write_str(")")?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

struct Level {
    point: u32,
    gens: Vec<Perm>,
    orbit: Vec<u32>,
    /// `transversal[b]` maps `point` to `b`.
    transversal: Vec<Option<Perm>>,
}

impl Level {
    fn new(point: u32, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[point as usize] = Some(Perm::identity(degree));
        Level { point, gens: Vec::new(), orbit: vec![point], transversal }
    }
}

/// A permutation group with a base and strong generating set built by the
/// deterministic Schreier-Sims algorithm.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    levels: Vec<Level>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Self {
        assert!(generators.iter().all(|g| g.degree() == degree), "generator degree mismatch");
        let mut group = PermGroup { degree, generators: generators.clone(), levels: Vec::new() };
        for g in generators {
            let (residue, depth) = group.sift(&g, 0);
            if !residue.is_identity() {
                group.extend(depth, residue);
            }
        }
        group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.sift(g, 0).0.is_identity()
    }

    /// Strips `g` through the chain from `start`; returns the residue and the
    /// level where it stopped.
    fn sift(&self, g: &Perm, start: usize) -> (Perm, usize) {
        let mut h = g.clone();
        for (depth, level) in self.levels.iter().enumerate().skip(start) {
            let b = h.image(level.point);
            match &level.transversal[b as usize] {
                Some(u) => h = h.mul(&u.inverse()),
                None => return (h, depth),
            }
        }
        (h, self.levels.len())
    }

    /// Adds `g` (fixing the first `depth` base points) as a strong generator
    /// at every level down to `depth`, then closes the chain under the new
    /// Schreier generators.
    fn extend(&mut self, depth: usize, g: Perm) {
        if depth == self.levels.len() {
            let point = (0..self.degree as u32).find(|&i| g.image(i) != i).expect("nontrivial residue");
            self.levels.push(Level::new(point, self.degree));
        }
        for j in (0..=depth).rev() {
            self.add_to_level(j, g.clone());
        }
    }

    fn add_to_level(&mut self, depth: usize, g: Perm) {
        let old_len = self.levels[depth].orbit.len();
        self.levels[depth].gens.push(g);
        let new_gen = self.levels[depth].gens.len() - 1;
        {
            let level = &mut self.levels[depth];
            let mut k = 0;
            while k < level.orbit.len() {
                let b = level.orbit[k];
                for s in 0..level.gens.len() {
                    let c = level.gens[s].image(b);
                    if level.transversal[c as usize].is_none() {
                        let u = level.transversal[b as usize].as_ref().unwrap().mul(&level.gens[s]);
                        level.transversal[c as usize] = Some(u);
                        level.orbit.push(c);
                    }
                }
                k += 1;
            }
        }
        // Schreier generators involving a new orbit point or the new generator
        let mut pending = Vec::new();
        {
            let level = &self.levels[depth];
            for (k, &b) in level.orbit.iter().enumerate() {
                let ub = level.transversal[b as usize].as_ref().unwrap();
                let range = if k < old_len { new_gen..new_gen + 1 } else { 0..level.gens.len() };
                for s in range {
                    let c = level.gens[s].image(b);
                    let uc = level.transversal[c as usize].as_ref().unwrap();
                    let h = ub.mul(&level.gens[s]).mul(&uc.inverse());
                    if !h.is_identity() {
                        pending.push(h);
                    }
                }
            }
        }
        for h in pending {
            let (residue, d) = self.sift(&h, depth + 1);
            if !residue.is_identity() {
                self.extend(d, residue);
            }
        }
    }
}
