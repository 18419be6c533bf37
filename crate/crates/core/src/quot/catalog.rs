//! Target catalogs: named finite groups described one per line.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::finite_group::FiniteGroupTable;
use super::perm::Perm;
use crate::error::{Error, Result};

pub const DEFAULT_CATALOG: &str = include_str!("../../data/default_catalog.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Cyclic(u32),
    Symmetric(u32),
    Alternating(u32),
    /// Dihedral group of order `2n`.
    Dihedral(u32),
    /// Generalized quaternion group of the given order.
    Quaternion(u32),
    /// `(Z/p)^k`.
    Elementary(u32, u32),
    /// `PSL(2, p)` acting on the projective line over `F_p`.
    Psl2(u32),
}

impl GroupKind {
    /// Faithful permutation generators.
    pub fn generators(&self) -> (usize, Vec<Perm>) {
        match *self {
            GroupKind::Cyclic(n) => {
                let n = n as usize;
                (n, vec![cycle(n, 0, n)])
            }
            GroupKind::Symmetric(n) => {
                let n = n as usize;
                (n, vec![cycle(n, 0, 2), cycle(n, 0, n)])
            }
            GroupKind::Alternating(n) => {
                let n = n as usize;
                let gens = (2..n as u32).map(|k| Perm::from_cycles(n, &[&[0, 1, k]])).collect();
                (n, gens)
            }
            GroupKind::Dihedral(n) => {
                let reflection = Perm::from_images((0..n).map(|i| (n - i) % n).collect());
                (n as usize, vec![cycle(n as usize, 0, n as usize), reflection])
            }
            GroupKind::Quaternion(order) => {
                // <a, b | a^2m, b^2 = a^m, b a b^-1 = a^-1> on itself; a^i b^j at i + 2m j
                let m = order / 4;
                let idx = |i: u32, j: u32| (i % (2 * m)) + 2 * m * j;
                let a = (0..order).map(|x| idx(x % (2 * m) + 1, x / (2 * m))).collect();
                let b = (0..order)
                    .map(|x| {
                        let (i, j) = (x % (2 * m), x / (2 * m));
                        let neg = (2 * m - i) % (2 * m);
                        if j == 0 {
                            idx(neg, 1)
                        } else {
                            idx(neg + m, 0)
                        }
                    })
                    .collect();
                (order as usize, vec![Perm::from_images(a), Perm::from_images(b)])
            }
            GroupKind::Elementary(p, k) => {
                let degree = (p * k) as usize;
                let gens = (0..k as usize).map(|i| cycle(degree, i * p as usize, p as usize)).collect();
                (degree, gens)
            }
            GroupKind::Psl2(p) => {
                // points 0..p-1 of F_p and infinity = p
                let inf = p;
                let translate = (0..=p).map(|z| if z == inf { inf } else { (z + 1) % p }).collect();
                let invert = (0..=p)
                    .map(|z| match z {
                        0 => inf,
                        z if z == inf => 0,
                        z => (p - inverse_mod(z, p)) % p,
                    })
                    .collect();
                (p as usize + 1, vec![Perm::from_images(translate), Perm::from_images(invert)])
            }
        }
    }

    fn validate(&self) -> std::result::Result<(), String> {
        let ok = match *self {
            GroupKind::Cyclic(n) => (1..=10_000).contains(&n),
            GroupKind::Symmetric(n) | GroupKind::Alternating(n) => (3..=8).contains(&n),
            GroupKind::Dihedral(n) => (3..=5_000).contains(&n),
            GroupKind::Quaternion(o) => o >= 8 && o.is_power_of_two() && o <= 4096,
            GroupKind::Elementary(p, k) => is_prime(p) && k >= 1 && (p as u64).pow(k) <= 100_000,
            GroupKind::Psl2(p) => is_prime(p) && (5..=47).contains(&p),
        };
        if ok {
            Ok(())
        } else {
            Err(format!("unsupported parameters for {self}"))
        }
    }
}

fn cycle(degree: usize, start: usize, len: usize) -> Perm {
    let pts: Vec<u32> = (start as u32..(start + len) as u32).collect();
    Perm::from_cycles(degree, &[&pts])
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn inverse_mod(z: u32, p: u32) -> u32 {
    (1..p).find(|&y| (y as u64 * z as u64) % p as u64 == 1).expect("p prime")
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Cyclic(n) => write!(f, "cyclic {n}"),
            GroupKind::Symmetric(n) => write!(f, "symmetric {n}"),
            GroupKind::Alternating(n) => write!(f, "alternating {n}"),
            GroupKind::Dihedral(n) => write!(f, "dihedral {n}"),
            GroupKind::Quaternion(n) => write!(f, "quaternion {n}"),
            GroupKind::Elementary(p, k) => write!(f, "elementary {p} {k}"),
            GroupKind::Psl2(p) => write!(f, "psl2 {p}"),
        }
    }
}

/// One catalog line, with its group built on first use.
#[derive(Clone)]
pub struct Target {
    pub name: String,
    pub kind: GroupKind,
    group: Arc<std::sync::OnceLock<FiniteGroupTable>>,
}

impl Target {
    pub fn new(name: impl Into<String>, kind: GroupKind) -> Self {
        Target { name: name.into(), kind, group: Arc::new(std::sync::OnceLock::new()) }
    }

    pub fn group(&self) -> &FiniteGroupTable {
        self.group.get_or_init(|| {
            let (degree, gens) = self.kind.generators();
            FiniteGroupTable::from_generators(degree, &gens).expect("catalog groups are validated on parse")
        })
    }
}

impl fmt::Debug for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.name, self.kind)
    }
}

#[derive(Clone, Debug)]
pub struct Catalog {
    pub id: String,
    pub targets: Vec<Target>,
}

impl Catalog {
    /// Parses `name kind params` lines; `#` starts a comment.
    pub fn parse(text: &str, id: impl Into<String>) -> Result<Self> {
        let mut targets: Vec<Target> = Vec::new();
        let mut offset = 0;
        for line in text.split_inclusive('\n') {
            let pos = offset;
            offset += line.len();
            let content = line.split('#').next().unwrap().trim();
            if content.is_empty() {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            if fields.len() < 3 {
                return Err(Error::parse(pos, format!("expected `name kind params`, got {content:?}")));
            }
            let name = fields[0];
            if targets.iter().any(|t| t.name == name) {
                return Err(Error::parse(pos, format!("duplicate target name {name}")));
            }
            let nums: Vec<u32> = fields[2..]
                .iter()
                .map(|s| s.parse::<u32>().map_err(|_| Error::parse(pos, format!("bad parameter {s:?}"))))
                .collect::<Result<_>>()?;
            let kind = match (fields[1], nums.as_slice()) {
                ("cyclic", &[n]) => GroupKind::Cyclic(n),
                ("symmetric", &[n]) => GroupKind::Symmetric(n),
                ("alternating", &[n]) => GroupKind::Alternating(n),
                ("dihedral", &[n]) => GroupKind::Dihedral(n),
                ("quaternion", &[n]) => GroupKind::Quaternion(n),
                ("elementary", &[p, k]) => GroupKind::Elementary(p, k),
                ("psl2", &[p]) => GroupKind::Psl2(p),
                (kind, _) => return Err(Error::parse(pos, format!("unknown kind or arity: {kind}"))),
            };
            kind.validate().map_err(|m| Error::parse(pos, m))?;
            targets.push(Target::new(name, kind));
        }
        if targets.is_empty() {
            return Err(Error::parse(0, "catalog has no targets"));
        }
        Ok(Catalog { id: id.into(), targets })
    }

    pub fn default_catalog() -> Self {
        Catalog::parse(DEFAULT_CATALOG, "default").expect("bundled catalog parses")
    }

    pub fn get(&self, name: &str) -> Option<&Target> {
        self.targets.iter().find(|t| t.name == name)
    }
}

impl FromStr for GroupKind {
    type Err = Error;

    /// `kind params`, as in a catalog line without the name.
    fn from_str(s: &str) -> Result<Self> {
        let cat = Catalog::parse(&format!("G {s}"), "")?;
        Ok(cat.targets[0].kind)
    }
}
