//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_integer::Integer;
use pillowcase::fgroup::{fixed_classes, induced, FreeWord};
use pillowcase::mcg::{MappingClass, MonodromyWord, Sign};
use pillowcase::pslz::{PslWord, Syllable};
use pillowcase::quot::{
    all_low_index_subgroups, characteristic_quotient, enumerate_homs, low_index_subgroups, Catalog, CongruenceQuotient,
    CongruenceSpec, GroupKind, Target,
};
use pillowcase::quot::congruence::expected_power_order;
use pillowcase::torus::{self, GroupPresentation};
use pillowcase::{AbelianInvariants, Budget};
use pillowcase_cli::{distinguish, Verdict};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

/// Name, check and time limit in seconds.
type Criterion = (&'static str, fn() -> Check, u64);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_psl(rng: &mut ChaCha8Rng, max_len: usize) -> PslWord {
    let len = rng.gen_range(0..=max_len);
    PslWord::canonicalize((0..len).map(|_| [Syllable::S, Syllable::R, Syllable::R2][rng.gen_range(0..3)]))
}

fn random_class(rng: &mut ChaCha8Rng, max_len: usize) -> MappingClass {
    MappingClass::new(random_psl(rng, max_len), [rng.gen_range(0..2), rng.gen_range(0..2)])
}

fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> MonodromyWord {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| "aAbBuv".as_bytes()[rng.gen_range(0..6)] as char).collect::<String>().parse().unwrap()
}

fn mw(s: &str) -> MonodromyWord {
    s.parse().unwrap()
}

fn psl_suite() -> Check {
    let mut r = rng(1);
    let n = 10_000;
    for i in 0..n {
        let (x, y, z) = (random_psl(&mut r, 64), random_psl(&mut r, 64), random_psl(&mut r, 64));
        ensure!(PslWord::canonicalize(x.syllables().iter().copied()) == x, "canonicalization not idempotent on {x}");
        ensure!(x.to_string().parse::<PslWord>().ok() == Some(x.clone()), "round trip failed on {x}");
        ensure!(x.multiply(&y).multiply(&z) == x.multiply(&y.multiply(&z)), "associativity failed ({i})");
        ensure!(x.multiply(&x.inverse()).is_identity() && x.multiply(&PslWord::identity()) == x, "inverse/identity failed on {x}");
        ensure!(x.multiply(&y).to_matrix() == x.to_matrix().multiply(&y.to_matrix()), "matrix homomorphism failed ({i})");
        let h = x.conjugate_by(&y);
        ensure!(h.trace_abs() == x.trace_abs(), "trace not conjugation invariant ({i})");
        match x.conjugator_to(&h) {
            Some(k) if x.conjugate_by(&k) == h => {}
            _ => return Err(format!("constructed conjugate of {x} by {y} not detected")),
        }
    }
    Ok(format!("{n} words"))
}

fn mcg_suite() -> Check {
    let mut r = rng(2);
    let n = 10_000;
    for i in 0..n {
        let (g, h, k) = (random_class(&mut r, 24), random_class(&mut r, 24), random_class(&mut r, 24));
        ensure!(g.multiply(&h).multiply(&k) == g.multiply(&h.multiply(&k)), "associativity failed ({i})");
        ensure!(g.multiply(&g.inverse()).is_identity() && g.inverse().multiply(&g).is_identity(), "inverse failed ({i})");
        let pa = g.is_pseudo_anosov();
        ensure!([2, 3, -1, -2].iter().all(|&e| g.pow(e).is_pseudo_anosov() == pa), "pA not stable under powers for {g}");
    }
    let (u, v) = (mw("u").eval(), mw("v").eval());
    ensure!(!u.is_identity() && !v.is_identity() && u != v, "u, v degenerate");
    ensure!(u.pow(2).is_identity() && v.pow(2).is_identity() && u.multiply(&v).pow(2).is_identity(), "order-2 laws fail");
    ensure!(u.multiply(&v) == v.multiply(&u), "u and v do not commute");
    let random_pa = |r: &mut ChaCha8Rng| loop {
        let g = random_class(r, 20);
        if g.is_pseudo_anosov() {
            return g;
        }
    };
    for _ in 0..50 {
        let g = random_pa(&mut r);
        let h = g.conjugate_by(&random_class(&mut r, 20));
        match g.conjugator_to(&h) {
            Some(x) if g.conjugate_by(&x) == h => {}
            _ => return Err(format!("conjugate pair ({g}, {h}) missed")),
        }
    }
    let mut found = 0;
    while found < 50 {
        let (g, h) = (random_pa(&mut r), random_pa(&mut r));
        if g.psl().trace_abs() == h.psl().trace_abs() {
            continue;
        }
        found += 1;
        ensure!(g.conjugator_up_to_inversion(&h).is_none(), "pair with traces {} and {} reported conjugate", g.psl().trace_abs(), h.psl().trace_abs());
    }
    Ok(format!("{n} triples, 50 conjugate and 50 non-conjugate pA pairs"))
}

fn fixed_class_shadow() -> Check {
    let pure = [
        "ab", "aab", "abb", "aaab", "aabb", "abbb", "aaabb", "aabbb", "aabab", "ababb", "aaabbb", "abaabb",
    ];
    for w in pure {
        let w = mw(w);
        let g = w.eval();
        ensure!(g.is_pseudo_anosov() && g.puncture_permutation() == [0, 1, 2, 3], "{w} is not a pure pA");
        let res = fixed_classes(&induced(&w), 8, 6).map_err(|e| e.to_string())?;
        ensure!(res.classes.iter().all(|c| c.peripheral), "{w} fixes a non-peripheral class");
        ensure!(res.oriented_count() == 8 && res.unoriented_count() == 4, "{w}: {} oriented, {} unoriented", res.oriented_count(), res.unoriented_count());
    }
    let twists = ["a", "A", "b", "B", "aaa", "baB", "Abba"];
    for w in twists {
        let w = mw(w);
        let g = w.eval();
        ensure!(!g.is_pseudo_anosov() && g.psl().order().is_none(), "{w} is not a twist class");
        let res = fixed_classes(&induced(&w), 8, 6).map_err(|e| e.to_string())?;
        ensure!(res.peripheral_unoriented() == 4 && res.nonperipheral_unoriented() > 0, "{w}: no extra fixed class");
    }
    Ok(format!("{} pure pA words, {} twist classes", pure.len(), twists.len()))
}

fn outer_coherence() -> Check {
    let mut r = rng(4);
    for _ in 0..200 {
        let (u, v) = (random_word(&mut r, 12), random_word(&mut r, 12));
        let disc = induced(&u.concat(&v)).compose(&induced(&u).compose(&induced(&v)).invert());
        let Some(g) = disc.is_inner() else {
            return Err(format!("induced({u}{v}) differs from the composite by a non-inner automorphism"));
        };
        for j in 0..3 {
            let x = FreeWord::generator(j);
            ensure!(disc.apply(&x) == x.conjugate_by(&g), "innerness certificate {g} fails for ({u}, {v})");
        }
    }
    Ok("200 pairs".into())
}

fn det(m: &[Vec<i64>]) -> i64 {
    if m.len() == 1 {
        return m[0][0];
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..].iter().map(|r| [&r[..j], &r[j + 1..]].concat()).collect();
            (if j % 2 == 0 { 1 } else { -1 }) * m[0][j] * det(&minor)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).filter(|s| s.count_ones() as usize == k).map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect()).collect()
}

/// `Z + coker(A - I)` via gcds of minors.
fn homology_oracle(w: &MonodromyWord) -> AbelianInvariants {
    let a = induced(w).abelianization();
    let m: Vec<Vec<i64>> = (0..3).map(|i| (0..3).map(|j| a[i][j] - i64::from(i == j)).collect()).collect();
    let mut divisors = Vec::new();
    let mut prev = 1i64;
    for k in 1..=3 {
        let g = subsets(3, k)
            .iter()
            .flat_map(|rows| subsets(3, k).into_iter().map(move |cols| (rows.clone(), cols)))
            .map(|(rows, cols)| det(&rows.iter().map(|&i| cols.iter().map(|&j| m[i][j]).collect()).collect::<Vec<_>>()))
            .fold(0i64, |g, d| g.gcd(&d));
        if g == 0 {
            break;
        }
        divisors.push(g / prev);
        prev = g;
    }
    AbelianInvariants { rank: 4 - divisors.len(), torsion: divisors.into_iter().filter(|&d| d > 1).map(Into::into).collect() }
}

fn homology_oracle_suite() -> Check {
    let mut r = rng(5);
    let mut torsion = 0;
    for _ in 0..100 {
        let w = random_word(&mut r, 12);
        let h = torus::homology(&w);
        ensure!(h == homology_oracle(&w), "{w}: {h} vs oracle {}", homology_oracle(&w));
        if w.len() <= 8 {
            ensure!(torus::presentation(&w).homology() == h, "{w}: presentation route disagrees");
        }
        let k = random_word(&mut r, 12);
        ensure!(torus::homology(&k.concat(&w).concat(&k.inverse())) == h, "{w}: not conjugation invariant");
        ensure!(torus::homology(&w.inverse()) == h, "{w}: not inversion invariant");
        torsion += usize::from(!h.torsion.is_empty());
    }
    Ok(format!("100 monodromies ({torsion} with torsion)"))
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

fn hall(n: u64, r: u32) -> u64 {
    n * factorial(n).pow(r - 1) - (1..n).map(|k| factorial(n - k).pow(r - 1) * hall(k, r)).sum::<u64>()
}

fn quotient_counts() -> Check {
    let b = Budget::unlimited();
    let f3 = GroupPresentation::free_rank3();
    let c2 = Target::new("C2", GroupKind::Cyclic(2));
    let s3 = Target::new("S3", GroupKind::Symmetric(3));
    let surj = enumerate_homs(&f3, c2.group(), true, &b).map_err(|e| e.to_string())?.len();
    ensure!(surj == 7, "F3 -> C2 surjections: {surj}");
    let homs = enumerate_homs(&f3, s3.group(), false, &b).map_err(|e| e.to_string())?.len();
    ensure!(homs == 216, "F3 -> S3 homomorphisms: {homs}");
    let all = all_low_index_subgroups(&f3, 3, &b).map_err(|e| e.to_string())?;
    let index2 = all.iter().filter(|t| t.index() == 2).count();
    ensure!(index2 == 7, "index-2 subgroups: {index2}");
    let index3 = all.iter().filter(|t| t.index() == 3).count() as u64;
    ensure!(index3 == hall(3, 3), "index-3 subgroups: {index3}, Hall {}", hall(3, 3));
    let by_class: usize = low_index_subgroups(&f3, 3, &b).map_err(|e| e.to_string())?.iter().filter(|c| c.table.index() == 3).map(|c| c.class_size).sum();
    ensure!(by_class as u64 == index3, "class sizes sum to {by_class}");
    let k2 = characteristic_quotient(2, &b).map_err(|e| e.to_string())?;
    ensure!(k2.order() == 8, "|F3/K2| = {}", k2.order());
    Ok(format!("7, 216, 7, 8, {index3}"))
}

fn power_order_identity() -> Check {
    let cat = Catalog::default_catalog();
    let b = Budget::unlimited();
    let specs = ["out:2", "subgroups:2", "subgroups:3", "subgroups:4", "epi:S3", "epi:D4", "epi:Q8", "epi:A4", "epi:S4", "epi:A5"];
    let mut r = rng(7);
    let mut words: Vec<MonodromyWord> = ["ab", "aab", "abu", "aBv", "a", "u"].iter().map(|s| mw(s)).collect();
    words.extend((0..14).map(|_| random_word(&mut r, 10)));
    let mut checks = 0;
    for s in specs {
        let q = CongruenceQuotient::build(&s.parse::<CongruenceSpec>().unwrap(), &cat, &b).map_err(|e| e.to_string())?;
        for w in &words {
            let o = q.word_order(w);
            for m in 1..=12u32 {
                let om = q.word_order(&w.pow(m));
                ensure!(om == expected_power_order(o, m as u128), "{s}: o({w}) = {o} but o({w}^{m}) = {om}");
                if o % m as u128 == 0 {
                    ensure!(om == o / m as u128, "{s}: divisor case fails for {w}^{m}");
                }
                checks += 1;
            }
        }
    }
    Ok(format!("{} quotients, {checks} checks", specs.len()))
}

fn rigidity_shadow() -> Check {
    let cat = Catalog::default_catalog();
    let budget = Budget::with_time(Duration::from_secs(600));
    let conjugate = [("ab", "ba"), ("ab", "BA"), ("aab", "abb"), ("aab", "aba"), ("abu", "bau")];
    let distinct = [("ab", "aab"), ("ab", "aabb"), ("abb", "aabb"), ("ab", "aaab"), ("aab", "aaab")];
    for (x, y) in conjugate {
        let (w1, w2) = (mw(x), mw(y));
        match distinguish(&w1, &w2, &cat, &budget).map_err(|e| e.to_string())? {
            Verdict::Homeomorphic { sign, witness } => {
                let target = if sign == Sign::Plus { w2.eval() } else { w2.eval().inverse() };
                ensure!(w1.eval().conjugate_by(&witness) == target, "({x}, {y}): witness fails");
            }
            v => return Err(format!("({x}, {y}): expected HOMEOMORPHIC, got {}", v.kind())),
        }
    }
    let mut separated = 0;
    let mut notes = Vec::new();
    for (x, y) in distinct {
        let (w1, w2) = (mw(x), mw(y));
        match distinguish(&w1, &w2, &cat, &budget).map_err(|e| e.to_string())? {
            Verdict::Distinct { certificate } => {
                ensure!(certificate.replay(&w1, &w2, &cat, &Budget::unlimited()).unwrap_or(false), "({x}, {y}): certificate does not replay");
                separated += 1;
            }
            Verdict::Inconclusive { reason } => notes.push(format!("({x}, {y}) inconclusive: {reason}")),
            v => return Err(format!("({x}, {y}): wrong verdict {}", v.kind())),
        }
    }
    ensure!(separated >= 4, "only {separated} of 5 separated; {}", notes.join("; "));
    let mut msg = format!("5 homeomorphic, {separated}/5 distinct");
    for n in notes {
        msg.push_str("; ");
        msg.push_str(&n);
    }
    Ok(msg)
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 PSL(2,Z) suite", psl_suite, 10),
        ("2 mapping class group suite", mcg_suite, 30),
        ("3 fixed-class shadow", fixed_class_shadow, 300),
        ("4 outer-homomorphism coherence", outer_coherence, 60),
        ("5 homology oracle", homology_oracle_suite, 30),
        ("6 quotient counts", quotient_counts, 60),
        ("7 power-order identity", power_order_identity, 60),
        ("8 end-to-end rigidity shadow", rigidity_shadow, 600),
    ];
    let mut failed = 0;
    for (name, f, limit) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        let result = match result {
            Ok(m) if secs > limit as f64 => Err(format!("{m}; took {secs:.2}s, limit {limit}s")),
            r => r,
        };
        match result {
            Ok(m) => println!("criterion {name}: PASS ({m}) [{secs:.2}s / {limit}s]"),
            Err(m) => {
                failed += 1;
                println!("criterion {name}: FAIL ({m}) [{secs:.2}s / {limit}s]");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
