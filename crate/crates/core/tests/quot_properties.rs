use pillowcase::budget::Budget;
use pillowcase::fgroup::{induced, FreeWord};
use pillowcase::mcg::MonodromyWord;
use pillowcase::quot::{
    all_low_index_subgroups, characteristic_quotient, enumerate_homs, fingerprint, separating_witness,
    torus_separation, Catalog, CongruenceQuotient, CongruenceSpec, Perm, PermGroup, WitnessOutcome,
};
use pillowcase::torus::{self, GenLetter, GroupPresentation};
use proptest::prelude::*;

fn mw(s: &str) -> MonodromyWord {
    s.parse().unwrap()
}

fn small_catalog() -> Catalog {
    Catalog::parse("C2 cyclic 2\nC3 cyclic 3\nC4 cyclic 4\nV4 elementary 2 2\nS3 symmetric 3\nD4 dihedral 4\nA4 alternating 4", "small").unwrap()
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// Subgroups of index exactly n in a free group of rank r, by Hall's recursion.
fn hall(n: u64, r: u32) -> u64 {
    let total = n * factorial(n).pow(r - 1);
    total - (1..n).map(|k| factorial(n - k).pow(r - 1) * hall(k, r)).sum::<u64>()
}

#[test]
fn hall_formula_oracle() {
    assert_eq!((1..=4).map(|n| hall(n, 3)).collect::<Vec<_>>(), vec![1, 7, 97, 2143]);
    let f3 = GroupPresentation::free_rank3();
    let all = all_low_index_subgroups(&f3, 4, &Budget::unlimited()).unwrap();
    for n in 1..=4 {
        assert_eq!(all.iter().filter(|t| t.index() == n as usize).count() as u64, hall(n, 3), "index {n}");
    }
    let f2 = GroupPresentation::new(vec!["a".into(), "b".into()], vec![]).unwrap();
    let all = all_low_index_subgroups(&f2, 5, &Budget::unlimited()).unwrap();
    for n in 1..=5 {
        assert_eq!(all.iter().filter(|t| t.index() == n as usize).count() as u64, hall(n, 2), "rank 2 index {n}");
    }
}

/// S3 as permutations of {0,1,2}, composed left to right.
fn s3() -> Vec<[usize; 3]> {
    vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]]
}

fn s3_eval(word: &[GenLetter], images: &[[usize; 3]]) -> [usize; 3] {
    let inv = |p: [usize; 3]| {
        let mut q = [0; 3];
        for i in 0..3 {
            q[p[i]] = i;
        }
        q
    };
    word.iter().fold([0, 1, 2], |acc, &l| {
        let g = images[(l / 2) as usize];
        let g = if l % 2 == 0 { g } else { inv(g) };
        [g[acc[0]], g[acc[1]], g[acc[2]]]
    })
}

fn brute_force_s3_homs(p: &GroupPresentation) -> usize {
    let elems = s3();
    let n = p.rank();
    let mut count = 0;
    for code in 0..6usize.pow(n as u32) {
        let images: Vec<[usize; 3]> = (0..n).map(|k| elems[code / 6usize.pow(k as u32) % 6]).collect();
        if p.relators().iter().all(|r| s3_eval(r, &images) == [0, 1, 2]) {
            count += 1;
        }
    }
    count
}

#[test]
fn product_torus_homs_into_c2() {
    // every tuple in (Z/2)^4 satisfies commutator relators
    let p = torus::presentation(&mw(""));
    let cat = small_catalog();
    let c2 = cat.get("C2").unwrap().group();
    let homs = enumerate_homs(&p, c2, false, &Budget::unlimited()).unwrap();
    assert_eq!(homs.len(), 16);
    assert_eq!(enumerate_homs(&p, c2, true, &Budget::unlimited()).unwrap().len(), 15);
}

#[test]
fn k_tower_is_nested() {
    let b = Budget::unlimited();
    let ks: Vec<_> = (1..=3).map(|i| characteristic_quotient(i, &b).unwrap()).collect();
    assert_eq!(ks[2].order(), 1_033_121_304);
    for pair in ks.windows(2) {
        let (small, big) = (&pair[0], &pair[1]);
        // the graph of F3/K_(i+1) -> F3/K_i is a subgroup of order |F3/K_(i+1)|
        let gens: Vec<Perm> = (0..3).map(|j| big.images[j].direct_sum(&small.images[j])).collect();
        let graph = PermGroup::new(big.degree() + small.degree(), gens);
        assert_eq!(graph.order(), big.order());
    }
    assert!(ks[2].verify_characteristic());
}

#[test]
fn witnesses_replay() {
    let cat = Catalog::default_catalog();
    let b = Budget::unlimited();
    for (x, y) in [("ab", "aab"), ("ab", "aabb"), ("abb", "aabb"), ("ab", "aaab"), ("aab", "aaab"), ("ab", "abu")] {
        let (w1, w2) = (mw(x), mw(y));
        let WitnessOutcome::Separated(c) = torus_separation(&w1, &w2, &cat, &b).unwrap() else {
            panic!("{x} vs {y} not separated");
        };
        assert!(c.separates_bundles());
        assert!(c.replay(&w1, &w2, &cat, &b).unwrap(), "{c}");
        assert!(!c.replay(&w1, &w1, &cat, &b).unwrap());
        if let WitnessOutcome::Separated(c) = separating_witness(&w1, &w2, &cat, 3, &b).unwrap() {
            assert!(c.replay(&w1, &w2, &cat, &b).unwrap(), "{c}");
        }
    }
}

#[test]
fn congruence_images_are_outer_homomorphic() {
    let cat = Catalog::default_catalog();
    let b = Budget::unlimited();
    let specs = ["out:2", "subgroups:3", "epi:S3", "epi:A4"];
    let words = ["", "a", "ab", "uBv", "abuAbv", "bbaBu", "vaub"];
    for s in specs {
        let q = CongruenceQuotient::build(&s.parse::<CongruenceSpec>().unwrap(), &cat, &b).unwrap();
        for w in words {
            let w = mw(w);
            // inner automorphisms act trivially on these quotients
            assert_eq!(q.image(&induced(&w)), q.word_image(&w), "{s} {w}");
        }
        assert_eq!(q.word_order(&mw("")), 1);
    }
}

fn mword(max: usize) -> impl Strategy<Value = MonodromyWord> {
    proptest::string::string_regex(&format!("[aAbBuv]{{0,{max}}}")).unwrap().prop_map(|s| s.parse().unwrap())
}

/// Replaces generator `x1` by `x1 x2`: relators are rewritten through
/// `x1 = y1 x2^-1`, giving an isomorphic presentation.
fn nielsen_substitute(p: &GroupPresentation) -> GroupPresentation {
    let relators = p
        .relators()
        .iter()
        .map(|r| {
            r.iter()
                .flat_map(|&l| match l {
                    0 => vec![0, 3],
                    1 => vec![2, 1],
                    _ => vec![l],
                })
                .collect()
        })
        .collect();
    GroupPresentation::new(p.generators().to_vec(), relators).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn homs_satisfy_relators_and_match_brute_force(w in mword(6)) {
        let p = torus::presentation(&w);
        let cat = small_catalog();
        let q = cat.get("S3").unwrap().group();
        let homs = enumerate_homs(&p, q, false, &Budget::unlimited()).unwrap();
        prop_assert_eq!(homs.len(), brute_force_s3_homs(&p));
        for h in &homs {
            for r in p.relators() {
                prop_assert_eq!(q.eval(r.iter().copied(), h), q.identity());
            }
        }
    }

    #[test]
    fn fingerprints_are_isomorphism_invariants(w in mword(6), k in mword(4)) {
        let cat = small_catalog();
        let b = Budget::unlimited();
        let p = torus::presentation(&w);
        let fp = fingerprint(&p, &cat, &b).unwrap();
        prop_assert!(fp.is_complete());
        prop_assert_eq!(&fingerprint(&nielsen_substitute(&p), &cat, &b).unwrap(), &fp);
        let conj = k.concat(&w).concat(&k.inverse());
        prop_assert_eq!(&fingerprint(&torus::presentation(&conj), &cat, &b).unwrap(), &fp);
        prop_assert_eq!(&fingerprint(&torus::presentation(&w.inverse()), &cat, &b).unwrap(), &fp);
    }

    #[test]
    fn free_word_images_are_consistent(x in "[xXyYzZ]{0,10}") {
        let k2 = characteristic_quotient(2, &Budget::unlimited()).unwrap();
        let x: FreeWord = x.parse().unwrap();
        prop_assert!(k2.image_of(&x.mul(&x)).is_identity());
    }
}
