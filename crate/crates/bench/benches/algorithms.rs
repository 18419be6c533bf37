use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use pillowcase::fgroup::{fixed_classes, induced};
use pillowcase::quot::{
    characteristic_quotient, count_surjections_up_to_aut, low_index_subgroups, torus_separation, Catalog,
    CongruenceQuotient, CongruenceSpec,
};
use pillowcase::torus::{self, GroupPresentation};
use pillowcase::Budget;
use pillowcase_bench::{long_psl_word, monodromy, PSEUDO_ANOSOV};

fn psl(c: &mut Criterion) {
    let w = long_psl_word(6);
    let k = long_psl_word(3);
    let h = w.conjugate_by(&k);
    c.bench_function("psl/conjugator", |b| b.iter(|| black_box(&w).conjugator_to(black_box(&h))));
    c.bench_function("psl/trace", |b| b.iter(|| black_box(&w).trace_abs()));
}

fn mcg(c: &mut Criterion) {
    let g = monodromy("aabbaBBu").eval();
    let k = monodromy("bAvabbu").eval();
    let h = g.conjugate_by(&k).inverse();
    c.bench_function("mcg/conjugator_up_to_inversion", |b| b.iter(|| black_box(&g).conjugator_up_to_inversion(black_box(&h))));
}

fn fgroup(c: &mut Criterion) {
    let mut group = c.benchmark_group("fgroup");
    group.sample_size(10);
    for w in PSEUDO_ANOSOV {
        let alpha = induced(&monodromy(w));
        group.bench_with_input(BenchmarkId::new("fixed_classes_l6", w), &alpha, |b, a| b.iter(|| fixed_classes(a, 6, 6).unwrap()));
    }
    group.bench_function("induced_len12", |b| b.iter(|| induced(black_box(&monodromy("abaabbabuvAB")))));
    group.finish();
}

fn torus_and_quot(c: &mut Criterion) {
    let cat = Catalog::default_catalog();
    let mut group = c.benchmark_group("quot");
    group.sample_size(10);
    group.bench_function("homology", |b| b.iter(|| torus::homology(black_box(&monodromy("abuaBBvab")))));
    let p = torus::presentation(&monodromy("aab"));
    for name in ["S4", "A5", "PSL27"] {
        let q = cat.get(name).unwrap().group();
        group.bench_with_input(BenchmarkId::new("surjections_aab", name), q, |b, q| {
            b.iter(|| count_surjections_up_to_aut(&p, q, &Budget::unlimited()).unwrap())
        });
    }
    let f3 = GroupPresentation::free_rank3();
    group.bench_function("low_index_f3_4", |b| b.iter(|| low_index_subgroups(&f3, 4, &Budget::unlimited()).unwrap()));
    group.bench_function("characteristic_k3", |b| b.iter(|| characteristic_quotient(3, &Budget::unlimited()).unwrap()));
    let spec: CongruenceSpec = "subgroups:4".parse().unwrap();
    group.bench_function("congruence_subgroups4", |b| b.iter(|| CongruenceQuotient::build(&spec, &cat, &Budget::unlimited()).unwrap()));
    let (w1, w2) = (monodromy("ab"), monodromy("aabb"));
    group.bench_function("torus_separation", |b| b.iter(|| torus_separation(&w1, &w2, &cat, &Budget::unlimited()).unwrap()));
    group.finish();
}

criterion_group!(benches, psl, mcg, fgroup, torus_and_quot);
criterion_main!(benches);
