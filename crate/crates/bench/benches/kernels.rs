use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, Criterion};

use cubicfold::chain::{lemma_records, verify_exact, ChainCheck};
use cubicfold::cubicsurf::paper_surface;
use cubicfold::fields::{CycloField, Field};
use cubicfold::geiser::double_cover_stats;
use cubicfold::report::{Mode, RunConfig};
use cubicfold::tower::Tower;
use cubicfold_bench::{gcd_pair, tower_element};

fn tower_inversion(c: &mut Criterion) {
    let t = Tower::new(CycloField, 4);
    let a = tower_element(&t);
    let mut g = c.benchmark_group("tower");
    g.sample_size(10).measurement_time(Duration::from_secs(20));
    g.bench_function("inverse_n4", |b| b.iter(|| t.field().inv(black_box(&a)).unwrap()));
    g.finish();
}

fn lemmas(c: &mut Criterion) {
    let mut g = c.benchmark_group("lemmas");
    g.sample_size(10);
    g.bench_function("exact_n4", |b| b.iter(|| verify_exact(4, &ChainCheck::FOUR_CURVES, 1)));
    let cfg = RunConfig { mode: Mode::Modular, n: 5, ..RunConfig::default() };
    g.bench_function("modular_n5_with_mutations", |b| b.iter(|| lemma_records(black_box(&cfg))));
    g.finish();
}

fn geiser(c: &mut Criterion) {
    let mut g = c.benchmark_group("geiser");
    g.sample_size(10);
    g.bench_function("fibers_10007_x50", |b| b.iter(|| double_cover_stats(10007, 50, 1).unwrap()));
    g.finish();
}

fn lines(c: &mut Criterion) {
    let s = paper_surface(CycloField);
    c.bench_function("lines27_with_incidences_paper_surface", |b| {
        b.iter(|| {
            let l = s.lines27().unwrap();
            s.meeting_counts(&l).unwrap()
        })
    });
}

fn gcd(c: &mut Criterion) {
    let (r, a, b) = gcd_pair();
    c.bench_function("gcd_q_omega_bivariate", |bch| bch.iter(|| r.gcd(black_box(&a), black_box(&b))));
}

criterion_group!(benches, tower_inversion, lemmas, geiser, lines, gcd);
criterion_main!(benches);
