use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sepgraph::gen::{random_labeled_graph, ring, small_psep_scene};
use sepgraph::oct::{lp_hit_odd_cycles, oct_exact, LpArith};
use sepgraph::parity::parity_partition;
use sepgraph::pointsep::{all_pairs, gps_solve, Caps, Strategy};
use sepgraph::sep2::min_st_separator;
use sepgraph::SeparationOracle;

fn sep2(c: &mut Criterion) {
    let mut group = c.benchmark_group("sep2_ring");
    for m in [4, 6, 8] {
        let sc = ring(m);
        group.bench_with_input(BenchmarkId::from_parameter(m), &sc, |b, sc| b.iter(|| min_st_separator(sc, 0).unwrap()));
    }
    group.finish();
}

fn arrangement(c: &mut Criterion) {
    let sc = ring(8);
    c.bench_function("oracle_ring_8", |b| b.iter(|| SeparationOracle::new(&sc).unwrap()));
}

fn psep(c: &mut Criterion) {
    // seed 2 is a 6-bar, 2-point scene needing four obstacles
    let sc = small_psep_scene(2);
    let pairs = all_pairs(&sc);
    let caps = Caps::default();
    let mut group = c.benchmark_group("psep");
    group.sample_size(10);
    for s in [Strategy::Brute, Strategy::Section5, Strategy::Section6] {
        group.bench_function(s.to_string(), |b| b.iter(|| gps_solve(&sc, &pairs, s, 0, &caps).unwrap()));
    }
    group.finish();
}

fn oct(c: &mut Criterion) {
    let g = random_labeled_graph(12, 20, 1, 0.0, 5);
    c.bench_function("oct_exact_12", |b| b.iter(|| oct_exact(&g, g.n)));
    c.bench_function("lp_rational_12", |b| b.iter(|| lp_hit_odd_cycles(&g, LpArith::Rational, 2000).unwrap()));
    c.bench_function("lp_float_12", |b| b.iter(|| lp_hit_odd_cycles(&g, LpArith::Float { tol: 1e-9 }, 2000).unwrap()));
    let g4 = random_labeled_graph(10, 24, 4, 0.1, 5);
    c.bench_function("parity_partition_10x4", |b| b.iter(|| parity_partition(&g4)));
}

criterion_group!(benches, sep2, arrangement, psep, oct);
criterion_main!(benches);
