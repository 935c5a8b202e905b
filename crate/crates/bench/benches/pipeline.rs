use criterion::{criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hypercv::{
    check_annihilation, measure_p, measure_q, realize, reduce_integral, teleport_3edge,
    unit_cell, Bindings, GridSpec, Hypergraph, StateExpr,
};

fn bench_nullifier_batch(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let graphs: Vec<Hypergraph> =
        (0..50).map(|_| Hypergraph::random(&mut rng, 8, 12, 4)).collect();
    c.bench_function("annihilation_check_50_graphs", |b| {
        b.iter(|| {
            for g in &graphs {
                std::hint::black_box(check_annihilation(g));
            }
        })
    });
}

fn bench_cell_reduce(c: &mut Criterion) {
    let (graph, cell) = unit_cell();
    let st = StateExpr::from_hypergraph(&graph);
    c.bench_function("teleport_cell_symbolic", |b| {
        b.iter(|| std::hint::black_box(teleport_3edge(&st, &cell, 1.0, 0.5).unwrap()))
    });
    let after = measure_q(&st, cell.corner, 1.0).unwrap();
    let is = measure_p(&after, cell.center, 0.5).unwrap();
    c.bench_function("reduce_integral_cell", |b| {
        b.iter(|| std::hint::black_box(reduce_integral(&is)))
    });
}

fn bench_realize(c: &mut Criterion) {
    let g = Hypergraph::new(2).with_edge(&[0, 1], 1.0).unwrap();
    let st = StateExpr::from_hypergraph(&g);
    let grid = GridSpec::self_dual(2, 128).unwrap();
    let bindings = Bindings::new();
    c.bench_function("realize_edge_state_128", |b| {
        b.iter(|| std::hint::black_box(realize(&st, 1.0, &grid, &bindings).unwrap()))
    });
}

fn bench_fourier(c: &mut Criterion) {
    let grid = GridSpec::self_dual(1, 256).unwrap();
    let st = StateExpr::vacuum(1);
    let bindings = Bindings::new();
    let wf = realize(&st, 1.0, &grid, &bindings).unwrap();
    c.bench_function("fourier_round_trip_256", |b| {
        b.iter(|| {
            let mut w = wf.clone();
            w.fourier_axis(0, false).unwrap();
            w.fourier_axis(0, true).unwrap();
            std::hint::black_box(w)
        })
    });
}

criterion_group!(benches, bench_nullifier_batch, bench_cell_reduce, bench_realize, bench_fourier);
criterion_main!(benches);
