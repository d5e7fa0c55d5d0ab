//! Pipeline benchmarks: complex construction, Ω-basis and homology ranks,
//! filtered persistence, and bottleneck matching, each on inputs large
//! enough to exercise the exact arithmetic without dwarfing a laptop run.

use std::collections::{BTreeMap, BTreeSet};
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use num::rational::BigRational;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pph_core::bottleneck::bottleneck_distance;
use pph_core::complex::{Digraph, PathComplex, WeightedDigraph, WeightedPathComplex};
use pph_core::filtration::FilteredComplex;
use pph_core::homology::homology_dims;
use pph_core::linalg::ScalarMode;
use pph_core::persistence::{persistence_diagram, Death, PersistenceDiagram};
use pph_core::vertex::VertexSet;

fn random_weighted_digraph(seed: u64, n: usize, p: f64) -> WeightedDigraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names: Vec<String> = (0..n).map(|i| format!("v{i:02}")).collect();
    let mut edges = BTreeSet::new();
    for i in 0..n as u32 {
        for j in 0..n as u32 {
            if i != j && rng.gen_bool(p) {
                edges.insert((i, j));
            }
        }
    }
    let g = Digraph::new(VertexSet::new(names), edges).unwrap();
    let weights: BTreeMap<_, _> = g
        .edges()
        .map(|e| (e, BigRational::new(rng.gen_range(1..=16i64).into(), 4.into())))
        .collect();
    WeightedDigraph::new(g, weights).unwrap()
}

fn random_diagram(seed: u64, points: usize) -> PersistenceDiagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut d = PersistenceDiagram::empty(1);
    for _ in 0..points {
        let birth = BigRational::new(rng.gen_range(0..64i64).into(), 8.into());
        let death = if rng.gen_bool(0.15) {
            Death::Infinite
        } else {
            Death::Finite(&birth + BigRational::new(rng.gen_range(1..=40i64).into(), 8.into()))
        };
        d.insert(birth, death);
    }
    d
}

fn bench_complex_construction(c: &mut Criterion) {
    let g = random_weighted_digraph(1, 12, 0.3);
    c.bench_function("path complex from 12-vertex digraph, degree 3", |b| {
        b.iter(|| black_box(PathComplex::from_digraph(black_box(g.graph()), 3)))
    });
}

fn bench_homology(c: &mut Criterion) {
    let g = random_weighted_digraph(2, 12, 0.3);
    let complex = PathComplex::from_digraph(g.graph(), 3);
    c.bench_function("homology dims through degree 2, rational", |b| {
        b.iter(|| black_box(homology_dims(black_box(&complex), 2, ScalarMode::Rational)))
    });
    c.bench_function("homology dims through degree 2, F_7", |b| {
        let f7 = ScalarMode::prime(7).unwrap();
        b.iter(|| black_box(homology_dims(black_box(&complex), 2, f7)))
    });
}

fn bench_persistence(c: &mut Criterion) {
    let g = random_weighted_digraph(3, 10, 0.35);
    c.bench_function("edge filtration of a 10-vertex digraph", |b| {
        b.iter(|| black_box(FilteredComplex::edge_filtration(black_box(&g), 2)))
    });
    let filtered = FilteredComplex::edge_filtration(&g, 2);
    c.bench_function("persistence diagram in degree 1", |b| {
        b.iter(|| black_box(persistence_diagram(black_box(&filtered), 1, ScalarMode::Rational)))
    });

    let w = WeightedPathComplex::from_weighted_digraph(&random_weighted_digraph(4, 7, 0.3), 3);
    let filtered = FilteredComplex::path_filtration(&w);
    c.bench_function("path-filtration persistence in degree 1", |b| {
        b.iter(|| black_box(persistence_diagram(black_box(&filtered), 1, ScalarMode::Rational)))
    });
}

fn bench_bottleneck(c: &mut Criterion) {
    let d1 = random_diagram(5, 40);
    let d2 = random_diagram(6, 40);
    c.bench_function("bottleneck distance, 40 vs 40 points", |b| {
        b.iter(|| black_box(bottleneck_distance(black_box(&d1), black_box(&d2)).unwrap()))
    });
}

criterion_group!(
    benches,
    bench_complex_construction,
    bench_homology,
    bench_persistence,
    bench_bottleneck
);
criterion_main!(benches);
