//! The reduction-derived diagrams must satisfy the rank identity
//! #{bars born ≤ δ_i, alive past δ_j} = rank(H_p(δ_i) → H_p(δ_j)) for every
//! critical pair, with the right side computed through the chain-map
//! machinery rather than the reduction.

use std::collections::BTreeMap;

use num::rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use pph_core::complex::{
    truncation_closure, Digraph, WeightedDigraph, WeightedPathComplex,
};
use pph_core::filtration::FilteredComplex;
use pph_core::linalg::ScalarMode;
use pph_core::path::ElementaryPath;
use pph_core::persistence::{betti_persistence_oracle, persistence_diagram};
use pph_core::vertex::{VertexId, VertexSet};

fn random_weighted_digraph(rng: &mut StdRng, max_v: usize) -> WeightedDigraph {
    let n = rng.gen_range(2..=max_v);
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let p = rng.gen_range(0.2..0.55);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.gen_bool(p) {
                edges.push((name_refs[i], name_refs[j]));
            }
        }
    }
    let g = Digraph::from_names(&name_refs, &edges).unwrap();
    let weights: BTreeMap<(VertexId, VertexId), BigRational> = g
        .edges()
        .map(|e| (e, BigRational::from_integer(rng.gen_range(1..5).into())))
        .collect();
    WeightedDigraph::new(g, weights).unwrap()
}

fn check_all_pairs(filtered: &FilteredComplex, p: usize, field: ScalarMode) {
    let d = persistence_diagram(filtered, p, field).unwrap();
    let idx = filtered.index();
    for i in 0..filtered.len() {
        for j in i..filtered.len() {
            let rank = betti_persistence_oracle(filtered, p, i, j, field);
            assert_eq!(
                d.alive_count(idx.value(i), idx.value(j)),
                rank,
                "degree {p}, pair ({i}, {j})"
            );
        }
    }
    let last = filtered.len() - 1;
    assert_eq!(
        d.infinite_count(),
        betti_persistence_oracle(filtered, p, last, last, field),
        "infinite bars must count the final homology"
    );
}

#[test]
fn edge_filtration_diagrams_satisfy_the_rank_identity() {
    let mut rng = StdRng::seed_from_u64(0xbe771);
    for trial in 0..60 {
        let g = random_weighted_digraph(&mut rng, 5);
        for p in 0..2 {
            let filtered = FilteredComplex::edge_filtration(&g, p + 1);
            check_all_pairs(&filtered, p, ScalarMode::Rational);
        }
        let _ = trial;
    }
}

#[test]
fn path_filtration_diagrams_satisfy_the_rank_identity() {
    let mut rng = StdRng::seed_from_u64(0xbe772);
    for _ in 0..40 {
        let g = random_weighted_digraph(&mut rng, 4);
        let w = WeightedPathComplex::from_weighted_digraph(&g, 2);
        let filtered = FilteredComplex::path_filtration(&w);
        for p in 0..2 {
            check_all_pairs(&filtered, p, ScalarMode::Rational);
        }
    }
}

#[test]
fn non_regular_path_filtrations_run_the_same_identity() {
    // complexes with repeated vertices exercise the non-regular boundary
    let mut rng = StdRng::seed_from_u64(0xbe773);
    for _ in 0..25 {
        let n = rng.gen_range(2..=3);
        let vs = VertexSet::new((0..n).map(|i| format!("v{i}")));
        let gens: Vec<ElementaryPath> = (0..rng.gen_range(1..=3))
            .map(|_| {
                let len = rng.gen_range(2..=3);
                ElementaryPath::new(
                    (0..len).map(|_| rng.gen_range(0..n) as VertexId).collect(),
                )
            })
            .collect();
        let complex = truncation_closure(vs, gens);
        let weights: BTreeMap<(VertexId, VertexId), BigRational> = complex
            .stratum(1)
            .map(|e| {
                (
                    (e.vertices()[0], e.vertices()[1]),
                    BigRational::from_integer(rng.gen_range(1..4).into()),
                )
            })
            .collect();
        let w = WeightedPathComplex::new(complex, weights).unwrap();
        let filtered = FilteredComplex::path_filtration(&w);
        check_all_pairs(&filtered, 0, ScalarMode::Rational);
        check_all_pairs(&filtered, 1, ScalarMode::Rational);
    }
}

#[test]
fn prime_fields_agree_with_rationals_on_small_inputs() {
    // characteristic quirks need torsion; these complexes have none, so the
    // diagrams must coincide across fields
    let mut rng = StdRng::seed_from_u64(0xbe774);
    for _ in 0..15 {
        let g = random_weighted_digraph(&mut rng, 4);
        for p in 0..2 {
            let filtered = FilteredComplex::edge_filtration(&g, p + 1);
            let rat = persistence_diagram(&filtered, p, ScalarMode::Rational).unwrap();
            for q in [2u64, 7] {
                let modular =
                    persistence_diagram(&filtered, p, ScalarMode::prime(q).unwrap()).unwrap();
                assert_eq!(rat, modular, "field F{q}, degree {p}");
                check_all_pairs(&filtered, p, ScalarMode::prime(q).unwrap());
            }
        }
    }
}
