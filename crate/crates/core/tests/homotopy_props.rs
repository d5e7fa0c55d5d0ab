//! Property checks for products, one-step homotopy, and the distortion
//! functionals, against brute-force re-derivations.

use std::collections::{BTreeMap, BTreeSet};

use num::rational::BigRational;
use num::{Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use pph_core::complex::{Digraph, PathComplex, WeightedDigraph};
use pph_core::homology::{homology_map, induced_chain_map, ChainComplexSnapshot};
use pph_core::homotopy::{
    cod_digraph, dis_digraph, is_digraph_map, one_step_homotopic_digraph, one_step_weak_homotopic,
    product_with_i,
};
use pph_core::linalg::ScalarMode;
use pph_core::path::ElementaryPath;
use pph_core::vertex::{VertexId, VertexMap, VertexSet};

fn random_digraph(rng: &mut StdRng, max_v: usize) -> Digraph {
    let n = rng.gen_range(2..=max_v);
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let p = rng.gen_range(0.2..0.6);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.gen_bool(p) {
                edges.push((name_refs[i], name_refs[j]));
            }
        }
    }
    Digraph::from_names(&name_refs, &edges).unwrap()
}

fn random_weights(rng: &mut StdRng, g: &Digraph) -> WeightedDigraph {
    let weights: BTreeMap<(VertexId, VertexId), BigRational> = g
        .edges()
        .map(|e| (e, BigRational::new(rng.gen_range(1..20).into(), rng.gen_range(1..5).into())))
        .collect();
    WeightedDigraph::new(g.clone(), weights).unwrap()
}

fn random_map(rng: &mut StdRng, from: &VertexSet, to: &VertexSet) -> VertexMap {
    let table: Vec<VertexId> = (0..from.len()).map(|_| rng.gen_range(0..to.len()) as u32).collect();
    VertexMap::from_table(from, to, table)
}

#[test]
fn dis_and_cod_match_exhaustive_loops() {
    let mut rng = StdRng::seed_from_u64(0x9a11);
    for _ in 0..120 {
        let gd = random_digraph(&mut rng, 5);
        let g = random_weights(&mut rng, &gd);
        let hd = random_digraph(&mut rng, 5);
        let h = random_weights(&mut rng, &hd);
        let f = random_map(&mut rng, g.vertices(), h.vertices());

        let mut expected = BigRational::zero();
        for u in g.vertices().ids() {
            for v in g.vertices().ids() {
                if let (Some(wg), Some(wh)) = (
                    g.weight(u, v),
                    h.weight(f.apply(u).unwrap(), f.apply(v).unwrap()),
                ) {
                    let d = (wh - wg).abs();
                    if d > expected {
                        expected = d;
                    }
                }
            }
        }
        assert_eq!(dis_digraph(&f, &g, &h), expected);

        let f2 = random_map(&mut rng, g.vertices(), h.vertices());
        let mut expected = BigRational::zero();
        for u in g.vertices().ids() {
            for (a, b) in [
                (f.apply(u).unwrap(), f2.apply(u).unwrap()),
                (f2.apply(u).unwrap(), f.apply(u).unwrap()),
            ] {
                if let Some(w) = h.weight(a, b) {
                    if *w > expected {
                        expected = w.clone();
                    }
                }
            }
        }
        assert_eq!(cod_digraph(&f, &f2, &h), expected);
    }
}

#[test]
fn product_paths_are_exactly_copies_and_hats() {
    let mut rng = StdRng::seed_from_u64(0x9a12);
    for _ in 0..40 {
        let g = random_digraph(&mut rng, 5);
        let p = PathComplex::from_digraph(&g, rng.gen_range(1..=3));
        let prod = product_with_i(&p);
        let c = prod.complex();

        let mut expected: BTreeSet<ElementaryPath> = BTreeSet::new();
        for w in p.paths() {
            let bot: Vec<VertexId> =
                w.vertices().iter().map(|&v| prod.base().apply(v).unwrap()).collect();
            let top: Vec<VertexId> =
                w.vertices().iter().map(|&v| prod.top().apply(v).unwrap()).collect();
            expected.insert(ElementaryPath::new(bot.clone()));
            expected.insert(ElementaryPath::new(top.clone()));
            for k in 0..bot.len() {
                let mut hat = bot[..=k].to_vec();
                hat.extend_from_slice(&top[k..]);
                expected.insert(ElementaryPath::new(hat));
            }
        }
        let actual: BTreeSet<ElementaryPath> = c.paths().cloned().collect();
        assert_eq!(actual, expected, "product must add nothing beyond copies and hats");
    }
}

#[test]
fn digraph_homotopy_implies_weak_homotopy_of_complexes() {
    // a one-step digraph homotopy sends hats over d-paths to walks of
    // length at most d+1, so it certifies weakly into the (d+1)-truncation
    let mut rng = StdRng::seed_from_u64(0x9a13);
    let mut seen = 0;
    for _ in 0..400 {
        let g = random_digraph(&mut rng, 4);
        let h = random_digraph(&mut rng, 4);
        let f1 = random_map(&mut rng, g.vertices(), h.vertices());
        if !is_digraph_map(&f1, &g, &h) {
            continue;
        }
        // push each value along an out-edge (or keep it) so f1(x) ⇒̄ f2(x)
        let table: Vec<VertexId> = g
            .vertices()
            .ids()
            .map(|x| {
                let fx = f1.apply(x).unwrap();
                let outs: Vec<VertexId> = h.out_neighbors(fx).collect();
                if outs.is_empty() || rng.gen_bool(0.5) {
                    fx
                } else {
                    outs[rng.gen_range(0..outs.len())]
                }
            })
            .collect();
        let f2 = VertexMap::from_table(g.vertices(), h.vertices(), table);
        if !is_digraph_map(&f2, &g, &h) {
            continue;
        }
        assert!(one_step_homotopic_digraph(&f1, &f2, &g, &h).unwrap());
        seen += 1;
        let pg = PathComplex::from_digraph(&g, 3);
        let ph = PathComplex::from_digraph(&h, 4);
        assert!(
            one_step_weak_homotopic(&f1, &f2, &pg, &ph),
            "digraph-homotopic maps must be certified on the path complexes"
        );
    }
    assert!(seen >= 30, "sample too small: {seen}");
}

#[test]
fn homotopic_maps_agree_on_homology() {
    // random acyclic digraphs with a universal sink: the identity and the
    // constant map to the sink are one-step homotopic on the full walk
    // complex, so they must induce the same map on homology in every degree.
    let mut rng = StdRng::seed_from_u64(0x9a14);
    for trial in 0..25 {
        let n = rng.gen_range(2..=4);
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).chain(["z".into()]).collect();
        let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let mut edges: Vec<(&str, &str)> = Vec::new();
        for i in 0..n {
            edges.push((name_refs[i], "z"));
            for j in i + 1..n {
                if rng.gen_bool(0.4) {
                    edges.push((name_refs[i], name_refs[j]));
                }
            }
        }
        let g = Digraph::from_names(&name_refs, &edges).unwrap();
        let p = PathComplex::from_digraph(&g, n + 1);
        let id = VertexMap::identity(p.vertices());
        let sink = VertexMap::constant(p.vertices(), p.vertices(), p.vertices().id("z").unwrap());
        assert!(one_step_weak_homotopic(&id, &sink, &p, &p), "trial {trial}");

        let snap = ChainComplexSnapshot::new(p.clone(), p.top_degree().min(3), ScalarMode::Rational);
        let f_id = induced_chain_map(&id, &snap, &snap).unwrap();
        let f_sink = induced_chain_map(&sink, &snap, &snap).unwrap();
        let h_id = homology_map(&f_id, &snap, &snap).unwrap();
        let h_sink = homology_map(&f_sink, &snap, &snap).unwrap();
        assert_eq!(h_id.len(), h_sink.len());
        for (n, (a, b)) in h_id.iter().zip(&h_sink).enumerate() {
            assert_eq!(a, b, "trial {trial}: induced maps differ in degree {n}");
        }
    }
}
