//! Empirical certification of the weight-perturbation stability bound.
//!
//! Each trial perturbs every weight independently within `[−ε, +ε]`,
//! re-serializes the instance through the exact literal formats (so the
//! perturbed weights are exactly what a file could hold), computes both
//! diagrams, and compares the bottleneck distance against the corollary
//! bound built from the *actual* perturbations: `max |Δw|` over edges for
//! the edge filtration, and `max |Δlen|` over allowed paths for the path
//! filtration (lengths are additive, so a k-edge path can drift k times as
//! far as any single weight).  Clamping a weight back to positivity shrinks
//! the bound accordingly.
//!
//! Trials are seeded per-index from `--seed`, so a violation report names a
//! seed that reproduces it in isolation.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::Args;

use num::rational::BigRational;
use num::{Signed, Zero};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rayon::prelude::*;

use pph_core::bottleneck::{bottleneck_distance, Cost};
use pph_core::complex::WeightedPathComplex;
use pph_core::linalg::{format_rational, parse_rational};
use pph_core::persistence::PersistenceDiagram;
use pph_core::vertex::VertexId;

use crate::{
    diagram_of_wdg, diagram_of_wpc, format_cost, load_wdg, load_wpc, CliError, FieldArg,
    FiltrationKind,
};

#[derive(Args)]
pub struct PerturbArgs {
    /// Input file: .wdg for --filtration edge, .wpc for --filtration path
    input: PathBuf,
    #[arg(long, value_enum)]
    filtration: FiltrationKind,
    /// Homology degree whose diagrams are compared
    #[arg(long)]
    dim: usize,
    /// Perturbation radius (exact literal, ≥ 0)
    #[arg(long)]
    eps: String,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "rat")]
    field: FieldArg,
}

/// Perturbation grid: Δ = ε·k/4096 for a uniform k in [−4096, 4096].
const GRID: i64 = 4096;

type WeightTable = BTreeMap<(VertexId, VertexId), BigRational>;

/// Perturb each weight and report the new table with max |Δw| actually
/// applied.
fn perturbed_weights<'a>(
    rng: &mut ChaCha8Rng,
    weights: impl Iterator<Item = ((VertexId, VertexId), &'a BigRational)>,
    eps: &BigRational,
) -> (WeightTable, BigRational) {
    let mut table = WeightTable::new();
    let mut max_delta = BigRational::zero();
    for (edge, w) in weights {
        let k = rng.gen_range(-GRID..=GRID);
        let mut candidate = w + eps * BigRational::new(k.into(), GRID.into());
        if candidate <= BigRational::zero() {
            candidate = w / BigRational::from_integer(2.into());
        }
        let exact = parse_rational(&format_rational(&candidate))
            .expect("canonical rational text round-trips");
        max_delta = max_delta.max((&exact - w).abs());
        table.insert(edge, exact);
    }
    (table, max_delta)
}

/// The down-horizon corollary bound: max |Δlen| over all allowed paths.
fn length_bound(base: &WeightedPathComplex, perturbed: &WeightedPathComplex) -> BigRational {
    let mut bound = BigRational::zero();
    for p in base.complex().paths() {
        if p.degree() < 1 {
            continue;
        }
        let before = base.path_length(p).expect("every 1-path is weighted");
        let after = perturbed.path_length(p).expect("reweighting keeps the complex");
        bound = bound.max((after - before).abs());
    }
    bound
}

struct Trial {
    index: u64,
    seed: u64,
    distance: Cost,
    bound: BigRational,
}

impl Trial {
    fn violated(&self) -> bool {
        self.distance > Cost::Finite(self.bound.clone())
    }
}

pub fn run(a: PerturbArgs) -> Result<(), CliError> {
    let eps = parse_rational(&a.eps)
        .map_err(|e| CliError::Usage(format!("bad --eps {:?}: {e}", a.eps)))?;
    if eps < BigRational::zero() {
        return Err(CliError::Usage(format!("--eps {} is negative", a.eps)));
    }
    if a.trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }

    let trial_of: Box<dyn Fn(u64) -> Trial + Sync> = match a.filtration {
        FiltrationKind::Edge => {
            let g = load_wdg(&a.input)?;
            let base = diagram_of_wdg(&g, a.dim, a.field.0);
            let eps = eps.clone();
            Box::new(move |index| {
                let seed = a.seed.wrapping_add(index);
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let (table, bound) = perturbed_weights(&mut rng, g.weights(), &eps);
                let perturbed = g.reweighted(table).expect("same edge set");
                let diagram = diagram_of_wdg(&perturbed, a.dim, a.field.0);
                Trial { index, seed, distance: distance(&base, &diagram), bound }
            })
        }
        FiltrationKind::Path => {
            let w = load_wpc(&a.input)?;
            let base = diagram_of_wpc(&w, a.dim, a.field.0);
            let eps = eps.clone();
            Box::new(move |index| {
                let seed = a.seed.wrapping_add(index);
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let (table, _) = perturbed_weights(&mut rng, w.weights(), &eps);
                let perturbed = w.reweighted(table).expect("same 1-paths");
                let bound = length_bound(&w, &perturbed);
                let diagram = diagram_of_wpc(&perturbed, a.dim, a.field.0);
                Trial { index, seed, distance: distance(&base, &diagram), bound }
            })
        }
    };

    let mut trials: Vec<Trial> = (0..a.trials).into_par_iter().map(&*trial_of).collect();
    trials.sort_by_key(|t| t.index);

    let mut max_ratio = BigRational::zero();
    for t in &trials {
        if let (Cost::Finite(d), false) = (&t.distance, t.bound.is_zero()) {
            max_ratio = max_ratio.max(d / &t.bound);
        }
    }
    let violations: Vec<&Trial> = trials.iter().filter(|t| t.violated()).collect();

    println!("trials = {}", a.trials);
    println!("eps = {}", format_rational(&eps));
    println!("violations = {}", violations.len());
    println!("max ratio = {}", format_rational(&max_ratio));
    for t in &violations {
        println!(
            "violation: trial {} seed {}: d_B = {} > bound = {}",
            t.index,
            t.seed,
            format_cost(&t.distance),
            format_rational(&t.bound)
        );
    }
    match violations.first() {
        None => Ok(()),
        Some(t) => Err(CliError::Violation(format!(
            "trial {} (seed {}): d_B = {} > bound = {}",
            t.index,
            t.seed,
            format_cost(&t.distance),
            format_rational(&t.bound)
        ))),
    }
}

fn distance(a: &PersistenceDiagram, b: &PersistenceDiagram) -> Cost {
    bottleneck_distance(a, b).expect("diagrams share a degree")
}
