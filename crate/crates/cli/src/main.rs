//! `pph` — persistence diagrams, bottleneck distances, and stability bounds
//! for path homology of weighted digraphs and path complexes.
//!
//! Every error path prints a single line `error[<kind>]: <reason>` to stderr
//! and exits nonzero, so scripts can dispatch on the kind without scraping
//! prose.  All numeric output is exact (decimals or fractions `a/b`).

mod perturb;
mod plot;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use num::rational::BigRational;
use num::Zero;

use pph_core::bottleneck::{
    bottleneck_distance_with_witness, Cost, DiagramPoint, Matching,
};
use pph_core::complex::{parse_wdg, parse_wpc, WeightedDigraph, WeightedPathComplex};
use pph_core::filtration::{
    critical_values_edge, critical_values_path, edge_sublevel, path_sublevel,
    FilteredComplex,
};
use pph_core::homology::homology_dims;
use pph_core::homotopy::{stability_bound_digraph, stability_bound_pc, HomotopyChain};
use pph_core::linalg::{format_rational, parse_rational, ScalarMode};
use pph_core::persistence::{
    parse_dgm, persistence_diagram, write_dgm, Death, PersistenceDiagram,
};
use pph_core::vertex::{VertexMap, VertexSet};
use pph_core::PathComplex;

#[derive(Parser)]
#[command(
    name = "pph",
    version,
    about = "Persistent path homology of weighted digraphs and path complexes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a persistence diagram and write it as a .dgm file
    Diagram(DiagramArgs),
    /// Exact bottleneck distance between two .dgm files
    Bottleneck(BottleneckArgs),
    /// Stability bound η of a verified homotopy equivalence
    Bound(BoundArgs),
    /// Fuzz the weight-perturbation stability bound on one input
    Perturb(perturb::PerturbArgs),
    /// Render a .dgm file as a self-contained SVG scatter plot
    Plot(PlotArgs),
    /// Homology dimensions of a single sublevel snapshot
    Homology(HomologyArgs),
}

/// Which sublevel filtration to run: edge weights on a digraph (.wdg) or
/// path lengths on a weighted path complex (.wpc).
#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FiltrationKind {
    Edge,
    Path,
}

/// Scalar mode argument: `rat` or `F<p>` for a prime p.
#[derive(Clone, Copy)]
pub struct FieldArg(pub ScalarMode);

impl FromStr for FieldArg {
    type Err = String;

    fn from_str(s: &str) -> Result<FieldArg, String> {
        if s == "rat" {
            return Ok(FieldArg(ScalarMode::Rational));
        }
        let digits = s
            .strip_prefix('F')
            .ok_or_else(|| format!("expected `rat` or `F<p>`, got {s:?}"))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| format!("bad field order {digits:?}"))?;
        ScalarMode::prime(p).map(FieldArg).map_err(|e| e.to_string())
    }
}

#[derive(Args)]
struct DiagramArgs {
    /// Input file: .wdg for --filtration edge, .wpc for --filtration path
    input: PathBuf,
    #[arg(long, value_enum)]
    filtration: FiltrationKind,
    /// Homology degree
    #[arg(long)]
    dim: usize,
    #[arg(long, default_value = "rat")]
    field: FieldArg,
    /// Output path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BottleneckArgs {
    first: PathBuf,
    second: PathBuf,
    /// Also print an optimal matching achieving the distance
    #[arg(long)]
    witness: bool,
}

#[derive(Args)]
struct BoundArgs {
    /// The source object G (or P): .wdg or .wpc per --filtration
    source: PathBuf,
    /// The target object H (or S)
    target: PathBuf,
    /// φ: source → target, a .vmap file
    phi: PathBuf,
    /// ψ: target → source, a .vmap file
    psi: PathBuf,
    /// Homotopy chain ψ∘φ = f_0 ≃ … ≃ f_m = id on the source, as .vmap files
    #[arg(long, required = true, num_args = 1..)]
    fchain: Vec<PathBuf>,
    /// Homotopy chain φ∘ψ = g_0 ≃ … ≃ g_m = id on the target
    #[arg(long, required = true, num_args = 1..)]
    gchain: Vec<PathBuf>,
    #[arg(long, value_enum)]
    filtration: FiltrationKind,
    /// Homology degree: the bound's degree for --filtration path, and the
    /// degree whose diagrams --check compares
    #[arg(long)]
    dim: usize,
    /// Compute both diagrams and confirm d_B ≤ η
    #[arg(long)]
    check: bool,
    #[arg(long, default_value = "rat")]
    field: FieldArg,
}

#[derive(Args)]
struct PlotArgs {
    input: PathBuf,
    /// Output path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct HomologyArgs {
    /// Input file: .wdg for --filtration edge, .wpc for --filtration path
    input: PathBuf,
    #[arg(long, value_enum)]
    filtration: FiltrationKind,
    /// Largest homology degree to report
    #[arg(long)]
    dim: usize,
    /// Filtration scale δ (exact literal); the final scale when omitted
    #[arg(long)]
    delta: Option<String>,
    #[arg(long, default_value = "rat")]
    field: FieldArg,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Parse(String),
    Io(String),
    Degree(String),
    Verify(String),
    Violation(String),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Parse(_) => "parse",
            CliError::Io(_) => "io",
            CliError::Degree(_) => "degree",
            CliError::Verify(_) => "verify",
            CliError::Violation(_) => "violation",
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            CliError::Usage(m)
            | CliError::Parse(m)
            | CliError::Io(m)
            | CliError::Degree(m)
            | CliError::Verify(m)
            | CliError::Violation(m) => m,
        };
        write!(f, "error[{}]: {}", self.kind(), msg)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let first = e
                .to_string()
                .lines()
                .next()
                .unwrap_or("bad arguments")
                .trim_start_matches("error: ")
                .to_string();
            eprintln!("error[usage]: {first}");
            return ExitCode::from(2);
        }
        Err(e) => {
            // --help / --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    let result = match cli.command {
        Command::Diagram(a) => cmd_diagram(a),
        Command::Bottleneck(a) => cmd_bottleneck(a),
        Command::Bound(a) => cmd_bound(a),
        Command::Perturb(a) => perturb::run(a),
        Command::Plot(a) => cmd_plot(a),
        Command::Homology(a) => cmd_homology(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::FAILURE
        }
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn require_extension(path: &Path, ext: &str, kind: &str) -> Result<(), CliError> {
    if path.extension().and_then(|e| e.to_str()) == Some(ext) {
        return Ok(());
    }
    Err(CliError::Usage(format!(
        "{}: --filtration {kind} requires a .{ext} input",
        path.display()
    )))
}

pub fn load_wdg(path: &Path) -> Result<WeightedDigraph, CliError> {
    require_extension(path, "wdg", "edge")?;
    parse_wdg(&read_input(path)?)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

pub fn load_wpc(path: &Path) -> Result<WeightedPathComplex, CliError> {
    require_extension(path, "wpc", "path")?;
    parse_wpc(&read_input(path)?)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn load_dgm(path: &Path) -> Result<(PersistenceDiagram, ScalarMode), CliError> {
    parse_dgm(&read_input(path)?)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

pub fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => {
            fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn diagram_of_wdg(
    g: &WeightedDigraph,
    dim: usize,
    field: ScalarMode,
) -> PersistenceDiagram {
    let filtered = FilteredComplex::edge_filtration(g, dim + 1);
    persistence_diagram(&filtered, dim, field).expect("sublevel filtrations are nested")
}

pub fn diagram_of_wpc(
    w: &WeightedPathComplex,
    dim: usize,
    field: ScalarMode,
) -> PersistenceDiagram {
    let filtered = FilteredComplex::path_filtration(w);
    persistence_diagram(&filtered, dim, field).expect("sublevel filtrations are nested")
}

fn cmd_diagram(a: DiagramArgs) -> Result<(), CliError> {
    let diagram = match a.filtration {
        FiltrationKind::Edge => diagram_of_wdg(&load_wdg(&a.input)?, a.dim, a.field.0),
        FiltrationKind::Path => diagram_of_wpc(&load_wpc(&a.input)?, a.dim, a.field.0),
    };
    emit(a.out.as_deref(), &write_dgm(&diagram, a.field.0))
}

pub fn format_cost(c: &Cost) -> String {
    match c {
        Cost::Finite(q) => format_rational(q),
        Cost::Infinite => "inf".into(),
    }
}

fn format_point(p: &DiagramPoint) -> String {
    let death = match &p.1 {
        Death::Finite(d) => format_rational(d),
        Death::Infinite => "inf".into(),
    };
    format!("({}, {})", format_rational(&p.0), death)
}

fn print_witness(m: &Matching) {
    for (a, b) in m.pairs() {
        println!("pair {} -> {}", format_point(a), format_point(b));
    }
    for (side, points) in [("left", m.unmatched_left()), ("right", m.unmatched_right())] {
        for p in points {
            let target = if p.1.is_infinite() { "unmatched" } else { "diagonal" };
            println!("{side} {} -> {target}", format_point(p));
        }
    }
}

fn cmd_bottleneck(a: BottleneckArgs) -> Result<(), CliError> {
    let (d1, _) = load_dgm(&a.first)?;
    let (d2, _) = load_dgm(&a.second)?;
    let (cost, witness) = bottleneck_distance_with_witness(&d1, &d2)
        .map_err(|e| CliError::Degree(e.to_string()))?;
    println!("{}", format_cost(&cost));
    if a.witness {
        print_witness(&witness);
    }
    Ok(())
}

/// .vmap lines are `<src-vertex> <dst-vertex>`; `#` comments and blank lines
/// are skipped.  Sources outside the intended domain are ignored, so one
/// file can serve several graphs; every domain vertex needs an image.
fn load_vmap(
    path: &Path,
    domain: &VertexSet,
    codomain: &VertexSet,
) -> Result<VertexMap, CliError> {
    let text = read_input(path)?;
    let mut pairs: Vec<(String, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = content.split_whitespace().collect();
        match fields.as_slice() {
            [] => {}
            [src, dst] => pairs.push((src.to_string(), dst.to_string())),
            _ => {
                return Err(CliError::Parse(format!(
                    "{}: line {}: expected `<src> <dst>`",
                    path.display(),
                    i + 1
                )))
            }
        }
    }
    VertexMap::from_pairs(domain, codomain, pairs.iter().map(|(s, d)| (s.as_str(), d.as_str())))
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn load_chain(paths: &[PathBuf], vertices: &VertexSet) -> Result<HomotopyChain, CliError> {
    let maps = paths
        .iter()
        .map(|p| load_vmap(p, vertices, vertices))
        .collect::<Result<Vec<_>, _>>()?;
    HomotopyChain::new(maps).map_err(|e| CliError::Verify(e.to_string()))
}

fn check_bound(
    eta: &BigRational,
    d1: &PersistenceDiagram,
    d2: &PersistenceDiagram,
) -> Result<(), CliError> {
    let (cost, _) = bottleneck_distance_with_witness(d1, d2)
        .map_err(|e| CliError::Degree(e.to_string()))?;
    println!("d_B = {}", format_cost(&cost));
    if cost <= Cost::Finite(eta.clone()) {
        println!("check: d_B <= eta");
        Ok(())
    } else {
        Err(CliError::Violation(format!(
            "d_B = {} exceeds eta = {}",
            format_cost(&cost),
            format_rational(eta)
        )))
    }
}

fn cmd_bound(a: BoundArgs) -> Result<(), CliError> {
    match a.filtration {
        FiltrationKind::Edge => {
            let g = load_wdg(&a.source)?;
            let h = load_wdg(&a.target)?;
            let phi = load_vmap(&a.phi, g.vertices(), h.vertices())?;
            let psi = load_vmap(&a.psi, h.vertices(), g.vertices())?;
            let fchain = load_chain(&a.fchain, g.vertices())?;
            let gchain = load_chain(&a.gchain, h.vertices())?;
            let eta = stability_bound_digraph(&phi, &psi, &fchain, &gchain, &g, &h)
                .map_err(|e| CliError::Verify(e.to_string()))?;
            println!("eta = {}", format_rational(&eta));
            if a.check {
                let d1 = diagram_of_wdg(&g, a.dim, a.field.0);
                let d2 = diagram_of_wdg(&h, a.dim, a.field.0);
                check_bound(&eta, &d1, &d2)?;
            }
        }
        FiltrationKind::Path => {
            let p = load_wpc(&a.source)?;
            let s = load_wpc(&a.target)?;
            let phi = load_vmap(&a.phi, p.vertices(), s.vertices())?;
            let psi = load_vmap(&a.psi, s.vertices(), p.vertices())?;
            let fchain = load_chain(&a.fchain, p.vertices())?;
            let gchain = load_chain(&a.gchain, s.vertices())?;
            let eta = stability_bound_pc(&phi, &psi, &fchain, &gchain, &p, &s, a.dim)
                .map_err(|e| CliError::Verify(e.to_string()))?;
            println!("eta = {}", format_rational(&eta));
            if a.check {
                let d1 = diagram_of_wpc(&p, a.dim, a.field.0);
                let d2 = diagram_of_wpc(&s, a.dim, a.field.0);
                check_bound(&eta, &d1, &d2)?;
            }
        }
    }
    Ok(())
}

fn cmd_plot(a: PlotArgs) -> Result<(), CliError> {
    let (diagram, _) = load_dgm(&a.input)?;
    emit(a.out.as_deref(), &plot::render(&diagram))
}

fn parse_delta(arg: Option<&str>, last: &BigRational) -> Result<BigRational, CliError> {
    let Some(s) = arg else { return Ok(last.clone()) };
    let delta =
        parse_rational(s).map_err(|e| CliError::Usage(format!("bad --delta {s:?}: {e}")))?;
    if delta < BigRational::zero() {
        return Err(CliError::Usage(format!("--delta {s} is negative")));
    }
    Ok(delta)
}

fn cmd_homology(a: HomologyArgs) -> Result<(), CliError> {
    let (delta, complex) = match a.filtration {
        FiltrationKind::Edge => {
            let g = load_wdg(&a.input)?;
            let index = critical_values_edge(&g);
            let delta = parse_delta(a.delta.as_deref(), index.value(index.len() - 1))?;
            let snapshot = PathComplex::from_digraph(&edge_sublevel(&g, &delta), a.dim + 1);
            (delta, snapshot)
        }
        FiltrationKind::Path => {
            let w = load_wpc(&a.input)?;
            let index = critical_values_path(&w);
            let delta = parse_delta(a.delta.as_deref(), index.value(index.len() - 1))?;
            let snapshot = path_sublevel(&w, &delta);
            (delta, snapshot)
        }
    };
    println!("delta = {}", format_rational(&delta));
    for (k, dim) in homology_dims(&complex, a.dim, a.field.0).iter().enumerate() {
        println!("H_{k} = {dim}");
    }
    Ok(())
}
