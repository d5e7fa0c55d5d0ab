//! Text formats for weighted digraphs (`.wdg`) and weighted path complexes
//! (`.wpc`).
//!
//! Both are line-based UTF-8: `#` starts a comment, blank lines are skipped,
//! fields are whitespace-separated.  Weights are positive exact literals —
//! decimals (`0.25`) or fractions (`1/3`).
//!
//! `.wdg` lines:
//! - `v <id>` declares a vertex (optional; edge endpoints are implied)
//! - `e <src> <dst> <weight>` declares a weighted edge
//!
//! `.wpc` lines:
//! - `closure auto|strict` (at most once): `auto` closes the declared paths
//!   under truncation, `strict` (the default) requires them to be closed
//! - `p <v0> <v1> … <vk>` declares an allowed path
//! - `w <u> <v> <weight>` weights the allowed 1-path `u v`

use std::collections::{BTreeMap, BTreeSet};

use num::rational::BigRational;
use num::Zero;

use super::path_complex::truncation_closure;
use super::{ComplexError, Digraph, PathComplex, WeightedDigraph, WeightedPathComplex};
use crate::linalg::{format_rational, parse_rational};
use crate::path::ElementaryPath;
use crate::vertex::VertexSet;

fn parse_err(line: usize, msg: impl Into<String>) -> ComplexError {
    ComplexError::Parse { line, msg: msg.into() }
}

/// Comment-stripped, non-blank lines with their 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let content = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = content.split_whitespace().collect();
        (!fields.is_empty()).then_some((i + 1, fields))
    })
}

fn parse_weight(line: usize, s: &str) -> Result<BigRational, ComplexError> {
    let w = parse_rational(s).map_err(|e| parse_err(line, format!("bad weight {s:?}: {e}")))?;
    if w <= BigRational::zero() {
        return Err(parse_err(line, format!("weight {s:?} is not positive")));
    }
    Ok(w)
}

pub fn parse_wdg(text: &str) -> Result<WeightedDigraph, ComplexError> {
    let mut names: BTreeSet<String> = BTreeSet::new();
    let mut edges: Vec<(String, String, BigRational)> = Vec::new();
    let mut seen: BTreeSet<(String, String)> = BTreeSet::new();
    for (line, fields) in lines(text) {
        match fields[0] {
            "v" => {
                if fields.len() != 2 {
                    return Err(parse_err(line, "expected `v <id>`"));
                }
                names.insert(fields[1].to_string());
            }
            "e" => {
                if fields.len() != 4 {
                    return Err(parse_err(line, "expected `e <src> <dst> <weight>`"));
                }
                let (src, dst) = (fields[1].to_string(), fields[2].to_string());
                if src == dst {
                    return Err(parse_err(line, format!("self-loop at {src:?}")));
                }
                if !seen.insert((src.clone(), dst.clone())) {
                    return Err(parse_err(line, format!("duplicate edge {src} {dst}")));
                }
                let w = parse_weight(line, fields[3])?;
                names.insert(src.clone());
                names.insert(dst.clone());
                edges.push((src, dst, w));
            }
            other => return Err(parse_err(line, format!("unknown directive {other:?}"))),
        }
    }
    let vs = VertexSet::new(names);
    let edge_ids = edges
        .iter()
        .map(|(u, v, _)| (vs.id(u).unwrap(), vs.id(v).unwrap()))
        .collect();
    let graph = Digraph::new(vs, edge_ids)?;
    let weights = edges
        .iter()
        .map(|(u, v, w)| {
            let vs = graph.vertices();
            ((vs.id(u).unwrap(), vs.id(v).unwrap()), w.clone())
        })
        .collect();
    WeightedDigraph::new(graph, weights)
}

pub fn write_wdg(g: &WeightedDigraph) -> String {
    let vs = g.vertices();
    let mut out = String::new();
    for name in vs.names() {
        out.push_str(&format!("v {name}\n"));
    }
    for ((u, v), w) in g.weights() {
        out.push_str(&format!("e {} {} {}\n", vs.name(u), vs.name(v), format_rational(w)));
    }
    out
}

pub fn parse_wpc(text: &str) -> Result<WeightedPathComplex, ComplexError> {
    let mut auto = None;
    let mut names: BTreeSet<String> = BTreeSet::new();
    let mut paths: Vec<(usize, Vec<String>)> = Vec::new();
    let mut weights: Vec<(usize, String, String, BigRational)> = Vec::new();
    for (line, fields) in lines(text) {
        match fields[0] {
            "closure" => {
                if paths.len() + weights.len() > 0 {
                    return Err(parse_err(line, "closure flag must precede p/w lines"));
                }
                if auto.is_some() {
                    return Err(parse_err(line, "closure flag given twice"));
                }
                match fields.get(1).copied() {
                    Some("auto") if fields.len() == 2 => auto = Some(true),
                    Some("strict") if fields.len() == 2 => auto = Some(false),
                    _ => return Err(parse_err(line, "expected `closure auto|strict`")),
                }
            }
            "p" => {
                if fields.len() < 2 {
                    return Err(parse_err(line, "expected `p <v0> [<v1> …]`"));
                }
                let vs: Vec<String> = fields[1..].iter().map(|s| s.to_string()).collect();
                names.extend(vs.iter().cloned());
                paths.push((line, vs));
            }
            "w" => {
                if fields.len() != 4 {
                    return Err(parse_err(line, "expected `w <u> <v> <weight>`"));
                }
                let w = parse_weight(line, fields[3])?;
                weights.push((line, fields[1].to_string(), fields[2].to_string(), w));
            }
            other => return Err(parse_err(line, format!("unknown directive {other:?}"))),
        }
    }
    let vs = VertexSet::new(names);
    let declared: Vec<ElementaryPath> = paths
        .iter()
        .map(|(_, p)| ElementaryPath::new(p.iter().map(|n| vs.id(n).unwrap()).collect()))
        .collect();
    let complex = if auto == Some(true) {
        truncation_closure(vs, declared)
    } else {
        PathComplex::strict_from_paths(vs, declared)?
    };
    let mut table = BTreeMap::new();
    for (line, u, v, w) in weights {
        let (Some(ui), Some(vi)) = (complex.vertices().id(&u), complex.vertices().id(&v)) else {
            return Err(parse_err(line, format!("unknown vertex in `w {u} {v}`")));
        };
        if table.insert((ui, vi), w).is_some() {
            return Err(parse_err(line, format!("duplicate weight for {u} {v}")));
        }
    }
    WeightedPathComplex::new(complex, table)
}

pub fn write_wpc(c: &WeightedPathComplex) -> String {
    let vs = c.vertices();
    let mut out = String::from("closure strict\n");
    for p in c.complex().paths() {
        out.push_str(&format!("p {}\n", p.display(vs)));
    }
    for ((u, v), w) in c.weights() {
        out.push_str(&format!("w {} {} {}\n", vs.name(u), vs.name(v), format_rational(w)));
    }
    out
}
