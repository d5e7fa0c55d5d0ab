//! Persistence-diagram scatter plots as self-contained SVG.
//!
//! Births on the x axis, deaths on the y axis, the diagonal drawn solid,
//! and infinite deaths raised to a dashed top rail.  Multiplicities above 1
//! are annotated next to the point.  Rendering converts exact coordinates
//! to floating point — presentation only, never fed back into computation.

use num::rational::BigRational;
use num::ToPrimitive;

use pph_core::linalg::format_rational;
use pph_core::persistence::{Death, PersistenceDiagram};

const PLOT_LEFT: f64 = 70.0;
const PLOT_RIGHT: f64 = 430.0;
const PLOT_TOP: f64 = 30.0;
const PLOT_BOTTOM: f64 = 410.0;
const RAIL_Y: f64 = 50.0;
const FINITE_TOP: f64 = 85.0;

fn approx(q: &BigRational) -> f64 {
    q.to_f64().expect("plot coordinates fit in f64")
}

pub fn render(d: &PersistenceDiagram) -> String {
    let max_coordinate: Option<BigRational> = d
        .points()
        .flat_map(|(point, _)| {
            let death = match &point.1 {
                Death::Finite(x) => Some(x.clone()),
                Death::Infinite => None,
            };
            [Some(point.0.clone()), death]
        })
        .flatten()
        .max();
    let hi = max_coordinate.clone().map_or(1.0, |q| approx(&q)).max(1e-9);
    let span = hi * 1.08;
    let sx = |v: f64| PLOT_LEFT + v / span * (PLOT_RIGHT - PLOT_LEFT);
    let sy = |v: f64| PLOT_BOTTOM - v / span * (PLOT_BOTTOM - FINITE_TOP);

    let mut svg = String::new();
    svg.push_str(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"460\" height=\"460\" \
         viewBox=\"0 0 460 460\">\n",
    );
    svg.push_str("  <rect width=\"460\" height=\"460\" fill=\"white\"/>\n");
    svg.push_str(&format!(
        "  <text x=\"230\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" \
         font-size=\"14\">H_{}</text>\n",
        d.degree()
    ));

    // axes
    svg.push_str(&format!(
        "  <line x1=\"{PLOT_LEFT}\" y1=\"{PLOT_BOTTOM}\" x2=\"{PLOT_RIGHT}\" \
         y2=\"{PLOT_BOTTOM}\" stroke=\"black\"/>\n"
    ));
    svg.push_str(&format!(
        "  <line x1=\"{PLOT_LEFT}\" y1=\"{PLOT_BOTTOM}\" x2=\"{PLOT_LEFT}\" \
         y2=\"{PLOT_TOP}\" stroke=\"black\"/>\n"
    ));
    svg.push_str(&format!(
        "  <text x=\"{}\" y=\"445\" text-anchor=\"middle\" font-family=\"sans-serif\" \
         font-size=\"12\">birth</text>\n",
        (PLOT_LEFT + PLOT_RIGHT) / 2.0
    ));
    svg.push_str(&format!(
        "  <text x=\"18\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" \
         font-size=\"12\" transform=\"rotate(-90 18 {})\">death</text>\n",
        (FINITE_TOP + PLOT_BOTTOM) / 2.0,
        (FINITE_TOP + PLOT_BOTTOM) / 2.0
    ));

    // scale marks: origin and the data maximum
    svg.push_str(&format!(
        "  <text x=\"{PLOT_LEFT}\" y=\"425\" text-anchor=\"middle\" \
         font-family=\"sans-serif\" font-size=\"11\">0</text>\n"
    ));
    if let Some(q) = &max_coordinate {
        let label = format_rational(q);
        svg.push_str(&format!(
            "  <text x=\"{:.2}\" y=\"425\" text-anchor=\"middle\" \
             font-family=\"sans-serif\" font-size=\"11\">{label}</text>\n",
            sx(approx(q))
        ));
        svg.push_str(&format!(
            "  <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\" \
             font-family=\"sans-serif\" font-size=\"11\">{label}</text>\n",
            PLOT_LEFT - 6.0,
            sy(approx(q)) + 4.0
        ));
    }

    // the diagonal and the rail for infinite deaths
    svg.push_str(&format!(
        "  <line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#888\"/>\n",
        sx(0.0),
        sy(0.0),
        sx(span),
        sy(span)
    ));
    svg.push_str(&format!(
        "  <line x1=\"{PLOT_LEFT}\" y1=\"{RAIL_Y}\" x2=\"{PLOT_RIGHT}\" y2=\"{RAIL_Y}\" \
         stroke=\"#888\" stroke-dasharray=\"5 4\"/>\n"
    ));
    svg.push_str(&format!(
        "  <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\" font-family=\"sans-serif\" \
         font-size=\"12\">inf</text>\n",
        PLOT_LEFT - 6.0,
        RAIL_Y + 4.0
    ));

    for (point, mult) in d.points() {
        let cx = sx(approx(&point.0));
        let cy = match &point.1 {
            Death::Finite(x) => sy(approx(x)),
            Death::Infinite => RAIL_Y,
        };
        svg.push_str(&format!(
            "  <circle cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"4\" fill=\"#335e8d\" \
             fill-opacity=\"0.85\"/>\n"
        ));
        if mult > 1 {
            svg.push_str(&format!(
                "  <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" \
                 font-size=\"11\">\u{00d7}{mult}</text>\n",
                cx + 6.0,
                cy - 6.0
            ));
        }
    }
    svg.push_str("</svg>\n");
    svg
}
