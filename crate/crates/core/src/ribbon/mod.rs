//! Ribbon graphs and dessins as permutations on half-edges: genus and faces,
//! edge lengths realising given face perimeters, exhaustive enumeration,
//! automorphisms and the dessins attached to metric K4 graphs.

pub mod automorphism;
pub mod dessin;
pub mod enumerate;
pub mod feasible;
pub mod figures;
mod graph;
pub mod perm;

pub use automorphism::{all_automorphisms, automorphisms, label_action, AutomorphismReport, LabelAction};
pub use dessin::{dessin_from_metric, dual_graph_correspondence, k4_graph, Dessin, MetricDessin, Segment};
pub use enumerate::{canonical_code, enumerate, EnumerateOptions, MAX_HALF_EDGES};
pub use feasible::{metric_feasible, FeasibilityResult, FeasibilityStatus};
pub use graph::{GraphJson, RibbonGraph};

use crate::svg::Canvas;
use figures::Drawing;

/// SVG of a catalog drawing: edges as polylines, black points filled, white hollow.
pub fn drawing_svg(d: &Drawing) -> String {
    let edges = d.edges();
    let mut canvas = Canvas::fit(edges.iter().flat_map(|e| e.points.iter().copied()));
    for e in &edges {
        canvas.polyline(&e.points, "black");
    }
    for &(p, colour) in &d.vertices {
        canvas.dot(p, 6.0, if colour == Some(false) { "white" } else { "black" });
    }
    canvas.finish()
}
