//! Built-in geometries and target graphs.
//!
//! The star instance is a center with six spokes at uniform nearest-
//! neighbor separation 0.9·r_B, where r_B is the global blockade radius at
//! Ω = π. In the disk variant, three alternating spokes carry the larger
//! radius of Ω = π/20, which adds the three edges between them; the unit
//! variant keeps every radius at r_B. Spokes are indexed so that the
//! enlarged vertices 0, 4, 5 sit at 0°, 120° and 240°, with the plain
//! spokes 1, 2, 3 between them and the center last (index 6).
//!
//! The named optimization targets are small graphs outside the unit-disk
//! class: K_2,3 and K_1,6 directly, and three variants that contain K_2,3
//! as an induced subgraph (a pendant on the three-side, a pendant on the
//! two-side, and one pendant on each side). A single-radius palette
//! therefore cannot realize any of them; the suggested palettes can. The
//! K_1,6 palette is deliberately compact so that leaf-leaf interactions
//! exceed the final-detuning window and finite drives stay relevant.

use std::f64::consts::PI;

use crate::blockade;
use crate::graphs::{AbstractGraph, DiskGraph};
use crate::rydberg::PhysicalConstants;

/// Spokes carrying the enlarged radius in the disk star.
pub const STAR_SPECIAL_VERTICES: [usize; 3] = [0, 4, 5];
/// Index of the star center.
pub const STAR_CENTER: usize = 6;

/// Base drive amplitude of the star protocols.
pub fn star_base_omega() -> f64 {
    PI
}

/// Reduced amplitude implementing the enlarged radii.
pub fn star_special_omega() -> f64 {
    PI / 20.0
}

fn star_centers(constants: &PhysicalConstants) -> Vec<[f64; 2]> {
    let rb = blockade::rb_global(constants, star_base_omega()).expect("positive amplitude");
    let ring = 0.9 * rb;
    // Vertex -> angle in sixths of a turn.
    let sixths = [0usize, 1, 3, 5, 2, 4];
    let mut centers: Vec<[f64; 2]> = sixths
        .iter()
        .map(|&k| {
            let angle = PI / 3.0 * k as f64;
            [ring * angle.cos(), ring * angle.sin()]
        })
        .collect();
    centers.push([0.0, 0.0]);
    centers
}

/// Star with enlarged radii on vertices 0, 4 and 5.
pub fn star_disk(constants: &PhysicalConstants) -> DiskGraph {
    let rb = blockade::rb_global(constants, star_base_omega()).expect("positive amplitude");
    let rb_special = blockade::rb_global(constants, star_special_omega()).expect("positive amplitude");
    let mut radii = vec![rb; 7];
    for v in STAR_SPECIAL_VERTICES {
        radii[v] = rb_special;
    }
    DiskGraph::new(star_centers(constants), radii).expect("star geometry is valid")
}

/// Star with every radius at the base blockade radius.
pub fn star_unit(constants: &PhysicalConstants) -> DiskGraph {
    let rb = blockade::rb_global(constants, star_base_omega()).expect("positive amplitude");
    DiskGraph::new(star_centers(constants), vec![rb; 7]).expect("star geometry is valid")
}

/// Abstract target graph for a built-in instance name.
pub fn named_target(name: &str) -> Option<AbstractGraph> {
    let k23 = || AbstractGraph::complete_bipartite(2, 3).edges().to_vec();
    match name {
        "p3" => Some(AbstractGraph::new(3, vec![(0, 1), (1, 2)]).expect("valid")),
        "k23" => Some(AbstractGraph::complete_bipartite(2, 3)),
        "g3" => {
            let mut edges = k23();
            edges.push((2, 5));
            Some(AbstractGraph::new(6, edges).expect("valid"))
        }
        "g4" => {
            let mut edges = k23();
            edges.push((0, 5));
            Some(AbstractGraph::new(6, edges).expect("valid"))
        }
        "g5" => {
            let mut edges = k23();
            edges.push((2, 5));
            edges.push((0, 6));
            Some(AbstractGraph::new(7, edges).expect("valid"))
        }
        "k16" => Some(AbstractGraph::complete_bipartite(1, 6)),
        _ => None,
    }
}

/// Radius palette known to realize the named target.
pub fn suggested_palette(name: &str) -> Option<Vec<f64>> {
    match name {
        "p3" => Some(vec![8.0]),
        "k23" | "g3" | "g4" | "g5" => Some(vec![18.0, 4.0]),
        "k16" => Some(vec![8.5, 5.0]),
        _ => None,
    }
}

/// All built-in target names.
pub fn target_names() -> &'static [&'static str] {
    &["p3", "k23", "g3", "g4", "g5", "k16"]
}
