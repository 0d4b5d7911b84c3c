//! Disk-graph data model and independence combinatorics.
//!
//! A disk graph assigns each vertex a center and a blockade radius; an edge
//! is present exactly when dist(i, j) ≤ ½(r_i + r_j), i.e. when disks of
//! radius r_i/2 overlap. Boundary equality counts as an edge. Under the
//! amplitude–radius map this pairwise rule coincides with the local
//! blockade condition, so the induced edge set is the graph the register
//! physically encodes.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::rydberg::distance;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("centers {0} and {1} are coincident")]
    CoincidentCenters(usize, usize),
    #[error("radius of vertex {vertex} must be positive, got {radius}")]
    BadRadius { vertex: usize, radius: f64 },
    #[error("centers ({centers}) and radii ({radii}) differ in length")]
    LengthMismatch { centers: usize, radii: usize },
    #[error("edge ({0}, {1}) is a self-loop")]
    SelfLoop(usize, usize),
    #[error("edge ({i}, {j}) out of range for {n} vertices")]
    EdgeOutOfRange { i: usize, j: usize, n: usize },
    #[error("graph has no edges")]
    Edgeless,
    #[error("{n} vertices exceed the exhaustive-enumeration limit of {limit}")]
    TooManyVertices { n: usize, limit: usize },
    #[error("vertex set {bits:#x} has bits beyond {n} vertices")]
    BitsOutOfRange { bits: u64, n: usize },
}

/// Subset of vertices as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn new(bits: u64, n: usize) -> Result<Self, GraphError> {
        if n < 64 && bits >> n != 0 {
            return Err(GraphError::BitsOutOfRange { bits, n });
        }
        Ok(Self(bits))
    }

    pub fn singleton(vertex: usize) -> Self {
        Self(1 << vertex)
    }

    pub fn bits(&self) -> u64 {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn contains(&self, vertex: usize) -> bool {
        self.0 >> vertex & 1 == 1
    }

    pub fn vertices(&self) -> Vec<usize> {
        (0..64).filter(|&v| self.contains(v)).collect()
    }
}

/// Undirected graph on vertices 0..n given by its edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<u64>,
}

impl AbstractGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        let mut normalized: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        let mut adjacency = vec![0u64; n];
        for (a, b) in edges {
            if a == b {
                return Err(GraphError::SelfLoop(a, b));
            }
            if a >= n || b >= n {
                return Err(GraphError::EdgeOutOfRange { i: a, j: b, n });
            }
            let (i, j) = (a.min(b), a.max(b));
            if adjacency[i] >> j & 1 == 0 {
                normalized.push((i, j));
                adjacency[i] |= 1 << j;
                adjacency[j] |= 1 << i;
            }
        }
        normalized.sort_unstable();
        Ok(Self {
            n,
            edges: normalized,
            adjacency,
        })
    }

    /// Complete bipartite graph with parts of size `left` and `right`
    /// (left vertices first).
    pub fn complete_bipartite(left: usize, right: usize) -> Self {
        let mut edges = Vec::new();
        for i in 0..left {
            for j in 0..right {
                edges.push((i, left + j));
            }
        }
        Self::new(left + right, edges).expect("bipartite edges are valid")
    }

    pub fn edgeless(n: usize) -> Self {
        Self::new(n, Vec::new()).expect("no edges")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, vertex: usize) -> u64 {
        self.adjacency[vertex]
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency
            .iter()
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn vertex_set(&self, bits: u64) -> Result<VertexSet, GraphError> {
        VertexSet::new(bits, self.n)
    }

    /// True when no edge has both endpoints in `set`.
    pub fn is_independent(&self, set: VertexSet) -> bool {
        independent_mask(&self.adjacency, set.bits())
    }

    /// Exact maximum independent set size and every attaining set, ordered
    /// lexicographically by vertex list. Exhaustive bitmask scan; limited
    /// to 24 vertices.
    pub fn mis_enumerate(&self) -> Result<MisSolution, GraphError> {
        const LIMIT: usize = 24;
        if self.n > LIMIT {
            return Err(GraphError::TooManyVertices {
                n: self.n,
                limit: LIMIT,
            });
        }
        let mut best_size = 0usize;
        let mut best: Vec<u64> = vec![0];
        for mask in 1u64..1 << self.n {
            if !independent_mask(&self.adjacency, mask) {
                continue;
            }
            let size = mask.count_ones() as usize;
            if size > best_size {
                best_size = size;
                best.clear();
                best.push(mask);
            } else if size == best_size {
                best.push(mask);
            }
        }
        let mut sets: Vec<VertexSet> = best.into_iter().map(VertexSet).collect();
        sets.sort_by_key(|s| s.vertices());
        Ok(MisSolution {
            size: best_size,
            sets,
        })
    }
}

fn independent_mask(adjacency: &[u64], mask: u64) -> bool {
    let mut remaining = mask;
    while remaining != 0 {
        let v = remaining.trailing_zeros() as usize;
        if adjacency[v] & mask != 0 {
            return false;
        }
        remaining &= remaining - 1;
    }
    true
}

/// Exact maximum independent set: size and all attaining sets.
#[derive(Debug, Clone)]
pub struct MisSolution {
    pub size: usize,
    pub sets: Vec<VertexSet>,
}

/// Planar disks with per-vertex radii; edges are induced by geometry.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskGraph {
    centers: Vec<[f64; 2]>,
    radii: Vec<f64>,
}

impl DiskGraph {
    pub fn new(centers: Vec<[f64; 2]>, radii: Vec<f64>) -> Result<Self, GraphError> {
        if centers.len() != radii.len() {
            return Err(GraphError::LengthMismatch {
                centers: centers.len(),
                radii: radii.len(),
            });
        }
        for (v, &r) in radii.iter().enumerate() {
            if !(r > 0.0) {
                return Err(GraphError::BadRadius { vertex: v, radius: r });
            }
        }
        for i in 0..centers.len() {
            for j in (i + 1)..centers.len() {
                if distance(centers[i], centers[j]) <= 0.0 {
                    return Err(GraphError::CoincidentCenters(i, j));
                }
            }
        }
        Ok(Self { centers, radii })
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    pub fn centers(&self) -> &[[f64; 2]] {
        &self.centers
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn induced_edges(&self) -> Vec<(usize, usize)> {
        induced_edges(&self.centers, &self.radii)
    }

    /// The induced edge set as an abstract graph.
    pub fn abstract_graph(&self) -> AbstractGraph {
        AbstractGraph::new(self.len(), self.induced_edges()).expect("induced edges are valid")
    }

    /// Centers multiplied by `lambda`, radii unchanged.
    pub fn scaled(&self, lambda: f64) -> DiskGraph {
        DiskGraph {
            centers: self
                .centers
                .iter()
                .map(|p| [p[0] * lambda, p[1] * lambda])
                .collect(),
            radii: self.radii.clone(),
        }
    }

    /// Per-edge break points of uniform center scaling: an edge (i, j)
    /// survives scaling by λ exactly while λ ≤ ½(r_i + r_j)/dist(i, j).
    /// Returns (first break, full disconnection) = (min, max) over edges.
    pub fn lambda_breaks(&self) -> Result<(f64, f64), GraphError> {
        let edges = self.induced_edges();
        if edges.is_empty() {
            return Err(GraphError::Edgeless);
        }
        let mut lambda_c = f64::MAX;
        let mut lambda_full = f64::MIN;
        for (i, j) in edges {
            let lambda = 0.5 * (self.radii[i] + self.radii[j]) / distance(self.centers[i], self.centers[j]);
            lambda_c = lambda_c.min(lambda);
            lambda_full = lambda_full.max(lambda);
        }
        Ok((lambda_c, lambda_full))
    }
}

/// Edge set induced by the half-sum overlap rule; boundary equality is an
/// edge.
pub fn induced_edges(centers: &[[f64; 2]], radii: &[f64]) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 0..centers.len() {
        for j in (i + 1)..centers.len() {
            if distance(centers[i], centers[j]) <= 0.5 * (radii[i] + radii[j]) {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// Tuning knobs for the stochastic disk realizer.
#[derive(Debug, Clone)]
pub struct RealizeOptions {
    /// Annealing steps per restart.
    pub iterations: usize,
    /// Independent restarts (run in parallel, seeds derived from the master).
    pub restarts: usize,
    /// Required relative slack on non-edges and margin on edges.
    pub margin: f64,
    /// Initial placement box half-width as a multiple of the largest radius.
    pub box_scale: f64,
}

impl Default for RealizeOptions {
    fn default() -> Self {
        Self {
            iterations: 60_000,
            restarts: 16,
            margin: 0.05,
            box_scale: 1.6,
        }
    }
}

/// Best layout found when the realizer fails to satisfy the target.
#[derive(Debug, Error)]
#[error("no exact realization found; best layout violates {violations} pair(s)")]
pub struct RealizeFailure {
    pub best: DiskGraph,
    pub violations: usize,
}

/// Search for centers and palette radii whose induced disk graph equals
/// `target`, with every edge holding at 5% margin and every non-edge at 5%
/// slack. Simulated annealing over centers and radius assignments,
/// deterministic for a given seed. On failure returns the best layout
/// found together with its count of wrong pairs.
pub fn realize_disk(
    target: &AbstractGraph,
    radius_palette: &[f64],
    seed: u64,
) -> Result<DiskGraph, RealizeFailure> {
    realize_disk_with(target, radius_palette, seed, &RealizeOptions::default())
}

pub fn realize_disk_with(
    target: &AbstractGraph,
    radius_palette: &[f64],
    seed: u64,
    options: &RealizeOptions,
) -> Result<DiskGraph, RealizeFailure> {
    assert!(!radius_palette.is_empty(), "palette must not be empty");
    assert!(target.n() <= 12, "realizer is limited to 12 vertices");

    let runs: Vec<Layout> = (0..options.restarts)
        .into_par_iter()
        .map(|restart| {
            anneal_layout(
                target,
                radius_palette,
                seed.wrapping_add(restart as u64).wrapping_mul(0x9e3779b97f4a7c15),
                options,
            )
        })
        .collect();
    let best = runs
        .into_iter()
        .min_by(|a, b| a.energy.total_cmp(&b.energy))
        .expect("at least one restart");

    let graph = DiskGraph::new(best.centers, best.radii).expect("annealer keeps centers distinct");
    let violations = wrong_pairs(target, &graph);
    if violations == 0 && layout_energy(target, graph.centers(), graph.radii(), options.margin) == 0.0
    {
        Ok(graph)
    } else {
        Err(RealizeFailure {
            best: graph,
            violations,
        })
    }
}

struct Layout {
    centers: Vec<[f64; 2]>,
    radii: Vec<f64>,
    energy: f64,
}

/// Pair mismatch count between the target and the induced edge set.
fn wrong_pairs(target: &AbstractGraph, graph: &DiskGraph) -> usize {
    let n = target.n();
    let induced = AbstractGraph::new(n, graph.induced_edges()).expect("valid edges");
    let mut wrong = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            let want = target.neighbors(i) >> j & 1 == 1;
            let have = induced.neighbors(i) >> j & 1 == 1;
            if want != have {
                wrong += 1;
            }
        }
    }
    wrong
}

/// Zero exactly when every edge holds with `margin` relative margin and
/// every non-edge with `margin` relative slack; otherwise one unit per
/// wrong pair plus the relative shortfall, so descent has a gradient to
/// follow.
fn layout_energy(target: &AbstractGraph, centers: &[[f64; 2]], radii: &[f64], margin: f64) -> f64 {
    let n = centers.len();
    let mut energy = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let threshold = 0.5 * (radii[i] + radii[j]);
            let d = distance(centers[i], centers[j]);
            let want_edge = target.neighbors(i) >> j & 1 == 1;
            let shortfall = if want_edge {
                d - (1.0 - margin) * threshold
            } else {
                (1.0 + margin) * threshold - d
            };
            if shortfall > 0.0 {
                energy += 1.0 + shortfall / threshold;
            }
        }
    }
    energy
}

fn anneal_layout(
    target: &AbstractGraph,
    palette: &[f64],
    seed: u64,
    options: &RealizeOptions,
) -> Layout {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = target.n();
    let r_max = palette.iter().cloned().fold(0.0, f64::max);
    let half_box = options.box_scale * r_max;

    let mut centers: Vec<[f64; 2]> = (0..n)
        .map(|_| {
            [
                rng.random_range(-half_box..half_box),
                rng.random_range(-half_box..half_box),
            ]
        })
        .collect();
    let mut radii: Vec<f64> = (0..n)
        .map(|_| palette[rng.random_range(0..palette.len())])
        .collect();
    let mut energy = layout_energy(target, &centers, &radii, options.margin);
    let mut best = Layout {
        centers: centers.clone(),
        radii: radii.clone(),
        energy,
    };

    let t_start: f64 = 2.0;
    let t_end: f64 = 1e-4;
    let cooling = (t_end / t_start).powf(1.0 / options.iterations as f64);
    let mut temperature = t_start;

    for _ in 0..options.iterations {
        let vertex = rng.random_range(0..n);
        let move_radius = palette.len() > 1 && rng.random_range(0.0..1.0) < 0.15;
        let saved_center = centers[vertex];
        let saved_radius = radii[vertex];
        if move_radius {
            radii[vertex] = palette[rng.random_range(0..palette.len())];
        } else {
            let step = half_box * (temperature / t_start) * 0.5 + 0.01 * r_max;
            centers[vertex] = [
                saved_center[0] + rng.random_range(-step..step),
                saved_center[1] + rng.random_range(-step..step),
            ];
        }
        let candidate = layout_energy(target, &centers, &radii, options.margin);
        let accept = candidate <= energy
            || rng.random_range(0.0..1.0) < ((energy - candidate) / temperature).exp();
        if accept {
            energy = candidate;
            if energy < best.energy {
                best = Layout {
                    centers: centers.clone(),
                    radii: radii.clone(),
                    energy,
                };
                if energy == 0.0 {
                    break;
                }
            }
        } else {
            centers[vertex] = saved_center;
            radii[vertex] = saved_radius;
        }
        temperature *= cooling;
    }
    best
}
