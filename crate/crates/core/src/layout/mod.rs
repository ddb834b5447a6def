//! 3D force-directed layout: many-body repulsion through a Barnes-Hut
//! octree, link springs and centering, annealed by a geometric `alpha`
//! schedule.
//!
//! The layout runs over the union of all frames, so positions stay fixed
//! while the time cursor moves.

mod forces;
mod octree;
mod worker;

use std::collections::HashMap;

use nalgebra::{Unit, UnitQuaternion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::graph::DynamicGraph;

pub use forces::{
    compute_forces_bh, compute_forces_brute, link_forces, repulsion_bh, repulsion_brute, Repulsion,
};
pub use octree::{Cell, Octree};
pub use worker::{LayoutWorker, PositionSnapshot};

pub type Vec3 = nalgebra::Vector3<f64>;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum LayoutError {
    #[error("cannot lay out an empty graph")]
    EmptyGraph,
    #[error("node {id:?} (index {node}) reached a non-finite position")]
    NonFinite { node: usize, id: String },
    #[error("invalid layout parameter: {0}")]
    InvalidParams(String),
    #[error("graph has {graph} nodes but layout state has {state}")]
    Mismatch { graph: usize, state: usize },
}

/// Simulation constants. Defaults follow the common d3-force settings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LayoutParams {
    pub repulsion_strength: f64,
    pub link_distance: f64,
    /// Overrides the per-link `1 / min(deg(s), deg(t))` stiffness.
    pub link_strength: Option<f64>,
    pub velocity_decay: f64,
    pub alpha_decay: f64,
    pub alpha_min: f64,
    pub alpha_target: f64,
    pub theta: f64,
    /// Repulsion is softened below this distance.
    pub distance_min: f64,
    /// Keep the worker ticking after `alpha` falls below `alpha_min`.
    pub keep_ticking: bool,
}

impl Default for LayoutParams {
    fn default() -> Self {
        LayoutParams {
            repulsion_strength: -30.0,
            link_distance: 30.0,
            link_strength: None,
            velocity_decay: 0.4,
            alpha_decay: 1.0 - 0.001f64.powf(1.0 / 300.0),
            alpha_min: 0.001,
            alpha_target: 0.0,
            theta: 0.9,
            distance_min: 1.0,
            keep_ticking: false,
        }
    }
}

impl LayoutParams {
    pub fn validate(&self) -> Result<(), LayoutError> {
        let bad = |what: &str| Err(LayoutError::InvalidParams(what.to_owned()));
        let unit_open = |x: f64| x > 0.0 && x < 1.0;
        let non_negative = |x: f64| x >= 0.0;
        if !(self.theta.is_finite() && self.theta > 0.0) {
            return bad("theta must be > 0");
        }
        if !unit_open(self.velocity_decay) {
            return bad("velocity_decay must lie in (0, 1)");
        }
        if !unit_open(self.alpha_decay) {
            return bad("alpha_decay must lie in (0, 1)");
        }
        if !unit_open(self.alpha_min) {
            return bad("alpha_min must lie in (0, 1)");
        }
        if !(0.0..1.0).contains(&self.alpha_target) {
            return bad("alpha_target must lie in [0, 1)");
        }
        if !non_negative(self.link_distance) || !self.repulsion_strength.is_finite() || !non_negative(self.distance_min) {
            return bad("link_distance and distance_min must be >= 0, repulsion_strength finite");
        }
        Ok(())
    }
}

/// A spring between two distinct nodes of the union graph.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Link {
    pub source: usize,
    pub target: usize,
    pub strength: f64,
    /// Share of the correction applied to the target.
    pub bias: f64,
}

/// Distinct node pairs over all frames, with degree-based stiffness.
pub fn union_links(graph: &DynamicGraph, params: &LayoutParams) -> Vec<Link> {
    let mut seen = HashMap::new();
    let mut pairs = Vec::new();
    for e in graph.edges() {
        if e.source == e.target {
            continue;
        }
        let key = (e.source.min(e.target), e.source.max(e.target));
        if seen.insert(key, ()).is_none() {
            pairs.push((e.source, e.target));
        }
    }
    let mut degree = vec![0usize; graph.node_count()];
    for &(s, t) in &pairs {
        degree[s] += 1;
        degree[t] += 1;
    }
    pairs
        .into_iter()
        .map(|(source, target)| {
            let (ds, dt) = (degree[source] as f64, degree[target] as f64);
            Link {
                source,
                target,
                strength: params.link_strength.unwrap_or(1.0 / ds.min(dt)),
                bias: ds / (ds + dt),
            }
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct LayoutState {
    pub positions: Vec<Vec3>,
    pub velocities: Vec<Vec3>,
    pub alpha: f64,
    pub tick_count: u64,
    pub params: LayoutParams,
    pub seed: u64,
    pub links: Vec<Link>,
}

const INITIAL_RADIUS: f64 = 10.0;

/// Spherical phyllotaxis spiral, randomly rotated by `seed`, centered on
/// the origin.
pub fn init_layout(graph: &DynamicGraph, seed: u64) -> Result<LayoutState, LayoutError> {
    init_layout_with(graph, seed, LayoutParams::default())
}

pub fn init_layout_with(
    graph: &DynamicGraph,
    seed: u64,
    params: LayoutParams,
) -> Result<LayoutState, LayoutError> {
    params.validate()?;
    let n = graph.node_count();
    if n == 0 {
        return Err(LayoutError::EmptyGraph);
    }
    let roll_step = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    let yaw_step = std::f64::consts::PI * 20.0 / (9.0 + 221f64.sqrt());

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rotation = random_rotation(&mut rng);

    let mut positions: Vec<Vec3> = (0..n)
        .map(|i| {
            let i = i as f64;
            let radius = INITIAL_RADIUS * (0.5 + i).cbrt();
            let (roll, yaw) = (i * roll_step, i * yaw_step);
            let p = Vec3::new(
                radius * roll.sin() * yaw.cos(),
                radius * roll.cos(),
                radius * roll.sin() * yaw.sin(),
            );
            rotation * p
        })
        .collect();
    recenter(&mut positions);

    Ok(LayoutState {
        velocities: vec![Vec3::zeros(); n],
        positions,
        alpha: 1.0,
        tick_count: 0,
        links: union_links(graph, &params),
        params,
        seed,
    })
}

/// Uniform random rotation (Shoemake).
fn random_rotation(rng: &mut impl Rng) -> UnitQuaternion<f64> {
    let (u1, u2, u3): (f64, f64, f64) = (rng.random(), rng.random(), rng.random());
    let tau = std::f64::consts::TAU;
    let (a, b) = ((1.0 - u1).sqrt(), u1.sqrt());
    let q = nalgebra::Quaternion::new(a * (tau * u2).cos(), a * (tau * u2).sin(), b * (tau * u3).sin(), b * (tau * u3).cos());
    UnitQuaternion::from_quaternion(q)
}

fn recenter(positions: &mut [Vec3]) {
    if positions.is_empty() {
        return;
    }
    let centroid = positions.iter().sum::<Vec3>() / positions.len() as f64;
    for p in positions.iter_mut() {
        *p -= centroid;
    }
}

impl LayoutState {
    pub fn node_count(&self) -> usize {
        self.positions.len()
    }

    pub fn converged(&self) -> bool {
        self.alpha < self.params.alpha_min
    }

    /// One annealing step using Barnes-Hut repulsion. The centering
    /// translation is applied after integration.
    pub fn tick(&mut self, graph: &DynamicGraph) -> Result<(), LayoutError> {
        if graph.node_count() != self.node_count() {
            return Err(LayoutError::Mismatch {
                graph: graph.node_count(),
                state: self.node_count(),
            });
        }
        self.alpha += (self.params.alpha_target - self.alpha) * self.params.alpha_decay;

        let tree = Octree::build(&self.positions);
        let increments = compute_forces_bh(self, &tree);
        let keep = 1.0 - self.params.velocity_decay;
        for ((p, v), dv) in self
            .positions
            .iter_mut()
            .zip(self.velocities.iter_mut())
            .zip(increments)
        {
            *v = (*v + dv) * keep;
            *p += *v;
        }
        self.tick_count += 1;
        if let Some(node) = self.positions.iter().position(|p| !p.iter().all(|c| c.is_finite())) {
            return Err(LayoutError::NonFinite {
                node,
                id: graph.node(node).id.clone(),
            });
        }
        recenter(&mut self.positions);
        Ok(())
    }

    /// Ticks until `alpha < alpha_min`.
    pub fn run_to_convergence(&mut self, graph: &DynamicGraph) -> Result<&[Vec3], LayoutError> {
        if self.node_count() == 1 {
            self.positions[0] = Vec3::zeros();
            self.velocities[0] = Vec3::zeros();
            self.alpha = self.alpha.min(self.params.alpha_min * 0.5);
            return Ok(&self.positions);
        }
        while !self.converged() {
            self.tick(graph)?;
        }
        Ok(&self.positions)
    }
}

/// Sphere enclosing every node sphere, centered on the position centroid.
pub fn bounding_sphere(positions: &[Vec3], radii: &[f64]) -> Result<(Vec3, f64), LayoutError> {
    if positions.is_empty() {
        return Err(LayoutError::EmptyGraph);
    }
    let center = positions.iter().sum::<Vec3>() / positions.len() as f64;
    let radius = positions
        .iter()
        .zip(radii.iter().copied().chain(std::iter::repeat(0.0)))
        .map(|(p, r)| (p - center).norm() + r)
        .fold(0.0, f64::max);
    Ok((center, radius))
}

/// Rotation about a unit axis; helper shared by the navigation module.
pub(crate) fn axis_angle(axis: Vec3, angle: f64) -> UnitQuaternion<f64> {
    UnitQuaternion::from_axis_angle(&Unit::new_normalize(axis), angle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{load_graph, EdgeRecord, FrameSet, NodeRecord};

    fn chain(n: usize, linked: bool) -> DynamicGraph {
        let nodes = (0..n).map(|i| NodeRecord::new(format!("n{i}"), FrameSet::all(1))).collect();
        let edges = if linked {
            (1..n).map(|i| EdgeRecord::new(i - 1, i, false, FrameSet::all(1))).collect()
        } else {
            Vec::new()
        };
        DynamicGraph::new(1, false, nodes, edges).unwrap()
    }

    #[test]
    fn default_alpha_decay() {
        let d = LayoutParams::default().alpha_decay;
        assert!((d - 0.02276277904418933).abs() < 1e-15);
    }

    #[test]
    fn init_is_deterministic() {
        let g = chain(40, true);
        let a = init_layout(&g, 11).unwrap();
        let b = init_layout(&g, 11).unwrap();
        assert_eq!(a.positions, b.positions);
        assert_ne!(a.positions, init_layout(&g, 12).unwrap().positions);
        assert!(a.velocities.iter().all(|v| *v == Vec3::zeros()));
        assert_eq!(a.alpha, 1.0);
    }

    #[test]
    fn single_node_starts_at_origin() {
        let s = init_layout(&chain(1, false), 5).unwrap();
        assert_eq!(s.positions[0], Vec3::zeros());
    }

    #[test]
    fn spiral_is_injective() {
        let s = init_layout(&chain(100, false), 1).unwrap();
        for i in 0..100 {
            for j in i + 1..100 {
                assert!((s.positions[i] - s.positions[j]).norm() > 0.0);
            }
        }
    }

    #[test]
    fn empty_graph_rejected() {
        let g = load_graph(r#"{"frame_count":1}"#).unwrap();
        assert_eq!(init_layout(&g, 0).unwrap_err(), LayoutError::EmptyGraph);
    }

    #[test]
    fn bad_params_rejected() {
        let g = chain(2, false);
        let params = LayoutParams {
            theta: 0.0,
            ..Default::default()
        };
        assert!(matches!(init_layout_with(&g, 0, params), Err(LayoutError::InvalidParams(_))));
    }

    #[test]
    fn union_links_dedupe_and_stiffness() {
        let g = load_graph(
            r#"{"frame_count":2,"nodes":[{"id":"a"},{"id":"b"},{"id":"c"}],
                "links":[{"source":"a","target":"b","frames":[0]},{"source":"b","target":"a","frames":[1]},
                         {"source":"b","target":"c"},{"source":"c","target":"c"}]}"#,
        )
        .unwrap();
        let links = union_links(&g, &LayoutParams::default());
        assert_eq!(links.len(), 2);
        assert_eq!(links[0].strength, 1.0);
        assert!((links[0].bias - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn bounding_sphere_examples() {
        let (c, r) = bounding_sphere(&[Vec3::zeros()], &[1.0]).unwrap();
        assert_eq!((c, r), (Vec3::zeros(), 1.0));
        let (c, r) = bounding_sphere(&[Vec3::new(1.0, 0.0, 0.0), Vec3::new(-1.0, 0.0, 0.0)], &[0.0, 0.0]).unwrap();
        assert_eq!((c, r), (Vec3::zeros(), 1.0));
        assert_eq!(bounding_sphere(&[], &[]), Err(LayoutError::EmptyGraph));
    }

    #[test]
    fn tick_keeps_centroid_at_origin() {
        let g = chain(30, true);
        let mut s = init_layout(&g, 3).unwrap();
        for _ in 0..20 {
            s.tick(&g).unwrap();
            let centroid = s.positions.iter().sum::<Vec3>() / 30.0;
            let (_, radius) = bounding_sphere(&s.positions, &[]).unwrap();
            assert!(centroid.norm() < 1e-6 * radius);
        }
    }

    #[test]
    fn mismatched_graph_is_an_error() {
        let mut s = init_layout(&chain(3, false), 0).unwrap();
        assert!(matches!(s.tick(&chain(4, false)), Err(LayoutError::Mismatch { .. })));
    }

    #[test]
    fn non_finite_position_reports_node_id() {
        let g = chain(2, false);
        let mut s = init_layout(&g, 0).unwrap();
        s.velocities[1] = Vec3::new(f64::NAN, 0.0, 0.0);
        match s.tick(&g) {
            Err(LayoutError::NonFinite { node, id }) => assert_eq!((node, id.as_str()), (1, "n1")),
            other => panic!("unexpected {other:?}"),
        }
    }
}
