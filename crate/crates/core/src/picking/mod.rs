//! Laser-pointer picking of node spheres and edge tubes, and the
//! highlight / lowlight sets shown while hovering.

mod bvh;
mod geometry;

use std::cmp::Ordering;
use std::collections::BTreeSet;

pub use bvh::Bvh;
pub use geometry::{Aabb, InvalidRay, Primitive, Ray};

use crate::graph::{DynamicGraph, Presence};
use crate::layout::Vec3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Entity {
    Node(usize),
    Edge(usize),
}

impl Entity {
    /// Nodes sort before edges so they win equal-distance ties.
    fn rank(&self) -> (u8, usize) {
        match *self {
            Entity::Node(i) => (0, i),
            Entity::Edge(i) => (1, i),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PickHit {
    pub entity: Entity,
    pub distance: f64,
}

impl PickHit {
    /// Nearer first; at equal distance nodes before edges, then lower index.
    pub fn precedence(&self, other: &PickHit) -> Ordering {
        self.distance
            .total_cmp(&other.distance)
            .then_with(|| self.entity.rank().cmp(&other.entity.rank()))
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum PickError {
    #[error("entity {0:?} does not exist in the graph")]
    UnknownEntity(Entity),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PickConfig {
    /// Thin edges are picked with at least this radius.
    pub min_edge_radius: f64,
}

impl Default for PickConfig {
    fn default() -> Self {
        PickConfig {
            min_edge_radius: 0.08,
        }
    }
}

/// Which elements may be hit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Visibility {
    pub nodes: Vec<bool>,
    pub edges: Vec<bool>,
}

impl Visibility {
    pub fn all(graph: &DynamicGraph) -> Self {
        Visibility {
            nodes: vec![true; graph.node_count()],
            edges: vec![true; graph.edge_count()],
        }
    }

    /// Elements with non-zero opacity.
    pub fn from_opacity(nodes: &[f32], edges: &[f32]) -> Self {
        Visibility {
            nodes: nodes.iter().map(|&o| o > 0.0).collect(),
            edges: edges.iter().map(|&o| o > 0.0).collect(),
        }
    }

    pub fn is_visible(&self, entity: Entity) -> bool {
        match entity {
            Entity::Node(i) => self.nodes.get(i).copied().unwrap_or(false),
            Entity::Edge(i) => self.edges.get(i).copied().unwrap_or(false),
        }
    }

    /// Removes lowlighted elements, for frontends that make them unpickable.
    pub fn without_lowlight(&self, highlight: &HighlightState) -> Self {
        let mut out = self.clone();
        for (v, m) in out.nodes.iter_mut().zip(&highlight.nodes) {
            *v &= *m != Emphasis::Lowlighted;
        }
        for (v, m) in out.edges.iter_mut().zip(&highlight.edges) {
            *v &= *m != Emphasis::Lowlighted;
        }
        out
    }
}

impl From<Presence> for Visibility {
    fn from(p: Presence) -> Self {
        Visibility {
            nodes: p.nodes,
            edges: p.edges,
        }
    }
}

/// Pickable geometry for one positions snapshot.
#[derive(Clone, Debug, Default)]
pub struct PickIndex {
    entities: Vec<Entity>,
    primitives: Vec<Primitive>,
    bvh: Bvh,
}

impl PickIndex {
    /// Node spheres plus, for each edge, a capsule between the endpoint
    /// surfaces. Edges whose endpoints coincide get no capsule.
    pub fn build(
        graph: &DynamicGraph,
        positions: &[Vec3],
        radii: &[f64],
        girths: &[f64],
        config: &PickConfig,
    ) -> PickIndex {
        let mut entities = Vec::with_capacity(graph.node_count() + graph.edge_count());
        let mut primitives = Vec::with_capacity(entities.capacity());
        for (i, (&center, &radius)) in positions.iter().zip(radii).enumerate() {
            entities.push(Entity::Node(i));
            primitives.push(Primitive::Sphere { center, radius });
        }
        for (ei, edge) in graph.edges().iter().enumerate() {
            if edge.source == edge.target {
                continue;
            }
            let (ps, pt) = (positions[edge.source], positions[edge.target]);
            let span = pt - ps;
            let length = span.norm();
            if length == 0.0 {
                continue;
            }
            let dir = span / length;
            let mut a = ps + dir * radii[edge.source];
            let mut b = pt - dir * radii[edge.target];
            if (b - a).dot(&dir) < 0.0 {
                let mid = (a + b) * 0.5;
                a = mid;
                b = mid;
            }
            entities.push(Entity::Edge(ei));
            primitives.push(Primitive::Capsule {
                a,
                b,
                radius: girths[ei].max(config.min_edge_radius),
            });
        }
        let bvh = Bvh::build(&primitives);
        PickIndex {
            entities,
            primitives,
            bvh,
        }
    }

    pub fn len(&self) -> usize {
        self.primitives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primitives.is_empty()
    }

    /// All indexed (entity, primitive) pairs.
    pub fn primitives(&self) -> impl Iterator<Item = (Entity, &Primitive)> {
        self.entities.iter().copied().zip(self.primitives.iter())
    }

    /// Nearest visible entity along the ray.
    pub fn ray_pick(&self, ray: &Ray, visible: &Visibility) -> Option<PickHit> {
        let best = std::cell::Cell::new(None::<PickHit>);
        self.bvh.traverse(
            ray,
            || best.get().map_or(f64::INFINITY, |h| h.distance),
            |p| {
                let entity = self.entities[p];
                if !visible.is_visible(entity) {
                    return;
                }
                if let Some(distance) = self.primitives[p].intersect(ray) {
                    let hit = PickHit { entity, distance };
                    if best.get().is_none_or(|b| hit.precedence(&b).is_lt()) {
                        best.set(Some(hit));
                    }
                }
            },
        );
        best.get()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Emphasis {
    #[default]
    Normal,
    Hovered,
    Highlighted,
    Lowlighted,
}

/// Which incident edges of a hovered node are emphasized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum HighlightPolicy {
    #[default]
    AllIncident,
    OutEdgesOnly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HighlightState {
    pub hovered: Option<Entity>,
    pub nodes: Vec<Emphasis>,
    pub edges: Vec<Emphasis>,
}

impl HighlightState {
    pub fn none(graph: &DynamicGraph) -> Self {
        HighlightState {
            hovered: None,
            nodes: vec![Emphasis::Normal; graph.node_count()],
            edges: vec![Emphasis::Normal; graph.edge_count()],
        }
    }

    fn collect(marks: &[Emphasis], want: Emphasis) -> BTreeSet<usize> {
        marks
            .iter()
            .enumerate()
            .filter(|(_, &m)| m == want)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn highlight_nodes(&self) -> BTreeSet<usize> {
        Self::collect(&self.nodes, Emphasis::Highlighted)
    }

    pub fn highlight_edges(&self) -> BTreeSet<usize> {
        Self::collect(&self.edges, Emphasis::Highlighted)
    }

    pub fn lowlight_nodes(&self) -> BTreeSet<usize> {
        Self::collect(&self.nodes, Emphasis::Lowlighted)
    }

    pub fn lowlight_edges(&self) -> BTreeSet<usize> {
        Self::collect(&self.edges, Emphasis::Lowlighted)
    }
}

/// Hovered node: its neighborhood is highlighted. Hovered edge: the edge
/// and its endpoints are highlighted. Every other visible element is
/// lowlighted. Without a hover nothing is emphasized.
pub fn hover_update(
    graph: &DynamicGraph,
    hovered: Option<Entity>,
    visible: &Visibility,
    policy: HighlightPolicy,
) -> Result<HighlightState, PickError> {
    let mut state = HighlightState::none(graph);
    let Some(entity) = hovered else {
        return Ok(state);
    };
    let (nodes, edges) = match entity {
        Entity::Node(n) if n < graph.node_count() => {
            let hood = graph.neighborhood_of(n);
            let edges: BTreeSet<usize> = match policy {
                HighlightPolicy::AllIncident => hood.edges,
                HighlightPolicy::OutEdgesOnly => graph.out_edges(n).collect(),
            };
            let nodes = match policy {
                HighlightPolicy::AllIncident => hood.nodes,
                HighlightPolicy::OutEdgesOnly => edges
                    .iter()
                    .filter_map(|&e| graph.edge(e).other(n))
                    .filter(|&m| m != n)
                    .collect(),
            };
            state.nodes[n] = Emphasis::Hovered;
            (nodes, edges)
        }
        Entity::Edge(e) if e < graph.edge_count() => {
            let edge = graph.edge(e);
            (BTreeSet::from([edge.source, edge.target]), BTreeSet::from([e]))
        }
        other => return Err(PickError::UnknownEntity(other)),
    };
    state.hovered = Some(entity);

    for (i, mark) in state.nodes.iter_mut().enumerate() {
        if !visible.nodes[i] || *mark == Emphasis::Hovered {
            continue;
        }
        *mark = if nodes.contains(&i) {
            Emphasis::Highlighted
        } else {
            Emphasis::Lowlighted
        };
    }
    for (i, mark) in state.edges.iter_mut().enumerate() {
        if !visible.edges[i] {
            continue;
        }
        *mark = if edges.contains(&i) {
            Emphasis::Highlighted
        } else {
            Emphasis::Lowlighted
        };
    }
    Ok(state)
}
