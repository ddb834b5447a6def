//! Dynamic attributed graph: JSON loading, validation, adjacency and
//! per-frame presence.
//!
//! Elements carry an explicit set of time frames they are present in. An
//! element without a `frames` field is present in every frame. The graph is
//! immutable once loaded.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize};
use serde_json::Value;

/// Opaque per-element attributes carried through from the input document.
pub type Attributes = BTreeMap<String, Value>;

#[derive(Debug, thiserror::Error)]
pub enum GraphError {
    #[error("invalid graph document: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("frame_count must be at least 1")]
    NoFrames,
    #[error("duplicate node id {0:?}")]
    DuplicateNode(String),
    #[error("node {id:?} has invalid value {value} (must be finite and >= 0)")]
    InvalidValue { id: String, value: f64 },
    #[error("edge {edge} has invalid weight {weight} (must be finite and >= 0)")]
    InvalidWeight { edge: String, weight: f64 },
    #[error("edge {edge} references unknown node {id:?}")]
    DanglingEndpoint { edge: String, id: String },
    #[error("{element} lists frame {frame} but frame_count is {frame_count}")]
    FrameOutOfRange {
        element: String,
        frame: u32,
        frame_count: u32,
    },
    #[error("{0} has an empty frames list")]
    EmptyFrames(String),
    #[error("edge {edge} duplicates another edge between the same nodes in frame {frame}")]
    DuplicateEdge { edge: String, frame: u32 },
    #[error("unknown node id {0:?}")]
    UnknownNode(String),
    #[error("frame {frame} out of range (frame_count {frame_count})")]
    FrameIndex { frame: u32, frame_count: u32 },
}

/// Categorical group attribute. Input documents use either integers or
/// strings for cluster ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupKey {
    Int(i64),
    Name(String),
}

impl fmt::Display for GroupKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKey::Int(i) => write!(f, "{i}"),
            GroupKey::Name(s) => f.write_str(s),
        }
    }
}

/// Sorted, deduplicated set of frame indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FrameSet(Vec<u32>);

impl FrameSet {
    pub fn all(frame_count: u32) -> Self {
        FrameSet((0..frame_count).collect())
    }

    pub fn from_frames(frames: impl IntoIterator<Item = u32>) -> Self {
        let mut v: Vec<u32> = frames.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        FrameSet(v)
    }

    pub fn contains(&self, frame: u32) -> bool {
        self.0.binary_search(&frame).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    fn max(&self) -> Option<u32> {
        self.0.last().copied()
    }

    fn is_all(&self, frame_count: u32) -> bool {
        self.0.len() == frame_count as usize && self.max() == frame_count.checked_sub(1)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NodeRecord {
    pub id: String,
    pub label: String,
    pub group: Option<GroupKey>,
    pub value: f64,
    pub frames: FrameSet,
    pub attributes: Attributes,
}

impl NodeRecord {
    /// A node with label = id, no group, value 1 and the given frames.
    pub fn new(id: impl Into<String>, frames: FrameSet) -> Self {
        let id = id.into();
        NodeRecord {
            label: id.clone(),
            id,
            group: None,
            value: 1.0,
            frames,
            attributes: Attributes::new(),
        }
    }
}

/// An edge between two node indices of the owning graph.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeRecord {
    pub source: usize,
    pub target: usize,
    pub weight: f64,
    pub directed: bool,
    pub frames: FrameSet,
    pub attributes: Attributes,
}

impl EdgeRecord {
    pub fn new(source: usize, target: usize, directed: bool, frames: FrameSet) -> Self {
        EdgeRecord {
            source,
            target,
            weight: 1.0,
            directed,
            frames,
            attributes: Attributes::new(),
        }
    }

    /// The endpoint opposite `node`, or `None` if `node` is not an endpoint.
    pub fn other(&self, node: usize) -> Option<usize> {
        if self.source == node {
            Some(self.target)
        } else if self.target == node {
            Some(self.source)
        } else {
            None
        }
    }
}

/// Nodes adjacent to a node and the edges incident to it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Neighborhood {
    pub nodes: BTreeSet<usize>,
    pub edges: BTreeSet<usize>,
}

/// Dense membership masks over node and edge indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presence {
    pub nodes: Vec<bool>,
    pub edges: Vec<bool>,
}

impl Presence {
    pub fn everything(graph: &DynamicGraph) -> Self {
        Presence {
            nodes: vec![true; graph.node_count()],
            edges: vec![true; graph.edge_count()],
        }
    }

    pub fn node_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.nodes.iter().enumerate().filter(|(_, &p)| p).map(|(i, _)| i)
    }

    pub fn edge_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().enumerate().filter(|(_, &p)| p).map(|(i, _)| i)
    }
}

#[derive(Clone, Debug)]
pub struct DynamicGraph {
    nodes: Vec<NodeRecord>,
    edges: Vec<EdgeRecord>,
    frame_count: u32,
    directed: bool,
    adjacency: Vec<Vec<usize>>,
    index: HashMap<String, usize>,
    groups: Vec<usize>,
}

impl DynamicGraph {
    /// Validates the parts and builds adjacency.
    pub fn new(
        frame_count: u32,
        directed: bool,
        nodes: Vec<NodeRecord>,
        edges: Vec<EdgeRecord>,
    ) -> Result<Self, GraphError> {
        if frame_count == 0 {
            return Err(GraphError::NoFrames);
        }
        let mut index = HashMap::with_capacity(nodes.len());
        for (i, node) in nodes.iter().enumerate() {
            if index.insert(node.id.clone(), i).is_some() {
                return Err(GraphError::DuplicateNode(node.id.clone()));
            }
            if !(node.value.is_finite() && node.value >= 0.0) {
                return Err(GraphError::InvalidValue {
                    id: node.id.clone(),
                    value: node.value,
                });
            }
            check_frames(&node.frames, frame_count, || format!("node {:?}", node.id))?;
        }

        let edge_name = |e: &EdgeRecord| {
            let name = |i: usize| nodes.get(i).map_or_else(|| format!("#{i}"), |n| n.id.clone());
            format!("{}->{}", name(e.source), name(e.target))
        };
        let mut adjacency = vec![Vec::new(); nodes.len()];
        let mut pairs: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (ei, edge) in edges.iter().enumerate() {
            for endpoint in [edge.source, edge.target] {
                if endpoint >= nodes.len() {
                    return Err(GraphError::DanglingEndpoint {
                        edge: edge_name(edge),
                        id: format!("#{endpoint}"),
                    });
                }
            }
            if !(edge.weight.is_finite() && edge.weight >= 0.0) {
                return Err(GraphError::InvalidWeight {
                    edge: edge_name(edge),
                    weight: edge.weight,
                });
            }
            check_frames(&edge.frames, frame_count, || format!("edge {}", edge_name(edge)))?;

            let key = if edge.directed {
                (edge.source, edge.target)
            } else {
                (edge.source.min(edge.target), edge.source.max(edge.target))
            };
            let same_pair = pairs.entry(key).or_default();
            for &other in same_pair.iter() {
                if let Some(frame) = edge.frames.iter().find(|&f| edges[other].frames.contains(f)) {
                    return Err(GraphError::DuplicateEdge {
                        edge: edge_name(edge),
                        frame,
                    });
                }
            }
            same_pair.push(ei);

            adjacency[edge.source].push(ei);
            if edge.target != edge.source {
                adjacency[edge.target].push(ei);
            }
        }

        let mut group_ids: HashMap<Option<&GroupKey>, usize> = HashMap::new();
        let groups = nodes
            .iter()
            .map(|n| {
                let next = group_ids.len();
                *group_ids.entry(n.group.as_ref()).or_insert(next)
            })
            .collect();

        Ok(DynamicGraph {
            nodes,
            edges,
            frame_count,
            directed,
            adjacency,
            index,
            groups,
        })
    }

    /// An empty single-frame graph.
    pub fn empty() -> Self {
        DynamicGraph::new(1, false, Vec::new(), Vec::new()).expect("empty graph is valid")
    }

    pub fn nodes(&self) -> &[NodeRecord] {
        &self.nodes
    }

    pub fn edges(&self) -> &[EdgeRecord] {
        &self.edges
    }

    pub fn node(&self, index: usize) -> &NodeRecord {
        &self.nodes[index]
    }

    pub fn edge(&self, index: usize) -> &EdgeRecord {
        &self.edges[index]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn frame_count(&self) -> u32 {
        self.frame_count
    }

    pub fn directed(&self) -> bool {
        self.directed
    }

    pub fn node_index(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Incident edge indices of a node.
    pub fn incident(&self, node: usize) -> &[usize] {
        &self.adjacency[node]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    /// Ordinal of the node's group in first-appearance order.
    pub fn group_index(&self, node: usize) -> usize {
        self.groups[node]
    }

    pub fn neighborhood(&self, id: &str) -> Result<Neighborhood, GraphError> {
        let node = self
            .node_index(id)
            .ok_or_else(|| GraphError::UnknownNode(id.to_owned()))?;
        Ok(self.neighborhood_of(node))
    }

    /// Neighbors in either direction plus every incident edge.
    pub fn neighborhood_of(&self, node: usize) -> Neighborhood {
        let mut hood = Neighborhood::default();
        for &ei in &self.adjacency[node] {
            hood.edges.insert(ei);
            if let Some(other) = self.edges[ei].other(node) {
                if other != node {
                    hood.nodes.insert(other);
                }
            }
        }
        hood
    }

    /// Incident edges leaving `node`. Undirected edges count in both directions.
    pub fn out_edges(&self, node: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[node].iter().copied().filter(move |&ei| {
            let e = &self.edges[ei];
            !e.directed || e.source == node
        })
    }

    /// Elements present in `frame`. An edge needs both endpoints present.
    pub fn frame_presence(&self, frame: u32) -> Result<Presence, GraphError> {
        if frame >= self.frame_count {
            return Err(GraphError::FrameIndex {
                frame,
                frame_count: self.frame_count,
            });
        }
        let nodes: Vec<bool> = self.nodes.iter().map(|n| n.frames.contains(frame)).collect();
        let edges = self
            .edges
            .iter()
            .map(|e| e.frames.contains(frame) && nodes[e.source] && nodes[e.target])
            .collect();
        Ok(Presence { nodes, edges })
    }

    /// Canonical JSON form. Frames equal to the full range are omitted.
    pub fn to_json(&self) -> String {
        let frames = |f: &FrameSet| (!f.is_all(self.frame_count)).then(|| f.as_slice().to_vec());
        let doc = RawGraph {
            directed: self.directed,
            frame_count: self.frame_count,
            nodes: self
                .nodes
                .iter()
                .map(|n| RawNode {
                    id: n.id.clone(),
                    label: Some(n.label.clone()),
                    group: n.group.clone(),
                    value: Some(n.value),
                    frames: frames(&n.frames),
                    attributes: n.attributes.clone(),
                })
                .collect(),
            links: self
                .edges
                .iter()
                .map(|e| RawLink {
                    source: self.nodes[e.source].id.clone(),
                    target: self.nodes[e.target].id.clone(),
                    weight: Some(e.weight),
                    directed: Some(e.directed),
                    frames: frames(&e.frames),
                    attributes: e.attributes.clone(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("graph serializes")
    }
}

fn check_frames(
    frames: &FrameSet,
    frame_count: u32,
    element: impl Fn() -> String,
) -> Result<(), GraphError> {
    match frames.max() {
        None => Err(GraphError::EmptyFrames(element())),
        Some(frame) if frame >= frame_count => Err(GraphError::FrameOutOfRange {
            element: element(),
            frame,
            frame_count,
        }),
        Some(_) => Ok(()),
    }
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    #[serde(default)]
    directed: bool,
    frame_count: u32,
    #[serde(default)]
    nodes: Vec<RawNode>,
    #[serde(default, alias = "edges")]
    links: Vec<RawLink>,
}

#[derive(Serialize, Deserialize)]
struct RawNode {
    #[serde(deserialize_with = "element_key")]
    id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    group: Option<GroupKey>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    value: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    frames: Option<Vec<u32>>,
    #[serde(flatten)]
    attributes: Attributes,
}

#[derive(Serialize, Deserialize)]
struct RawLink {
    #[serde(deserialize_with = "element_key")]
    source: String,
    #[serde(deserialize_with = "element_key")]
    target: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weight: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    directed: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    frames: Option<Vec<u32>>,
    #[serde(flatten)]
    attributes: Attributes,
}

/// Node ids may be written as strings or numbers.
fn element_key<'de, D: Deserializer<'de>>(de: D) -> Result<String, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Key {
        Text(String),
        Number(serde_json::Number),
    }
    Ok(match Key::deserialize(de)? {
        Key::Text(s) => s,
        Key::Number(n) => n.to_string(),
    })
}

/// Parses and validates a graph document.
pub fn load_graph(text: &str) -> Result<DynamicGraph, GraphError> {
    let raw: RawGraph = serde_json::from_str(text)?;
    if raw.frame_count == 0 {
        return Err(GraphError::NoFrames);
    }
    let frames = |f: Option<Vec<u32>>| f.map_or_else(|| FrameSet::all(raw.frame_count), FrameSet::from_frames);

    let nodes: Vec<NodeRecord> = raw
        .nodes
        .into_iter()
        .map(|n| NodeRecord {
            label: n.label.unwrap_or_else(|| n.id.clone()),
            id: n.id,
            group: n.group,
            value: n.value.unwrap_or(1.0),
            frames: frames(n.frames),
            attributes: n.attributes,
        })
        .collect();
    let mut lookup: HashMap<&str, usize> = HashMap::with_capacity(nodes.len());
    for (i, n) in nodes.iter().enumerate() {
        lookup.entry(n.id.as_str()).or_insert(i);
    }

    let mut edges = Vec::with_capacity(raw.links.len());
    for link in raw.links {
        let resolve = |id: &str| {
            lookup.get(id).copied().ok_or_else(|| GraphError::DanglingEndpoint {
                edge: format!("{}->{}", link.source, link.target),
                id: id.to_owned(),
            })
        };
        let source = resolve(&link.source)?;
        let target = resolve(&link.target)?;
        edges.push(EdgeRecord {
            source,
            target,
            weight: link.weight.unwrap_or(1.0),
            directed: link.directed.unwrap_or(raw.directed),
            frames: frames(link.frames),
            attributes: link.attributes,
        });
    }
    DynamicGraph::new(raw.frame_count, raw.directed, nodes, edges)
}
