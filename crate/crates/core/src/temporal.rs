//! Time-cursor scrubbing with linear fade transitions.
//!
//! The same cursor drives three modes: stepping through time frames,
//! sliding through bins of a numeric node attribute, and toggling between
//! two related networks stored as frames 0 and 1.

use serde::Serialize;

use crate::graph::{DynamicGraph, GraphError, Presence};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CursorMode {
    TimeFrames,
    AttributeFilter,
    Comparison,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Transition {
    pub from: usize,
    pub to: usize,
    pub progress: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScrubConfig {
    /// Axis magnitude below which input is ignored.
    pub deadzone: f64,
    /// Maximum steps per second while the axis is held.
    pub steps_per_second: f64,
    /// Fade duration in seconds.
    pub duration: f64,
}

impl Default for ScrubConfig {
    fn default() -> Self {
        ScrubConfig {
            deadzone: 0.3,
            steps_per_second: 2.0,
            duration: 0.5,
        }
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum CursorError {
    #[error("a cursor needs at least one position")]
    Empty,
    #[error("comparison mode needs exactly two positions, got {0}")]
    ComparisonSize(usize),
}

/// Payload for the time bar drawn above the pointer.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TimeBar {
    pub frame_count: usize,
    pub current: usize,
    pub target: usize,
    pub progress: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TimeCursor {
    pub mode: CursorMode,
    pub count: usize,
    pub current: usize,
    pub transition: Option<Transition>,
    pub config: ScrubConfig,
    cooldown: f64,
}

impl TimeCursor {
    pub fn new(mode: CursorMode, count: usize) -> Result<Self, CursorError> {
        if count == 0 {
            return Err(CursorError::Empty);
        }
        if mode == CursorMode::Comparison && count != 2 {
            return Err(CursorError::ComparisonSize(count));
        }
        Ok(TimeCursor {
            mode,
            count,
            current: 0,
            transition: None,
            config: ScrubConfig::default(),
            cooldown: 0.0,
        })
    }

    pub fn frames(graph: &DynamicGraph) -> Self {
        TimeCursor::new(CursorMode::TimeFrames, graph.frame_count() as usize).expect("frame_count >= 1")
    }

    pub fn duration(&self) -> f64 {
        self.config.duration
    }

    /// Position being moved toward, or the current one when idle.
    pub fn target(&self) -> usize {
        self.transition.map_or(self.current, |t| t.to)
    }

    /// Steps to the adjacent position while the modifier is held and the
    /// axis leaves the deadzone, at most `steps_per_second`. Returns whether
    /// a step happened.
    pub fn scrub(&mut self, axis_x: f64, modifier_held: bool, dt: f64) -> bool {
        if !modifier_held || axis_x.abs() <= self.config.deadzone {
            self.cooldown = 0.0;
            return false;
        }
        if self.cooldown > 0.0 {
            self.cooldown -= dt;
            return false;
        }
        let base = self.target();
        let next = if axis_x > 0.0 {
            (base + 1).min(self.count - 1)
        } else {
            base.saturating_sub(1)
        };
        if next == base {
            return false;
        }
        self.cooldown = 1.0 / self.config.steps_per_second;
        // Retargeting mid-fade restarts from whichever end is closer.
        let from = match self.transition {
            Some(t) if t.progress >= 0.5 => t.to,
            Some(t) => t.from,
            None => self.current,
        };
        self.current = from;
        self.transition = (from != next).then_some(Transition {
            from,
            to: next,
            progress: 0.0,
        });
        true
    }

    /// Jumps between the two sides in comparison mode.
    pub fn toggle(&mut self) {
        let next = if self.target() == 0 { 1.min(self.count - 1) } else { 0 };
        if next != self.target() {
            self.transition = Some(Transition {
                from: self.current,
                to: next,
                progress: 0.0,
            });
        }
    }

    pub fn advance_transition(&mut self, dt: f64) {
        let Some(mut t) = self.transition else {
            return;
        };
        t.progress = (t.progress + dt / self.config.duration).clamp(0.0, 1.0);
        if t.progress >= 1.0 {
            self.current = t.to;
            self.transition = None;
        } else {
            self.transition = Some(t);
        }
    }

    /// Opacity of an element given its presence per cursor position.
    pub fn opacity(&self, present: impl Fn(usize) -> bool) -> f64 {
        match self.transition {
            Some(t) => element_opacity(present(t.from), present(t.to), t.progress),
            None => f64::from(u8::from(present(self.current))),
        }
    }

    pub fn time_bar(&self) -> TimeBar {
        TimeBar {
            frame_count: self.count,
            current: self.current,
            target: self.target(),
            progress: self.transition.map_or(0.0, |t| t.progress),
        }
    }
}

/// Linear cross-fade between two presence states.
pub fn element_opacity(present_from: bool, present_to: bool, progress: f64) -> f64 {
    let p = progress.clamp(0.0, 1.0);
    match (present_from, present_to) {
        (true, true) => 1.0,
        (false, true) => p,
        (true, false) => 1.0 - p,
        (false, false) => 0.0,
    }
}

/// Supplies element presence for each cursor position.
pub trait PresenceSource {
    fn positions(&self) -> usize;
    fn presence(&self, index: usize) -> Presence;
}

/// Time frames of a graph.
pub struct Frames<'a>(pub &'a DynamicGraph);

impl PresenceSource for Frames<'_> {
    fn positions(&self) -> usize {
        self.0.frame_count() as usize
    }

    fn presence(&self, index: usize) -> Presence {
        self.0
            .frame_presence(index as u32)
            .unwrap_or_else(|_| Presence {
                nodes: vec![false; self.0.node_count()],
                edges: vec![false; self.0.edge_count()],
            })
    }
}

/// Numeric node attribute used for filtering.
#[derive(Clone, Debug, PartialEq)]
pub enum NodeAttribute {
    Value,
    Named(String),
}

/// Equal-width bins of a node attribute. A node is present in its own bin;
/// an edge is present where both endpoints are. Nodes lacking a numeric
/// attribute are never shown.
#[derive(Clone, Debug, PartialEq)]
pub struct AttributeBins {
    bins: usize,
    node_bin: Vec<Option<usize>>,
    edges: Vec<(usize, usize)>,
    pub min: f64,
    pub max: f64,
}

impl AttributeBins {
    pub const DEFAULT_BINS: usize = 10;

    pub fn new(graph: &DynamicGraph, attribute: &NodeAttribute, bins: usize) -> Result<Self, GraphError> {
        let bins = bins.max(1);
        let values: Vec<Option<f64>> = graph
            .nodes()
            .iter()
            .map(|n| match attribute {
                NodeAttribute::Value => Some(n.value),
                NodeAttribute::Named(key) => n.attributes.get(key).and_then(|v| v.as_f64()),
            })
            .map(|v| v.filter(|x| x.is_finite()))
            .collect();
        let (min, max) = values
            .iter()
            .flatten()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
        let width = (max - min) / bins as f64;
        let node_bin = values
            .iter()
            .map(|v| {
                v.map(|x| {
                    if width > 0.0 {
                        (((x - min) / width) as usize).min(bins - 1)
                    } else {
                        0
                    }
                })
            })
            .collect();
        Ok(AttributeBins {
            bins,
            node_bin,
            edges: graph.edges().iter().map(|e| (e.source, e.target)).collect(),
            min,
            max,
        })
    }

    pub fn bin_of(&self, node: usize) -> Option<usize> {
        self.node_bin[node]
    }
}

impl PresenceSource for AttributeBins {
    fn positions(&self) -> usize {
        self.bins
    }

    fn presence(&self, index: usize) -> Presence {
        let nodes: Vec<bool> = self.node_bin.iter().map(|b| *b == Some(index)).collect();
        let edges = self.edges.iter().map(|&(s, t)| nodes[s] && nodes[t]).collect();
        Presence { nodes, edges }
    }
}

/// Per-element opacities for the cursor state.
#[derive(Clone, Debug, PartialEq)]
pub struct Opacities {
    pub nodes: Vec<f32>,
    pub edges: Vec<f32>,
}

impl Opacities {
    pub fn opaque(graph: &DynamicGraph) -> Self {
        Opacities {
            nodes: vec![1.0; graph.node_count()],
            edges: vec![1.0; graph.edge_count()],
        }
    }

    pub fn compute(cursor: &TimeCursor, source: &dyn PresenceSource) -> Self {
        let blend = |a: &[bool], b: &[bool], progress: f64| -> Vec<f32> {
            a.iter()
                .zip(b)
                .map(|(&x, &y)| element_opacity(x, y, progress) as f32)
                .collect()
        };
        match cursor.transition {
            Some(t) => {
                let (from, to) = (source.presence(t.from), source.presence(t.to));
                Opacities {
                    nodes: blend(&from.nodes, &to.nodes, t.progress),
                    edges: blend(&from.edges, &to.edges, t.progress),
                }
            }
            None => {
                let p = source.presence(cursor.current);
                Opacities {
                    nodes: blend(&p.nodes, &p.nodes, 0.0),
                    edges: blend(&p.edges, &p.edges, 0.0),
                }
            }
        }
    }
}
