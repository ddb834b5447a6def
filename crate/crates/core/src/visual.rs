//! Attribute to visual channel mapping: node radius, edge girth, group colors.

use crate::graph::DynamicGraph;

/// RGBA in linear [0, 1] components.
pub type Rgba = [f32; 4];

/// Twelve-entry categorical palette, cycled by group ordinal.
pub const PALETTE: [[f32; 3]; 12] = [
    [0.651, 0.808, 0.890],
    [0.122, 0.471, 0.706],
    [0.698, 0.875, 0.541],
    [0.200, 0.627, 0.173],
    [0.984, 0.604, 0.600],
    [0.890, 0.102, 0.110],
    [0.992, 0.749, 0.435],
    [1.000, 0.498, 0.000],
    [0.792, 0.698, 0.839],
    [0.416, 0.239, 0.604],
    [1.000, 1.000, 0.600],
    [0.694, 0.349, 0.157],
];

pub fn group_color(group: usize) -> [f32; 3] {
    PALETTE[group % PALETTE.len()]
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VisualMapping {
    pub radius_min: f64,
    pub radius_max: f64,
    pub girth_min: f64,
    pub girth_max: f64,
}

impl Default for VisualMapping {
    fn default() -> Self {
        VisualMapping {
            radius_min: 0.5,
            radius_max: 2.5,
            girth_min: 0.05,
            girth_max: 0.3,
        }
    }
}

impl VisualMapping {
    /// `r_min + k * sqrt(value)`, with `k` chosen so the largest value maps
    /// to `radius_max`.
    pub fn node_radii(&self, graph: &DynamicGraph) -> Vec<f64> {
        let max = graph.nodes().iter().map(|n| n.value).fold(0.0, f64::max);
        let k = if max > 0.0 {
            (self.radius_max - self.radius_min) / max.sqrt()
        } else {
            0.0
        };
        graph
            .nodes()
            .iter()
            .map(|n| self.radius_min + k * n.value.sqrt())
            .collect()
    }

    /// Linear in weight, normalized so the heaviest edge gets `girth_max`.
    pub fn edge_girths(&self, graph: &DynamicGraph) -> Vec<f64> {
        let max = graph.edges().iter().map(|e| e.weight).fold(0.0, f64::max);
        let k = if max > 0.0 {
            (self.girth_max - self.girth_min) / max
        } else {
            0.0
        };
        graph
            .edges()
            .iter()
            .map(|e| self.girth_min + k * e.weight)
            .collect()
    }
}
