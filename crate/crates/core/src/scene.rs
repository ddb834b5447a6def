//! Flat GPU-instancing buffers and the hover label.
//!
//! # Buffer layout
//!
//! All buffers are tightly packed little-endian `f32`.
//!
//! | batch  | stride | fields (float offset)                                                     |
//! |--------|--------|---------------------------------------------------------------------------|
//! | nodes  | 8      | position xyz (0), radius (3), color rgba (4)                              |
//! | edges  | 13     | midpoint xyz (0), orientation quaternion xyzw (3), length (7), girth (8), color rgba (9) |
//! | arrows | 13     | same as edges                                                             |
//!
//! Edge and arrow orientations rotate the unit +z axis onto the
//! source-to-target direction; the mesh is a unit cylinder (or cone) along
//! z centered at the origin. Positions are world coordinates: the graph
//! rotation is already applied. `*_ids` give the graph index of each
//! instance.

use nalgebra::UnitQuaternion;

use crate::graph::DynamicGraph;
use crate::layout::Vec3;
use crate::navigation::{NavigationState, Perspective, Quat};
use crate::picking::{Emphasis, Entity, HighlightState, PickError};
use crate::temporal::Opacities;
use crate::visual::{group_color, Rgba};

pub const NODE_STRIDE: usize = 8;
pub const EDGE_STRIDE: usize = 13;
pub const ARROW_STRIDE: usize = EDGE_STRIDE;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum SceneError {
    #[error("{what} has {got} entries, graph needs {expected}")]
    Inconsistent {
        what: &'static str,
        got: usize,
        expected: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SceneStyle {
    pub highlight: [f32; 3],
    pub lowlight_opacity: f32,
    pub dark_hue: [f32; 3],
    pub edge_color: [f32; 3],
    /// Arrow placement along the edge, from the source.
    pub arrow_fraction: f64,
    /// Arrow length relative to its edge.
    pub arrow_length: f64,
    /// Arrow base girth relative to its edge.
    pub arrow_girth: f64,
}

pub const BACKGROUND: [f32; 3] = [0.02, 0.02, 0.06];

impl Default for SceneStyle {
    fn default() -> Self {
        // 12% gray, tinted a quarter of the way toward the background.
        let dark = BACKGROUND.map(|b| 0.75 * 0.12 + 0.25 * b);
        SceneStyle {
            highlight: [1.0, 0.0, 0.0],
            lowlight_opacity: 0.15,
            dark_hue: dark,
            edge_color: [0.72, 0.72, 0.72],
            arrow_fraction: 0.85,
            arrow_length: 0.08,
            arrow_girth: 2.5,
        }
    }
}

/// Transforms for the UI props.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Props {
    /// Overview only: eye pose of the detail camera prop, position xyz and
    /// quaternion xyzw.
    pub camera_prop: Option<[f32; 7]>,
    /// Detail only: head-local unit direction of the overview indicator.
    pub indicator: Option<[f32; 3]>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct InstanceBuffers {
    pub nodes: Vec<f32>,
    pub edges: Vec<f32>,
    pub arrows: Vec<f32>,
    pub node_ids: Vec<u32>,
    pub edge_ids: Vec<u32>,
    pub arrow_ids: Vec<u32>,
    pub props: Props,
}

impl InstanceBuffers {
    pub fn node_count(&self) -> usize {
        self.node_ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_ids.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrow_ids.len()
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        (self.node_count(), self.edge_count(), self.arrow_count())
    }

    /// Number of instanced draw calls a frontend issues: one per non-empty
    /// batch.
    pub fn batch_count(&self) -> usize {
        [self.node_count(), self.edge_count(), self.arrow_count()]
            .iter()
            .filter(|&&c| c > 0)
            .count()
    }

    pub fn node(&self, k: usize) -> &[f32] {
        &self.nodes[k * NODE_STRIDE..(k + 1) * NODE_STRIDE]
    }

    pub fn edge(&self, k: usize) -> &[f32] {
        &self.edges[k * EDGE_STRIDE..(k + 1) * EDGE_STRIDE]
    }

    pub fn arrow(&self, k: usize) -> &[f32] {
        &self.arrows[k * ARROW_STRIDE..(k + 1) * ARROW_STRIDE]
    }

    pub fn to_le_bytes(batch: &[f32]) -> Vec<u8> {
        batch.iter().flat_map(|f| f.to_le_bytes()).collect()
    }
}

/// Everything one frame of synthesis reads.
pub struct SceneInputs<'a> {
    pub graph: &'a DynamicGraph,
    /// Layout coordinates, one per node.
    pub positions: &'a [Vec3],
    pub radii: &'a [f64],
    pub girths: &'a [f64],
    /// Presence fades from the time cursor.
    pub opacity: &'a Opacities,
    pub highlight: &'a HighlightState,
    pub nav: &'a NavigationState,
    /// World eye position and orientation; needed for the indicator prop.
    pub head: Option<(Vec3, Quat)>,
    pub style: &'a SceneStyle,
}

fn check(what: &'static str, got: usize, expected: usize) -> Result<(), SceneError> {
    if got == expected {
        Ok(())
    } else {
        Err(SceneError::Inconsistent { what, got, expected })
    }
}

fn to_f32(v: &Vec3) -> [f32; 3] {
    [v.x as f32, v.y as f32, v.z as f32]
}

/// Rotation taking +z onto `dir` (unit).
fn align_z(dir: &Vec3) -> Quat {
    UnitQuaternion::rotation_between(&Vec3::z(), dir)
        .unwrap_or_else(|| UnitQuaternion::from_axis_angle(&Vec3::x_axis(), std::f64::consts::PI))
}

fn push_tube(out: &mut Vec<f32>, center: &Vec3, q: &Quat, length: f64, girth: f64, color: Rgba) {
    out.extend_from_slice(&to_f32(center));
    let c = q.coords;
    out.extend_from_slice(&[c.x as f32, c.y as f32, c.z as f32, c.w as f32]);
    out.push(length as f32);
    out.push(girth as f32);
    out.extend_from_slice(&color);
}

fn styled(base: [f32; 3], opacity: f32, emphasis: Emphasis, style: &SceneStyle) -> Rgba {
    let (rgb, alpha) = match emphasis {
        Emphasis::Highlighted => (style.highlight, opacity),
        Emphasis::Lowlighted => (style.dark_hue, opacity * style.lowlight_opacity),
        Emphasis::Normal | Emphasis::Hovered => (base, opacity),
    };
    [rgb[0], rgb[1], rgb[2], alpha.clamp(0.0, 1.0)]
}

/// Builds the three instance batches. Pure: identical inputs give
/// identical buffers.
pub fn synthesize(inputs: &SceneInputs<'_>) -> Result<InstanceBuffers, SceneError> {
    let g = inputs.graph;
    let (n, m) = (g.node_count(), g.edge_count());
    check("positions", inputs.positions.len(), n)?;
    check("radii", inputs.radii.len(), n)?;
    check("node opacities", inputs.opacity.nodes.len(), n)?;
    check("node highlight", inputs.highlight.nodes.len(), n)?;
    check("girths", inputs.girths.len(), m)?;
    check("edge opacities", inputs.opacity.edges.len(), m)?;
    check("edge highlight", inputs.highlight.edges.len(), m)?;

    let style = inputs.style;
    let nav = inputs.nav;
    let rotated = nav.graph_rotation != Quat::identity();
    let world = |p: &Vec3| if rotated { nav.to_world(p) } else { *p };

    let mut out = InstanceBuffers::default();
    out.nodes.reserve(n * NODE_STRIDE);
    out.edges.reserve(m * EDGE_STRIDE);

    for i in 0..n {
        let opacity = inputs.opacity.nodes[i];
        if opacity <= 0.0 {
            continue;
        }
        let color = styled(group_color(g.group_index(i)), opacity, inputs.highlight.nodes[i], style);
        out.nodes.extend_from_slice(&to_f32(&world(&inputs.positions[i])));
        out.nodes.push(inputs.radii[i] as f32);
        out.nodes.extend_from_slice(&color);
        out.node_ids.push(i as u32);
    }

    for (ei, edge) in g.edges().iter().enumerate() {
        let opacity = inputs.opacity.edges[ei];
        if opacity <= 0.0 || edge.source == edge.target {
            continue;
        }
        let (s, t) = (world(&inputs.positions[edge.source]), world(&inputs.positions[edge.target]));
        let span = t - s;
        let length = span.norm();
        let q = if length > 0.0 { align_z(&(span / length)) } else { Quat::identity() };
        let color = styled(style.edge_color, opacity, inputs.highlight.edges[ei], style);
        let girth = inputs.girths[ei];
        push_tube(&mut out.edges, &(s + span * 0.5), &q, length, girth, color);
        out.edge_ids.push(ei as u32);
        if edge.directed {
            let at = s + span * style.arrow_fraction;
            push_tube(
                &mut out.arrows,
                &at,
                &q,
                length * style.arrow_length,
                girth * style.arrow_girth,
                color,
            );
            out.arrow_ids.push(ei as u32);
        }
    }

    out.props = match nav.perspective {
        Perspective::Overview => {
            let eye = nav.passive.position + Vec3::new(0.0, nav.eye_height, 0.0);
            let q = nav.passive.orientation.coords;
            let p = to_f32(&eye);
            Props {
                camera_prop: Some([p[0], p[1], p[2], q.x as f32, q.y as f32, q.z as f32, q.w as f32]),
                indicator: None,
            }
        }
        Perspective::Detail => Props {
            camera_prop: None,
            indicator: inputs
                .head
                .and_then(|(pos, q)| nav.indicator_direction(pos, &q).ok())
                .map(|d| to_f32(&d)),
        },
    };
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct LabelPayload {
    pub entity: Entity,
    pub text: String,
    /// Labels are always drawn at the center of the view.
    pub screen_center: bool,
}

impl serde::Serialize for Entity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let (kind, index) = match *self {
            Entity::Node(i) => ("node", i),
            Entity::Edge(i) => ("edge", i),
        };
        let mut st = s.serialize_struct("Entity", 2)?;
        st.serialize_field("kind", kind)?;
        st.serialize_field("index", &index)?;
        st.end()
    }
}

/// Formats to three significant digits without trailing zeros.
pub fn format_sig3(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = 2 - magnitude;
    if decimals <= 0 {
        let scale = 10f64.powi(-decimals);
        return format!("{}", (x / scale).round() * scale);
    }
    let s = format!("{:.*}", decimals as usize, x);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    s.to_owned()
}

/// Node label, or the edge weight, for the hovered entity.
pub fn label_payload(graph: &DynamicGraph, hovered: Option<Entity>) -> Result<Option<LabelPayload>, PickError> {
    let Some(entity) = hovered else {
        return Ok(None);
    };
    let text = match entity {
        Entity::Node(i) if i < graph.node_count() => graph.node(i).label.clone(),
        Entity::Edge(i) if i < graph.edge_count() => format_sig3(graph.edge(i).weight),
        other => return Err(PickError::UnknownEntity(other)),
    };
    Ok(Some(LabelPayload {
        entity,
        text,
        screen_center: true,
    }))
}
