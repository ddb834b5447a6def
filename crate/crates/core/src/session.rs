//! An exploration session: one graph with a settled layout, driven by the
//! timestamped input events a UI shell forwards.
//!
//! Per frame the shell calls [`ExplorerSession::advance`] and then
//! [`ExplorerSession::frame`] to obtain instance buffers.

use std::sync::Arc;

use serde::Serialize;

use crate::graph::{DynamicGraph, GraphError};
use crate::layout::{bounding_sphere, init_layout_with, LayoutError, LayoutParams, Vec3};
use crate::navigation::{NavConfig, NavError, NavigationState, Perspective, Quat, TriggerOutcome};
use crate::picking::{
    hover_update, Entity, HighlightPolicy, HighlightState, PickConfig, PickError, PickHit, PickIndex, Ray,
    Visibility,
};
use crate::scene::{label_payload, synthesize, InstanceBuffers, LabelPayload, SceneError, SceneInputs, SceneStyle};
use crate::temporal::{AttributeBins, CursorMode, Frames, NodeAttribute, Opacities, PresenceSource, TimeBar, TimeCursor};
use crate::visual::VisualMapping;

#[derive(Debug, thiserror::Error)]
pub enum SessionError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Layout(#[from] LayoutError),
    #[error(transparent)]
    Navigation(#[from] NavError),
    #[error(transparent)]
    Pick(#[from] PickError),
    #[error(transparent)]
    Scene(#[from] SceneError),
    #[error("positions snapshot has {got} entries, graph has {expected} nodes")]
    Snapshot { got: usize, expected: usize },
}

#[derive(Clone, Debug)]
pub struct SessionConfig {
    pub layout: LayoutParams,
    pub seed: u64,
    pub visual: VisualMapping,
    pub pick: PickConfig,
    pub nav: NavConfig,
    pub style: SceneStyle,
    pub highlight_policy: HighlightPolicy,
    /// Eye height above the rig origin, scene units.
    pub eye_height: f64,
    /// Lowlighted elements stay pickable.
    pub lowlight_pickable: bool,
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig {
            layout: LayoutParams::default(),
            seed: 0,
            visual: VisualMapping::default(),
            pick: PickConfig::default(),
            nav: NavConfig::default(),
            style: SceneStyle::default(),
            highlight_policy: HighlightPolicy::default(),
            eye_height: 1.6,
            lowlight_pickable: true,
        }
    }
}

/// World pose of a tracked device.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pose {
    pub position: Vec3,
    pub orientation: Quat,
}

impl Pose {
    /// Ray along the device's -z axis.
    pub fn ray(&self) -> Ray {
        Ray::new(self.position, self.orientation * -Vec3::z()).expect("unit quaternion keeps -z non-zero")
    }
}

/// What the trigger was pressed on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriggerTarget {
    Nothing,
    Entity(Entity),
    /// The overview indicator arrow shown in the detail view.
    OverviewIndicator,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum InputKind {
    Dpad { x: f64, y: f64 },
    TriggerPressed(TriggerTarget),
    ModifierHeld(bool),
    HeadPose(Pose),
    ControllerPose(Pose),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InputEvent {
    /// Seconds, monotonically non-decreasing.
    pub timestamp: f64,
    pub kind: InputKind,
}

/// Effect of a trigger press.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriggerEffect {
    None,
    Node(TriggerOutcome),
    EdgeFlight(usize),
    ReturnedToOverview,
}

enum PresenceMode {
    Frames,
    Bins(AttributeBins),
}

pub struct ExplorerSession {
    graph: Arc<DynamicGraph>,
    positions: Vec<Vec3>,
    radii: Vec<f64>,
    girths: Vec<f64>,
    bounding: (Vec3, f64),
    index: PickIndex,
    config: SessionConfig,
    pub nav: NavigationState,
    pub cursor: TimeCursor,
    presence: PresenceMode,
    highlight: HighlightState,
    hovered: Option<PickHit>,
    dpad: (f64, f64),
    modifier: bool,
    head: Option<Pose>,
    controller: Option<Pose>,
    last_timestamp: f64,
    pick_queries: u64,
}

impl ExplorerSession {
    /// Lays the graph out to convergence and opens the overview.
    pub fn new(graph: Arc<DynamicGraph>, config: SessionConfig) -> Result<Self, SessionError> {
        let positions = if graph.is_empty() {
            Vec::new()
        } else {
            let mut state = init_layout_with(&graph, config.seed, config.layout.clone())?;
            state.run_to_convergence(&graph)?;
            state.positions
        };
        Self::with_positions(graph, positions, config)
    }

    /// Uses an existing positions snapshot.
    pub fn with_positions(
        graph: Arc<DynamicGraph>,
        positions: Vec<Vec3>,
        config: SessionConfig,
    ) -> Result<Self, SessionError> {
        if positions.len() != graph.node_count() {
            return Err(SessionError::Snapshot {
                got: positions.len(),
                expected: graph.node_count(),
            });
        }
        let radii = config.visual.node_radii(&graph);
        let girths = config.visual.edge_girths(&graph);
        let bounding = if positions.is_empty() {
            (Vec3::zeros(), 1.0)
        } else {
            let (c, r) = bounding_sphere(&positions, &radii)?;
            (c, r.max(1e-6))
        };
        let index = PickIndex::build(&graph, &positions, &radii, &girths, &config.pick);
        let nav = NavigationState::new(bounding, -Vec3::z(), config.eye_height, config.nav);
        Ok(ExplorerSession {
            cursor: TimeCursor::frames(&graph),
            highlight: HighlightState::none(&graph),
            presence: PresenceMode::Frames,
            graph,
            positions,
            radii,
            girths,
            bounding,
            index,
            config,
            nav,
            hovered: None,
            dpad: (0.0, 0.0),
            modifier: false,
            head: None,
            controller: None,
            last_timestamp: f64::NEG_INFINITY,
            pick_queries: 0,
        })
    }

    /// Replaces the layout snapshot, e.g. with a newer worker tick.
    pub fn set_positions(&mut self, positions: Vec<Vec3>) -> Result<(), SessionError> {
        if positions.len() != self.graph.node_count() {
            return Err(SessionError::Snapshot {
                got: positions.len(),
                expected: self.graph.node_count(),
            });
        }
        if !positions.is_empty() {
            let (c, r) = bounding_sphere(&positions, &self.radii)?;
            self.bounding = (c, r.max(1e-6));
        }
        self.index = PickIndex::build(&self.graph, &positions, &self.radii, &self.girths, &self.config.pick);
        self.positions = positions;
        Ok(())
    }

    pub fn graph(&self) -> &DynamicGraph {
        &self.graph
    }

    pub fn positions(&self) -> &[Vec3] {
        &self.positions
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn bounding(&self) -> (Vec3, f64) {
        self.bounding
    }

    pub fn highlight(&self) -> &HighlightState {
        &self.highlight
    }

    pub fn hovered(&self) -> Option<PickHit> {
        self.hovered
    }

    pub fn pick_queries(&self) -> u64 {
        self.pick_queries
    }

    pub fn reset_pick_queries(&mut self) {
        self.pick_queries = 0;
    }

    /// Switches the cursor to time frames.
    pub fn use_time_frames(&mut self) {
        self.presence = PresenceMode::Frames;
        self.cursor = TimeCursor::frames(&self.graph);
    }

    /// Switches the cursor to attribute bins.
    pub fn use_attribute_filter(&mut self, attribute: &NodeAttribute, bins: usize) -> Result<(), SessionError> {
        let bins = AttributeBins::new(&self.graph, attribute, bins)?;
        self.cursor = TimeCursor::new(CursorMode::AttributeFilter, bins.positions())
            .expect("at least one bin");
        self.presence = PresenceMode::Bins(bins);
        Ok(())
    }

    /// Two-network comparison over frames 0 and 1.
    pub fn use_comparison(&mut self) -> Result<(), SessionError> {
        if self.graph.frame_count() != 2 {
            return Err(GraphError::FrameIndex {
                frame: 1,
                frame_count: self.graph.frame_count(),
            }
            .into());
        }
        self.presence = PresenceMode::Frames;
        self.cursor = TimeCursor::new(CursorMode::Comparison, 2).expect("two frames");
        Ok(())
    }

    pub fn opacities(&self) -> Opacities {
        match &self.presence {
            PresenceMode::Frames => Opacities::compute(&self.cursor, &Frames(&self.graph)),
            PresenceMode::Bins(bins) => Opacities::compute(&self.cursor, bins),
        }
    }

    pub fn time_bar(&self) -> TimeBar {
        self.cursor.time_bar()
    }

    /// World position of a node.
    pub fn node_world(&self, node: usize) -> Vec3 {
        self.nav.to_world(&self.positions[node])
    }

    fn visibility(&self) -> Visibility {
        let o = self.opacities();
        let vis = Visibility::from_opacity(&o.nodes, &o.edges);
        if self.config.lowlight_pickable {
            vis
        } else {
            vis.without_lowlight(&self.highlight)
        }
    }

    /// Nearest visible entity along a world-space ray.
    pub fn pick(&mut self, ray: &Ray) -> Option<PickHit> {
        self.pick_queries += 1;
        let inverse = self.nav.graph_rotation.inverse();
        let pivot = self.nav.pivot;
        let local = Ray::new(pivot + inverse * (ray.origin() - pivot), inverse * ray.direction())
            .expect("rotation preserves a valid ray");
        self.index.ray_pick(&local, &self.visibility())
    }

    /// Picks along `ray` and updates the highlight state.
    pub fn hover(&mut self, ray: &Ray) -> Option<PickHit> {
        let hit = self.pick(ray);
        self.set_hover(hit.map(|h| h.entity));
        self.hovered = hit;
        hit
    }

    fn set_hover(&mut self, entity: Option<Entity>) {
        let o = self.opacities();
        let visible = Visibility::from_opacity(&o.nodes, &o.edges);
        self.highlight = hover_update(&self.graph, entity, &visible, self.config.highlight_policy)
            .expect("picked entities exist");
    }

    pub fn label(&self) -> Option<LabelPayload> {
        label_payload(&self.graph, self.hovered.map(|h| h.entity)).expect("hovered entity exists")
    }

    fn head_orientation(&self) -> Quat {
        self.head.map_or(self.nav.active.orientation, |h| h.orientation)
    }

    /// Applies one input event.
    pub fn handle(&mut self, event: InputEvent) -> Result<TriggerEffect, SessionError> {
        self.last_timestamp = self.last_timestamp.max(event.timestamp);
        match event.kind {
            InputKind::Dpad { x, y } => self.dpad = (x.clamp(-1.0, 1.0), y.clamp(-1.0, 1.0)),
            InputKind::ModifierHeld(held) => self.modifier = held,
            InputKind::HeadPose(pose) => self.head = Some(pose),
            InputKind::ControllerPose(pose) => {
                self.controller = Some(pose);
                self.hover(&pose.ray());
            }
            InputKind::TriggerPressed(target) => return self.trigger(target),
        }
        Ok(TriggerEffect::None)
    }

    fn trigger(&mut self, target: TriggerTarget) -> Result<TriggerEffect, SessionError> {
        match target {
            TriggerTarget::Nothing => Ok(TriggerEffect::None),
            TriggerTarget::Entity(Entity::Node(n)) => {
                if n >= self.graph.node_count() {
                    return Err(PickError::UnknownEntity(Entity::Node(n)).into());
                }
                let outcome = self.nav.trigger_node(n, self.node_world(n), self.radii[n])?;
                Ok(TriggerEffect::Node(outcome))
            }
            TriggerTarget::Entity(Entity::Edge(e)) => {
                if e >= self.graph.edge_count() {
                    return Err(PickError::UnknownEntity(Entity::Edge(e)).into());
                }
                if self.nav.perspective != Perspective::Detail {
                    return Ok(TriggerEffect::None);
                }
                let edge = self.graph.edge(e);
                let mid = (self.node_world(edge.source) + self.node_world(edge.target)) * 0.5;
                match self.nav.start_auto_flight(mid, self.girths[e]) {
                    Ok(()) => Ok(TriggerEffect::EdgeFlight(e)),
                    Err(NavError::AlreadyAtTarget) => Ok(TriggerEffect::None),
                    Err(err) => Err(err.into()),
                }
            }
            TriggerTarget::OverviewIndicator => {
                let head = self.head_orientation();
                let eye_height = self.nav.eye_height;
                self.nav.return_to_overview(self.bounding, &head, eye_height)?;
                Ok(TriggerEffect::ReturnedToOverview)
            }
        }
    }

    /// Advances time by `dt` seconds: D-pad navigation or scrubbing,
    /// automatic flight and fades.
    pub fn advance(&mut self, dt: f64) -> Result<(), SessionError> {
        let (x, y) = self.dpad;
        if self.modifier {
            self.cursor.scrub(x, true, dt);
        } else {
            self.cursor.scrub(0.0, false, dt);
            if x != 0.0 || y != 0.0 {
                match self.nav.perspective {
                    Perspective::Overview => self.nav.apply_overview_rotation((x, y), dt, self.bounding)?,
                    Perspective::Detail => {
                        let head = self.head_orientation();
                        self.nav.apply_free_flight((x, y), &head, dt)?
                    }
                }
            }
        }
        self.nav.update_auto_flight(dt);
        self.cursor.advance_transition(dt);
        Ok(())
    }

    /// Eye pose used for the indicator: the tracked head if known,
    /// otherwise the active rig's eye.
    pub fn eye_pose(&self) -> Pose {
        self.head.unwrap_or(Pose {
            position: self.nav.eye_position(),
            orientation: self.nav.active.orientation,
        })
    }

    pub fn frame(&self) -> Result<InstanceBuffers, SessionError> {
        let opacity = self.opacities();
        let eye = self.eye_pose();
        Ok(synthesize(&SceneInputs {
            graph: &self.graph,
            positions: &self.positions,
            radii: &self.radii,
            girths: &self.girths,
            opacity: &opacity,
            highlight: &self.highlight,
            nav: &self.nav,
            head: Some((eye.position, eye.orientation)),
            style: &self.config.style,
        })?)
    }
}

/// JSON-friendly summary of the overlay state.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OverlayState {
    pub label: Option<LabelPayload>,
    pub time_bar: TimeBar,
    pub perspective: &'static str,
    pub selection: Option<usize>,
}

impl ExplorerSession {
    pub fn overlay(&self) -> OverlayState {
        OverlayState {
            label: self.label(),
            time_bar: self.time_bar(),
            perspective: match self.nav.perspective {
                Perspective::Overview => "overview",
                Perspective::Detail => "detail",
            },
            selection: self.nav.selection,
        }
    }
}
