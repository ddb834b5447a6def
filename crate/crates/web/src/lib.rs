//! wasm-bindgen bindings for the browser demo in `www/`.
//!
//! The page forwards desktop input (mouse ray, arrow keys, shift as the
//! modifier, click as the trigger) and draws the returned instance buffers.

use std::sync::Arc;

use graphnav_core::graph::load_graph;
use graphnav_core::layout::Vec3;
use graphnav_core::navigation::Quat;
use graphnav_core::picking::Ray;
use graphnav_core::scene::InstanceBuffers;
use graphnav_core::session::{
    ExplorerSession, InputEvent, InputKind, Pose, SessionConfig, TriggerEffect, TriggerTarget,
};
use wasm_bindgen::prelude::*;

#[wasm_bindgen]
pub struct Explorer {
    session: ExplorerSession,
    buffers: InstanceBuffers,
    time: f64,
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

#[wasm_bindgen]
impl Explorer {
    /// Parses the graph JSON and lays it out.
    #[wasm_bindgen(constructor)]
    pub fn new(graph_json: &str, seed: u32) -> Result<Explorer, String> {
        let graph = load_graph(graph_json).map_err(err)?;
        let config = SessionConfig {
            seed: seed.into(),
            ..SessionConfig::default()
        };
        let session = ExplorerSession::new(Arc::new(graph), config).map_err(err)?;
        let buffers = session.frame().map_err(err)?;
        Ok(Explorer {
            session,
            buffers,
            time: 0.0,
        })
    }

    pub fn node_count(&self) -> usize {
        self.session.graph().node_count()
    }

    pub fn edge_count(&self) -> usize {
        self.session.graph().edge_count()
    }

    pub fn frame_count(&self) -> u32 {
        self.session.graph().frame_count()
    }

    fn send(&mut self, kind: InputKind) -> Result<TriggerEffect, String> {
        self.session
            .handle(InputEvent {
                timestamp: self.time,
                kind,
            })
            .map_err(err)
    }

    pub fn set_dpad(&mut self, x: f64, y: f64) -> Result<(), String> {
        self.send(InputKind::Dpad { x, y }).map(drop)
    }

    pub fn set_modifier(&mut self, held: bool) -> Result<(), String> {
        self.send(InputKind::ModifierHeld(held)).map(drop)
    }

    /// Points the controller ray; returns the hovered label, if any.
    pub fn point(&mut self, ox: f64, oy: f64, oz: f64, dx: f64, dy: f64, dz: f64) -> Result<Option<String>, String> {
        let ray = Ray::new(Vec3::new(ox, oy, oz), Vec3::new(dx, dy, dz)).map_err(err)?;
        let eye = self.session.eye_pose();
        let orientation = Quat::rotation_between(&(eye.orientation * -Vec3::z()), &ray.direction())
            .map_or(eye.orientation, |r| r * eye.orientation);
        self.send(InputKind::ControllerPose(Pose {
            position: ray.origin(),
            orientation,
        }))?;
        Ok(self.session.label().map(|l| l.text))
    }

    /// Trigger on whatever is hovered. Returns a short description of the
    /// effect.
    pub fn trigger(&mut self) -> Result<String, String> {
        let target = self
            .session
            .hovered()
            .map_or(TriggerTarget::Nothing, |h| TriggerTarget::Entity(h.entity));
        Ok(format!("{:?}", self.send(InputKind::TriggerPressed(target))?))
    }

    /// Same as selecting the overview indicator in the detail view.
    pub fn back_to_overview(&mut self) -> Result<String, String> {
        Ok(format!("{:?}", self.send(InputKind::TriggerPressed(TriggerTarget::OverviewIndicator))?))
    }

    /// Advances time and rebuilds the instance buffers. Returns the number
    /// of instanced batches.
    pub fn advance(&mut self, dt: f64) -> Result<usize, String> {
        self.time += dt;
        self.session.advance(dt).map_err(err)?;
        self.buffers = self.session.frame().map_err(err)?;
        Ok(self.buffers.batch_count())
    }

    /// Node instances, 8 floats each.
    pub fn nodes(&self) -> Vec<f32> {
        self.buffers.nodes.clone()
    }

    /// Edge instances, 13 floats each.
    pub fn edges(&self) -> Vec<f32> {
        self.buffers.edges.clone()
    }

    /// Arrow instances, 13 floats each.
    pub fn arrows(&self) -> Vec<f32> {
        self.buffers.arrows.clone()
    }

    /// Eye position and orientation (xyz, quaternion xyzw).
    pub fn camera(&self) -> Vec<f64> {
        let eye = self.session.eye_pose();
        let q = eye.orientation.coords;
        vec![eye.position.x, eye.position.y, eye.position.z, q.x, q.y, q.z, q.w]
    }

    pub fn fov_deg(&self) -> f64 {
        self.session.nav.config.fov_vertical_deg
    }

    /// Label, time bar, perspective and props as JSON.
    pub fn overlay(&self) -> String {
        let mut v = serde_json::to_value(self.session.overlay()).expect("overlay serializes");
        v["indicator"] = serde_json::json!(self.buffers.props.indicator);
        v["camera_prop"] = serde_json::json!(self.buffers.props.camera_prop);
        v.to_string()
    }
}
