//! Dual-rig overview & detail navigation.
//!
//! The active rig is the live camera container; the passive rig stores the
//! pose of the other perspective. Switching perspectives swaps the two.
//! Rig positions are floor-level: the eye sits `eye_height` above the rig
//! origin. Conventions: right-handed, +y up, views look down local -z.

use nalgebra::{Isometry3, Translation3, UnitQuaternion};

use crate::layout::{axis_angle, Vec3};

pub type Quat = UnitQuaternion<f64>;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RigPose {
    pub position: Vec3,
    pub orientation: Quat,
}

impl RigPose {
    pub fn new(position: Vec3, orientation: Quat) -> Self {
        RigPose {
            position,
            orientation,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Perspective {
    Overview,
    Detail,
}

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum NavError {
    #[error("operation requires the {expected:?} perspective")]
    WrongPerspective { expected: Perspective },
    #[error("no node has been selected")]
    NoSelection,
    #[error("flight target coincides with the current position")]
    AlreadyAtTarget,
    #[error("target must be finite")]
    NonFiniteTarget,
    #[error("head is at the overview camera position")]
    DegenerateIndicator,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NavConfig {
    /// Overview rotation rate at full D-pad deflection, degrees per second.
    pub rotation_speed_deg: f64,
    /// Free-flight speed, scene units per second.
    pub free_speed: f64,
    /// Average automatic flight speed, scene units per second.
    pub auto_speed: f64,
    /// Stop this many node radii before a node center.
    pub standoff_factor: f64,
    pub fov_vertical_deg: f64,
    /// Extra distance factor when fitting the graph into view.
    pub fit_margin: f64,
}

impl Default for NavConfig {
    fn default() -> Self {
        NavConfig {
            rotation_speed_deg: 45.0,
            free_speed: 3.0,
            auto_speed: 9.0,
            standoff_factor: 1.5,
            fov_vertical_deg: 60.0,
            fit_margin: 1.2,
        }
    }
}

impl NavConfig {
    /// Viewing distance at which a sphere of `radius` fits the vertical fov.
    pub fn fit_distance(&self, radius: f64) -> f64 {
        radius / (self.fov_vertical_deg.to_radians() / 2.0).tan() * self.fit_margin
    }
}

/// Cubic ease-out, `1 - (1 - t)^3`.
pub fn ease_out(t: f64) -> f64 {
    let u = 1.0 - t.clamp(0.0, 1.0);
    1.0 - u * u * u
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AutoFlight {
    pub start: Vec3,
    /// Already shortened by the standoff distance.
    pub target: Vec3,
    pub progress: f64,
    pub speed: f64,
}

impl AutoFlight {
    pub fn duration(&self) -> f64 {
        (self.target - self.start).norm() / self.speed
    }

    /// Two-term blend so both endpoints are reproduced exactly.
    pub fn position(&self) -> Vec3 {
        let e = ease_out(self.progress);
        self.start * (1.0 - e) + self.target * e
    }
}

/// Result of pressing the trigger on a node.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriggerOutcome {
    /// First press in the overview: the detail camera prop moves there.
    Selected(usize),
    /// Second press on the same node: teleported into the detail view.
    Teleported(usize),
    /// Detail perspective: an automatic flight was started.
    FlightStarted(usize),
    /// Detail perspective, already at the node.
    Ignored,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NavigationState {
    pub active: RigPose,
    pub passive: RigPose,
    pub perspective: Perspective,
    /// Rotation of the graph about `pivot`; the overview D-pad drives it.
    pub graph_rotation: Quat,
    pub pivot: Vec3,
    pub flight: Option<AutoFlight>,
    pub selection: Option<usize>,
    pub eye_height: f64,
    /// Last horizontal viewing direction used to place the overview.
    pub heading: Vec3,
    pub config: NavConfig,
}

fn forward(q: &Quat) -> Vec3 {
    q * -Vec3::z()
}

fn right(q: &Quat) -> Vec3 {
    q * Vec3::x()
}

fn horizontal(v: Vec3) -> Option<Vec3> {
    let h = Vec3::new(v.x, 0.0, v.z);
    let n = h.norm();
    (n > 1e-9).then(|| h / n)
}

/// Yaw-only orientation whose forward vector is the horizontal `heading`.
pub fn facing(heading: Vec3) -> Quat {
    axis_angle(Vec3::y(), f64::atan2(-heading.x, -heading.z))
}

impl NavigationState {
    /// Starts in the overview, graph in front along `heading` at eye level.
    pub fn new(bounding: (Vec3, f64), heading: Vec3, eye_height: f64, config: NavConfig) -> Self {
        let heading = horizontal(heading).unwrap_or(-Vec3::z());
        let active = overview_pose(bounding, heading, eye_height, &config);
        NavigationState {
            active,
            passive: active,
            perspective: Perspective::Overview,
            graph_rotation: Quat::identity(),
            pivot: bounding.0,
            flight: None,
            selection: None,
            eye_height,
            heading,
            config,
        }
    }

    fn require(&self, expected: Perspective) -> Result<(), NavError> {
        if self.perspective == expected {
            Ok(())
        } else {
            Err(NavError::WrongPerspective { expected })
        }
    }

    fn eye_offset(&self) -> Vec3 {
        Vec3::new(0.0, self.eye_height, 0.0)
    }

    /// Eye point of the active rig.
    pub fn eye_position(&self) -> Vec3 {
        self.active.position + self.eye_offset()
    }

    /// Layout coordinates to world coordinates.
    pub fn graph_transform(&self) -> Isometry3<f64> {
        Isometry3::from_parts(Translation3::from(self.pivot), self.graph_rotation)
            * Translation3::from(-self.pivot)
    }

    pub fn to_world(&self, p: &Vec3) -> Vec3 {
        self.pivot + self.graph_rotation * (p - self.pivot)
    }

    /// Exchanges the active and passive rigs.
    pub fn swap_rigs(&mut self) {
        std::mem::swap(&mut self.active, &mut self.passive);
    }

    /// Yaw about the graph's local up axis, pitch about the camera's right
    /// axis, then re-fit the camera to the bounding sphere.
    pub fn apply_overview_rotation(
        &mut self,
        dpad: (f64, f64),
        dt: f64,
        bounding: (Vec3, f64),
    ) -> Result<(), NavError> {
        self.require(Perspective::Overview)?;
        let omega = self.config.rotation_speed_deg.to_radians();
        let (x, y) = (dpad.0.clamp(-1.0, 1.0), dpad.1.clamp(-1.0, 1.0));
        if x != 0.0 {
            self.graph_rotation *= axis_angle(Vec3::y(), x * omega * dt);
        }
        if y != 0.0 {
            self.graph_rotation = axis_angle(right(&self.active.orientation), y * omega * dt) * self.graph_rotation;
        }
        self.graph_rotation.renormalize();
        self.pivot = bounding.0;
        self.active = overview_pose(bounding, self.heading, self.eye_height, &self.config);
        Ok(())
    }

    /// Moves along the head's view and right vectors.
    pub fn apply_free_flight(&mut self, dpad: (f64, f64), head: &Quat, dt: f64) -> Result<(), NavError> {
        self.require(Perspective::Detail)?;
        let step = self.config.free_speed * dt;
        let (x, y) = (dpad.0.clamp(-1.0, 1.0), dpad.1.clamp(-1.0, 1.0));
        self.active.position += forward(head) * (y * step) + right(head) * (x * step);
        Ok(())
    }

    /// Flies the eye toward `target`, stopping `standoff_factor * radius`
    /// short of it.
    pub fn start_auto_flight(&mut self, target: Vec3, target_radius: f64) -> Result<(), NavError> {
        self.require(Perspective::Detail)?;
        if !target.iter().all(|c| c.is_finite()) {
            return Err(NavError::NonFiniteTarget);
        }
        let eye = self.eye_position();
        let span = target - eye;
        let standoff = self.config.standoff_factor * target_radius;
        let length = span.norm();
        if length <= standoff || length == 0.0 {
            return Err(NavError::AlreadyAtTarget);
        }
        let eye_target = target - span / length * standoff;
        self.flight = Some(AutoFlight {
            start: self.active.position,
            target: eye_target - self.eye_offset(),
            progress: 0.0,
            speed: self.config.auto_speed,
        });
        Ok(())
    }

    /// Advances an active flight; clears it on arrival. Returns whether a
    /// flight was in progress.
    pub fn update_auto_flight(&mut self, dt: f64) -> bool {
        let Some(mut flight) = self.flight else {
            return false;
        };
        let duration = flight.duration();
        flight.progress = if duration > 0.0 {
            (flight.progress + dt / duration).min(1.0)
        } else {
            1.0
        };
        self.active.position = flight.position();
        self.flight = (flight.progress < 1.0).then_some(flight);
        true
    }

    fn standoff_point(&self, node: Vec3, radius: f64, orientation: &Quat) -> Vec3 {
        node - forward(orientation) * (self.config.standoff_factor * radius) - self.eye_offset()
    }

    /// Overview trigger: select, then confirm on the same node to teleport.
    /// Detail trigger: fly to the node.
    pub fn trigger_node(&mut self, node: usize, world_position: Vec3, radius: f64) -> Result<TriggerOutcome, NavError> {
        match self.perspective {
            Perspective::Overview if self.selection == Some(node) => {
                self.teleport_to_node(world_position, radius)?;
                Ok(TriggerOutcome::Teleported(node))
            }
            Perspective::Overview => {
                self.selection = Some(node);
                self.passive.position = self.standoff_point(world_position, radius, &self.passive.orientation);
                Ok(TriggerOutcome::Selected(node))
            }
            Perspective::Detail => match self.start_auto_flight(world_position, radius) {
                Ok(()) => Ok(TriggerOutcome::FlightStarted(node)),
                Err(NavError::AlreadyAtTarget) => Ok(TriggerOutcome::Ignored),
                Err(e) => Err(e),
            },
        }
    }

    /// Swaps into the detail rig at the node's standoff point, keeping the
    /// orientation held before the teleport.
    pub fn teleport_to_node(&mut self, node_position: Vec3, node_radius: f64) -> Result<(), NavError> {
        self.require(Perspective::Overview)?;
        if self.selection.is_none() {
            return Err(NavError::NoSelection);
        }
        let orientation = self.active.orientation;
        let position = self.standoff_point(node_position, node_radius, &orientation);
        self.swap_rigs();
        self.active = RigPose::new(position, orientation);
        self.perspective = Perspective::Detail;
        self.selection = None;
        self.flight = None;
        Ok(())
    }

    /// Swaps back to the overview, placing the graph directly ahead of the
    /// head's horizontal view direction with its center at eye level.
    pub fn return_to_overview(
        &mut self,
        bounding: (Vec3, f64),
        head: &Quat,
        eye_height: f64,
    ) -> Result<(), NavError> {
        self.require(Perspective::Detail)?;
        if let Some(h) = horizontal(forward(head)) {
            self.heading = h;
        }
        self.eye_height = eye_height;
        self.swap_rigs();
        self.active = overview_pose(bounding, self.heading, eye_height, &self.config);
        self.pivot = bounding.0;
        self.perspective = Perspective::Overview;
        self.flight = None;
        Ok(())
    }

    /// Direction from the head toward the overview camera, in head-local
    /// coordinates.
    pub fn indicator_direction(&self, head_position: Vec3, head: &Quat) -> Result<Vec3, NavError> {
        self.require(Perspective::Detail)?;
        let to_overview = self.passive.position + self.eye_offset() - head_position;
        let n = to_overview.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(NavError::DegenerateIndicator);
        }
        Ok(head.inverse() * (to_overview / n))
    }
}

/// Overview rig pose: `fit_distance` back from the center along `heading`,
/// rig lowered by `eye_height` so the center is at eye level.
pub fn overview_pose(bounding: (Vec3, f64), heading: Vec3, eye_height: f64, config: &NavConfig) -> RigPose {
    let (center, radius) = bounding;
    let d = config.fit_distance(radius);
    let eye = center - heading * d;
    RigPose::new(eye - Vec3::new(0.0, eye_height, 0.0), facing(heading))
}
