//! Headless benchmark: Erdős–Rényi graphs, scripted scenarios and per-frame
//! core timings.

mod er;
mod report;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use er::{generate_er, max_edges, pair_from_index};
pub use report::{ReportFormat, TimingReport};

use crate::graph::{DynamicGraph, GraphError};
use crate::layout::{init_layout_with, LayoutParams};
use crate::picking::Entity;
use crate::session::{ExplorerSession, InputEvent, InputKind, Pose, SessionConfig, SessionError, TriggerTarget};

/// Frames run before recording starts.
pub const WARMUP_FRAMES: usize = 60;
/// Simulated frame interval, seconds.
pub const FRAME_DT: f64 = 1.0 / 60.0;
/// Yaw rate of the rotation scenario, degrees per second.
pub const ROTATION_DEG_PER_SEC: f64 = 30.0;
/// Automatic flights per detail run.
pub const DETAIL_FLIGHTS: usize = 10;

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("{m} edges requested but G({n}, m) allows at most {max}")]
    EdgeCount { n: usize, m: usize, max: u64 },
    #[error("scenario needs at least one frame")]
    NoFrames,
    #[error("report has no samples")]
    EmptyReport,
    #[error("report format: {0}")]
    Format(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Session(#[from] SessionError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ScenarioKind {
    #[serde(rename = "overview")]
    OverviewStatic,
    #[serde(rename = "rotation")]
    OverviewRotation,
    #[serde(rename = "detail")]
    DetailNavigation,
}

impl ScenarioKind {
    pub const ALL: [ScenarioKind; 3] = [
        ScenarioKind::OverviewStatic,
        ScenarioKind::OverviewRotation,
        ScenarioKind::DetailNavigation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::OverviewStatic => "overview",
            ScenarioKind::OverviewRotation => "rotation",
            ScenarioKind::DetailNavigation => "detail",
        }
    }
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScenarioKind {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ScenarioKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| BenchError::Format(format!("unknown scenario {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub kind: ScenarioKind,
    pub frames: usize,
    pub seed: u64,
    pub params: LayoutParams,
}

impl Scenario {
    pub fn new(kind: ScenarioKind, frames: usize, seed: u64) -> Result<Self, BenchError> {
        if frames == 0 {
            return Err(BenchError::NoFrames);
        }
        Ok(Scenario {
            kind,
            frames,
            seed,
            params: LayoutParams::default(),
        })
    }

    pub fn with_params(mut self, params: LayoutParams) -> Self {
        self.params = params;
        self
    }
}

/// Converges the layout, then times `frames` simulated frames after a
/// fixed warmup. Each sample covers a layout tick (when the layout keeps
/// ticking), the frame's input handling, one pick query and instance
/// synthesis.
pub fn run_scenario(graph: &DynamicGraph, scenario: &Scenario) -> Result<TimingReport, BenchError> {
    if scenario.frames == 0 {
        return Err(BenchError::NoFrames);
    }
    let graph = Arc::new(graph.clone());
    let config = SessionConfig {
        layout: scenario.params.clone(),
        seed: scenario.seed,
        ..SessionConfig::default()
    };
    let mut layout = if graph.is_empty() {
        None
    } else {
        let mut state = init_layout_with(&graph, scenario.seed, scenario.params.clone())
            .map_err(SessionError::from)?;
        state.run_to_convergence(&graph).map_err(SessionError::from)?;
        Some(state)
    };
    let positions = layout.as_ref().map_or_else(Vec::new, |s| s.positions.clone());
    let mut session = ExplorerSession::with_positions(graph.clone(), positions, config)?;
    let ticking = scenario.params.keep_ticking;

    let mut script = Script::new(scenario, &graph);
    script.setup(&mut session)?;

    let mut samples_ms = Vec::with_capacity(scenario.frames);
    for frame in 0..WARMUP_FRAMES + scenario.frames {
        if frame == WARMUP_FRAMES {
            session.reset_pick_queries();
        }
        let start = Instant::now();
        if ticking {
            if let Some(state) = layout.as_mut() {
                state.tick(&graph).map_err(SessionError::from)?;
                session.set_positions(state.positions.clone())?;
            }
        }
        script.step(&mut session, frame)?;
        let buffers = session.frame()?;
        let elapsed = start.elapsed().as_secs_f64() * 1e3;
        std::hint::black_box(&buffers);
        if frame >= WARMUP_FRAMES {
            samples_ms.push(elapsed);
        }
    }

    Ok(TimingReport {
        scenario: scenario.kind,
        n: graph.node_count(),
        m: graph.edge_count(),
        samples_ms,
        pick_queries: session.pick_queries(),
    })
}

/// Scripted per-frame input.
struct Script {
    kind: ScenarioKind,
    rng: ChaCha8Rng,
    node_count: usize,
    flight_every: usize,
    total: usize,
    time: f64,
}

impl Script {
    fn new(scenario: &Scenario, graph: &DynamicGraph) -> Self {
        Script {
            kind: scenario.kind,
            rng: ChaCha8Rng::seed_from_u64(scenario.seed ^ 0x5eed_f11e),
            node_count: graph.node_count(),
            flight_every: (scenario.frames / DETAIL_FLIGHTS).max(1),
            total: WARMUP_FRAMES + scenario.frames,
            time: 0.0,
        }
    }

    fn send(&self, session: &mut ExplorerSession, kind: InputKind) -> Result<(), SessionError> {
        session.handle(InputEvent {
            timestamp: self.time,
            kind,
        })?;
        Ok(())
    }

    fn random_node(&mut self) -> usize {
        self.rng.random_range(0..self.node_count)
    }

    fn setup(&mut self, session: &mut ExplorerSession) -> Result<(), SessionError> {
        match self.kind {
            ScenarioKind::OverviewStatic => Ok(()),
            ScenarioKind::OverviewRotation => {
                let x = ROTATION_DEG_PER_SEC / session.nav.config.rotation_speed_deg;
                self.send(session, InputKind::Dpad { x, y: 0.0 })
            }
            ScenarioKind::DetailNavigation => {
                if self.node_count == 0 {
                    return Ok(());
                }
                let start = TriggerTarget::Entity(Entity::Node(self.random_node()));
                self.send(session, InputKind::TriggerPressed(start))?;
                self.send(session, InputKind::TriggerPressed(start))
            }
        }
    }

    /// Sweeps the pointer across the view so each frame issues a pick
    /// query that may or may not hit.
    fn pointer(&self, session: &ExplorerSession, frame: usize) -> Pose {
        let eye = session.eye_pose();
        let phase = frame as f64 / self.total as f64 * std::f64::consts::TAU;
        let sway = crate::navigation::Quat::from_euler_angles(0.15 * phase.sin(), 0.3 * phase.cos(), 0.0);
        Pose {
            position: eye.position,
            orientation: eye.orientation * sway,
        }
    }

    fn step(&mut self, session: &mut ExplorerSession, frame: usize) -> Result<(), SessionError> {
        self.time += FRAME_DT;
        if self.kind == ScenarioKind::DetailNavigation
            && self.node_count > 0
            && frame >= WARMUP_FRAMES
            && (frame - WARMUP_FRAMES).is_multiple_of(self.flight_every)
        {
            let target = TriggerTarget::Entity(Entity::Node(self.random_node()));
            self.send(session, InputKind::TriggerPressed(target))?;
        }
        session.advance(FRAME_DT)?;
        let pose = self.pointer(session, frame);
        self.send(session, InputKind::ControllerPose(pose))
    }
}

/// Node count and edge count for `--degree D`: m = D * n.
pub fn edges_for_degree(n: usize, degree: usize) -> usize {
    n * degree
}
