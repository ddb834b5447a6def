//! Background layout ticking with whole-snapshot publication.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{Arc, RwLock};
use std::thread::JoinHandle;

use super::{LayoutError, LayoutState, Vec3};
use crate::graph::DynamicGraph;

/// Positions after a completed tick. Never mutated once published.
#[derive(Clone, Debug, PartialEq)]
pub struct PositionSnapshot {
    pub tick: u64,
    pub alpha: f64,
    pub positions: Vec<Vec3>,
}

impl PositionSnapshot {
    pub fn of(state: &LayoutState) -> Self {
        PositionSnapshot {
            tick: state.tick_count,
            alpha: state.alpha,
            positions: state.positions.clone(),
        }
    }
}

/// Runs `tick` on its own thread. Readers call [`LayoutWorker::latest`] and
/// only ever see complete snapshots.
pub struct LayoutWorker {
    latest: Arc<RwLock<Arc<PositionSnapshot>>>,
    stop: Arc<AtomicBool>,
    handle: Option<JoinHandle<Result<LayoutState, LayoutError>>>,
}

impl LayoutWorker {
    pub fn spawn(mut state: LayoutState, graph: Arc<DynamicGraph>) -> Self {
        let latest = Arc::new(RwLock::new(Arc::new(PositionSnapshot::of(&state))));
        let stop = Arc::new(AtomicBool::new(false));
        let handle = {
            let latest = Arc::clone(&latest);
            let stop = Arc::clone(&stop);
            std::thread::spawn(move || {
                while !stop.load(Ordering::Relaxed) {
                    if state.converged() && !state.params.keep_ticking {
                        break;
                    }
                    state.tick(&graph)?;
                    let snapshot = Arc::new(PositionSnapshot::of(&state));
                    *latest.write().expect("snapshot lock poisoned") = snapshot;
                }
                Ok(state)
            })
        };
        LayoutWorker {
            latest,
            stop,
            handle: Some(handle),
        }
    }

    pub fn latest(&self) -> Arc<PositionSnapshot> {
        Arc::clone(&self.latest.read().expect("snapshot lock poisoned"))
    }

    pub fn is_finished(&self) -> bool {
        self.handle.as_ref().is_none_or(|h| h.is_finished())
    }

    /// Asks the worker to stop after the current tick.
    pub fn stop(&self) {
        self.stop.store(true, Ordering::Relaxed);
    }

    /// Waits for the worker and returns its final state.
    pub fn join(mut self) -> Result<LayoutState, LayoutError> {
        let handle = self.handle.take().expect("worker joined twice");
        handle.join().expect("layout worker panicked")
    }
}

impl Drop for LayoutWorker {
    fn drop(&mut self) {
        self.stop();
        if let Some(handle) = self.handle.take() {
            let _ = handle.join();
        }
    }
}
