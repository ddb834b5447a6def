//! Core engine for immersive overview & detail exploration of dynamic
//! networks.
//!
//! The crate is renderer-agnostic: it owns the graph model, a 3D
//! force-directed layout, ray picking, the dual-rig navigation state
//! machine, temporal fading, and the flat instance buffers a GPU frontend
//! binds directly. The [`bench`] module reproduces the headless frame-time
//! benchmark on Erdős–Rényi graphs.

pub mod bench;
pub mod graph;
pub mod layout;
pub mod navigation;
pub mod picking;
pub mod scene;
pub mod session;
pub mod temporal;
pub mod visual;
