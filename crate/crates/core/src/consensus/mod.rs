//! Synchronous W-MSR consensus under f-local malicious or Byzantine
//! adversaries.
//!
//! Each step, every normal node collects its in-neighbors' values, discards
//! up to `f` strictly above and up to `f` strictly below its own
//! ([`wmsr_filter`]), and moves to a convex combination of its own value and
//! the rest. [`simulate`] runs a [`Scenario`] to a [`Verdict`], checking after
//! every step that the normal range never widens.

mod adversary;
mod engine;
pub mod files;
mod filter;
mod scenario;
mod weights;

pub use adversary::{Adversary, AdversaryStrategy, StrategyKind, ThreatModel, DEFAULT_CLAMP};
pub use engine::{necessity_demo, necessity_demo_with, simulate, simulate_batch, wmsr_step, StepResult};
pub use filter::{wmsr_filter, Filtered};
pub use scenario::{
    Outcome, Scenario, Topology, Trajectory, Verdict, DEFAULT_STALL_WINDOW, DEFAULT_TOL, MAX_HORIZON,
};
pub use weights::{WeightPolicy, WEIGHT_SUM_TOL};
