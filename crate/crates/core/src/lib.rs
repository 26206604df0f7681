//! Resilient information diffusion on networks with locally bounded
//! adversaries.
//!
//! * [`graph`], [`generators`], [`io`]: influence graphs, reference families
//!   and the two text formats.
//! * [`robustness`], [`connectivity`]: exact checkers for r-reachability,
//!   (strong) r-robustness, f-locality, spanning trees and vertex cuts.
//! * [`construction`]: incremental growth of r-robust graphs.
//! * [`consensus`]: the W-MSR filtering consensus simulator.
//! * [`broadcast`]: the certified propagation algorithm and the `X(G)` metric.
//! * [`claims`]: the reproducible experiment suite and manifests.

pub mod broadcast;
pub mod claims;
pub mod connectivity;
pub mod consensus;
pub mod construction;
pub mod error;
pub mod exec;
pub mod extended;
pub mod generators;
pub mod graph;
pub mod io;
pub mod manifest;
pub mod oracle;
pub mod robustness;

pub use error::{Error, Result};
pub use exec::{CheckOptions, Execution};
pub use extended::Extended;
pub use graph::{DiGraph, NodeId, NodeSet};
