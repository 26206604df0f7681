use serde::{Deserialize, Serialize};

use super::adversary::{AdversaryStrategy, DEFAULT_CLAMP};
use super::weights::WeightPolicy;
use crate::error::{Error, Result};
use crate::graph::{DiGraph, NodeId, NodeSet};

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_STALL_WINDOW: usize = 25;
pub const MAX_HORIZON: usize = 100_000;

/// The communication graph over time.
#[derive(Clone, Debug, PartialEq)]
pub enum Topology {
    Static(DiGraph),
    /// Graph at step `t` is `graphs[t % graphs.len()]`.
    Periodic(Vec<DiGraph>),
}

impl Topology {
    pub fn at(&self, step: usize) -> &DiGraph {
        match self {
            Topology::Static(g) => g,
            Topology::Periodic(gs) => &gs[step % gs.len()],
        }
    }

    pub fn graphs(&self) -> &[DiGraph] {
        match self {
            Topology::Static(g) => std::slice::from_ref(g),
            Topology::Periodic(gs) => gs,
        }
    }

    pub fn n(&self) -> usize {
        self.graphs().first().map_or(0, DiGraph::n)
    }
}

impl From<DiGraph> for Topology {
    fn from(g: DiGraph) -> Self {
        Topology::Static(g)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub topology: Topology,
    pub f: usize,
    pub malicious: NodeSet,
    pub strategy: AdversaryStrategy,
    pub initial_values: Vec<f64>,
    pub weights: WeightPolicy,
    /// `None` picks `10 n ceil(ln(Phi[0] / tol))`, capped at [`MAX_HORIZON`].
    pub horizon: Option<usize>,
    pub tol: f64,
    pub stall_window: usize,
    pub clamp: f64,
}

impl Scenario {
    /// No faulty nodes, equal weights, default tolerances.
    pub fn new(topology: impl Into<Topology>, f: usize, initial_values: Vec<f64>) -> Self {
        Scenario {
            topology: topology.into(),
            f,
            malicious: NodeSet::new(),
            strategy: AdversaryStrategy::default(),
            initial_values,
            weights: WeightPolicy::EqualWeights,
            horizon: None,
            tol: DEFAULT_TOL,
            stall_window: DEFAULT_STALL_WINDOW,
            clamp: DEFAULT_CLAMP,
        }
    }

    pub fn with_adversary(mut self, malicious: NodeSet, strategy: AdversaryStrategy) -> Self {
        self.malicious = malicious;
        self.strategy = strategy;
        self
    }

    pub fn n(&self) -> usize {
        self.topology.n()
    }

    pub fn normal_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.n()).filter(|&i| !self.malicious.contains(i))
    }

    /// Checks every precondition of [`super::simulate`], including
    /// f-locality of the malicious set in every graph of the schedule.
    pub fn validate(&self) -> Result<()> {
        let graphs = self.topology.graphs();
        if graphs.is_empty() {
            return Err(Error::invalid("topology has no graphs"));
        }
        let n = self.n();
        if let Some(g) = graphs.iter().find(|g| g.n() != n) {
            return Err(Error::invalid(format!(
                "schedule mixes graph sizes {n} and {}",
                g.n()
            )));
        }
        if self.initial_values.len() != n {
            return Err(Error::invalid(format!(
                "{} initial values for {n} nodes",
                self.initial_values.len()
            )));
        }
        if let Some(node) = self.initial_values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { node, step: 0 });
        }
        self.malicious.check_within(n)?;
        if self.malicious.len() == n {
            return Err(Error::invalid("no normal nodes"));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::invalid(format!("tol must be positive, got {}", self.tol)));
        }
        if self.stall_window == 0 {
            return Err(Error::invalid("stall_window must be at least 1"));
        }
        if self.clamp.is_nan() || self.clamp <= 0.0 {
            return Err(Error::invalid(format!("clamp must be positive, got {}", self.clamp)));
        }
        self.weights.validate()?;
        self.strategy.validate()?;
        for (step, g) in graphs.iter().enumerate() {
            check_f_local(g, &self.malicious, self.f, step)?;
        }
        Ok(())
    }

    /// Horizon actually used for a run starting from spread `phi0`.
    pub fn effective_horizon(&self, phi0: f64) -> usize {
        self.horizon.unwrap_or_else(|| {
            let logs = (phi0 / self.tol).ln().ceil().max(1.0);
            let t = 10.0 * self.n() as f64 * logs;
            if t.is_finite() {
                (t as usize).clamp(1, MAX_HORIZON)
            } else {
                MAX_HORIZON
            }
        })
    }
}

fn check_f_local(g: &DiGraph, malicious: &NodeSet, f: usize, step: usize) -> Result<()> {
    for i in (0..g.n()).filter(|&i| !malicious.contains(i)) {
        let count = g.in_adj(i).iter().filter(|&&j| malicious.contains(j)).count();
        if count > f {
            return Err(Error::NotFLocal { f, step, node: i, count });
        }
    }
    Ok(())
}

/// Final classification of a run.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    /// Spread fell below `tol`; `value` is the midpoint of the normal range.
    Converged { value: f64 },
    /// Spread stayed exactly constant (and above `tol`) for the stall window.
    Stalled,
    Timeout,
}

impl Outcome {
    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Converged { .. } => "CONVERGED",
            Outcome::Stalled => "STALLED",
            Outcome::Timeout => "TIMEOUT",
        }
    }

    pub fn is_converged(&self) -> bool {
        matches!(self, Outcome::Converged { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    #[serde(flatten)]
    pub outcome: Outcome,
    pub steps_used: usize,
    /// Final normal values lie in the initial normal range.
    pub safe: bool,
    pub phi_final: f64,
    pub min_normal_initial: f64,
    pub max_normal_initial: f64,
}

/// Full state history. Row `t` of `values` holds the state at step `t`;
/// for faulty nodes it is the value they broadcast at that step.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Trajectory {
    pub values: Vec<Vec<f64>>,
    /// `removed_count[t][i]`: neighbors node `i` discarded to produce row
    /// `t` (zero in row 0 and for faulty nodes).
    pub removed_count: Vec<Vec<usize>>,
    pub max_normal: Vec<f64>,
    pub min_normal: Vec<f64>,
    pub phi: Vec<f64>,
}

impl Trajectory {
    pub fn steps(&self) -> usize {
        self.values.len().saturating_sub(1)
    }
}
