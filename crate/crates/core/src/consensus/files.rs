//! Scenario files and run artifacts.
//!
//! A scenario file is JSON:
//!
//! ```json
//! {
//!   "topology": {"kind": "static", "graph": "k5.txt"},
//!   "f": 1,
//!   "malicious": [0],
//!   "strategy": {"kind": "constant", "value": 100, "model": "malicious", "seed": 0},
//!   "initial_values": [0, 1, 2, 3, 4],
//!   "weights": {"kind": "equal-weights"},
//!   "horizon": null, "tol": 1e-9, "stall_window": 25, "clamp": 1e12
//! }
//! ```
//!
//! A graph is either a path (resolved against the scenario file's
//! directory, either graph format) or an inline `{"n", "directed", "edges"}`
//! object. `{"kind": "periodic", "graphs": [...]}` gives a time-varying
//! schedule. Everything after `initial_values` is optional.
//!
//! Outputs: `trajectory.csv` with columns `t,node,value,is_malicious,removed_count`
//! and `verdict.json`.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::adversary::{AdversaryStrategy, DEFAULT_CLAMP};
use super::scenario::{Scenario, Topology, Trajectory, Verdict, DEFAULT_STALL_WINDOW, DEFAULT_TOL};
use super::weights::WeightPolicy;
use crate::error::Result;
use crate::graph::{DiGraph, NodeId};
use crate::io::{read_graph, write_atomic, GraphDoc};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GraphRef {
    Path(PathBuf),
    Inline(GraphDoc),
}

impl GraphRef {
    pub fn load(&self, base: &Path) -> Result<DiGraph> {
        match self {
            GraphRef::Path(p) => read_graph(&base.join(p)),
            GraphRef::Inline(doc) => doc.to_graph(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TopologySpec {
    Static { graph: GraphRef },
    Periodic { graphs: Vec<GraphRef> },
}

fn default_tol() -> f64 {
    DEFAULT_TOL
}

fn default_stall_window() -> usize {
    DEFAULT_STALL_WINDOW
}

fn default_clamp() -> f64 {
    DEFAULT_CLAMP
}

/// Serde form of a [`Scenario`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub topology: TopologySpec,
    pub f: usize,
    #[serde(default)]
    pub malicious: Vec<NodeId>,
    #[serde(default)]
    pub strategy: AdversaryStrategy,
    pub initial_values: Vec<f64>,
    #[serde(default)]
    pub weights: WeightPolicy,
    #[serde(default)]
    pub horizon: Option<usize>,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_stall_window")]
    pub stall_window: usize,
    #[serde(default = "default_clamp")]
    pub clamp: f64,
}

impl ScenarioFile {
    /// Resolves graph paths against `base`.
    pub fn into_scenario(self, base: &Path) -> Result<Scenario> {
        let topology = match self.topology {
            TopologySpec::Static { graph } => Topology::Static(graph.load(base)?),
            TopologySpec::Periodic { graphs } => {
                Topology::Periodic(graphs.iter().map(|g| g.load(base)).collect::<Result<_>>()?)
            }
        };
        Ok(Scenario {
            topology,
            f: self.f,
            malicious: self.malicious.into_iter().collect(),
            strategy: self.strategy,
            initial_values: self.initial_values,
            weights: self.weights,
            horizon: self.horizon,
            tol: self.tol,
            stall_window: self.stall_window,
            clamp: self.clamp,
        })
    }

    /// Inline form of an in-memory scenario.
    pub fn from_scenario(sc: &Scenario) -> Self {
        let inline = |g: &DiGraph| GraphRef::Inline(GraphDoc::from_graph(g));
        ScenarioFile {
            topology: match &sc.topology {
                Topology::Static(g) => TopologySpec::Static { graph: inline(g) },
                Topology::Periodic(gs) => TopologySpec::Periodic {
                    graphs: gs.iter().map(inline).collect(),
                },
            },
            f: sc.f,
            malicious: sc.malicious.to_vec(),
            strategy: sc.strategy.clone(),
            initial_values: sc.initial_values.clone(),
            weights: sc.weights.clone(),
            horizon: sc.horizon,
            tol: sc.tol,
            stall_window: sc.stall_window,
            clamp: sc.clamp,
        }
    }
}

pub fn load_scenario(path: &Path) -> Result<Scenario> {
    let file: ScenarioFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    let base = path.parent().unwrap_or(Path::new("."));
    file.into_scenario(base)
}

#[derive(Serialize)]
struct TrajectoryRow {
    t: usize,
    node: NodeId,
    value: f64,
    is_malicious: bool,
    removed_count: usize,
}

/// Trajectory as CSV, one row per (step, node).
pub fn trajectory_csv(traj: &Trajectory, sc: &Scenario) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for (t, (row, removed)) in traj.values.iter().zip(&traj.removed_count).enumerate() {
        for (node, (&value, &removed_count)) in row.iter().zip(removed).enumerate() {
            w.serialize(TrajectoryRow {
                t,
                node,
                value,
                is_malicious: sc.malicious.contains(node),
                removed_count,
            })?;
        }
    }
    Ok(w.into_inner().map_err(|e| e.into_error())?)
}

/// `verdict.json` body: the verdict plus the adversary seed.
pub fn verdict_json(verdict: &Verdict, sc: &Scenario) -> String {
    #[derive(Serialize)]
    struct Doc<'a> {
        #[serde(flatten)]
        verdict: &'a Verdict,
        seed: u64,
    }
    let mut text = serde_json::to_string_pretty(&Doc {
        verdict,
        seed: sc.strategy.seed,
    })
    .expect("verdict serializes");
    text.push('\n');
    text
}

/// Writes `trajectory.csv` and `verdict.json` into `dir`.
pub fn write_run(dir: &Path, sc: &Scenario, traj: &Trajectory, verdict: &Verdict) -> Result<()> {
    write_atomic(&dir.join("trajectory.csv"), &trajectory_csv(traj, sc)?)?;
    write_atomic(&dir.join("verdict.json"), verdict_json(verdict, sc).as_bytes())
}
