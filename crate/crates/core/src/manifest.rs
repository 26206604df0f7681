//! Experiment manifests: named claims, simulations and analyses with
//! expected results.
//!
//! ```json
//! {
//!   "output_dir": "out",
//!   "seed": 7,
//!   "items": [
//!     {"name": "two-cliques", "kind": "claim", "id": 1},
//!     {"name": "k5-liar", "kind": "simulate", "scenario": "k5.json",
//!      "expect": {"outcome": "CONVERGED", "safe": true}},
//!     {"name": "k5", "kind": "analyze", "graph": "k5.txt",
//!      "expect": {"max_robust_r": 3, "connectivity": 4}}
//!   ]
//! }
//! ```
//!
//! Paths are relative to the manifest file. Each item is parsed and run on
//! its own, so one malformed item does not stop the others.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::claims::{self, ClaimResult, CLAIM_COUNT, DEFAULT_SEED};
use crate::consensus::files::{load_scenario, write_run};
use crate::consensus::{simulate, Outcome};
use crate::error::{Error, Result};
use crate::extended::Extended;
use crate::io::{read_graph, write_atomic};
use crate::robustness::analyze;

fn default_seed() -> u64 {
    DEFAULT_SEED
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentManifest {
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
    #[serde(default = "default_seed")]
    pub seed: u64,
    /// Kept as raw JSON until run so a bad item only fails itself.
    #[serde(default)]
    pub items: Vec<serde_json::Value>,
}

impl ExperimentManifest {
    /// Every acceptance claim, in order.
    pub fn paper_claims(seed: u64) -> Self {
        ExperimentManifest {
            output_dir: None,
            seed,
            items: (1..=CLAIM_COUNT)
                .map(|id| serde_json::json!({"name": format!("claim-{id}"), "kind": "claim", "id": id}))
                .collect(),
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectVerdict {
    pub outcome: String,
    #[serde(default)]
    pub safe: Option<bool>,
    /// Expected consensus value for `CONVERGED`, compared within `tolerance`.
    #[serde(default)]
    pub value: Option<f64>,
    #[serde(default)]
    pub tolerance: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectReport {
    #[serde(default)]
    pub max_robust_r: Option<usize>,
    #[serde(default)]
    pub max_strong_robust_r: Option<Extended>,
    #[serde(default)]
    pub connectivity: Option<usize>,
    #[serde(default)]
    pub min_degree: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ItemSpec {
    Claim {
        name: String,
        id: u8,
    },
    Simulate {
        name: String,
        scenario: PathBuf,
        #[serde(default)]
        expect: Option<ExpectVerdict>,
    },
    Analyze {
        name: String,
        graph: PathBuf,
        #[serde(default)]
        expect: ExpectReport,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ItemStatus {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ItemReport {
    pub name: String,
    pub status: ItemStatus,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claim: Option<ClaimResult>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ManifestReport {
    pub seed: u64,
    pub items: Vec<ItemReport>,
    pub warnings: Vec<String>,
}

impl ManifestReport {
    pub fn count(&self, status: ItemStatus) -> usize {
        self.items.iter().filter(|i| i.status == status).count()
    }

    /// 0 all passed, 1 some item failed, 2 some item could not run.
    pub fn exit_code(&self) -> u8 {
        if self.count(ItemStatus::Error) > 0 {
            2
        } else if self.count(ItemStatus::Fail) > 0 {
            1
        } else {
            0
        }
    }
}

fn item_name(raw: &serde_json::Value, index: usize) -> String {
    raw.get("name")
        .and_then(|v| v.as_str())
        .map_or_else(|| format!("item-{index}"), str::to_string)
}

/// Runs every item. Artifacts go under `output_dir` (relative to `base`)
/// when one is set.
pub fn run_manifest(manifest: &ExperimentManifest, base: &Path) -> ManifestReport {
    let mut warnings = Vec::new();
    if manifest.items.is_empty() {
        warnings.push("manifest has no items; nothing to check".to_string());
    }
    let out_dir = manifest.output_dir.as_ref().map(|d| base.join(d));
    let items = manifest
        .items
        .iter()
        .enumerate()
        .map(|(index, raw)| {
            let name = item_name(raw, index);
            match serde_json::from_value::<ItemSpec>(raw.clone()) {
                Ok(spec) => run_item(&spec, base, out_dir.as_deref(), manifest.seed).unwrap_or_else(|e| ItemReport {
                    name,
                    status: ItemStatus::Error,
                    detail: e.to_string(),
                    claim: None,
                }),
                Err(e) => ItemReport {
                    name,
                    status: ItemStatus::Error,
                    detail: format!("unrecognized item: {e}"),
                    claim: None,
                },
            }
        })
        .collect();
    ManifestReport {
        seed: manifest.seed,
        items,
        warnings,
    }
}

fn verdict_item(pass: bool, name: &str, detail: String) -> ItemReport {
    ItemReport {
        name: name.to_string(),
        status: if pass { ItemStatus::Pass } else { ItemStatus::Fail },
        detail,
        claim: None,
    }
}

fn run_item(spec: &ItemSpec, base: &Path, out_dir: Option<&Path>, seed: u64) -> Result<ItemReport> {
    match spec {
        ItemSpec::Claim { name, id } => {
            if claims::claim_name(*id).is_none() {
                return Err(Error::invalid(format!("no claim with id {id}")));
            }
            let result = claims::run_claim(*id, seed);
            if let Some(dir) = out_dir {
                let body = serde_json::to_string_pretty(&result)? + "\n";
                write_atomic(&dir.join(format!("{name}.json")), body.as_bytes())?;
            }
            Ok(ItemReport {
                name: name.clone(),
                status: if result.passed { ItemStatus::Pass } else { ItemStatus::Fail },
                detail: result.detail.clone(),
                claim: Some(result),
            })
        }
        ItemSpec::Simulate { name, scenario, expect } => {
            let path = base.join(scenario);
            let sc = load_scenario(&path)
                .map_err(|e| Error::invalid(format!("cannot load scenario {}: {e}", path.display())))?;
            let (traj, verdict) = simulate(&sc)?;
            if let Some(dir) = out_dir {
                write_run(&dir.join(name), &sc, &traj, &verdict)?;
            }
            let mut problems = Vec::new();
            if let Some(exp) = expect {
                if !["CONVERGED", "STALLED", "TIMEOUT"].contains(&exp.outcome.as_str()) {
                    return Err(Error::invalid(format!("unknown expected outcome {:?}", exp.outcome)));
                }
                if verdict.outcome.label() != exp.outcome {
                    problems.push(format!("outcome {} expected {}", verdict.outcome.label(), exp.outcome));
                }
                if exp.safe.is_some_and(|s| s != verdict.safe) {
                    problems.push(format!("safe = {}", verdict.safe));
                }
                if let (Some(want), Outcome::Converged { value }) = (exp.value, verdict.outcome) {
                    let tol = exp.tolerance.unwrap_or(sc.tol);
                    if (value - want).abs() > tol {
                        problems.push(format!("value {value} expected {want} +- {tol}"));
                    }
                }
            }
            let summary = format!("{} after {} steps, safe = {}", verdict.outcome.label(), verdict.steps_used, verdict.safe);
            let detail = if problems.is_empty() { summary } else { format!("{summary}; {}", problems.join(", ")) };
            Ok(verdict_item(problems.is_empty(), name, detail))
        }
        ItemSpec::Analyze { name, graph, expect } => {
            let path = base.join(graph);
            let g = read_graph(&path).map_err(|e| Error::invalid(format!("cannot read graph {}: {e}", path.display())))?;
            let report = analyze(&g)?;
            let mut problems = Vec::new();
            if expect.max_robust_r.is_some_and(|r| r != report.max_robust_r) {
                problems.push(format!("max_robust_r = {}", report.max_robust_r));
            }
            if expect.max_strong_robust_r.is_some_and(|r| r != report.max_strong_robust_r) {
                problems.push(format!("max_strong_robust_r = {}", report.max_strong_robust_r));
            }
            if expect.connectivity.is_some() && expect.connectivity != report.connectivity {
                problems.push(format!("connectivity = {:?}", report.connectivity));
            }
            if expect.min_degree.is_some_and(|d| d != report.min_degree) {
                problems.push(format!("min_degree = {}", report.min_degree));
            }
            if let Some(dir) = out_dir {
                let body = serde_json::to_string_pretty(&report)? + "\n";
                write_atomic(&dir.join(format!("{name}.json")), body.as_bytes())?;
            }
            let detail = if problems.is_empty() {
                serde_json::to_string(&report)?
            } else {
                problems.join(", ")
            };
            Ok(verdict_item(problems.is_empty(), name, detail))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::complete;
    use crate::io::{write_graph, GraphFormat};

    #[test]
    fn empty_manifest_passes_with_a_warning() {
        let m: ExperimentManifest = serde_json::from_str("{}").unwrap();
        let report = run_manifest(&m, Path::new("."));
        assert_eq!(report.exit_code(), 0);
        assert_eq!(report.warnings.len(), 1);
    }

    #[test]
    fn bad_items_error_individually() {
        let dir = tempfile::tempdir().unwrap();
        write_graph(&dir.path().join("k5.txt"), &complete(5).unwrap(), GraphFormat::EdgeList).unwrap();
        let m: ExperimentManifest = serde_json::from_str(
            r#"{"items": [
                {"name": "ghost", "kind": "simulate", "scenario": "missing.json"},
                {"name": "weird", "kind": "teleport"},
                {"name": "k5", "kind": "analyze", "graph": "k5.txt", "expect": {"max_robust_r": 3, "connectivity": 4}},
                {"name": "k5-wrong", "kind": "analyze", "graph": "k5.txt", "expect": {"max_robust_r": 4}}
            ]}"#,
        )
        .unwrap();
        let report = run_manifest(&m, dir.path());
        let statuses: Vec<_> = report.items.iter().map(|i| i.status).collect();
        assert_eq!(statuses, vec![ItemStatus::Error, ItemStatus::Error, ItemStatus::Pass, ItemStatus::Fail]);
        assert_eq!(report.exit_code(), 2);
    }

    #[test]
    fn simulate_item_writes_artifacts() {
        let dir = tempfile::tempdir().unwrap();
        write_graph(&dir.path().join("k5.txt"), &complete(5).unwrap(), GraphFormat::EdgeList).unwrap();
        std::fs::write(
            dir.path().join("sc.json"),
            r#"{"topology": {"kind": "static", "graph": "k5.txt"}, "f": 1, "malicious": [4],
                "strategy": {"kind": "constant", "value": 9}, "initial_values": [1, 1, 1, 1, 0]}"#,
        )
        .unwrap();
        let m: ExperimentManifest = serde_json::from_str(
            r#"{"output_dir": "out", "items": [
                {"name": "agree", "kind": "simulate", "scenario": "sc.json",
                 "expect": {"outcome": "CONVERGED", "safe": true, "value": 1.0}}
            ]}"#,
        )
        .unwrap();
        let report = run_manifest(&m, dir.path());
        assert_eq!(report.items[0].status, ItemStatus::Pass, "{:?}", report.items[0]);
        assert!(dir.path().join("out/agree/trajectory.csv").exists());
        assert!(dir.path().join("out/agree/verdict.json").exists());
    }

    #[test]
    fn paper_claims_lists_every_claim() {
        let m = ExperimentManifest::paper_claims(1);
        assert_eq!(m.items.len(), CLAIM_COUNT as usize);
        assert!(m.items.iter().all(|i| serde_json::from_value::<ItemSpec>(i.clone()).is_ok()));
    }
}
