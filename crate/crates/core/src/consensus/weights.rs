use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::NodeId;

/// Tolerance on the row sum of the weights a node actually uses.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;

/// Edge weights for the W-MSR update.
///
/// Only kept neighbors carry weight; removed ones implicitly get zero. The
/// self weight is whatever remains, so every row sums to one.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WeightPolicy {
    /// `1 / (1 + |kept|)` for the node itself and each kept neighbor. Meets
    /// the floor `1/n` on an `n`-node graph.
    #[default]
    EqualWeights,
    /// Fixed per-edge weights `(from, to, w)`; the self weight is
    /// `1 - sum(kept w)`. Every used weight, self included, must be at least
    /// `alpha_floor`.
    ExplicitTable {
        alpha_floor: f64,
        entries: Vec<(NodeId, NodeId, f64)>,
    },
}

impl WeightPolicy {
    /// Lower bound the policy promises on every used weight.
    pub fn alpha_floor(&self, n: usize) -> f64 {
        match self {
            WeightPolicy::EqualWeights => 1.0 / n.max(1) as f64,
            WeightPolicy::ExplicitTable { alpha_floor, .. } => *alpha_floor,
        }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if let WeightPolicy::ExplicitTable { alpha_floor, entries } = self {
            if !(*alpha_floor > 0.0 && *alpha_floor < 1.0) {
                return Err(Error::invalid(format!("alpha_floor must lie in (0, 1), got {alpha_floor}")));
            }
            for &(j, i, w) in entries {
                if !w.is_finite() || w <= 0.0 || j == i {
                    return Err(Error::invalid(format!("bad weight entry ({j}, {i}, {w})")));
                }
            }
        }
        Ok(())
    }

    pub(crate) fn resolve(&self, n: usize) -> ResolvedWeights {
        match self {
            WeightPolicy::EqualWeights => ResolvedWeights::Equal { floor: self.alpha_floor(n) },
            WeightPolicy::ExplicitTable { alpha_floor, entries } => ResolvedWeights::Table {
                floor: *alpha_floor,
                table: entries.iter().map(|&(j, i, w)| ((j, i), w)).collect(),
            },
        }
    }
}

/// Lookup form of a [`WeightPolicy`] built once per simulation.
#[derive(Clone, Debug)]
pub(crate) enum ResolvedWeights {
    Equal { floor: f64 },
    Table { floor: f64, table: BTreeMap<(NodeId, NodeId), f64> },
}

impl ResolvedWeights {
    /// Neighbor weights for node `i` over `kept`, checked against the floor
    /// and the unit row sum.
    pub(crate) fn row(&self, i: NodeId, kept: &[(NodeId, f64)], step: usize, out: &mut Vec<f64>) -> Result<()> {
        out.clear();
        let violation = |reason: String| Error::WeightViolation { node: i, step, reason };
        let floor = match self {
            ResolvedWeights::Equal { floor } => {
                let w = 1.0 / (kept.len() + 1) as f64;
                out.extend(std::iter::repeat_n(w, kept.len()));
                *floor
            }
            ResolvedWeights::Table { floor, table } => {
                for &(j, _) in kept {
                    let w = table
                        .get(&(j, i))
                        .copied()
                        .ok_or_else(|| violation(format!("no weight for kept neighbor {j}")))?;
                    out.push(w);
                }
                *floor
            }
        };
        let used: f64 = out.iter().sum();
        let self_weight = match self {
            ResolvedWeights::Equal { .. } => 1.0 / (kept.len() + 1) as f64,
            ResolvedWeights::Table { .. } => 1.0 - used,
        };
        if let Some((k, &w)) = out.iter().enumerate().find(|&(_, &w)| w < floor) {
            return Err(violation(format!("weight {w} on neighbor {} below floor {floor}", kept[k].0)));
        }
        if self_weight < floor {
            return Err(violation(format!("self weight {self_weight} below floor {floor}")));
        }
        if (self_weight + used - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(violation(format!("weights sum to {}", self_weight + used)));
        }
        Ok(())
    }
}
