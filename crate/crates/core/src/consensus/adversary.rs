use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::NodeId;

/// Default magnitude bound on transmitted adversary values.
pub const DEFAULT_CLAMP: f64 = 1e12;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ThreatModel {
    /// One value per faulty node per step, seen identically by every
    /// receiver.
    #[default]
    Malicious,
    /// Possibly different values for different receivers.
    Byzantine,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum StrategyKind {
    Constant {
        value: f64,
    },
    /// `start + slope * t`.
    Ramp {
        start: f64,
        slope: f64,
    },
    /// Uniform on `[low, high)`, fresh at every step (and, for the Byzantine
    /// model, for every receiver).
    Random {
        low: f64,
        high: f64,
    },
    /// Per faulty node, the value sent at step `t` is `values[t]`, the last
    /// entry repeating forever. Nodes without a script hold their initial
    /// value.
    CustomScript {
        #[serde(default, with = "node_keys")]
        values: BTreeMap<NodeId, Vec<f64>>,
    },
}

// JSON object keys are strings; a flattened enum cannot coerce them back to
// integers on its own.
mod node_keys {
    use std::collections::BTreeMap;

    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::graph::NodeId;

    pub fn serialize<S: Serializer>(map: &BTreeMap<NodeId, Vec<f64>>, s: S) -> Result<S::Ok, S::Error> {
        let keyed: BTreeMap<String, &Vec<f64>> = map.iter().map(|(k, v)| (k.to_string(), v)).collect();
        keyed.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<NodeId, Vec<f64>>, D::Error> {
        BTreeMap::<String, Vec<f64>>::deserialize(d)?
            .into_iter()
            .map(|(k, v)| {
                k.parse::<NodeId>()
                    .map(|node| (node, v))
                    .map_err(|_| D::Error::custom(format!("script key {k:?} is not a node id")))
            })
            .collect()
    }
}

/// What the faulty nodes transmit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdversaryStrategy {
    #[serde(flatten)]
    pub kind: StrategyKind,
    #[serde(default)]
    pub model: ThreatModel,
    #[serde(default)]
    pub seed: u64,
}

impl AdversaryStrategy {
    pub fn new(kind: StrategyKind, model: ThreatModel, seed: u64) -> Self {
        AdversaryStrategy { kind, model, seed }
    }

    pub fn constant(value: f64) -> Self {
        Self::new(StrategyKind::Constant { value }, ThreatModel::Malicious, 0)
    }

    /// Every scripted node holds a fixed value; others hold their initial one.
    pub fn hold(values: impl IntoIterator<Item = (NodeId, f64)>) -> Self {
        let values = values.into_iter().map(|(node, v)| (node, vec![v])).collect();
        Self::new(StrategyKind::CustomScript { values }, ThreatModel::Malicious, 0)
    }

    pub(crate) fn validate(&self) -> Result<()> {
        match &self.kind {
            StrategyKind::Random { low, high } if !(low.is_finite() && high.is_finite() && low < high) => {
                Err(Error::invalid(format!("random strategy needs finite low < high, got [{low}, {high})")))
            }
            _ => Ok(()),
        }
    }
}

impl Default for AdversaryStrategy {
    fn default() -> Self {
        Self::constant(0.0)
    }
}

/// A strategy bound to one run: knows the graph size, the initial values and
/// the clamp.
#[derive(Clone, Debug)]
pub struct Adversary<'a> {
    strategy: &'a AdversaryStrategy,
    initial: &'a [f64],
    clamp: f64,
    rng: ChaCha8Rng,
}

impl<'a> Adversary<'a> {
    pub fn new(strategy: &'a AdversaryStrategy, initial: &'a [f64], clamp: f64) -> Self {
        Adversary {
            strategy,
            initial,
            clamp,
            rng: ChaCha8Rng::seed_from_u64(strategy.seed),
        }
    }

    /// Random draws are addressed by `(step, sender, receiver)` through the
    /// ChaCha stream and word position, so they do not depend on the order
    /// in which values are requested.
    fn draw(&self, step: usize, sender: NodeId, slot: usize) -> f64 {
        let n = self.initial.len() as u128 + 1;
        let mut rng = self.rng.clone();
        rng.set_stream(step as u64);
        rng.set_word_pos((sender as u128 * n + slot as u128) * 2);
        rng.gen::<f64>()
    }

    fn raw(&self, step: usize, sender: NodeId, receiver: Option<NodeId>) -> f64 {
        match &self.strategy.kind {
            StrategyKind::Constant { value } => *value,
            StrategyKind::Ramp { start, slope } => start + slope * step as f64,
            StrategyKind::Random { low, high } => {
                let slot = match (self.strategy.model, receiver) {
                    (ThreatModel::Byzantine, Some(r)) => r,
                    _ => self.initial.len(),
                };
                low + (high - low) * self.draw(step, sender, slot)
            }
            StrategyKind::CustomScript { values } => match values.get(&sender) {
                Some(seq) if !seq.is_empty() => seq[step.min(seq.len() - 1)],
                _ => self.initial[sender],
            },
        }
    }

    fn clamped(&self, v: f64, step: usize, sender: NodeId) -> Result<f64> {
        if v.is_nan() {
            return Err(Error::NonFinite { node: sender, step });
        }
        Ok(v.clamp(-self.clamp, self.clamp))
    }

    /// Value `sender` transmits to `receiver` at `step`.
    pub fn sent(&self, step: usize, sender: NodeId, receiver: NodeId) -> Result<f64> {
        self.clamped(self.raw(step, sender, Some(receiver)), step, sender)
    }

    /// Value recorded for `sender` in the trajectory: its broadcast value, or
    /// for Byzantine random strategies an extra draw not sent to anyone.
    pub fn nominal(&self, step: usize, sender: NodeId) -> Result<f64> {
        self.clamped(self.raw(step, sender, None), step, sender)
    }
}
