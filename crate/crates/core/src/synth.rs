//! Seeded generators for attributed networks and biased decision vectors.
//!
//! Graphs come from a two-block (or k-block) model: a pair `(i, j)` is
//! linked with probability `p * w_i * w_j`, where `p` is the intra- or
//! inter-group base probability and `w` is `degree_skew` for group 0 and 1
//! for every other group.

use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{AttributedNetwork, DecisionVector, GraphError, Group, NodeId, NodeLabel};
use crate::perception::DegenerateRule;
use crate::visibility::{visibility_sweep, GroupPartition, VisibilityError};

#[derive(Debug, Error)]
pub enum SynthError {
    #[error("invalid generator config: {0}")]
    InvalidConfig(String),
    #[error("group {group}: {reason}")]
    UnattainableTarget { group: Group, reason: String },
    #[error("no valid pitfall instance for seed {seed}, try another seed: {diagnostic}")]
    PitfallRejected { seed: u64, diagnostic: String },
    #[error("cannot read config {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot parse config: {0}")]
    Parse(#[from] toml::de::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Visibility(#[from] VisibilityError),
}

/// Per-group decision targets for [`biased_decision`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateTarget {
    pub tpr: f64,
    pub fpr: f64,
}

impl RateTarget {
    pub const ORACLE: RateTarget = RateTarget { tpr: 1.0, fpr: 0.0 };
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SynthConfig {
    pub group_sizes: Vec<usize>,
    pub intra_probability: f64,
    pub inter_probability: f64,
    #[serde(default = "one")]
    pub degree_skew: f64,
    pub outcome_rate: f64,
    /// One target per group; empty means `h = y`.
    #[serde(default)]
    pub rates: Vec<RateTarget>,
    /// Number of unprotected attributes, each uniform on `0..attribute_levels`.
    #[serde(default)]
    pub attribute_count: usize,
    #[serde(default = "two")]
    pub attribute_levels: u32,
    /// Add bridging edges until the graph is connected.
    #[serde(default)]
    pub connect: bool,
    #[serde(default)]
    pub seed: u64,
}

fn one() -> f64 {
    1.0
}

fn two() -> u32 {
    2
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            group_sizes: vec![20, 20],
            intra_probability: 0.2,
            inter_probability: 0.05,
            degree_skew: 1.0,
            outcome_rate: 0.4,
            rates: Vec::new(),
            attribute_count: 0,
            attribute_levels: 2,
            connect: false,
            seed: 0,
        }
    }
}

impl SynthConfig {
    pub fn from_toml_str(text: &str) -> Result<Self, SynthError> {
        let config: SynthConfig = toml::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_file(path: &Path) -> Result<Self, SynthError> {
        let text = std::fs::read_to_string(path).map_err(|source| SynthError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<(), SynthError> {
        let bad = |msg: String| Err(SynthError::InvalidConfig(msg));
        if self.group_sizes.is_empty() || self.group_sizes.contains(&0) {
            return bad("every group needs at least one node".into());
        }
        for (name, p) in [
            ("intra_probability", self.intra_probability),
            ("inter_probability", self.inter_probability),
            ("outcome_rate", self.outcome_rate),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return bad(format!("{name} = {p} is outside [0, 1]"));
            }
        }
        if !(self.degree_skew.is_finite() && self.degree_skew > 0.0) {
            return bad(format!(
                "degree_skew = {} must be positive",
                self.degree_skew
            ));
        }
        if !self.rates.is_empty() && self.rates.len() != self.group_sizes.len() {
            return bad(format!(
                "{} rate targets for {} groups",
                self.rates.len(),
                self.group_sizes.len()
            ));
        }
        for t in &self.rates {
            if !(0.0..=1.0).contains(&t.tpr) || !(0.0..=1.0).contains(&t.fpr) {
                return bad(format!("rate target {t:?} is outside [0, 1]"));
            }
        }
        if self.attribute_count > 0 && self.attribute_levels == 0 {
            return bad("attribute_levels must be positive".into());
        }
        Ok(())
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

/// `round(x)` with halves rounded up.
fn round_half_up(x: f64) -> usize {
    (x + 0.5).floor() as usize
}

pub fn random_attributed_graph(config: &SynthConfig) -> Result<AttributedNetwork, SynthError> {
    config.validate()?;
    let mut rng = config.rng(0);
    let mut labels = Vec::new();
    for (g, &size) in config.group_sizes.iter().enumerate() {
        let positives = round_half_up(config.outcome_rate * size as f64).min(size);
        let mut outcomes: Vec<bool> = (0..size).map(|i| i < positives).collect();
        outcomes.shuffle(&mut rng);
        for y in outcomes {
            labels.push(NodeLabel {
                protected: Group(g as u32),
                outcome: y,
                attributes: (0..config.attribute_count)
                    .map(|_| f64::from(rng.gen_range(0..config.attribute_levels)))
                    .collect(),
            });
        }
    }
    let n = labels.len();
    let weight = |g: Group| if g.0 == 0 { config.degree_skew } else { 1.0 };
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (gi, gj) = (labels[i].protected, labels[j].protected);
            let base = if gi == gj {
                config.intra_probability
            } else {
                config.inter_probability
            };
            let p = (base * weight(gi) * weight(gj)).min(1.0);
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    let names = (0..config.attribute_count)
        .map(|i| format!("x{i}"))
        .collect();
    let mut net = AttributedNetwork::with_attribute_names(labels, &edges, names)?;
    if config.connect {
        net = connect_components(net, &mut rng)?;
    }
    Ok(net)
}

/// Joins every component to the largest one with a single random edge.
fn connect_components(
    net: AttributedNetwork,
    rng: &mut ChaCha8Rng,
) -> Result<AttributedNetwork, SynthError> {
    let components = net.connected_components();
    if components.is_connected() {
        return Ok(net);
    }
    let largest = (0..components.count())
        .max_by_key(|&c| (components.members(c).len(), std::cmp::Reverse(c)))
        .expect("at least one component");
    let hub = components.members(largest);
    let mut edges: Vec<(usize, usize)> = net.edges().map(|(a, b)| (a.0, b.0)).collect();
    for c in (0..components.count()).filter(|&c| c != largest) {
        let a = components
            .members(c)
            .choose(rng)
            .expect("nonempty component");
        let b = hub.choose(rng).expect("nonempty component");
        edges.push((a.0, b.0));
    }
    let names = net.attribute_names().to_vec();
    Ok(AttributedNetwork::with_attribute_names(
        net.labels().to_vec(),
        &edges,
        names,
    )?)
}

/// Per group, accepts `round(tpr * P)` randomly chosen positives and
/// `round(fpr * N)` randomly chosen negatives, rounding half up. A nonzero
/// target on an empty class is unattainable; a zero target there is vacuous.
pub fn biased_decision(
    net: &AttributedNetwork,
    config: &SynthConfig,
) -> Result<DecisionVector, SynthError> {
    if config.rates.is_empty() {
        return Ok(DecisionVector::new(
            net.labels().iter().map(|l| l.outcome).collect(),
        ));
    }
    let mut rng = config.rng(1);
    let mut h = DecisionVector::constant(net.node_count(), false);
    for (group, nodes) in GroupPartition::from_network(net).iter() {
        let target =
            *config
                .rates
                .get(group.0 as usize)
                .ok_or_else(|| SynthError::UnattainableTarget {
                    group,
                    reason: "no rate target configured".into(),
                })?;
        let (mut positives, mut negatives): (Vec<NodeId>, Vec<NodeId>) =
            nodes.iter().partition(|&&v| net.outcome(v));
        for (class, rate, name) in [
            (&mut positives, target.tpr, "TPR"),
            (&mut negatives, target.fpr, "FPR"),
        ] {
            if class.is_empty() {
                if rate > 0.0 {
                    return Err(SynthError::UnattainableTarget {
                        group,
                        reason: format!("{name} target {rate} with no nodes in that class"),
                    });
                }
                continue;
            }
            let accepted = round_half_up(rate * class.len() as f64).min(class.len());
            class.shuffle(&mut rng);
            for &v in &class[..accepted] {
                h.set(v, true);
            }
        }
    }
    Ok(h)
}

/// Config used by [`pitfall_instance`]: a dense, high-degree group 0 and a
/// sparse group 1 that is accepted less often.
pub fn pitfall_config(seed: u64) -> SynthConfig {
    SynthConfig {
        group_sizes: vec![40, 80],
        intra_probability: 0.01,
        inter_probability: 0.004,
        degree_skew: 5.0,
        outcome_rate: 0.35,
        rates: vec![
            RateTarget {
                tpr: 0.9,
                fpr: 0.15,
            },
            RateTarget {
                tpr: 0.8,
                fpr: 0.05,
            },
        ],
        attribute_count: 0,
        attribute_levels: 2,
        connect: true,
        seed,
    }
}

/// Attempts tried per seed before giving up.
const PITFALL_ATTEMPTS: u64 = 8;

/// Connected two-group network where group 0 has higher degree and higher
/// acceptance probability, yet lower fairness visibility than group 1 at
/// radius 1; at the saturation radius the visibility ordering matches the
/// acceptance ordering.
pub fn pitfall_instance(seed: u64) -> Result<(AttributedNetwork, DecisionVector), SynthError> {
    let mut diagnostics = Vec::new();
    for attempt in 0..PITFALL_ATTEMPTS {
        let config = pitfall_config(seed.wrapping_mul(PITFALL_ATTEMPTS).wrapping_add(attempt));
        let net = random_attributed_graph(&config)?;
        let h = biased_decision(&net, &config)?;
        match validate_pitfall(&net, &h)? {
            None => return Ok((net, h)),
            Some(reason) => diagnostics.push(format!("attempt {attempt}: {reason}")),
        }
    }
    Err(SynthError::PitfallRejected {
        seed,
        diagnostic: diagnostics.join("; "),
    })
}

/// `None` when the instance exhibits the pitfall, otherwise the reason.
pub fn validate_pitfall(
    net: &AttributedNetwork,
    h: &DecisionVector,
) -> Result<Option<String>, SynthError> {
    let partition = GroupPartition::from_network(net);
    let (Some(g0), Some(g1)) = (partition.get(Group(0)), partition.get(Group(1))) else {
        return Ok(Some("needs groups 0 and 1".into()));
    };
    if partition.len() != 2 {
        return Ok(Some("needs exactly two groups".into()));
    }
    if !net.connected_components().is_connected() {
        return Ok(Some("not connected".into()));
    }
    let all: Vec<NodeId> = net.nodes().collect();
    let overall = crate::metrics::confusion(net, h, &all);
    if overall.tp == 0 || overall.fp == 0 {
        return Ok(Some("needs TPR > 0 and FPR > 0".into()));
    }
    let mean_degree = |nodes: &[NodeId]| {
        nodes.iter().map(|&v| net.degree(v)).sum::<usize>() as f64 / nodes.len() as f64
    };
    if mean_degree(g0) <= mean_degree(g1) {
        return Ok(Some("group 0 is not the higher-degree group".into()));
    }
    let acc0 = crate::visibility::acceptance_probability(net, h, g0)?;
    let acc1 = crate::visibility::acceptance_probability(net, h, g1)?;
    if acc0 <= acc1 {
        return Ok(Some("group 0 is not accepted more often".into()));
    }
    let saturation = net.eccentricity_bound().max(1);
    let sweep = visibility_sweep(
        net,
        h,
        &partition,
        saturation,
        DegenerateRule::ZeroExpectation,
    )?;
    let fv = |delta: u32, group: Group| {
        sweep
            .rows_at(delta)
            .find(|r| r.group == group)
            .and_then(|r| r.visibility.rate())
            .expect("zero rule keeps every node")
    };
    if fv(1, Group(0)) >= fv(1, Group(1)) {
        return Ok(Some("no visibility reversal at radius 1".into()));
    }
    if fv(saturation, Group(0)) <= fv(saturation, Group(1)) {
        return Ok(Some(
            "visibility ordering not restored at saturation".into(),
        ));
    }
    Ok(None)
}
