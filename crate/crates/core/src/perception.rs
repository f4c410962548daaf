//! Neighborhood peer expectation and binary fairness perception.
//!
//! A node `v` perceives the decision as fair when `E[h(v)] <= h(v)`, where
//! `E[h(v)]` is the acceptance rate among the δ-neighbors of `v` that share
//! its target outcome. Expectations are kept as integer counts so the
//! comparison is exact.

use std::fmt;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graph::{AttributedNetwork, DecisionVector, GraphError, NodeId};

/// What to do when `v` has no neighbor with the same outcome.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DegenerateRule {
    /// Treat the expectation as 0, so the node perceives fair.
    #[default]
    ZeroExpectation,
    /// Leave the expectation undefined and exclude the node from aggregates.
    MarkIneligible,
}

impl fmt::Display for DegenerateRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DegenerateRule::ZeroExpectation => "zero",
            DegenerateRule::MarkIneligible => "exclude",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExpectationPolicy {
    pub delta: u32,
    #[serde(default)]
    pub degenerate: DegenerateRule,
}

impl ExpectationPolicy {
    pub fn new(delta: u32, degenerate: DegenerateRule) -> Self {
        ExpectationPolicy { delta, degenerate }
    }

    pub fn with_delta(delta: u32) -> Self {
        ExpectationPolicy::new(delta, DegenerateRule::ZeroExpectation)
    }
}

impl Default for ExpectationPolicy {
    fn default() -> Self {
        ExpectationPolicy::with_delta(1)
    }
}

/// `E[h(v)] = accepted_peers / peers`; `peers` counts same-outcome neighbors.
/// A zero `peers` count is the degenerate case and evaluates to 0.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Expectation {
    pub accepted_peers: u32,
    pub peers: u32,
}

impl Expectation {
    pub fn new(accepted_peers: u32, peers: u32) -> Self {
        debug_assert!(accepted_peers <= peers);
        Expectation {
            accepted_peers,
            peers,
        }
    }

    pub fn is_degenerate(self) -> bool {
        self.peers == 0
    }

    pub fn value(self) -> f64 {
        if self.peers == 0 {
            0.0
        } else {
            f64::from(self.accepted_peers) / f64::from(self.peers)
        }
    }

    /// Exact comparison of the two expectation values; degenerate counts
    /// compare as 0.
    pub fn cmp_value(self, other: Expectation) -> std::cmp::Ordering {
        let den = |e: Expectation| u64::from(e.peers.max(1));
        (u64::from(self.accepted_peers) * den(other))
            .cmp(&(u64::from(other.accepted_peers) * den(self)))
    }

    /// Exact `E <= decision`.
    pub fn at_most(self, decision: bool) -> bool {
        u64::from(self.accepted_peers) <= u64::from(decision) * u64::from(self.peers)
    }
}

/// Maps an expectation and a node's own decision to a fair/unfair verdict.
pub type Judge = fn(Expectation, bool) -> bool;

/// The shipped verdict rule: fair iff `E[h(v)] <= h(v)`.
pub fn perceives_fair(expectation: Expectation, decision: bool) -> bool {
    expectation.at_most(decision)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerceptionRecord {
    pub node: NodeId,
    pub outcome: bool,
    pub decision: bool,
    /// Absent only for ineligible nodes under [`DegenerateRule::MarkIneligible`].
    pub expectation: Option<Expectation>,
    /// Absent exactly when `expectation` is absent.
    pub fair: Option<bool>,
    /// False when the node had no same-outcome neighbor.
    pub eligible: bool,
}

impl PerceptionRecord {
    fn build(
        node: NodeId,
        outcome: bool,
        decision: bool,
        counts: Expectation,
        rule: DegenerateRule,
        judge: Judge,
    ) -> Self {
        let eligible = !counts.is_degenerate();
        let expectation = match (eligible, rule) {
            (false, DegenerateRule::MarkIneligible) => None,
            _ => Some(counts),
        };
        PerceptionRecord {
            node,
            outcome,
            decision,
            expectation,
            fair: expectation.map(|e| judge(e, decision)),
            eligible,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerceptionTotals {
    pub fair: usize,
    pub unfair: usize,
    /// Nodes flagged ineligible, whichever rule handled them.
    pub ineligible: usize,
}

impl PerceptionTotals {
    pub fn of(records: &[PerceptionRecord]) -> Self {
        let mut totals = PerceptionTotals::default();
        for r in records {
            match r.fair {
                Some(true) => totals.fair += 1,
                Some(false) => totals.unfair += 1,
                None => {}
            }
            if !r.eligible {
                totals.ineligible += 1;
            }
        }
        totals
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerceptionReport {
    pub policy: ExpectationPolicy,
    pub records: Vec<PerceptionRecord>,
    pub totals: PerceptionTotals,
}

/// Same-outcome neighbor counts for `v` at radius `delta`.
pub fn peer_counts(
    net: &AttributedNetwork,
    h: &DecisionVector,
    v: NodeId,
    delta: u32,
) -> Result<Expectation, GraphError> {
    h.check_len(net)?;
    let yv = net.outcome(v);
    let mut counts = Expectation::default();
    for u in net.neighborhood(v, delta)? {
        if net.outcome(u) == yv {
            counts.peers += 1;
            counts.accepted_peers += u32::from(h.get(u));
        }
    }
    Ok(counts)
}

/// Neighborhood peer expectation; `None` when the node is ineligible under
/// [`DegenerateRule::MarkIneligible`].
pub fn peer_expectation(
    net: &AttributedNetwork,
    h: &DecisionVector,
    v: NodeId,
    policy: &ExpectationPolicy,
) -> Result<Option<Expectation>, GraphError> {
    let counts = peer_counts(net, h, v, policy.delta)?;
    Ok(match (counts.is_degenerate(), policy.degenerate) {
        (true, DegenerateRule::MarkIneligible) => None,
        _ => Some(counts),
    })
}

pub fn perception_record(
    net: &AttributedNetwork,
    h: &DecisionVector,
    v: NodeId,
    policy: &ExpectationPolicy,
    judge: Judge,
) -> Result<PerceptionRecord, GraphError> {
    let counts = peer_counts(net, h, v, policy.delta)?;
    Ok(PerceptionRecord::build(
        v,
        net.outcome(v),
        h.get(v),
        counts,
        policy.degenerate,
        judge,
    ))
}

/// `f(v, h)`; `None` when the node is ineligible under
/// [`DegenerateRule::MarkIneligible`].
pub fn fairness_perception(
    net: &AttributedNetwork,
    h: &DecisionVector,
    v: NodeId,
    policy: &ExpectationPolicy,
) -> Result<Option<bool>, GraphError> {
    Ok(perception_record(net, h, v, policy, perceives_fair)?.fair)
}

pub fn perceive_all(
    net: &AttributedNetwork,
    h: &DecisionVector,
    policy: &ExpectationPolicy,
) -> Result<PerceptionReport, GraphError> {
    perceive_all_with(net, h, policy, perceives_fair)
}

pub fn perceive_all_with(
    net: &AttributedNetwork,
    h: &DecisionVector,
    policy: &ExpectationPolicy,
    judge: Judge,
) -> Result<PerceptionReport, GraphError> {
    h.check_len(net)?;
    if policy.delta == 0 {
        return Err(GraphError::InvalidDelta);
    }
    let records = (0..net.node_count())
        .into_par_iter()
        .map(|i| perception_record(net, h, NodeId(i), policy, judge))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PerceptionReport {
        policy: *policy,
        totals: PerceptionTotals::of(&records),
        records,
    })
}

/// Perception records for every radius `1..=delta_max`; element `d - 1`
/// holds the records at radius `d`. One BFS per node, with per-distance
/// peer counts accumulated into prefix sums.
pub fn perceive_radii(
    net: &AttributedNetwork,
    h: &DecisionVector,
    delta_max: u32,
    rule: DegenerateRule,
) -> Result<Vec<Vec<PerceptionRecord>>, GraphError> {
    h.check_len(net)?;
    if delta_max == 0 {
        return Err(GraphError::InvalidDelta);
    }
    let layers = delta_max as usize;
    let per_node: Vec<Vec<PerceptionRecord>> = (0..net.node_count())
        .into_par_iter()
        .map(|i| {
            let v = NodeId(i);
            let yv = net.outcome(v);
            let mut by_distance = vec![Expectation::default(); layers];
            net.visit_within(v, Some(delta_max), |u, d| {
                if net.outcome(u) == yv {
                    let slot = &mut by_distance[d as usize - 1];
                    slot.peers += 1;
                    slot.accepted_peers += u32::from(h.get(u));
                }
            });
            let mut running = Expectation::default();
            by_distance
                .into_iter()
                .map(|layer| {
                    running.peers += layer.peers;
                    running.accepted_peers += layer.accepted_peers;
                    PerceptionRecord::build(v, yv, h.get(v), running, rule, perceives_fair)
                })
                .collect()
        })
        .collect();
    let mut out = vec![Vec::with_capacity(net.node_count()); layers];
    for node_records in per_node {
        for (d, r) in node_records.into_iter().enumerate() {
            out[d].push(r);
        }
    }
    Ok(out)
}

/// Writes `node_id,y,h,expectation,fair,eligible,accepted_peers,peers` rows.
/// Absent values are written as empty fields.
pub fn write_records<W: Write>(records: &[PerceptionRecord], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "node_id",
        "y",
        "h",
        "expectation",
        "fair",
        "eligible",
        "accepted_peers",
        "peers",
    ])?;
    for r in records {
        let bit = |b: bool| if b { "1" } else { "0" }.to_string();
        let (value, accepted, peers) = match r.expectation {
            Some(e) => (
                e.value().to_string(),
                e.accepted_peers.to_string(),
                e.peers.to_string(),
            ),
            None => (String::new(), String::new(), String::new()),
        };
        w.write_record([
            r.node.to_string(),
            bit(r.outcome),
            bit(r.decision),
            value,
            r.fair.map(bit).unwrap_or_default(),
            bit(r.eligible),
            accepted,
            peers,
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::NodeLabel;

    /// Star with `v = 0` at the center and leaves labelled `(y, h)`.
    fn star(center: (bool, bool), leaves: &[(bool, bool)]) -> (AttributedNetwork, DecisionVector) {
        let mut labels = vec![NodeLabel::new(0, center.0)];
        let mut h = vec![center.1];
        let mut edges = Vec::new();
        for (i, &(y, d)) in leaves.iter().enumerate() {
            labels.push(NodeLabel::new(0, y));
            h.push(d);
            edges.push((0, i + 1));
        }
        (
            AttributedNetwork::new(labels, &edges).unwrap(),
            DecisionVector::new(h),
        )
    }

    #[test]
    fn expectation_over_same_outcome_neighbors() {
        let (net, h) = star(
            (false, false),
            &[(false, true), (false, false), (false, false), (true, true)],
        );
        let e = peer_expectation(&net, &h, NodeId(0), &ExpectationPolicy::default())
            .unwrap()
            .unwrap();
        assert_eq!(e, Expectation::new(1, 3));
        assert!((e.value() - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn degenerate_zero_rule() {
        let (net, h) = star((true, false), &[(false, true), (false, true)]);
        let policy = ExpectationPolicy::default();
        let e = peer_expectation(&net, &h, NodeId(0), &policy)
            .unwrap()
            .unwrap();
        assert!(e.is_degenerate());
        assert_eq!(e.value(), 0.0);
        let r = perception_record(&net, &h, NodeId(0), &policy, perceives_fair).unwrap();
        assert_eq!(r.fair, Some(true));
        assert!(!r.eligible);
    }

    #[test]
    fn degenerate_exclude_rule() {
        let (net, h) = star((true, false), &[(false, true)]);
        let policy = ExpectationPolicy::new(1, DegenerateRule::MarkIneligible);
        assert_eq!(
            peer_expectation(&net, &h, NodeId(0), &policy).unwrap(),
            None
        );
        assert_eq!(
            fairness_perception(&net, &h, NodeId(0), &policy).unwrap(),
            None
        );
    }

    #[test]
    fn accepted_nodes_always_perceive_fair() {
        let (net, h) = star((false, true), &[(false, true), (false, true)]);
        assert_eq!(
            fairness_perception(&net, &h, NodeId(0), &ExpectationPolicy::default()).unwrap(),
            Some(true)
        );
    }

    #[test]
    fn rejected_node_with_accepted_peer_is_unfair() {
        let (net, h) = star((false, false), &[(false, true)]);
        let policy = ExpectationPolicy::default();
        assert_eq!(
            peer_expectation(&net, &h, NodeId(0), &policy).unwrap(),
            Some(Expectation::new(1, 1))
        );
        assert_eq!(
            fairness_perception(&net, &h, NodeId(0), &policy).unwrap(),
            Some(false)
        );
    }

    #[test]
    fn rejected_node_with_rejected_peers_is_fair() {
        let (net, h) = star(
            (true, false),
            &[(true, false), (true, false), (false, true)],
        );
        assert_eq!(
            fairness_perception(&net, &h, NodeId(0), &ExpectationPolicy::default()).unwrap(),
            Some(true)
        );
    }

    #[test]
    fn all_reject_and_all_accept_are_fair_everywhere() {
        let (net, _) = star(
            (true, false),
            &[(true, false), (false, false), (true, true)],
        );
        for value in [false, true] {
            let h = DecisionVector::constant(net.node_count(), value);
            let report = perceive_all(&net, &h, &ExpectationPolicy::default()).unwrap();
            assert!(report.records.iter().all(|r| r.fair == Some(true)));
            if !value {
                assert!(report
                    .records
                    .iter()
                    .all(|r| r.expectation.unwrap().value() == 0.0));
            }
        }
    }

    #[test]
    fn totals_count_ineligible() {
        let (net, h) = star((true, false), &[(false, true), (false, false)]);
        let exclude = ExpectationPolicy::new(1, DegenerateRule::MarkIneligible);
        let report = perceive_all(&net, &h, &exclude).unwrap();
        // center has no y=1 peer; each leaf sees only the center (y=1)
        assert_eq!(
            report.totals,
            PerceptionTotals {
                fair: 0,
                unfair: 0,
                ineligible: 3
            }
        );
    }

    #[test]
    fn zero_delta_rejected() {
        let (net, h) = star((true, false), &[(true, true)]);
        assert_eq!(
            perceive_all(&net, &h, &ExpectationPolicy::with_delta(0)),
            Err(GraphError::InvalidDelta)
        );
        assert_eq!(
            perceive_radii(&net, &h, 0, DegenerateRule::ZeroExpectation),
            Err(GraphError::InvalidDelta)
        );
    }

    #[test]
    fn report_columns() {
        let (net, h) = star((false, false), &[(false, true)]);
        let report = perceive_all(&net, &h, &ExpectationPolicy::default()).unwrap();
        let mut buf = Vec::new();
        write_records(&report.records, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(
            lines[0],
            "node_id,y,h,expectation,fair,eligible,accepted_peers,peers"
        );
        assert_eq!(lines[1], "0,0,0,1,0,1,1,1");
        assert_eq!(lines[2], "1,0,1,0,1,1,0,1");
    }
}
