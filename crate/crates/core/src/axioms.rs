//! Executable checks of the fairness-perception axioms and of the
//! properties the expectation must satisfy, plus the decision-respecting
//! ego-network isomorphism that homogeneity is stated in terms of.
//!
//! Each check takes a pair of decision vectors (or a pair of nodes) and
//! returns [`TrialOutcome::Skipped`] when its precondition does not hold.
//! [`run_axiom_suite`] builds inputs that satisfy the preconditions by
//! construction and tallies verdicts.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{AttributedNetwork, DecisionVector, EgoNet, GraphError, NodeId, NodeLabel};
use crate::perception::{
    peer_counts, perceives_fair, perception_record, DegenerateRule, Expectation, ExpectationPolicy,
    Judge,
};
use crate::synth::{random_attributed_graph, SynthConfig, SynthError};

#[derive(Debug, Error)]
pub enum AxiomError {
    #[error("attribute arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("trial count must be at least 1")]
    NoTrials,
    #[error("invalid suite config: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Synth(#[from] SynthError),
}

/// Finds a bijection between two ego networks that maps center to center,
/// preserves `(X_p, X_u, y, h)` on every member and preserves adjacency in
/// both directions. Returns the mapping as `m[i] = j` over local positions.
pub fn decision_isomorphism(g1: &EgoNet, g2: &EgoNet) -> Result<Option<Vec<usize>>, AxiomError> {
    let arity = |g: &EgoNet| (0..g.len()).map(|i| g.label(i).attributes.len()).max();
    let all_arities = |g: &EgoNet| {
        let first = g.label(0).attributes.len();
        (0..g.len()).all(|i| g.label(i).attributes.len() == first)
    };
    if let (Some(a), Some(b)) = (arity(g1), arity(g2)) {
        if a != b || !all_arities(g1) || !all_arities(g2) {
            return Err(AxiomError::ArityMismatch { left: a, right: b });
        }
    }
    if g1.len() != g2.len() || g1.edge_count() != g2.edge_count() {
        return Ok(None);
    }
    let n = g1.len();
    let degree = |g: &EgoNet, i: usize| g.local_neighbors(i).len();
    let compatible =
        |i: usize, j: usize| g1.label(i) == g2.label(j) && degree(g1, i) == degree(g2, j);

    let (c1, c2) = (g1.center_position(), g2.center_position());
    if !compatible(c1, c2) {
        return Ok(None);
    }
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            if i == c1 {
                vec![c2]
            } else {
                (0..n).filter(|&j| j != c2 && compatible(i, j)).collect()
            }
        })
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return Ok(None);
    }

    // BFS order from the center keeps every placed node adjacent to an
    // already placed one, which prunes early.
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([c1]);
    seen[c1] = true;
    while let Some(i) = queue.pop_front() {
        order.push(i);
        for &j in g1.local_neighbors(i) {
            if !seen[j] {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    order.extend((0..n).filter(|&i| !seen[i]));

    let mut mapping = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        depth: usize,
        order: &[usize],
        candidates: &[Vec<usize>],
        g1: &EgoNet,
        g2: &EgoNet,
        mapping: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let Some(&i) = order.get(depth) else {
            return true;
        };
        for &j in &candidates[i] {
            if used[j] {
                continue;
            }
            let consistent = order[..depth]
                .iter()
                .all(|&k| g1.has_local_edge(i, k) == g2.has_local_edge(j, mapping[k]));
            if !consistent {
                continue;
            }
            mapping[i] = j;
            used[j] = true;
            if extend(depth + 1, order, candidates, g1, g2, mapping, used) {
                return true;
            }
            used[j] = false;
            mapping[i] = usize::MAX;
        }
        false
    }
    Ok(extend(0, &order, &candidates, g1, g2, &mut mapping, &mut used).then_some(mapping))
}

pub fn decision_isomorphic(g1: &EgoNet, g2: &EgoNet) -> Result<bool, AxiomError> {
    Ok(decision_isomorphism(g1, g2)?.is_some())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Locality,
    Monotonicity,
    NeighborhoodExpectation,
    Homogeneity,
    /// Expectation depends only on decisions inside `N(v)`.
    ExpectationLocality,
    /// Raising decisions inside `N(v)` never lowers the expectation.
    ExpectationMonotonicity,
    /// Isomorphic ego networks have equal expectations.
    ExpectationHomogeneity,
    /// Under the all-reject decision every node perceives fair.
    ZeroDecisionBaseline,
}

impl Axiom {
    pub const ALL: [Axiom; 8] = [
        Axiom::Locality,
        Axiom::Monotonicity,
        Axiom::NeighborhoodExpectation,
        Axiom::Homogeneity,
        Axiom::ExpectationLocality,
        Axiom::ExpectationMonotonicity,
        Axiom::ExpectationHomogeneity,
        Axiom::ZeroDecisionBaseline,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Locality => "locality",
            Axiom::Monotonicity => "monotonicity",
            Axiom::NeighborhoodExpectation => "neighborhood_expectation",
            Axiom::Homogeneity => "homogeneity",
            Axiom::ExpectationLocality => "expectation_prop_1",
            Axiom::ExpectationMonotonicity => "expectation_prop_2",
            Axiom::ExpectationHomogeneity => "expectation_prop_3",
            Axiom::ZeroDecisionBaseline => "zero_decision_baseline",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrialOutcome {
    Skipped,
    Held,
    Violated,
}

impl TrialOutcome {
    fn from_holds(holds: bool) -> Self {
        if holds {
            TrialOutcome::Held
        } else {
            TrialOutcome::Violated
        }
    }
}

/// Perception and expectation evaluated with a pluggable verdict rule.
#[derive(Debug, Clone, Copy)]
pub struct Checker {
    pub policy: ExpectationPolicy,
    pub judge: Judge,
}

impl Checker {
    pub fn new(policy: ExpectationPolicy) -> Self {
        Checker {
            policy,
            judge: perceives_fair,
        }
    }

    fn perceive(
        &self,
        net: &AttributedNetwork,
        h: &DecisionVector,
        v: NodeId,
    ) -> Result<Option<bool>, GraphError> {
        Ok(perception_record(net, h, v, &self.policy, self.judge)?.fair)
    }

    fn expectation(
        &self,
        net: &AttributedNetwork,
        h: &DecisionVector,
        v: NodeId,
    ) -> Result<Option<Expectation>, GraphError> {
        let counts = peer_counts(net, h, v, self.policy.delta)?;
        Ok(match (counts.is_degenerate(), self.policy.degenerate) {
            (true, DegenerateRule::MarkIneligible) => None,
            _ => Some(counts),
        })
    }

    fn closed_neighborhood(
        &self,
        net: &AttributedNetwork,
        v: NodeId,
    ) -> Result<Vec<NodeId>, GraphError> {
        let mut set = net.neighborhood(v, self.policy.delta)?;
        set.push(v);
        Ok(set)
    }

    pub fn locality(
        &self,
        net: &AttributedNetwork,
        v: NodeId,
        h: &DecisionVector,
        h2: &DecisionVector,
    ) -> Result<TrialOutcome, GraphError> {
        h2.check_len(net)?;
        if self
            .closed_neighborhood(net, v)?
            .iter()
            .any(|&u| h.get(u) != h2.get(u))
        {
            return Ok(TrialOutcome::Skipped);
        }
        Ok(TrialOutcome::from_holds(
            self.perceive(net, h, v)? == self.perceive(net, h2, v)?,
        ))
    }

    pub fn monotonicity(
        &self,
        net: &AttributedNetwork,
        v: NodeId,
        h: &DecisionVector,
        h2: &DecisionVector,
    ) -> Result<TrialOutcome, GraphError> {
        h2.check_len(net)?;
        let agree = net
            .neighborhood(v, self.policy.delta)?
            .iter()
            .all(|&u| h.get(u) == h2.get(u));
        if !(agree && !h.get(v) && h2.get(v)) {
            return Ok(TrialOutcome::Skipped);
        }
        Ok(
            match (self.perceive(net, h, v)?, self.perceive(net, h2, v)?) {
                (Some(a), Some(b)) => TrialOutcome::from_holds(a <= b),
                _ => TrialOutcome::Skipped,
            },
        )
    }

    pub fn neighborhood_expectation(
        &self,
        net: &AttributedNetwork,
        v: NodeId,
        h: &DecisionVector,
        h2: &DecisionVector,
    ) -> Result<TrialOutcome, GraphError> {
        h2.check_len(net)?;
        let dominated = net
            .neighborhood(v, self.policy.delta)?
            .iter()
            .all(|&u| h.get(u) <= h2.get(u));
        if !(dominated && h.get(v) == h2.get(v)) {
            return Ok(TrialOutcome::Skipped);
        }
        Ok(
            match (self.perceive(net, h, v)?, self.perceive(net, h2, v)?) {
                (Some(a), Some(b)) => TrialOutcome::from_holds(a >= b),
                _ => TrialOutcome::Skipped,
            },
        )
    }

    pub fn homogeneity(
        &self,
        net: &AttributedNetwork,
        u: NodeId,
        v: NodeId,
        h: &DecisionVector,
    ) -> Result<TrialOutcome, AxiomError> {
        let delta = self.policy.delta;
        if !decision_isomorphic(
            &net.ego_network(h, u, delta)?,
            &net.ego_network(h, v, delta)?,
        )? {
            return Ok(TrialOutcome::Skipped);
        }
        let same_perception = self.perceive(net, h, u)? == self.perceive(net, h, v)?;
        let same_expectation =
            equal_expectations(self.expectation(net, h, u)?, self.expectation(net, h, v)?);
        Ok(TrialOutcome::from_holds(
            same_perception && same_expectation,
        ))
    }

    pub fn expectation_locality(
        &self,
        net: &AttributedNetwork,
        v: NodeId,
        h: &DecisionVector,
        h2: &DecisionVector,
    ) -> Result<TrialOutcome, GraphError> {
        h2.check_len(net)?;
        let agree = net
            .neighborhood(v, self.policy.delta)?
            .iter()
            .all(|&u| h.get(u) == h2.get(u));
        if !agree {
            return Ok(TrialOutcome::Skipped);
        }
        Ok(TrialOutcome::from_holds(equal_expectations(
            self.expectation(net, h, v)?,
            self.expectation(net, h2, v)?,
        )))
    }

    pub fn expectation_monotonicity(
        &self,
        net: &AttributedNetwork,
        v: NodeId,
        h: &DecisionVector,
        h2: &DecisionVector,
    ) -> Result<TrialOutcome, GraphError> {
        h2.check_len(net)?;
        let dominated = net
            .neighborhood(v, self.policy.delta)?
            .iter()
            .all(|&u| h.get(u) <= h2.get(u));
        if !dominated {
            return Ok(TrialOutcome::Skipped);
        }
        Ok(
            match (self.expectation(net, h, v)?, self.expectation(net, h2, v)?) {
                (Some(a), Some(b)) => TrialOutcome::from_holds(a.cmp_value(b) != Ordering::Greater),
                (None, None) => TrialOutcome::Held,
                _ => TrialOutcome::Violated,
            },
        )
    }

    pub fn expectation_homogeneity(
        &self,
        net: &AttributedNetwork,
        u: NodeId,
        v: NodeId,
        h: &DecisionVector,
    ) -> Result<TrialOutcome, AxiomError> {
        let delta = self.policy.delta;
        if !decision_isomorphic(
            &net.ego_network(h, u, delta)?,
            &net.ego_network(h, v, delta)?,
        )? {
            return Ok(TrialOutcome::Skipped);
        }
        Ok(TrialOutcome::from_holds(equal_expectations(
            self.expectation(net, h, u)?,
            self.expectation(net, h, v)?,
        )))
    }

    /// Every node perceives fair when nobody is accepted.
    pub fn zero_decision_baseline(
        &self,
        net: &AttributedNetwork,
    ) -> Result<TrialOutcome, GraphError> {
        let h = DecisionVector::constant(net.node_count(), false);
        for v in net.nodes() {
            if self.perceive(net, &h, v)? == Some(false) {
                return Ok(TrialOutcome::Violated);
            }
        }
        Ok(TrialOutcome::Held)
    }
}

fn equal_expectations(a: Option<Expectation>, b: Option<Expectation>) -> bool {
    match (a, b) {
        (Some(a), Some(b)) => a.cmp_value(b) == Ordering::Equal,
        (None, None) => true,
        _ => false,
    }
}

pub fn check_locality(
    net: &AttributedNetwork,
    v: NodeId,
    h: &DecisionVector,
    h2: &DecisionVector,
    policy: &ExpectationPolicy,
) -> Result<TrialOutcome, GraphError> {
    Checker::new(*policy).locality(net, v, h, h2)
}

pub fn check_monotonicity(
    net: &AttributedNetwork,
    v: NodeId,
    h: &DecisionVector,
    h2: &DecisionVector,
    policy: &ExpectationPolicy,
) -> Result<TrialOutcome, GraphError> {
    Checker::new(*policy).monotonicity(net, v, h, h2)
}

pub fn check_neighborhood_expectation(
    net: &AttributedNetwork,
    v: NodeId,
    h: &DecisionVector,
    h2: &DecisionVector,
    policy: &ExpectationPolicy,
) -> Result<TrialOutcome, GraphError> {
    Checker::new(*policy).neighborhood_expectation(net, v, h, h2)
}

pub fn check_homogeneity(
    net: &AttributedNetwork,
    u: NodeId,
    v: NodeId,
    h: &DecisionVector,
    policy: &ExpectationPolicy,
) -> Result<TrialOutcome, AxiomError> {
    Checker::new(*policy).homogeneity(net, u, v, h)
}

/// Random-network parameters for [`run_axiom_suite`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub min_nodes: usize,
    pub max_nodes: usize,
    pub min_edge_probability: f64,
    pub max_edge_probability: f64,
    pub max_delta: u32,
    pub degenerate: DegenerateRule,
    pub attribute_count: usize,
    pub attribute_levels: u32,
    /// Satisfied trials each axiom needs to pass; defaults to all trials.
    pub min_satisfied: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            min_nodes: 4,
            max_nodes: 30,
            min_edge_probability: 0.05,
            max_edge_probability: 0.4,
            max_delta: 3,
            degenerate: DegenerateRule::ZeroExpectation,
            attribute_count: 1,
            attribute_levels: 2,
            min_satisfied: None,
        }
    }
}

impl SuiteConfig {
    pub fn from_toml_str(text: &str) -> Result<Self, AxiomError> {
        let config: SuiteConfig =
            toml::from_str(text).map_err(|e| AxiomError::InvalidConfig(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), AxiomError> {
        let bad = |m: &str| Err(AxiomError::InvalidConfig(m.into()));
        if self.min_nodes < 2 || self.min_nodes > self.max_nodes {
            return bad("need 2 <= min_nodes <= max_nodes");
        }
        if self.max_nodes < 4 {
            return bad("max_nodes must be at least 4 for twin constructions");
        }
        if !(0.0..=1.0).contains(&self.min_edge_probability)
            || !(0.0..=1.0).contains(&self.max_edge_probability)
            || self.min_edge_probability > self.max_edge_probability
        {
            return bad("edge probabilities must satisfy 0 <= min <= max <= 1");
        }
        if self.max_delta == 0 {
            return bad("max_delta must be at least 1");
        }
        Ok(())
    }
}

/// A counterexample: enough to regenerate the network and both inputs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub network_seed: u64,
    pub delta: u32,
    pub node: NodeId,
    pub other_node: Option<NodeId>,
    pub h: String,
    pub h_prime: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomVerdict {
    pub axiom: Axiom,
    pub trials: usize,
    pub satisfied: usize,
    pub skipped: usize,
    pub required: usize,
    pub violations: Vec<Witness>,
}

impl AxiomVerdict {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.satisfied >= self.required
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub trials: usize,
    pub config: SuiteConfig,
    pub verdicts: Vec<AxiomVerdict>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(AxiomVerdict::passed)
    }

    pub fn verdict(&self, axiom: Axiom) -> Option<&AxiomVerdict> {
        self.verdicts.iter().find(|v| v.axiom == axiom)
    }

    /// One line per axiom: `axiom trials satisfied skipped violations verdict`.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{:<26} {:>7} {:>9} {:>7} {:>10}  verdict\n",
            "axiom", "trials", "satisfied", "skipped", "violations"
        );
        for v in &self.verdicts {
            out.push_str(&format!(
                "{:<26} {:>7} {:>9} {:>7} {:>10}  {}\n",
                v.axiom.name(),
                v.trials,
                v.satisfied,
                v.skipped,
                v.violations.len(),
                if v.passed() { "pass" } else { "FAIL" }
            ));
            for w in v.violations.iter().take(3) {
                out.push_str(&format!("    witness: {w:?}\n"));
            }
        }
        out
    }
}

fn trial_seed(seed: u64, axiom: Axiom, trial: usize) -> u64 {
    // splitmix64 over the combined key
    let mut z = seed
        ^ (axiom as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ (trial as u64).wrapping_mul(0xD1B5_4A32_D192_ED03);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn random_network(
    config: &SuiteConfig,
    rng: &mut ChaCha8Rng,
    max_nodes: usize,
) -> Result<AttributedNetwork, SynthError> {
    let max_nodes = max_nodes.max(config.min_nodes.min(max_nodes)).max(2);
    let n = rng.gen_range(config.min_nodes.min(max_nodes)..=max_nodes);
    let g0 = rng.gen_range(1..n);
    let p = rng.gen_range(config.min_edge_probability..=config.max_edge_probability);
    let synth = SynthConfig {
        group_sizes: vec![g0, n - g0],
        intra_probability: p,
        inter_probability: p * rng.gen_range(0.2..=1.0),
        degree_skew: 1.0,
        outcome_rate: rng.gen_range(0.2..=0.8),
        rates: Vec::new(),
        attribute_count: config.attribute_count,
        attribute_levels: config.attribute_levels.max(1),
        connect: false,
        seed: rng.gen(),
    };
    random_attributed_graph(&synth)
}

fn random_decisions(n: usize, rng: &mut ChaCha8Rng) -> DecisionVector {
    let q: f64 = rng.gen();
    DecisionVector::new((0..n).map(|_| rng.gen_bool(q)).collect())
}

/// Flips each node outside `keep` with probability 1/2.
fn perturb_outside(h: &DecisionVector, keep: &[NodeId], rng: &mut ChaCha8Rng) -> DecisionVector {
    let mut out = h.clone();
    for v in 0..h.len() {
        let v = NodeId(v);
        if !keep.contains(&v) && rng.gen_bool(0.5) {
            out.set(v, !h.get(v));
        }
    }
    out
}

/// Disjoint union of a network with a relabelled copy of itself; returns
/// the union and the node permutation of the copy.
fn twin(
    net: &AttributedNetwork,
    rng: &mut ChaCha8Rng,
) -> Result<(AttributedNetwork, Vec<usize>), GraphError> {
    let n = net.node_count();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    // copy of node i lives at n + perm[i]
    let mut labels: Vec<NodeLabel> = net.labels().to_vec();
    let mut copy = vec![None; n];
    for (i, &p) in perm.iter().enumerate() {
        copy[p] = Some(net.labels()[i].clone());
    }
    labels.extend(copy.into_iter().map(|l| l.expect("permutation")));
    let mut edges: Vec<(usize, usize)> = net.edges().map(|(a, b)| (a.0, b.0)).collect();
    edges.extend(net.edges().map(|(a, b)| (n + perm[a.0], n + perm[b.0])));
    let names = net.attribute_names().to_vec();
    Ok((
        AttributedNetwork::with_attribute_names(labels, &edges, names)?,
        perm,
    ))
}

fn run_trial(
    axiom: Axiom,
    config: &SuiteConfig,
    network_seed: u64,
    judge: Judge,
) -> Result<(TrialOutcome, Option<Witness>), AxiomError> {
    let mut rng = ChaCha8Rng::seed_from_u64(network_seed);
    let delta = rng.gen_range(1..=config.max_delta);
    let checker = Checker {
        policy: ExpectationPolicy::new(delta, config.degenerate),
        judge,
    };
    let twin_based = matches!(axiom, Axiom::Homogeneity | Axiom::ExpectationHomogeneity);
    let base_max = if twin_based {
        config.max_nodes / 2
    } else {
        config.max_nodes
    };
    let net = &random_network(config, &mut rng, base_max)?;
    let rng = &mut rng;
    let n = net.node_count();
    let witness = |node: NodeId,
                   other: Option<NodeId>,
                   h: &DecisionVector,
                   h2: Option<&DecisionVector>| Witness {
        network_seed,
        delta,
        node,
        other_node: other,
        h: h.to_string(),
        h_prime: h2.map(ToString::to_string),
    };

    if axiom == Axiom::ZeroDecisionBaseline {
        let outcome = checker.zero_decision_baseline(net)?;
        let zero = DecisionVector::constant(n, false);
        return Ok((
            outcome,
            (outcome == TrialOutcome::Violated).then(|| witness(NodeId(0), None, &zero, None)),
        ));
    }

    if twin_based {
        let (union, perm) = twin(net, rng)?;
        let v = NodeId(rng.gen_range(0..n));
        let mirror = NodeId(n + perm[v.0]);
        let mut h = random_decisions(n, rng);
        let mut full = h.as_slice().to_vec();
        let mut copy = vec![false; n];
        for i in 0..n {
            copy[perm[i]] = h.get(NodeId(i));
        }
        full.extend(copy);
        h = DecisionVector::new(full);
        // decisions away from both ego networks are irrelevant; scramble them
        let mut keep = checker.closed_neighborhood(&union, v)?;
        keep.extend(checker.closed_neighborhood(&union, mirror)?);
        let h = perturb_outside(&h, &keep, rng);
        let outcome = if axiom == Axiom::Homogeneity {
            checker.homogeneity(&union, v, mirror, &h)?
        } else {
            checker.expectation_homogeneity(&union, v, mirror, &h)?
        };
        return Ok((
            outcome,
            (outcome == TrialOutcome::Violated).then(|| witness(v, Some(mirror), &h, None)),
        ));
    }

    let v = NodeId(rng.gen_range(0..n));
    let mut h = random_decisions(n, rng);
    let nbhd = net.neighborhood(v, delta)?;
    let mut closed = nbhd.clone();
    closed.push(v);
    let (outcome, h2) = match axiom {
        Axiom::Locality => {
            let h2 = perturb_outside(&h, &closed, rng);
            (checker.locality(net, v, &h, &h2)?, h2)
        }
        Axiom::Monotonicity => {
            h.set(v, false);
            let mut h2 = perturb_outside(&h, &closed, rng);
            h2.set(v, true);
            (checker.monotonicity(net, v, &h, &h2)?, h2)
        }
        Axiom::NeighborhoodExpectation | Axiom::ExpectationMonotonicity => {
            let mut h2 = perturb_outside(&h, &closed, rng);
            for &u in &nbhd {
                if !h.get(u) && rng.gen_bool(0.5) {
                    h2.set(u, true);
                }
            }
            let outcome = if axiom == Axiom::NeighborhoodExpectation {
                checker.neighborhood_expectation(net, v, &h, &h2)?
            } else {
                checker.expectation_monotonicity(net, v, &h, &h2)?
            };
            (outcome, h2)
        }
        Axiom::ExpectationLocality => {
            let mut h2 = perturb_outside(&h, &closed, rng);
            if rng.gen_bool(0.5) {
                h2.set(v, !h.get(v));
            }
            (checker.expectation_locality(net, v, &h, &h2)?, h2)
        }
        Axiom::Homogeneity | Axiom::ExpectationHomogeneity | Axiom::ZeroDecisionBaseline => {
            unreachable!("handled above")
        }
    };
    Ok((
        outcome,
        (outcome == TrialOutcome::Violated).then(|| witness(v, None, &h, Some(&h2))),
    ))
}

/// Runs `trials` constructed trials for each axiom with the shipped
/// perception rule. Deterministic for a given seed.
pub fn run_axiom_suite(
    config: &SuiteConfig,
    trials: usize,
    seed: u64,
) -> Result<SuiteReport, AxiomError> {
    run_axiom_suite_with(config, trials, seed, perceives_fair)
}

/// As [`run_axiom_suite`], evaluating perception with `judge`.
pub fn run_axiom_suite_with(
    config: &SuiteConfig,
    trials: usize,
    seed: u64,
    judge: Judge,
) -> Result<SuiteReport, AxiomError> {
    if trials == 0 {
        return Err(AxiomError::NoTrials);
    }
    config.validate()?;
    let required = config.min_satisfied.unwrap_or(trials);
    let verdicts = Axiom::ALL
        .iter()
        .map(|&axiom| {
            let outcomes = (0..trials)
                .into_par_iter()
                .map(|t| run_trial(axiom, config, trial_seed(seed, axiom, t), judge))
                .collect::<Result<Vec<_>, AxiomError>>()?;
            let mut verdict = AxiomVerdict {
                axiom,
                trials,
                satisfied: 0,
                skipped: 0,
                required,
                violations: Vec::new(),
            };
            for (outcome, witness) in outcomes {
                match outcome {
                    TrialOutcome::Skipped => verdict.skipped += 1,
                    TrialOutcome::Held => verdict.satisfied += 1,
                    TrialOutcome::Violated => {
                        verdict.satisfied += 1;
                        verdict.violations.extend(witness);
                    }
                }
            }
            Ok(verdict)
        })
        .collect::<Result<Vec<_>, AxiomError>>()?;
    Ok(SuiteReport {
        seed,
        trials,
        config: config.clone(),
        verdicts,
    })
}
