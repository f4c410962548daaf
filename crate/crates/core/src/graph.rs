//! Attributed network model, δ-neighborhoods, ego networks and connectivity.
//!
//! Nodes live in a dense id space `0..node_count`. Adjacency is stored as
//! sorted neighbor lists; the network is immutable once built.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest network the matrix-power oracle accepts.
pub const MATRIX_ORACLE_MAX_NODES: usize = 200;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("node {node} is out of range for a network of {node_count} nodes")]
    InvalidNode { node: usize, node_count: usize },
    #[error("self-loop on node {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("node {node} has {found} attributes, expected {expected}")]
    AttributeArity {
        node: usize,
        expected: usize,
        found: usize,
    },
    #[error("node {node} has a non-finite attribute value")]
    NonFiniteAttribute { node: usize },
    #[error("neighborhood radius must be at least 1")]
    InvalidDelta,
    #[error("decision vector has {found} entries, network has {expected} nodes")]
    DecisionLength { expected: usize, found: usize },
    #[error("matrix oracle limited to {max} nodes, network has {nodes}")]
    Capacity { nodes: usize, max: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub usize);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Protected-attribute value `X_p` of a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Group(pub u32);

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Per-node labels carried by the network.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeLabel {
    pub protected: Group,
    pub outcome: bool,
    #[serde(default)]
    pub attributes: Vec<f64>,
}

impl NodeLabel {
    pub fn new(protected: u32, outcome: bool) -> Self {
        NodeLabel {
            protected: Group(protected),
            outcome,
            attributes: Vec::new(),
        }
    }
}

/// Undirected attributed network `G = <V, E, X>` with binary target outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct AttributedNetwork {
    adjacency: Vec<Vec<NodeId>>,
    edge_count: usize,
    labels: Vec<NodeLabel>,
    attribute_names: Vec<String>,
}

impl AttributedNetwork {
    /// Builds a network. Self-loops, duplicate edges (in either orientation),
    /// out-of-range endpoints and ragged attribute vectors are rejected.
    pub fn new(labels: Vec<NodeLabel>, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let arity = labels.first().map_or(0, |l| l.attributes.len());
        let names = (0..arity).map(|i| format!("x{i}")).collect();
        Self::with_attribute_names(labels, edges, names)
    }

    pub fn with_attribute_names(
        labels: Vec<NodeLabel>,
        edges: &[(usize, usize)],
        attribute_names: Vec<String>,
    ) -> Result<Self, GraphError> {
        let n = labels.len();
        for (node, label) in labels.iter().enumerate() {
            if label.attributes.len() != attribute_names.len() {
                return Err(GraphError::AttributeArity {
                    node,
                    expected: attribute_names.len(),
                    found: label.attributes.len(),
                });
            }
            if label.attributes.iter().any(|x| !x.is_finite()) {
                return Err(GraphError::NonFiniteAttribute { node });
            }
        }
        let mut adjacency = vec![Vec::new(); n];
        let mut seen = HashSet::with_capacity(edges.len());
        for &(a, b) in edges {
            for node in [a, b] {
                if node >= n {
                    return Err(GraphError::InvalidNode {
                        node,
                        node_count: n,
                    });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(GraphError::DuplicateEdge(a, b));
            }
            adjacency[a].push(NodeId(b));
            adjacency[b].push(NodeId(a));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(AttributedNetwork {
            adjacency,
            edge_count: seen.len(),
            labels,
            attribute_names,
        })
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = NodeId> + Clone {
        (0..self.node_count()).map(NodeId)
    }

    /// Edges as `(a, b)` with `a < b`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(a, list)| {
            list.iter()
                .filter(move |b| b.0 > a)
                .map(move |&b| (NodeId(a), b))
        })
    }

    pub fn check_node(&self, v: NodeId) -> Result<(), GraphError> {
        if v.0 < self.node_count() {
            Ok(())
        } else {
            Err(GraphError::InvalidNode {
                node: v.0,
                node_count: self.node_count(),
            })
        }
    }

    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.adjacency[v.0]
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adjacency[v.0].len()
    }

    pub fn has_edge(&self, a: NodeId, b: NodeId) -> bool {
        self.adjacency[a.0].binary_search(&b).is_ok()
    }

    pub fn label(&self, v: NodeId) -> &NodeLabel {
        &self.labels[v.0]
    }

    pub fn labels(&self) -> &[NodeLabel] {
        &self.labels
    }

    pub fn protected(&self, v: NodeId) -> Group {
        self.labels[v.0].protected
    }

    pub fn outcome(&self, v: NodeId) -> bool {
        self.labels[v.0].outcome
    }

    pub fn attribute_names(&self) -> &[String] {
        &self.attribute_names
    }

    /// Visits every node at shortest-path distance `1..=max_depth` from `v`
    /// (all reachable nodes when `max_depth` is `None`), in BFS order.
    pub fn visit_within(
        &self,
        v: NodeId,
        max_depth: Option<u32>,
        mut visit: impl FnMut(NodeId, u32),
    ) {
        let mut dist = vec![u32::MAX; self.node_count()];
        let mut queue = VecDeque::new();
        dist[v.0] = 0;
        queue.push_back(v);
        while let Some(u) = queue.pop_front() {
            let d = dist[u.0];
            if max_depth.is_some_and(|m| d >= m) {
                continue;
            }
            for &w in &self.adjacency[u.0] {
                if dist[w.0] == u32::MAX {
                    dist[w.0] = d + 1;
                    visit(w, d + 1);
                    queue.push_back(w);
                }
            }
        }
    }

    /// δ-neighborhood: nodes other than `v` within distance `delta`, sorted.
    pub fn neighborhood(&self, v: NodeId, delta: u32) -> Result<Vec<NodeId>, GraphError> {
        self.check_node(v)?;
        if delta == 0 {
            return Err(GraphError::InvalidDelta);
        }
        let mut out = Vec::new();
        self.visit_within(v, Some(delta), |u, _| out.push(u));
        out.sort_unstable();
        Ok(out)
    }

    /// Same set as [`neighborhood`](Self::neighborhood), computed from boolean
    /// powers of the adjacency matrix: `u` is included iff `A^k[v][u] > 0` for
    /// some `1 <= k <= delta`, with `v` removed afterwards.
    pub fn neighborhood_by_matrix_power(
        &self,
        v: NodeId,
        delta: u32,
    ) -> Result<Vec<NodeId>, GraphError> {
        self.check_node(v)?;
        if delta == 0 {
            return Err(GraphError::InvalidDelta);
        }
        let n = self.node_count();
        if n > MATRIX_ORACLE_MAX_NODES {
            return Err(GraphError::Capacity {
                nodes: n,
                max: MATRIX_ORACLE_MAX_NODES,
            });
        }
        let adjacency = BitMatrix::adjacency(self);
        let mut power = adjacency.clone();
        let mut reach = adjacency.clone();
        for _ in 1..delta {
            power = power.boolean_product(&adjacency);
            reach.union_with(&power);
        }
        Ok((0..n)
            .filter(|&u| u != v.0 && reach.get(v.0, u))
            .map(NodeId)
            .collect())
    }

    /// Ego network of `v` at radius `delta`, labelled with decisions `h`.
    pub fn ego_network(
        &self,
        h: &DecisionVector,
        v: NodeId,
        delta: u32,
    ) -> Result<EgoNet, GraphError> {
        h.check_len(self)?;
        let mut members = self.neighborhood(v, delta)?;
        members.push(v);
        members.sort_unstable();
        let position = |u: NodeId| members.binary_search(&u).ok();
        let mut adjacency = vec![Vec::new(); members.len()];
        for (i, &u) in members.iter().enumerate() {
            for &w in self.neighbors(u) {
                if let Some(j) = position(w) {
                    adjacency[i].push(j);
                }
            }
        }
        let labels = members
            .iter()
            .map(|&u| EgoLabel {
                protected: self.protected(u),
                attributes: self.label(u).attributes.clone(),
                outcome: self.outcome(u),
                decision: h.get(u),
            })
            .collect();
        let center = position(v).expect("center is a member");
        Ok(EgoNet {
            center,
            members,
            adjacency,
            labels,
        })
    }

    pub fn connected_components(&self) -> Components {
        let n = self.node_count();
        let mut membership = vec![usize::MAX; n];
        let mut members = Vec::new();
        for start in 0..n {
            if membership[start] != usize::MAX {
                continue;
            }
            let id = members.len();
            membership[start] = id;
            let mut component = vec![NodeId(start)];
            self.visit_within(NodeId(start), None, |u, _| {
                membership[u.0] = id;
                component.push(u);
            });
            component.sort_unstable();
            members.push(component);
        }
        Components {
            membership,
            members,
        }
    }

    /// Largest component diameter. For `delta` at or above this value every
    /// neighborhood covers its whole component.
    pub fn eccentricity_bound(&self) -> u32 {
        self.nodes()
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&v| {
                let mut ecc = 0;
                self.visit_within(v, None, |_, d| ecc = ecc.max(d));
                ecc
            })
            .max()
            .unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    membership: Vec<usize>,
    members: Vec<Vec<NodeId>>,
}

impl Components {
    pub fn count(&self) -> usize {
        self.members.len()
    }

    pub fn component_of(&self, v: NodeId) -> usize {
        self.membership[v.0]
    }

    pub fn members(&self, component: usize) -> &[NodeId] {
        &self.members[component]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[NodeId]> {
        self.members.iter().map(Vec::as_slice)
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.members.iter().map(Vec::len).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.members.len() <= 1
    }
}

/// Binary decision `h(v)` for every node.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DecisionVector(Vec<bool>);

impl DecisionVector {
    pub fn new(decisions: Vec<bool>) -> Self {
        DecisionVector(decisions)
    }

    pub fn for_network(net: &AttributedNetwork, decisions: Vec<bool>) -> Result<Self, GraphError> {
        let h = DecisionVector(decisions);
        h.check_len(net)?;
        Ok(h)
    }

    pub fn constant(len: usize, value: bool) -> Self {
        DecisionVector(vec![value; len])
    }

    pub fn check_len(&self, net: &AttributedNetwork) -> Result<(), GraphError> {
        if self.0.len() == net.node_count() {
            Ok(())
        } else {
            Err(GraphError::DecisionLength {
                expected: net.node_count(),
                found: self.0.len(),
            })
        }
    }

    #[inline]
    pub fn get(&self, v: NodeId) -> bool {
        self.0[v.0]
    }

    pub fn set(&mut self, v: NodeId, value: bool) {
        self.0[v.0] = value;
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }

    pub fn accepted_count(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }
}

impl fmt::Display for DecisionVector {
    /// Renders as a string of `0`/`1` digits.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Labels an ego-network member carries: `(X_p, X_u, y, h)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EgoLabel {
    pub protected: Group,
    pub attributes: Vec<f64>,
    pub outcome: bool,
    pub decision: bool,
}

/// Induced subgraph on `N(center) ∪ {center}`. Members are addressed by
/// local position; `members[i]` gives the original node id.
#[derive(Debug, Clone, PartialEq)]
pub struct EgoNet {
    center: usize,
    members: Vec<NodeId>,
    adjacency: Vec<Vec<usize>>,
    labels: Vec<EgoLabel>,
}

impl EgoNet {
    pub fn center(&self) -> NodeId {
        self.members[self.center]
    }

    pub fn center_position(&self) -> usize {
        self.center
    }

    pub fn members(&self) -> &[NodeId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn local_neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn has_local_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].binary_search(&j).is_ok()
    }

    pub fn label(&self, i: usize) -> &EgoLabel {
        &self.labels[i]
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Induced edges in original node ids, `(a, b)` with `a < b`.
    pub fn edges(&self) -> Vec<(NodeId, NodeId)> {
        let mut out = Vec::new();
        for (i, list) in self.adjacency.iter().enumerate() {
            for &j in list {
                if j > i {
                    out.push((self.members[i], self.members[j]));
                }
            }
        }
        out
    }

    /// Re-indexes members by `order` (a permutation of local positions), so
    /// that the same ego net appears with different internal ids.
    pub fn permuted(&self, order: &[usize]) -> EgoNet {
        assert_eq!(order.len(), self.len());
        let mut inverse = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            inverse[old] = new;
        }
        let adjacency = order
            .iter()
            .map(|&old| {
                let mut list: Vec<usize> =
                    self.adjacency[old].iter().map(|&j| inverse[j]).collect();
                list.sort_unstable();
                list
            })
            .collect();
        EgoNet {
            center: inverse[self.center],
            members: order.iter().map(|&old| self.members[old]).collect(),
            adjacency,
            labels: order.iter().map(|&old| self.labels[old].clone()).collect(),
        }
    }
}

/// Dense boolean matrix with bit-packed rows.
#[derive(Debug, Clone)]
struct BitMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn zeros(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitMatrix {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    fn adjacency(net: &AttributedNetwork) -> Self {
        let mut m = BitMatrix::zeros(net.node_count());
        for (a, b) in net.edges() {
            m.set(a.0, b.0);
            m.set(b.0, a.0);
        }
        m
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    fn get(&self, i: usize, j: usize) -> bool {
        self.row(i)[j / 64] >> (j % 64) & 1 == 1
    }

    fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
    }

    /// `C[i][j] = OR_k self[i][k] AND rhs[k][j]`.
    fn boolean_product(&self, rhs: &BitMatrix) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.n);
        for i in 0..self.n {
            for k in 0..self.n {
                if self.get(i, k) {
                    let start = i * self.words;
                    for (w, &r) in rhs.row(k).iter().enumerate() {
                        out.bits[start + w] |= r;
                    }
                }
            }
        }
        out
    }

    fn union_with(&mut self, other: &BitMatrix) {
        for (a, &b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
    }
}
