//! Network-centric fairness perception for attributed networks.
//!
//! Every node judges a binary decision vector `h` against the decisions its
//! δ-neighbors with the same target outcome received. Averaging those
//! judgements over a protected group gives its fairness visibility, which can
//! be compared across groups and against demographic parity.

pub mod axioms;
pub mod graph;
pub mod ingest;
pub mod metrics;
pub mod perception;
pub mod synth;
pub mod visibility;

pub use graph::{
    AttributedNetwork, Components, DecisionVector, EgoNet, GraphError, Group, NodeId, NodeLabel,
};
pub use metrics::{confusion, ConfusionCounts, MetricsError, Rate};
pub use perception::{
    fairness_perception, peer_expectation, perceive_all, DegenerateRule, Expectation,
    ExpectationPolicy, PerceptionRecord, PerceptionReport,
};
pub use visibility::{
    acceptance_probability, convergence_check, demographic_parity_gap, fairness_visibility,
    visibility_parity_gap, visibility_sweep, GroupPartition, SweepTable, Visibility,
};
