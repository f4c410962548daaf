//! Group fairness visibility, parity gaps, demographic parity and δ-sweeps.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{AttributedNetwork, DecisionVector, GraphError, Group, NodeId};
use crate::metrics::{confusion, ConfusionCounts, Rate};
use crate::perception::{perceive_radii, DegenerateRule, PerceptionRecord};

/// Tolerance under which a gap counts as zero.
pub const PARITY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VisibilityError {
    #[error("group is empty")]
    EmptyGroup,
    #[error("parity needs at least two groups, partition has {0}")]
    TooFewGroups(usize),
    #[error("no perception record for node {0}")]
    MissingRecord(NodeId),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Node sets `V_c` keyed by protected value. Groups are disjoint and nonempty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPartition {
    groups: BTreeMap<Group, Vec<NodeId>>,
}

impl GroupPartition {
    pub fn from_network(net: &AttributedNetwork) -> Self {
        let mut groups: BTreeMap<Group, Vec<NodeId>> = BTreeMap::new();
        for v in net.nodes() {
            groups.entry(net.protected(v)).or_default().push(v);
        }
        GroupPartition { groups }
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn get(&self, group: Group) -> Option<&[NodeId]> {
        self.groups.get(&group).map(Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Group, &[NodeId])> {
        self.groups.iter().map(|(&g, nodes)| (g, nodes.as_slice()))
    }

    pub fn groups(&self) -> impl Iterator<Item = Group> + '_ {
        self.groups.keys().copied()
    }
}

/// `FV(V_c)` with its denominator disclosed. Nodes whose perception is
/// absent (ineligible under the exclude rule) are left out of the
/// denominator and counted in `excluded`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Visibility {
    pub fair: u64,
    pub denominator: u64,
    pub excluded: u64,
}

impl Visibility {
    pub fn rate(self) -> Option<Rate> {
        (self.denominator > 0).then(|| Rate::new(self.fair, self.denominator))
    }

    /// `None` when every member was excluded.
    pub fn value(self) -> Option<f64> {
        self.rate().map(Rate::value)
    }
}

pub fn fairness_visibility(
    records: &[PerceptionRecord],
    group: &[NodeId],
) -> Result<Visibility, VisibilityError> {
    if group.is_empty() {
        return Err(VisibilityError::EmptyGroup);
    }
    let mut vis = Visibility {
        fair: 0,
        denominator: 0,
        excluded: 0,
    };
    for &v in group {
        let record = records
            .get(v.index())
            .filter(|r| r.node == v)
            .ok_or(VisibilityError::MissingRecord(v))?;
        match record.fair {
            Some(fair) => {
                vis.denominator += 1;
                vis.fair += u64::from(fair);
            }
            None => vis.excluded += 1,
        }
    }
    Ok(vis)
}

/// Largest pairwise absolute difference, computed exactly and then converted.
fn max_pairwise_gap(rates: &[Rate]) -> f64 {
    let mut gap = 0.0f64;
    for (i, a) in rates.iter().enumerate() {
        for b in &rates[i + 1..] {
            let (num, den) = a.abs_diff(*b);
            gap = gap.max(num as f64 / den as f64);
        }
    }
    gap
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VisibilityParity {
    pub groups: Vec<(Group, Visibility)>,
    /// `None` when some group has no included member.
    pub gap: Option<f64>,
}

impl VisibilityParity {
    pub fn holds(&self, epsilon: f64) -> Option<bool> {
        self.gap.map(|g| g <= epsilon + PARITY_TOLERANCE)
    }
}

pub fn visibility_parity_gap(
    records: &[PerceptionRecord],
    partition: &GroupPartition,
) -> Result<VisibilityParity, VisibilityError> {
    if partition.len() < 2 {
        return Err(VisibilityError::TooFewGroups(partition.len()));
    }
    let groups = partition
        .iter()
        .map(|(g, nodes)| Ok((g, fairness_visibility(records, nodes)?)))
        .collect::<Result<Vec<_>, VisibilityError>>()?;
    let rates: Option<Vec<Rate>> = groups.iter().map(|(_, v)| v.rate()).collect();
    Ok(VisibilityParity {
        gap: rates.map(|r| max_pairwise_gap(&r)),
        groups,
    })
}

/// `P(h(v) = 1 | v ∈ group)`.
pub fn acceptance_probability(
    net: &AttributedNetwork,
    h: &DecisionVector,
    group: &[NodeId],
) -> Result<Rate, VisibilityError> {
    h.check_len(net)?;
    if group.is_empty() {
        return Err(VisibilityError::EmptyGroup);
    }
    let accepted = group.iter().filter(|&&v| h.get(v)).count();
    Ok(Rate::new(accepted as u64, group.len() as u64))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DemographicParity {
    pub groups: Vec<(Group, Rate)>,
    pub gap: f64,
}

impl DemographicParity {
    pub fn holds(&self, epsilon: f64) -> bool {
        self.gap <= epsilon + PARITY_TOLERANCE
    }
}

pub fn demographic_parity_gap(
    net: &AttributedNetwork,
    h: &DecisionVector,
    partition: &GroupPartition,
) -> Result<DemographicParity, VisibilityError> {
    if partition.len() < 2 {
        return Err(VisibilityError::TooFewGroups(partition.len()));
    }
    let groups = partition
        .iter()
        .map(|(g, nodes)| Ok((g, acceptance_probability(net, h, nodes)?)))
        .collect::<Result<Vec<_>, VisibilityError>>()?;
    let rates: Vec<Rate> = groups.iter().map(|&(_, r)| r).collect();
    Ok(DemographicParity {
        gap: max_pairwise_gap(&rates),
        groups,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub delta: u32,
    pub group: Group,
    pub visibility: Visibility,
    pub acceptance: Rate,
}

impl SweepRow {
    pub fn fairness_visibility(&self) -> Option<f64> {
        self.visibility.value()
    }

    pub fn acceptance_probability(&self) -> f64 {
        self.acceptance.value()
    }
}

/// Fairness visibility per group for each radius, ordered by `(delta, group)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub delta_max: u32,
    pub degenerate: DegenerateRule,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn rows_at(&self, delta: u32) -> impl Iterator<Item = &SweepRow> {
        self.rows.iter().filter(move |r| r.delta == delta)
    }

    /// Writes `delta,group,fairness_visibility,acceptance_probability,fair,denominator`.
    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "delta",
            "group",
            "fairness_visibility",
            "acceptance_probability",
            "fair",
            "denominator",
        ])?;
        for r in &self.rows {
            w.write_record([
                r.delta.to_string(),
                r.group.to_string(),
                r.fairness_visibility()
                    .map(|v| v.to_string())
                    .unwrap_or_default(),
                r.acceptance_probability().to_string(),
                r.visibility.fair.to_string(),
                r.visibility.denominator.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

pub fn visibility_sweep(
    net: &AttributedNetwork,
    h: &DecisionVector,
    partition: &GroupPartition,
    delta_max: u32,
    rule: DegenerateRule,
) -> Result<SweepTable, VisibilityError> {
    let by_radius = perceive_radii(net, h, delta_max, rule)?;
    let acceptance = partition
        .iter()
        .map(|(g, nodes)| Ok((g, acceptance_probability(net, h, nodes)?)))
        .collect::<Result<Vec<_>, VisibilityError>>()?;
    let mut rows = Vec::with_capacity(by_radius.len() * partition.len());
    for (d, records) in by_radius.iter().enumerate() {
        for ((group, nodes), &(_, acc)) in partition.iter().zip(&acceptance) {
            rows.push(SweepRow {
                delta: d as u32 + 1,
                group,
                visibility: fairness_visibility(records, nodes)?,
                acceptance: acc,
            });
        }
    }
    Ok(SweepTable {
        delta_max,
        degenerate: rule,
        rows,
    })
}

/// A plotting script for a sweep file written by [`SweepTable::write_csv`].
/// Lines starting with `#` in the data file are skipped.
pub fn plot_script(sweep_file: &str, image_file: &str) -> String {
    format!(
        r##"# Plots fairness visibility against neighborhood radius, one line per group,
# with each group's acceptance probability as a dashed reference.
import csv
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

rows = []
with open({sweep_file:?}) as fh:
    for row in csv.DictReader(line for line in fh if not line.startswith("#")):
        rows.append(row)

groups = sorted({{r["group"] for r in rows}}, key=int)
fig, ax = plt.subplots(figsize=(6, 4))
for g in groups:
    sel = [r for r in rows if r["group"] == g and r["fairness_visibility"] != ""]
    deltas = [int(r["delta"]) for r in sel]
    line, = ax.plot(deltas, [float(r["fairness_visibility"]) for r in sel],
                    marker="o", label="FV, X_p = " + g)
    ax.axhline(float(sel[0]["acceptance_probability"]) if sel else 0.0,
               color=line.get_color(), linestyle="--", linewidth=0.8,
               label="P(h=1), X_p = " + g)
ax.set_xlabel("neighborhood radius (delta)")
ax.set_ylabel("fairness visibility")
ax.legend()
fig.tight_layout()
fig.savefig({image_file:?}, dpi=150)
"##
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Hypothesis {
    Connected,
    PositiveTpr,
    PositiveFpr,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupConvergence {
    pub group: Group,
    pub terminal: Visibility,
    pub acceptance: Rate,
    /// Exact equality of the terminal visibility and the acceptance rate.
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub component_sizes: Vec<usize>,
    pub overall: ConfusionCounts,
    pub saturation_delta: u32,
    pub failed_hypotheses: Vec<Hypothesis>,
    pub groups: Vec<GroupConvergence>,
}

impl ConvergenceReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.failed_hypotheses.is_empty()
    }

    /// `Some(true)` when the hypotheses hold and every group converged;
    /// `None` when a hypothesis failed and no claim is made.
    pub fn converged(&self) -> Option<bool> {
        self.hypotheses_hold()
            .then(|| self.groups.iter().all(|g| g.equal))
    }
}

/// Checks the visibility-converges-to-acceptance property at the saturation
/// radius. Terminal values are always reported; equality is only claimed
/// when the network is connected and both error rates are positive.
pub fn convergence_check(
    net: &AttributedNetwork,
    h: &DecisionVector,
    partition: &GroupPartition,
    rule: DegenerateRule,
) -> Result<ConvergenceReport, VisibilityError> {
    h.check_len(net)?;
    let components = net.connected_components();
    let all: Vec<NodeId> = net.nodes().collect();
    let overall = confusion(net, h, &all);
    let mut failed = Vec::new();
    if !components.is_connected() {
        failed.push(Hypothesis::Connected);
    }
    if overall.tpr().map_or(true, |r| r.hits == 0) {
        failed.push(Hypothesis::PositiveTpr);
    }
    if overall.fpr().map_or(true, |r| r.hits == 0) {
        failed.push(Hypothesis::PositiveFpr);
    }
    let saturation = net.eccentricity_bound().max(1);
    let sweep = visibility_sweep(net, h, partition, saturation, rule)?;
    let groups = sweep
        .rows_at(saturation)
        .map(|row| GroupConvergence {
            group: row.group,
            terminal: row.visibility,
            acceptance: row.acceptance,
            equal: row
                .visibility
                .rate()
                .is_some_and(|r| r.cmp(&row.acceptance).is_eq()),
        })
        .collect();
    Ok(ConvergenceReport {
        component_sizes: components.sizes(),
        overall,
        saturation_delta: saturation,
        failed_hypotheses: failed,
        groups,
    })
}
