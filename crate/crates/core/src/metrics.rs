//! Confusion-matrix statistics per node group.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{AttributedNetwork, DecisionVector, NodeId};

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum MetricsError {
    #[error("true positive rate undefined: group has no positive outcomes")]
    NoPositives,
    #[error("false positive rate undefined: group has no negative outcomes")]
    NoNegatives,
}

/// An exact proportion `hits / total`, kept as counts so that callers can
/// compare values without rounding and disclose denominators. Equality and
/// ordering are by value, so `2/4 == 1/2`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Rate {
    pub hits: u64,
    pub total: u64,
}

impl Rate {
    /// Panics if `total` is zero or `hits > total`.
    pub fn new(hits: u64, total: u64) -> Self {
        assert!(total > 0, "rate with zero denominator");
        assert!(hits <= total, "rate above one");
        Rate { hits, total }
    }

    pub fn value(self) -> f64 {
        self.hits as f64 / self.total as f64
    }

    /// Percentage rounded to one decimal place, half away from zero.
    pub fn percent_1dp(self) -> String {
        // round(1000 * hits / total) / 10, in integers
        let scaled = (2000 * self.hits + self.total) / (2 * self.total);
        format!("{}.{}%", scaled / 10, scaled % 10)
    }

    /// Percentage to one decimal place after first rounding the proportion
    /// to four decimal places, both half up. Matches reports that tabulate
    /// four-digit proportions and quote percentages from them; differs from
    /// [`percent_1dp`](Self::percent_1dp) only when the first rounding
    /// crosses a half-tenth boundary, e.g. 190/211.
    pub fn percent_1dp_two_stage(self) -> String {
        let four_digits = (20_000 * self.hits + self.total) / (2 * self.total);
        let scaled = (four_digits + 5) / 10;
        format!("{}.{}%", scaled / 10, scaled % 10)
    }

    /// Exact absolute difference `|self - other|` as `(numerator, denominator)`.
    pub fn abs_diff(self, other: Rate) -> (u64, u64) {
        let a = self.hits as u128 * other.total as u128;
        let b = other.hits as u128 * self.total as u128;
        let num = a.abs_diff(b);
        (num as u64, self.total * other.total)
    }
}

impl PartialEq for Rate {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other).is_eq()
    }
}

impl Eq for Rate {}

impl PartialOrd for Rate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rate {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.hits as u128 * other.total as u128).cmp(&(other.hits as u128 * self.total as u128))
    }
}

impl fmt::Display for Rate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.hits, self.total)
    }
}

/// Tallies of the four `(y, h)` cells.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConfusionCounts {
    pub tp: u64,
    pub fp: u64,
    pub tn: u64,
    pub fn_: u64,
}

impl ConfusionCounts {
    pub fn new(tp: u64, fp: u64, tn: u64, fn_: u64) -> Self {
        ConfusionCounts { tp, fp, tn, fn_ }
    }

    pub fn record(&mut self, outcome: bool, decision: bool) {
        match (outcome, decision) {
            (true, true) => self.tp += 1,
            (false, true) => self.fp += 1,
            (false, false) => self.tn += 1,
            (true, false) => self.fn_ += 1,
        }
    }

    pub fn total(&self) -> u64 {
        self.tp + self.fp + self.tn + self.fn_
    }

    pub fn positives(&self) -> u64 {
        self.tp + self.fn_
    }

    pub fn negatives(&self) -> u64 {
        self.fp + self.tn
    }

    pub fn accepted(&self) -> u64 {
        self.tp + self.fp
    }

    /// `tp / (tp + fn)`.
    pub fn tpr(&self) -> Result<Rate, MetricsError> {
        match self.positives() {
            0 => Err(MetricsError::NoPositives),
            p => Ok(Rate::new(self.tp, p)),
        }
    }

    /// `fp / (fp + tn)`.
    pub fn fpr(&self) -> Result<Rate, MetricsError> {
        match self.negatives() {
            0 => Err(MetricsError::NoNegatives),
            n => Ok(Rate::new(self.fp, n)),
        }
    }

    /// `(tp + fp) / total`, `None` for an empty tally.
    pub fn acceptance(&self) -> Option<Rate> {
        (self.total() > 0).then(|| Rate::new(self.accepted(), self.total()))
    }

    /// Renders the tally in the 2x2 layout used for peer-review summaries:
    /// rows are decisions, columns are outcomes.
    pub fn table(&self, title: &str) -> String {
        let w = [self.tp, self.fp, self.fn_, self.tn]
            .iter()
            .map(|c| c.to_string().len())
            .max()
            .unwrap_or(1)
            .max(3);
        format!(
            "{title}\n{:>7} | {:>w$} | {:>w$}\n{:>7} | {:>w$} | {:>w$}\n{:>7} | {:>w$} | {:>w$}\n",
            "", "y=1", "y=0", "h=1", self.tp, self.fp, "h=0", self.fn_, self.tn,
        )
    }
}

impl Add for ConfusionCounts {
    type Output = ConfusionCounts;

    fn add(self, rhs: Self) -> Self {
        ConfusionCounts {
            tp: self.tp + rhs.tp,
            fp: self.fp + rhs.fp,
            tn: self.tn + rhs.tn,
            fn_: self.fn_ + rhs.fn_,
        }
    }
}

impl std::iter::Sum for ConfusionCounts {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(ConfusionCounts::default(), Add::add)
    }
}

pub fn confusion(net: &AttributedNetwork, h: &DecisionVector, group: &[NodeId]) -> ConfusionCounts {
    let mut counts = ConfusionCounts::default();
    for &v in group {
        counts.record(net.outcome(v), h.get(v));
    }
    counts
}

pub fn tpr(counts: &ConfusionCounts) -> Result<Rate, MetricsError> {
    counts.tpr()
}

pub fn fpr(counts: &ConfusionCounts) -> Result<Rate, MetricsError> {
    counts.fpr()
}
