//! Fixtures shared by the integration tests.
#![allow(dead_code)]

use netfair_core::ingest::{AuthorRecord, PaperRecord, ProtectedAttribute, ProtectedSpec};
use netfair_core::{AttributedNetwork, ConfusionCounts, DecisionVector, NodeLabel};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Confusion tallies of the review case study, `(tp, fp, tn, fn)`.
pub const FAMOUS: ConfusionCounts = ConfusionCounts {
    tp: 94,
    fp: 13,
    tn: 153,
    fn_: 12,
};
pub const NON_FAMOUS: ConfusionCounts = ConfusionCounts {
    tp: 495,
    fp: 85,
    tn: 1255,
    fn_: 105,
};
pub const TOP: ConfusionCounts = ConfusionCounts {
    tp: 190,
    fp: 34,
    tn: 328,
    fn_: 21,
};
pub const NON_TOP: ConfusionCounts = ConfusionCounts {
    tp: 399,
    fp: 64,
    tn: 1080,
    fn_: 96,
};
pub const ALL: ConfusionCounts = ConfusionCounts {
    tp: 589,
    fp: 98,
    tn: 1408,
    fn_: 117,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `(y, h)` pairs realizing `counts`, in a seeded shuffled order.
pub fn cells(counts: &ConfusionCounts, rng: &mut impl Rng) -> Vec<(bool, bool)> {
    let mut out = Vec::new();
    out.extend(std::iter::repeat_n((true, true), counts.tp as usize));
    out.extend(std::iter::repeat_n((false, true), counts.fp as usize));
    out.extend(std::iter::repeat_n((false, false), counts.tn as usize));
    out.extend(std::iter::repeat_n((true, false), counts.fn_ as usize));
    for i in (1..out.len()).rev() {
        out.swap(i, rng.gen_range(0..=i));
    }
    out
}

/// Papers whose group split, acceptability and decisions follow the given
/// tallies. Protected papers (group 0) carry one listed author; every paper
/// has two to four authors drawn from a shared pool so that papers link.
pub fn review_fixture(
    protected: &ConfusionCounts,
    other: &ConfusionCounts,
    attribute: ProtectedAttribute,
    seed: u64,
) -> (Vec<PaperRecord>, Vec<AuthorRecord>, ProtectedSpec) {
    let mut rng = rng(seed);
    let pool = 3000usize;
    let mut authors: Vec<AuthorRecord> = (0..pool)
        .map(|i| AuthorRecord {
            author_id: format!("pool{i}"),
            affiliation: "Somewhere".into(),
            prior_collaborator_ids: Vec::new(),
        })
        .collect();
    let mut marked = Vec::new();
    let mut rows: Vec<(bool, bool, bool)> = cells(protected, &mut rng)
        .into_iter()
        .map(|(y, h)| (true, y, h))
        .chain(
            cells(other, &mut rng)
                .into_iter()
                .map(|(y, h)| (false, y, h)),
        )
        .collect();
    for i in (1..rows.len()).rev() {
        rows.swap(i, rng.gen_range(0..=i));
    }
    let papers = rows
        .iter()
        .enumerate()
        .map(|(i, &(is_protected, y, h))| {
            let mut ids: Vec<String> = (0..rng.gen_range(2..=4))
                .map(|_| format!("pool{}", rng.gen_range(0..pool)))
                .collect();
            ids.sort();
            ids.dedup();
            if is_protected {
                let id = format!("marked{i}");
                authors.push(AuthorRecord {
                    author_id: id.clone(),
                    affiliation: "Top University".into(),
                    prior_collaborator_ids: Vec::new(),
                });
                marked.push(id.clone());
                ids.push(id);
            }
            PaperRecord {
                paper_id: format!("paper{i}"),
                author_ids: ids,
                // y = 1 iff avg > 5 at the default threshold
                avg_rating: Some(if y {
                    5.0 + rng.gen_range(0.01..4.0)
                } else {
                    rng.gen_range(1.0..=5.0)
                }),
                accepted: h,
            }
        })
        .collect();
    let spec = ProtectedSpec {
        famous_author_ids: marked.into_iter().collect(),
        top_institution_names: ["Top University".to_string()].into(),
        attribute_choice: attribute,
    };
    (papers, authors, spec)
}

/// Random simple graph with `n` nodes and edge probability `p`, labels and
/// `attributes` real-valued unprotected attributes.
pub fn random_network(
    rng: &mut impl Rng,
    n: usize,
    p: f64,
    groups: u32,
    attributes: usize,
) -> AttributedNetwork {
    let labels = (0..n)
        .map(|_| NodeLabel {
            protected: netfair_core::Group(rng.gen_range(0..groups)),
            outcome: rng.gen_bool(0.5),
            attributes: (0..attributes).map(|_| awkward_float(rng)).collect(),
        })
        .collect();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    let names = (0..attributes).map(|i| format!("a{i}")).collect();
    AttributedNetwork::with_attribute_names(labels, &edges, names).unwrap()
}

/// Values whose decimal rendering is easy to get wrong.
fn awkward_float(rng: &mut impl Rng) -> f64 {
    match rng.gen_range(0..6) {
        0 => 0.1 + 0.2,
        1 => -0.0,
        2 => f64::MIN_POSITIVE * rng.gen_range(1.0..2.0),
        3 => rng.gen_range(-1e300..1e300),
        4 => f64::from(rng.gen_range(0u32..5)),
        _ => rng.gen::<f64>() / 3.0,
    }
}

pub fn random_decisions(rng: &mut impl Rng, n: usize, p: f64) -> DecisionVector {
    DecisionVector::new((0..n).map(|_| rng.gen_bool(p)).collect())
}

/// A labelled simple graph on `1..=max_nodes` nodes with a decision vector.
pub fn arb_network(
    max_nodes: usize,
) -> impl proptest::strategy::Strategy<Value = (AttributedNetwork, DecisionVector)> {
    use proptest::prelude::*;
    (1..=max_nodes, 0.0..0.5f64).prop_flat_map(|(n, p)| {
        let pairs = n * (n - 1) / 2;
        (
            proptest::collection::vec((0u32..2, any::<bool>(), any::<bool>()), n),
            proptest::collection::vec(proptest::bool::weighted(p), pairs),
        )
            .prop_map(move |(labels, present)| {
                let mut edges = Vec::new();
                let mut k = 0;
                for a in 0..n {
                    for b in a + 1..n {
                        if present[k] {
                            edges.push((a, b));
                        }
                        k += 1;
                    }
                }
                let net = AttributedNetwork::new(
                    labels
                        .iter()
                        .map(|&(g, y, _)| NodeLabel::new(g, y))
                        .collect(),
                    &edges,
                )
                .unwrap();
                let h = DecisionVector::new(labels.iter().map(|&(_, _, d)| d).collect());
                (net, h)
            })
    })
}

/// All-pairs hop distances by Floyd-Warshall; `None` when unreachable.
pub fn distances(net: &AttributedNetwork) -> Vec<Vec<Option<u32>>> {
    let n = net.node_count();
    let mut d = vec![vec![None; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = Some(0);
    }
    for (a, b) in net.edges() {
        d[a.index()][b.index()] = Some(1);
        d[b.index()][a.index()] = Some(1);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(x), Some(y)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|cur| x + y < cur) {
                        d[i][j] = Some(x + y);
                    }
                }
            }
        }
    }
    d
}
