mod common;

use common::arb_network;
use netfair_core::axioms::{decision_isomorphic, decision_isomorphism};
use netfair_core::{AttributedNetwork, DecisionVector, NodeId, NodeLabel};
use proptest::prelude::*;

/// Relabels node ids by `perm` (`old -> perm[old]`).
fn relabel(
    net: &AttributedNetwork,
    h: &DecisionVector,
    perm: &[usize],
) -> (AttributedNetwork, DecisionVector) {
    let n = net.node_count();
    let mut labels: Vec<Option<NodeLabel>> = vec![None; n];
    let mut bits = vec![false; n];
    for v in net.nodes() {
        labels[perm[v.index()]] = Some(net.label(v).clone());
        bits[perm[v.index()]] = h.get(v);
    }
    let edges: Vec<(usize, usize)> = net
        .edges()
        .map(|(a, b)| (perm[a.index()], perm[b.index()]))
        .collect();
    (
        AttributedNetwork::new(labels.into_iter().map(Option::unwrap).collect(), &edges).unwrap(),
        DecisionVector::new(bits),
    )
}

fn arb_permuted() -> impl Strategy<Value = (AttributedNetwork, DecisionVector, Vec<usize>)> {
    arb_network(14).prop_flat_map(|(net, h)| {
        let n = net.node_count();
        (
            Just(net),
            Just(h),
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
        )
    })
}

proptest! {
    #[test]
    fn reflexive((net, h) in arb_network(14), delta in 1u32..=2) {
        for v in net.nodes() {
            let ego = net.ego_network(&h, v, delta)?;
            prop_assert!(decision_isomorphic(&ego, &ego)?);
        }
    }

    #[test]
    fn invariant_under_relabeling((net, h, perm) in arb_permuted(), delta in 1u32..=2) {
        let (net2, h2) = relabel(&net, &h, &perm);
        for v in net.nodes() {
            let a = net.ego_network(&h, v, delta)?;
            let b = net2.ego_network(&h2, NodeId(perm[v.index()]), delta)?;
            let m = decision_isomorphism(&a, &b)?;
            prop_assert!(m.is_some());
            let m = m.unwrap();
            prop_assert_eq!(m[a.center_position()], b.center_position());
            for i in 0..a.len() {
                prop_assert_eq!(a.label(i), b.label(m[i]));
                for j in 0..a.len() {
                    prop_assert_eq!(a.has_local_edge(i, j), b.has_local_edge(m[i], m[j]));
                }
            }
        }
    }

    #[test]
    fn symmetric((net, h) in arb_network(12), delta in 1u32..=2) {
        let egos: Vec<_> = net.nodes().map(|v| net.ego_network(&h, v, delta)).collect::<Result<_, _>>()?;
        for a in &egos {
            for b in &egos {
                prop_assert_eq!(decision_isomorphic(a, b)?, decision_isomorphic(b, a)?);
            }
        }
    }

    #[test]
    fn flipping_a_decision_breaks_isomorphism((net, h) in arb_network(12), delta in 1u32..=2) {
        for v in net.nodes() {
            let ego = net.ego_network(&h, v, delta)?;
            let mut flipped = h.clone();
            flipped.set(v, !h.get(v));
            let other = net.ego_network(&flipped, v, delta)?;
            prop_assert!(!decision_isomorphic(&ego, &other)?);
        }
    }
}
