//! Acceptance criteria, one report line per criterion. Runs without the
//! libtest harness so that the lines are always printed.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use netfair_core::axioms::{run_axiom_suite, Axiom, SuiteConfig};
use netfair_core::ingest::{
    build_review_network, export_decisions, export_network, load_decisions, load_network_dir,
    LoadOptions, ProtectedAttribute, ReviewOptions, DECISIONS_FILE,
};
use netfair_core::synth::{
    biased_decision, pitfall_instance, random_attributed_graph, RateTarget, SynthConfig,
};
use netfair_core::{
    acceptance_probability, confusion, convergence_check, fairness_visibility, perceive_all,
    visibility_sweep, AttributedNetwork, ConfusionCounts, DecisionVector, DegenerateRule,
    ExpectationPolicy, Group, GroupPartition, NodeId, NodeLabel, Rate,
};
use rand::Rng;

use common::{
    random_decisions, random_network, review_fixture, rng, ALL, FAMOUS, NON_FAMOUS, NON_TOP, TOP,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn expect_rate(label: &str, got: Rate, hits: u64, total: u64, percent: &str) -> Result<(), String> {
    ensure(got.hits == hits && got.total == total, || {
        format!("{label}: expected {hits}/{total}, got {got}")
    })?;
    // quoted percentages come from proportions first rounded to four places
    ensure(got.percent_1dp_two_stage() == percent, || {
        format!(
            "{label}: expected {percent}, rendered {}",
            got.percent_1dp_two_stage()
        )
    })?;
    let direct: f64 = got
        .percent_1dp()
        .trim_end_matches('%')
        .parse()
        .map_err(|_| "unparsable".to_string())?;
    let quoted: f64 = percent
        .trim_end_matches('%')
        .parse()
        .map_err(|_| "unparsable".to_string())?;
    ensure((direct - quoted).abs() <= 0.1 + 1e-9, || {
        format!(
            "{label}: direct rendering {} far from {percent}",
            got.percent_1dp()
        )
    })
}

/// Builds the review network from paper/author tables, round-trips it
/// through the interchange files and returns per-group confusion counts.
fn review_confusions(
    protected: &ConfusionCounts,
    other: &ConfusionCounts,
    attribute: ProtectedAttribute,
) -> Result<(ConfusionCounts, ConfusionCounts, ConfusionCounts, usize), String> {
    let (papers, authors, spec) = review_fixture(protected, other, attribute, 7);
    let review = build_review_network(&papers, &authors, &spec, &ReviewOptions::default())
        .map_err(|e| e.to_string())?;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    export_network(&review.network, dir.path()).map_err(|e| e.to_string())?;
    export_decisions(&review.decisions, &dir.path().join(DECISIONS_FILE))
        .map_err(|e| e.to_string())?;
    let (net, _) =
        load_network_dir(dir.path(), LoadOptions::default()).map_err(|e| e.to_string())?;
    let h = load_decisions(&dir.path().join(DECISIONS_FILE), &net).map_err(|e| e.to_string())?;
    let partition = GroupPartition::from_network(&net);
    let group = |g| confusion(&net, &h, partition.get(Group(g)).unwrap_or(&[]));
    let all: Vec<NodeId> = net.nodes().collect();
    Ok((
        group(0),
        group(1),
        confusion(&net, &h, &all),
        net.node_count(),
    ))
}

fn criterion_1() -> Outcome {
    let table = [
        (ProtectedAttribute::Famous, FAMOUS, NON_FAMOUS),
        (ProtectedAttribute::TopInstitution, TOP, NON_TOP),
    ];
    let expected_tpr = [
        [(94, 106, "88.7%"), (495, 600, "82.5%")],
        [(190, 211, "90.1%"), (399, 495, "80.6%")],
    ];
    let expected_fpr = [
        [(13, 166, "7.8%"), (85, 1340, "6.3%")],
        [(34, 362, "9.4%"), (64, 1144, "5.6%")],
    ];
    for (i, (attribute, protected, other)) in table.iter().enumerate() {
        let (g0, g1, overall, n) = review_confusions(protected, other, *attribute)?;
        ensure(n == 2212, || format!("{attribute:?}: {n} nodes"))?;
        ensure(overall == ALL, || {
            format!("{attribute:?}: overall {overall:?}")
        })?;
        for (j, c) in [g0, g1].iter().enumerate() {
            let label = format!("{attribute:?} group {j}");
            let tpr = c.tpr().map_err(|e| e.to_string())?;
            let fpr = c.fpr().map_err(|e| e.to_string())?;
            let (h, t, p) = expected_tpr[i][j];
            expect_rate(&format!("{label} TPR"), tpr, h, t, p)?;
            let (h, t, p) = expected_fpr[i][j];
            expect_rate(&format!("{label} FPR"), fpr, h, t, p)?;
        }
    }
    Ok("TPR 94/106 495/600 190/211 399/495, FPR 13/166 85/1340 34/362 64/1144 via ingest and reload".into())
}

fn criterion_2() -> Outcome {
    let mut r = rng(2);
    let labels_and_h: Vec<(u32, bool, bool)> = common::cells(&FAMOUS, &mut r)
        .into_iter()
        .map(|(y, h)| (0, y, h))
        .chain(
            common::cells(&NON_FAMOUS, &mut r)
                .into_iter()
                .map(|(y, h)| (1, y, h)),
        )
        .collect();
    let net = AttributedNetwork::new(
        labels_and_h
            .iter()
            .map(|&(g, y, _)| NodeLabel::new(g, y))
            .collect(),
        &[],
    )
    .map_err(|e| e.to_string())?;
    let h = DecisionVector::new(labels_and_h.iter().map(|&(_, _, d)| d).collect());
    let partition = GroupPartition::from_network(&net);
    let all: Vec<NodeId> = net.nodes().collect();
    let checks = [
        (
            "famous",
            partition.get(Group(0)).unwrap_or(&[]),
            107,
            272,
            "0.3933",
        ),
        (
            "non-famous",
            partition.get(Group(1)).unwrap_or(&[]),
            580,
            1940,
            "0.2989",
        ),
        ("overall", &all[..], 687, 2212, "0.3106"),
    ];
    for (label, nodes, hits, total, rounded) in checks {
        let got = acceptance_probability(&net, &h, nodes).map_err(|e| e.to_string())?;
        ensure(got.hits == hits && got.total == total, || {
            format!("{label}: {got}")
        })?;
        // quoted decimals are within one unit of the fourth place
        let quoted: f64 = rounded.parse().map_err(|_| "unparsable".to_string())?;
        ensure((got.value() - quoted).abs() < 1e-4, || {
            format!("{label}: {} vs {rounded}", got.value())
        })?;
    }
    Ok("107/272 ~ 0.3933, 580/1940 ~ 0.2989, 687/2212 ~ 0.3106 (exact counts)".into())
}

fn convergence_config(seed: u64) -> SynthConfig {
    let mut r = rng(seed ^ 0xC0FFEE);
    let a = r.gen_range(10..=50);
    let b = r.gen_range(10..=50);
    SynthConfig {
        group_sizes: vec![a, b],
        intra_probability: r.gen_range(0.05..0.3),
        inter_probability: r.gen_range(0.01..0.1),
        degree_skew: r.gen_range(1.0..3.0),
        outcome_rate: 0.5,
        rates: vec![
            RateTarget {
                tpr: r.gen_range(0.5..0.95),
                fpr: r.gen_range(0.1..0.4),
            },
            RateTarget {
                tpr: r.gen_range(0.5..0.95),
                fpr: r.gen_range(0.1..0.4),
            },
        ],
        attribute_count: 0,
        attribute_levels: 2,
        connect: true,
        seed,
    }
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut graphs = 0;
    for seed in 0..25u64 {
        let config = convergence_config(seed);
        let net = random_attributed_graph(&config).map_err(|e| e.to_string())?;
        let h = biased_decision(&net, &config).map_err(|e| e.to_string())?;
        let n = net.node_count();
        ensure((20..=100).contains(&n), || {
            format!("seed {seed}: {n} nodes")
        })?;
        ensure(net.connected_components().is_connected(), || {
            format!("seed {seed}: disconnected")
        })?;
        let partition = GroupPartition::from_network(&net);
        for (g, nodes) in partition.iter() {
            let c = confusion(&net, &h, nodes);
            ensure(c.positives() > 0 && c.negatives() > 0, || {
                format!("seed {seed}: group {g} lacks a class")
            })?;
        }
        let all: Vec<NodeId> = net.nodes().collect();
        let overall = confusion(&net, &h, &all);
        ensure(overall.tp > 0 && overall.fp > 0, || {
            format!("seed {seed}: TPR or FPR is zero")
        })?;

        let report = convergence_check(&net, &h, &partition, DegenerateRule::ZeroExpectation)
            .map_err(|e| e.to_string())?;
        ensure(report.converged() == Some(true), || {
            format!("seed {seed}: {report:?}")
        })?;

        // independent path: perception at the saturation radius, counted by hand
        let delta = net.eccentricity_bound().max(1);
        let records = perceive_all(
            &net,
            &h,
            &ExpectationPolicy::new(delta, DegenerateRule::ZeroExpectation),
        )
        .map_err(|e| e.to_string())?
        .records;
        for (g, nodes) in partition.iter() {
            let fair = nodes
                .iter()
                .filter(|v| records[v.index()].fair == Some(true))
                .count();
            let accepted = nodes.iter().filter(|&&v| h.get(v)).count();
            ensure(fair == accepted, || {
                format!("seed {seed} group {g}: {fair} fair vs {accepted} accepted")
            })?;
        }
        graphs += 1;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{graphs} connected graphs converged exactly in {elapsed:.2?}"
    ))
}

pub const AXIOM_TRIALS: usize = 700;
pub const AXIOM_REQUIRED: usize = 500;

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let config = SuiteConfig {
        min_satisfied: Some(AXIOM_REQUIRED),
        ..SuiteConfig::default()
    };
    let report = run_axiom_suite(&config, AXIOM_TRIALS, 4).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let required = [
        Axiom::Locality,
        Axiom::Monotonicity,
        Axiom::NeighborhoodExpectation,
        Axiom::Homogeneity,
        Axiom::ExpectationLocality,
        Axiom::ExpectationMonotonicity,
        Axiom::ExpectationHomogeneity,
    ];
    let mut least = usize::MAX;
    for axiom in required {
        let v = report
            .verdict(axiom)
            .ok_or_else(|| format!("{axiom} missing"))?;
        ensure(v.violations.is_empty(), || {
            format!(
                "{axiom}: {} violations, first {:?}",
                v.violations.len(),
                v.violations[0]
            )
        })?;
        ensure(v.satisfied >= AXIOM_REQUIRED, || {
            format!("{axiom}: only {} satisfied trials", v.satisfied)
        })?;
        least = least.min(v.satisfied);
    }
    ensure(report.passed(), || report.to_text())?;
    ensure(elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "min {least} satisfied trials per check, 0 violations, {elapsed:.2?}"
    ))
}

fn group_visibility(
    net: &AttributedNetwork,
    h: &DecisionVector,
    delta: u32,
    group: u32,
) -> Result<Rate, String> {
    let records = perceive_all(net, h, &ExpectationPolicy::with_delta(delta))
        .map_err(|e| e.to_string())?
        .records;
    let partition = GroupPartition::from_network(net);
    let nodes = partition.get(Group(group)).ok_or("missing group")?;
    fairness_visibility(&records, nodes)
        .map_err(|e| e.to_string())?
        .rate()
        .ok_or_else(|| "empty denominator".into())
}

fn criterion_5() -> Outcome {
    let mut seeds = Vec::new();
    for seed in 0..5u64 {
        let (net, h) = pitfall_instance(seed).map_err(|e| e.to_string())?;
        ensure(net.connected_components().is_connected(), || {
            format!("seed {seed}: disconnected")
        })?;
        let partition = GroupPartition::from_network(&net);
        let nodes = |g| partition.get(Group(g)).unwrap_or(&[]);
        let accepted = |g| nodes(g).iter().filter(|&&v| h.get(v)).count() as u64;
        let acc0 = Rate::new(accepted(0), nodes(0).len() as u64);
        let acc1 = Rate::new(accepted(1), nodes(1).len() as u64);
        ensure(acc0 > acc1, || {
            format!("seed {seed}: acceptance {acc0} vs {acc1}")
        })?;
        let mean_degree = |g| {
            nodes(g).iter().map(|&v| net.degree(v)).sum::<usize>() as f64 / nodes(g).len() as f64
        };
        ensure(mean_degree(0) > mean_degree(1), || {
            format!("seed {seed}: degree ordering")
        })?;
        let near = (
            group_visibility(&net, &h, 1, 0)?,
            group_visibility(&net, &h, 1, 1)?,
        );
        ensure(near.0 < near.1, || {
            format!("seed {seed}: FV at radius 1 {} vs {}", near.0, near.1)
        })?;
        let sat = net.eccentricity_bound();
        let far = (
            group_visibility(&net, &h, sat, 0)?,
            group_visibility(&net, &h, sat, 1)?,
        );
        ensure(far.0 > far.1, || {
            format!("seed {seed}: FV at saturation {} vs {}", far.0, far.1)
        })?;
        seeds.push(seed);
    }
    Ok(format!(
        "{} seeds reverse at radius 1 and agree at saturation",
        seeds.len()
    ))
}

fn criterion_6() -> Outcome {
    let mut r = rng(6);
    let mut mismatches = 0;
    for case in 0..1000 {
        let n = r.gen_range(1..=50);
        let p = r.gen_range(0.0..0.25);
        let net = random_network(&mut r, n, p, 2, 0);
        let v = NodeId(r.gen_range(0..n));
        let delta = r.gen_range(1..=6);
        let bfs = net.neighborhood(v, delta).map_err(|e| e.to_string())?;
        let matrix = net
            .neighborhood_by_matrix_power(v, delta)
            .map_err(|e| e.to_string())?;
        if bfs != matrix {
            mismatches += 1;
            eprintln!("case {case}: n={n} v={v} delta={delta}");
        }
    }
    ensure(mismatches == 0, || format!("{mismatches} mismatches"))?;
    Ok("1000 cases, 0 mismatches".into())
}

fn criterion_7() -> Outcome {
    let mut r = rng(7);
    for case in 0..50 {
        let n = r.gen_range(0..=60);
        let p = r.gen_range(0.0..0.3);
        let attributes = r.gen_range(0..=3);
        let net = random_network(&mut r, n, p, 3, attributes);
        let h = random_decisions(&mut r, n, 0.4);
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        export_network(&net, dir.path()).map_err(|e| e.to_string())?;
        export_decisions(&h, &dir.path().join(DECISIONS_FILE)).map_err(|e| e.to_string())?;
        let (back, _) =
            load_network_dir(dir.path(), LoadOptions::default()).map_err(|e| e.to_string())?;
        let back_h =
            load_decisions(&dir.path().join(DECISIONS_FILE), &back).map_err(|e| e.to_string())?;

        ensure(back.node_count() == net.node_count(), || {
            format!("case {case}: node count")
        })?;
        let edges: Vec<_> = net.edges().collect();
        ensure(back.edges().collect::<Vec<_>>() == edges, || {
            format!("case {case}: edges")
        })?;
        ensure(back.attribute_names() == net.attribute_names(), || {
            format!("case {case}: names")
        })?;
        for (a, b) in net.labels().iter().zip(back.labels()) {
            let bits = |l: &NodeLabel| l.attributes.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
            ensure(
                a.protected == b.protected && a.outcome == b.outcome && bits(a) == bits(b),
                || format!("case {case}: label {a:?} became {b:?}"),
            )?;
        }
        ensure(back_h == h, || format!("case {case}: decisions"))?;

        if n > 0 {
            let partition = GroupPartition::from_network(&net);
            let delta_max = net.eccentricity_bound().max(1);
            for rule in [
                DegenerateRule::ZeroExpectation,
                DegenerateRule::MarkIneligible,
            ] {
                let before = visibility_sweep(&net, &h, &partition, delta_max, rule)
                    .map_err(|e| e.to_string())?;
                let after = visibility_sweep(
                    &back,
                    &back_h,
                    &GroupPartition::from_network(&back),
                    delta_max,
                    rule,
                )
                .map_err(|e| e.to_string())?;
                ensure(before == after, || format!("case {case}: sweep differs"))?;
                let policy = ExpectationPolicy::new(2, rule);
                let p1 = perceive_all(&net, &h, &policy).map_err(|e| e.to_string())?;
                let p2 = perceive_all(&back, &back_h, &policy).map_err(|e| e.to_string())?;
                ensure(p1 == p2, || format!("case {case}: perception differs"))?;
            }
            for (g, nodes) in partition.iter() {
                let back_nodes = GroupPartition::from_network(&back);
                ensure(
                    confusion(&net, &h, nodes)
                        == confusion(&back, &back_h, back_nodes.get(g).unwrap_or(&[])),
                    || format!("case {case}: confusion of group {g}"),
                )?;
            }
        }
    }
    Ok("50 networks round-trip with identical labels, edges and statistics".into())
}

fn criterion_8() -> Outcome {
    let mut r = rng(8);
    for case in 0..20 {
        let n = r.gen_range(1..=40);
        let net = random_network(&mut r, n, 0.0, 2, 0);
        let rate = r.gen_range(0.0..=1.0);
        let h = random_decisions(&mut r, n, rate);
        for delta in [1, 3] {
            let zero = perceive_all(
                &net,
                &h,
                &ExpectationPolicy::new(delta, DegenerateRule::ZeroExpectation),
            )
            .map_err(|e| e.to_string())?;
            ensure(
                zero.records
                    .iter()
                    .all(|rec| rec.fair == Some(true) && !rec.eligible),
                || format!("case {case}: zero rule left a node unfair"),
            )?;
            let excl = perceive_all(
                &net,
                &h,
                &ExpectationPolicy::new(delta, DegenerateRule::MarkIneligible),
            )
            .map_err(|e| e.to_string())?;
            for (g, nodes) in GroupPartition::from_network(&net).iter() {
                let fv = fairness_visibility(&excl.records, nodes).map_err(|e| e.to_string())?;
                ensure(
                    fv.denominator == 0
                        && fv.value().is_none()
                        && fv.excluded == nodes.len() as u64,
                    || format!("case {case}: group {g} reported {fv:?}"),
                )?;
                let fv_zero =
                    fairness_visibility(&zero.records, nodes).map_err(|e| e.to_string())?;
                ensure(fv_zero.rate() == Some(Rate::new(1, 1)), || {
                    format!("case {case}: zero-rule FV {fv_zero:?}")
                })?;
            }
        }
    }
    Ok("isolated nodes: f = 1 under the zero rule, denominator 0 under exclusion".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 rate arithmetic", criterion_1),
        ("2 acceptance probabilities", criterion_2),
        ("3 convergence at saturation", criterion_3),
        ("4 axiom suite", criterion_4),
        ("5 low-degree pitfall", criterion_5),
        ("6 neighborhood oracle", criterion_6),
        ("7 interchange round-trip", criterion_7),
        ("8 degenerate handling", criterion_8),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                println!("FAIL criterion {name}: {detail}");
                failed.push(name);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed.len(),
        criteria.len()
    );
    if !failed.is_empty() {
        std::process::exit(1);
    }
}
