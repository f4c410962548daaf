use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{Context, Result};
use serde::Serialize;

use netfair_core::axioms::{run_axiom_suite, SuiteConfig};
use netfair_core::ingest::{
    build_review_network, load_decisions, load_network_dir, read_authors, read_list, read_papers,
    write_decisions, write_edges, write_nodes, IdMatching, LinkRule, LoadOptions,
    ProtectedAttribute, ProtectedSpec, ReviewOptions, DECISIONS_FILE,
};
use netfair_core::synth::{
    biased_decision, pitfall_instance, random_attributed_graph, SynthConfig,
};
use netfair_core::{
    confusion, convergence_check, demographic_parity_gap, fairness_visibility, perceive_all,
    visibility_parity_gap, visibility_sweep, AttributedNetwork, ConfusionCounts, DecisionVector,
    ExpectationPolicy, Group, GroupPartition, NodeId, PerceptionRecord, Rate,
};

use crate::output::{Kind, Run};
use crate::{
    AttributeArg, AxiomsArgs, Global, IngestArgs, LinkArg, NetworkArgs, Refusal, SweepArgs,
    SynthArgs,
};

/// Bins of the rejected-node expectation histogram, over `[0, 1]`.
const HISTOGRAM_BINS: u32 = 10;

fn usage(message: impl Into<String>) -> anyhow::Error {
    Refusal::Usage(message.into()).into()
}

fn verification(message: impl Into<String>) -> anyhow::Error {
    Refusal::Verification(message.into()).into()
}

fn rate_value(rate: Option<Rate>) -> Option<f64> {
    rate.map(Rate::value)
}

fn rate_exact(rate: Option<Rate>) -> String {
    rate.map(|r| r.to_string()).unwrap_or_default()
}

struct Loaded {
    net: AttributedNetwork,
    h: DecisionVector,
    decisions_path: PathBuf,
}

fn load(args: &NetworkArgs) -> Result<Loaded> {
    let options = LoadOptions {
        normalize_edges: args.normalize_edges,
    };
    let (net, report) = load_network_dir(&args.network, options)?;
    if report.self_loops_dropped + report.duplicates_dropped > 0 {
        eprintln!(
            "normalized edges: dropped {} self-loops, {} duplicates",
            report.self_loops_dropped, report.duplicates_dropped
        );
    }
    let decisions_path = args
        .decisions
        .clone()
        .unwrap_or_else(|| args.network.join(DECISIONS_FILE));
    let h = load_decisions(&decisions_path, &net)?;
    Ok(Loaded {
        net,
        h,
        decisions_path,
    })
}

fn record_inputs(run: &mut Run, args: &NetworkArgs, loaded: &Loaded) {
    run.input("network", &args.network)
        .input("decisions", &loaded.decisions_path);
    if args.normalize_edges {
        run.param("normalize_edges", true);
    }
}

fn component_report(net: &AttributedNetwork) -> String {
    let components = net.connected_components();
    let sizes = components.sizes();
    let shown: Vec<String> = sizes.iter().take(10).map(usize::to_string).collect();
    let more = if sizes.len() > 10 { " ..." } else { "" };
    format!(
        "network has {} connected components (sizes: {}{more})",
        components.count(),
        shown.join(", ")
    )
}

fn gate_connected(global: &Global, net: &AttributedNetwork) -> Result<()> {
    if global.require_connected && !net.connected_components().is_connected() {
        return Err(verification(format!(
            "{}; refusing under --require-connected",
            component_report(net)
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct GroupSummaryRow {
    group: Option<Group>,
    nodes: u64,
    tp: u64,
    fp: u64,
    tn: u64,
    #[serde(rename = "fn")]
    fn_: u64,
    tpr: Option<f64>,
    tpr_exact: String,
    fpr: Option<f64>,
    fpr_exact: String,
    acceptance_probability: Option<f64>,
    acceptance_exact: String,
}

impl GroupSummaryRow {
    fn new(group: Option<Group>, c: &ConfusionCounts) -> Self {
        GroupSummaryRow {
            group,
            nodes: c.total(),
            tp: c.tp,
            fp: c.fp,
            tn: c.tn,
            fn_: c.fn_,
            tpr: rate_value(c.tpr().ok()),
            tpr_exact: rate_exact(c.tpr().ok()),
            fpr: rate_value(c.fpr().ok()),
            fpr_exact: rate_exact(c.fpr().ok()),
            acceptance_probability: rate_value(c.acceptance()),
            acceptance_exact: rate_exact(c.acceptance()),
        }
    }
}

fn percent(rate: Option<Rate>) -> String {
    rate.map_or_else(
        || "n/a".to_string(),
        |r| format!("{} ({})", r.percent_1dp(), r),
    )
}

/// Node/edge counts and a confusion table per group plus the whole network.
fn network_summary(net: &AttributedNetwork, h: &DecisionVector) -> (String, Vec<GroupSummaryRow>) {
    let partition = GroupPartition::from_network(net);
    let mut text = String::new();
    let _ = writeln!(text, "nodes: {}", net.node_count());
    let _ = writeln!(text, "edges: {}", net.edge_count());
    let _ = writeln!(text, "{}", component_report(net));
    let mut rows = Vec::new();
    let mut sections: Vec<(Option<Group>, ConfusionCounts)> = partition
        .iter()
        .map(|(g, nodes)| (Some(g), confusion(net, h, nodes)))
        .collect();
    sections.push((None, sections.iter().map(|(_, c)| *c).sum()));
    for (group, counts) in &sections {
        let title = match group {
            Some(g) => format!("X_p = {g} ({} nodes)", counts.total()),
            None => format!("all ({} nodes)", counts.total()),
        };
        let _ = writeln!(text, "\n{}", counts.table(&title));
        let _ = writeln!(text, "TPR: {}", percent(counts.tpr().ok()));
        let _ = writeln!(text, "FPR: {}", percent(counts.fpr().ok()));
        let _ = writeln!(text, "P(h=1): {}", percent(counts.acceptance()));
        rows.push(GroupSummaryRow::new(*group, counts));
    }
    (text, rows)
}

#[derive(Serialize)]
struct PaperRow<'a> {
    node_id: usize,
    paper_id: &'a str,
}

pub fn ingest(global: &Global, args: &IngestArgs) -> Result<()> {
    let attribute_choice = match args.attribute {
        AttributeArg::Famous => ProtectedAttribute::Famous,
        AttributeArg::TopInstitution => ProtectedAttribute::TopInstitution,
    };
    let list = |path: &Option<PathBuf>, flag: &str, needed: bool| -> Result<BTreeSet<String>> {
        match path {
            Some(p) => Ok(read_list(p)?),
            None if needed => Err(usage(format!("--{flag} is required for this --attribute"))),
            None => Ok(BTreeSet::new()),
        }
    };
    let spec = ProtectedSpec {
        famous_author_ids: list(
            &args.famous,
            "famous",
            attribute_choice == ProtectedAttribute::Famous,
        )?,
        top_institution_names: list(
            &args.top_institutions,
            "top-institutions",
            attribute_choice == ProtectedAttribute::TopInstitution,
        )?,
        attribute_choice,
    };
    let options = ReviewOptions {
        link_rule: match args.link {
            LinkArg::SharedAuthor => LinkRule::SharedAuthor,
            LinkArg::Collaboration => LinkRule::SharedAuthorOrCollaboration,
        },
        threshold: global.threshold,
        matching: if args.fold_ids {
            IdMatching::Folded
        } else {
            IdMatching::Exact
        },
    };
    let papers = read_papers(&args.papers)?;
    let authors = read_authors(&args.authors)?;
    let review = build_review_network(&papers, &authors, &spec, &options)?;

    let mut run = Run::new(global, "ingest");
    run.input("papers", &args.papers)
        .input("authors", &args.authors);
    if let Some(p) = &args.famous {
        run.input("famous", p);
    }
    if let Some(p) = &args.top_institutions {
        run.input("top_institutions", p);
    }
    run.param(
        "attribute",
        format!("{:?}", attribute_choice).to_lowercase(),
    )
    .param(
        "link_rule",
        format!("{:?}", options.link_rule).to_lowercase(),
    )
    .param(
        "id_matching",
        format!("{:?}", options.matching).to_lowercase(),
    );
    run.plan(&[
        ("nodes", Kind::Interchange),
        ("edges", Kind::Interchange),
        ("decisions", Kind::Interchange),
        ("papers", Kind::Table),
        ("groups", Kind::Table),
        ("summary", Kind::Report),
    ])?;

    let net = &review.network;
    run.interchange("nodes", |w| write_nodes(net, w))?;
    run.interchange("edges", |w| write_edges(net, w))?;
    run.interchange("decisions", |w| write_decisions(&review.decisions, w))?;
    let papers_rows: Vec<PaperRow> = review
        .paper_ids
        .iter()
        .enumerate()
        .map(|(node_id, id)| PaperRow {
            node_id,
            paper_id: id,
        })
        .collect();
    run.table("papers", &papers_rows)?;
    let (text, rows) = network_summary(net, &review.decisions);
    run.table("groups", &rows)?;
    run.report("summary", &text, &rows)?;
    print!("{text}");
    Ok(())
}

#[derive(Serialize)]
struct PerceptionRow {
    node_id: NodeId,
    group: Group,
    y: u8,
    h: u8,
    accepted_peers: Option<u32>,
    peers: Option<u32>,
    expectation: Option<f64>,
    fair: Option<bool>,
    eligible: bool,
}

impl PerceptionRow {
    fn new(net: &AttributedNetwork, r: &PerceptionRecord) -> Self {
        PerceptionRow {
            node_id: r.node,
            group: net.protected(r.node),
            y: r.outcome.into(),
            h: r.decision.into(),
            accepted_peers: r.expectation.map(|e| e.accepted_peers),
            peers: r.expectation.map(|e| e.peers),
            expectation: r.expectation.map(|e| e.value()),
            fair: r.fair,
            eligible: r.eligible,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
enum Cell {
    Tp,
    Fn,
    Fp,
    Tn,
    All,
}

impl Cell {
    fn of(outcome: bool, decision: bool) -> Cell {
        match (outcome, decision) {
            (true, true) => Cell::Tp,
            (true, false) => Cell::Fn,
            (false, true) => Cell::Fp,
            (false, false) => Cell::Tn,
        }
    }
}

#[derive(Serialize)]
struct BreakdownRow {
    group: Group,
    cell: Cell,
    nodes: u64,
    fair: u64,
    unfair: u64,
    ineligible: u64,
    fair_share: Option<f64>,
}

fn breakdown(records: &[PerceptionRecord], partition: &GroupPartition) -> Vec<BreakdownRow> {
    let cells = [Cell::Tp, Cell::Fn, Cell::Fp, Cell::Tn, Cell::All];
    let mut rows = Vec::new();
    for (group, nodes) in partition.iter() {
        for cell in cells {
            let mut row = BreakdownRow {
                group,
                cell,
                nodes: 0,
                fair: 0,
                unfair: 0,
                ineligible: 0,
                fair_share: None,
            };
            for r in nodes.iter().map(|v| &records[v.index()]) {
                if cell != Cell::All && Cell::of(r.outcome, r.decision) != cell {
                    continue;
                }
                row.nodes += 1;
                match r.fair {
                    Some(true) => row.fair += 1,
                    Some(false) => row.unfair += 1,
                    None => {}
                }
                row.ineligible += u64::from(!r.eligible);
            }
            let judged = row.fair + row.unfair;
            row.fair_share = (judged > 0).then(|| Rate::new(row.fair, judged).value());
            rows.push(row);
        }
    }
    rows
}

#[derive(Serialize)]
struct HistogramRow {
    group: Group,
    y: u8,
    bin_lower: f64,
    bin_upper: f64,
    count: u64,
}

/// Expectation distribution of rejected nodes per group and outcome. Bin `k`
/// holds `k/B <= E < (k+1)/B`; the last bin also holds `E = 1`.
fn rejected_histogram(
    records: &[PerceptionRecord],
    partition: &GroupPartition,
) -> Vec<HistogramRow> {
    let mut rows = Vec::new();
    for (group, nodes) in partition.iter() {
        for y in [true, false] {
            let mut counts = vec![0u64; HISTOGRAM_BINS as usize];
            for r in nodes.iter().map(|v| &records[v.index()]) {
                let Some(e) = r.expectation.filter(|_| !r.decision && r.outcome == y) else {
                    continue;
                };
                let bin = if e.peers == 0 {
                    0
                } else {
                    (u64::from(e.accepted_peers) * u64::from(HISTOGRAM_BINS) / u64::from(e.peers))
                        .min(u64::from(HISTOGRAM_BINS) - 1)
                };
                counts[bin as usize] += 1;
            }
            for (k, &count) in counts.iter().enumerate() {
                rows.push(HistogramRow {
                    group,
                    y: y.into(),
                    bin_lower: k as f64 / f64::from(HISTOGRAM_BINS),
                    bin_upper: (k + 1) as f64 / f64::from(HISTOGRAM_BINS),
                    count,
                });
            }
        }
    }
    rows
}

#[derive(Serialize)]
struct VisibilityRow {
    group: Group,
    nodes: usize,
    fair: u64,
    denominator: u64,
    excluded: u64,
    fairness_visibility: Option<f64>,
    acceptance_probability: f64,
    acceptance_exact: String,
}

fn visibility_rows(
    net: &AttributedNetwork,
    h: &DecisionVector,
    records: &[PerceptionRecord],
    partition: &GroupPartition,
) -> Result<Vec<VisibilityRow>> {
    partition
        .iter()
        .map(|(group, nodes)| {
            let vis = fairness_visibility(records, nodes)?;
            let acc = netfair_core::acceptance_probability(net, h, nodes)?;
            Ok(VisibilityRow {
                group,
                nodes: nodes.len(),
                fair: vis.fair,
                denominator: vis.denominator,
                excluded: vis.excluded,
                fairness_visibility: vis.value(),
                acceptance_probability: acc.value(),
                acceptance_exact: acc.to_string(),
            })
        })
        .collect()
}

fn visibility_text(rows: &[VisibilityRow]) -> String {
    let mut text = String::new();
    for r in rows {
        let fv = match r.fairness_visibility {
            Some(v) => format!("{v:.4} ({}/{})", r.fair, r.denominator),
            None => format!("undefined (0 eligible of {})", r.nodes),
        };
        let _ = writeln!(
            text,
            "X_p = {}: FV = {fv}, P(h=1) = {:.4} ({})",
            r.group, r.acceptance_probability, r.acceptance_exact
        );
    }
    text
}

pub fn perceive(global: &Global, args: &NetworkArgs) -> Result<()> {
    let loaded = load(args)?;
    gate_connected(global, &loaded.net)?;
    let (net, h) = (&loaded.net, &loaded.h);
    let policy = ExpectationPolicy::new(global.delta, global.rule());
    let records = perceive_all(net, h, &policy)?.records;
    let partition = GroupPartition::from_network(net);

    let mut run = Run::new(global, "perceive");
    record_inputs(&mut run, args, &loaded);
    run.param("histogram_bins", HISTOGRAM_BINS);
    run.plan(&[
        ("perception", Kind::Table),
        ("breakdown", Kind::Table),
        ("histogram", Kind::Table),
        ("visibility", Kind::Table),
    ])?;
    let rows: Vec<PerceptionRow> = records.iter().map(|r| PerceptionRow::new(net, r)).collect();
    run.table("perception", &rows)?;
    run.table("breakdown", &breakdown(&records, &partition))?;
    run.table("histogram", &rejected_histogram(&records, &partition))?;
    let vis = visibility_rows(net, h, &records, &partition)?;
    run.table("visibility", &vis)?;
    print!("{}", visibility_text(&vis));
    Ok(())
}

#[derive(Serialize)]
struct SweepRowOut {
    delta: u32,
    group: Group,
    fairness_visibility: Option<f64>,
    acceptance_probability: f64,
    fair: u64,
    denominator: u64,
    excluded: u64,
}

#[derive(Serialize)]
struct GroupConvergenceOut {
    group: Group,
    terminal_fair: u64,
    terminal_denominator: u64,
    terminal_visibility: Option<f64>,
    acceptance_exact: String,
    equal: bool,
}

#[derive(Serialize)]
struct ConvergenceOut {
    component_sizes: Vec<usize>,
    saturation_delta: u32,
    failed_hypotheses: Vec<netfair_core::visibility::Hypothesis>,
    converged: Option<bool>,
    groups: Vec<GroupConvergenceOut>,
}

pub fn sweep(global: &Global, args: &SweepArgs) -> Result<()> {
    if global.plot && global.format == crate::Format::Json {
        return Err(usage(
            "--plot reads the delimited sweep table; drop --format json",
        ));
    }
    let loaded = load(&args.network)?;
    gate_connected(global, &loaded.net)?;
    let (net, h) = (&loaded.net, &loaded.h);
    let partition = GroupPartition::from_network(net);
    let report = convergence_check(net, h, &partition, global.rule())?;
    let delta_max = args.delta_max.unwrap_or(report.saturation_delta);
    let table = visibility_sweep(net, h, &partition, delta_max, global.rule())?;

    let mut run = Run::new(global, "sweep");
    record_inputs(&mut run, &args.network, &loaded);
    run.param("delta_max", delta_max);
    let mut planned = vec![("sweep", Kind::Table), ("convergence", Kind::Report)];
    if global.plot {
        planned.push(("plot_sweep.py", Kind::Script));
    }
    run.plan(&planned)?;

    let rows: Vec<SweepRowOut> = table
        .rows
        .iter()
        .map(|r| SweepRowOut {
            delta: r.delta,
            group: r.group,
            fairness_visibility: r.fairness_visibility(),
            acceptance_probability: r.acceptance_probability(),
            fair: r.visibility.fair,
            denominator: r.visibility.denominator,
            excluded: r.visibility.excluded,
        })
        .collect();
    let sweep_path = run.table("sweep", &rows)?;
    if global.plot {
        let sweep_name = sweep_path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned());
        let sweep_name = sweep_name.unwrap_or_default();
        run.script(
            "plot_sweep.py",
            &netfair_core::visibility::plot_script(&sweep_name, "sweep.png"),
        )?;
    }

    let structured = ConvergenceOut {
        component_sizes: report.component_sizes.clone(),
        saturation_delta: report.saturation_delta,
        failed_hypotheses: report.failed_hypotheses.clone(),
        converged: report.converged(),
        groups: report
            .groups
            .iter()
            .map(|g| GroupConvergenceOut {
                group: g.group,
                terminal_fair: g.terminal.fair,
                terminal_denominator: g.terminal.denominator,
                terminal_visibility: g.terminal.value(),
                acceptance_exact: g.acceptance.to_string(),
                equal: g.equal,
            })
            .collect(),
    };
    let mut text = String::new();
    let _ = writeln!(text, "saturation delta: {}", report.saturation_delta);
    let _ = writeln!(text, "{}", component_report(net));
    if report.hypotheses_hold() {
        let _ = writeln!(text, "hypotheses: connected, TPR > 0, FPR > 0");
    } else {
        let failed: Vec<String> = report
            .failed_hypotheses
            .iter()
            .map(|h| format!("{h:?}"))
            .collect();
        let _ = writeln!(text, "hypotheses not met: {}", failed.join(", "));
    }
    for g in &structured.groups {
        let terminal = g
            .terminal_visibility
            .map_or_else(|| "undefined".to_string(), |v| format!("{v:.4}"));
        let _ = writeln!(
            text,
            "X_p = {}: FV at saturation = {terminal} ({}/{}), P(h=1) = {}, equal = {}",
            g.group, g.terminal_fair, g.terminal_denominator, g.acceptance_exact, g.equal
        );
    }
    run.report("convergence", &text, &structured)?;
    print!("{text}");
    if report.converged() == Some(false) {
        return Err(verification(
            "fairness visibility at saturation differs from acceptance probability",
        ));
    }
    Ok(())
}

#[derive(Serialize)]
struct ParityGroupRow {
    measure: &'static str,
    group: Group,
    numerator: u64,
    denominator: u64,
    value: Option<f64>,
}

#[derive(Serialize)]
struct ParityGapRow {
    measure: &'static str,
    gap: Option<f64>,
    epsilon: f64,
    holds: Option<bool>,
}

pub fn parity(global: &Global, args: &NetworkArgs) -> Result<()> {
    let loaded = load(args)?;
    gate_connected(global, &loaded.net)?;
    let (net, h) = (&loaded.net, &loaded.h);
    let partition = GroupPartition::from_network(net);
    let policy = ExpectationPolicy::new(global.delta, global.rule());
    let records = perceive_all(net, h, &policy)?.records;
    let fv = visibility_parity_gap(&records, &partition)?;
    let dp = demographic_parity_gap(net, h, &partition)?;

    let mut run = Run::new(global, "parity");
    record_inputs(&mut run, args, &loaded);
    run.param("epsilon", global.epsilon);
    run.plan(&[("parity_groups", Kind::Table), ("parity", Kind::Table)])?;

    let mut group_rows: Vec<ParityGroupRow> = fv
        .groups
        .iter()
        .map(|&(group, v)| ParityGroupRow {
            measure: "fairness_visibility",
            group,
            numerator: v.fair,
            denominator: v.denominator,
            value: v.value(),
        })
        .collect();
    group_rows.extend(dp.groups.iter().map(|&(group, r)| ParityGroupRow {
        measure: "acceptance_probability",
        group,
        numerator: r.hits,
        denominator: r.total,
        value: Some(r.value()),
    }));
    let gaps = [
        ParityGapRow {
            measure: "fairness_visibility",
            gap: fv.gap,
            epsilon: global.epsilon,
            holds: fv.holds(global.epsilon),
        },
        ParityGapRow {
            measure: "demographic",
            gap: Some(dp.gap),
            epsilon: global.epsilon,
            holds: Some(dp.holds(global.epsilon)),
        },
    ];
    run.table("parity_groups", &group_rows)?;
    run.table("parity", &gaps)?;
    for g in &gaps {
        let gap = g
            .gap
            .map_or_else(|| "undefined".to_string(), |v| format!("{v:.4}"));
        let holds = g
            .holds
            .map_or_else(|| "undefined".to_string(), |v| v.to_string());
        println!(
            "{} parity gap: {gap} (epsilon {}, holds: {holds})",
            g.measure, g.epsilon
        );
    }
    Ok(())
}

pub fn axioms(global: &Global, args: &AxiomsArgs) -> Result<()> {
    let mut config = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            SuiteConfig::from_toml_str(&text)
                .map_err(|e| usage(format!("{}: {e}", path.display())))?
        }
        None => SuiteConfig::default(),
    };
    if let Some(d) = global.degenerate {
        config.degenerate = d.into();
    }
    let seed = global.seed.unwrap_or(0);
    let trials = usize::try_from(args.trials).map_err(|_| usage("--trials too large"))?;
    let report = run_axiom_suite(&config, trials, seed)?;

    let mut run = Run::new(global, "axioms");
    if let Some(p) = &args.config {
        run.input("config", p);
    }
    run.seed(seed).param("trials", trials);
    run.plan(&[("axioms", Kind::Report)])?;
    let text = report.to_text();
    run.report("axioms", &text, &report)?;
    print!("{text}");
    if !report.passed() {
        return Err(verification("axiom suite reported violations"));
    }
    Ok(())
}

pub fn synth(global: &Global, args: &SynthArgs) -> Result<()> {
    let mut run = Run::new(global, "synth");
    let (net, h, config) = match &args.config {
        Some(path) => {
            let mut config = SynthConfig::from_file(path).map_err(|e| usage(e.to_string()))?;
            if let Some(seed) = global.seed {
                config.seed = seed;
            }
            let net = random_attributed_graph(&config)?;
            let h = biased_decision(&net, &config)?;
            run.input("config", path).seed(config.seed);
            (net, h, Some(config))
        }
        None => {
            let seed = global.seed.unwrap_or(0);
            let (net, h) = pitfall_instance(seed)?;
            run.seed(seed).param("instance", "pitfall");
            (net, h, None)
        }
    };
    let mut planned = vec![
        ("nodes", Kind::Interchange),
        ("edges", Kind::Interchange),
        ("decisions", Kind::Interchange),
        ("groups", Kind::Table),
    ];
    if config.is_some() {
        planned.push(("config.toml", Kind::Script));
    }
    run.plan(&planned)?;
    run.interchange("nodes", |w| write_nodes(&net, w))?;
    run.interchange("edges", |w| write_edges(&net, w))?;
    run.interchange("decisions", |w| write_decisions(&h, w))?;
    let (text, rows) = network_summary(&net, &h);
    run.table("groups", &rows)?;
    if let Some(config) = &config {
        run.script("config.toml", &config.to_toml_string())?;
    }
    print!("{text}");
    Ok(())
}
