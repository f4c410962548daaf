//! Peer-review network construction from local paper/author tables, and the
//! delimiter-separated interchange format for networks and decisions.
//!
//! Interchange tables (comma-separated, header row, `#` comment lines are
//! ignored on input):
//!
//! * nodes: `node_id,protected,outcome[,<attribute>...]`
//! * edges: `node_a,node_b`
//! * decisions: `node_id,decision`
//!
//! Review inputs:
//!
//! * papers: `paper_id,author_ids,avg_rating,accepted`, `author_ids` being a
//!   `;`-separated list
//! * authors: `author_id,affiliation,prior_collaborator_ids`, the last a
//!   `;`-separated list
//! * famous authors / top institutions: one entry per line
//!
//! Papers and authors may also be given as JSON arrays of objects with the
//! same field names (lists as arrays); files ending in `.json` are read that way.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{AttributedNetwork, DecisionVector, GraphError, Group, NodeId, NodeLabel};

pub const LIST_SEPARATOR: char = ';';
pub const NODES_FILE: &str = "nodes.csv";
pub const EDGES_FILE: &str = "edges.csv";
pub const DECISIONS_FILE: &str = "decisions.csv";

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("{}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}{}: {message}", row_suffix(*.row))]
    Schema {
        path: PathBuf,
        row: Option<u64>,
        message: String,
    },
    #[error("{0}: no data rows")]
    Empty(PathBuf),
    #[error("paper {paper}: author {author} not found in the authors table")]
    DanglingAuthor { paper: String, author: String },
    #[error("paper {0}: missing average rating")]
    MissingRating(String),
    #[error("paper {0}: no authors listed")]
    NoAuthors(String),
    #[error("duplicate {kind} id {id}")]
    Duplicate { kind: &'static str, id: String },
    #[error("protected attribute {0:?} selected but its list is empty")]
    EmptyProtectedList(ProtectedAttribute),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn row_suffix(row: Option<u64>) -> String {
    row.map(|r| format!(", line {r}")).unwrap_or_default()
}

impl IngestError {
    fn io(path: &Path, source: std::io::Error) -> Self {
        IngestError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    fn schema(path: &Path, row: Option<u64>, message: impl Into<String>) -> Self {
        IngestError::Schema {
            path: path.to_path_buf(),
            row,
            message: message.into(),
        }
    }

    fn csv(path: &Path, err: csv::Error) -> Self {
        let row = err.position().map(|p| p.line());
        match err.into_kind() {
            csv::ErrorKind::Io(source) => IngestError::io(path, source),
            kind => IngestError::schema(path, row, csv_message(kind)),
        }
    }
}

fn csv_message(kind: csv::ErrorKind) -> String {
    match kind {
        csv::ErrorKind::Deserialize { err, .. } => err.to_string(),
        csv::ErrorKind::UnequalLengths {
            expected_len, len, ..
        } => format!("expected {expected_len} fields, found {len}"),
        other => format!("{other:?}"),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PaperRecord {
    pub paper_id: String,
    pub author_ids: Vec<String>,
    pub avg_rating: Option<f64>,
    pub accepted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuthorRecord {
    pub author_id: String,
    #[serde(default)]
    pub affiliation: String,
    #[serde(default)]
    pub prior_collaborator_ids: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProtectedAttribute {
    Famous,
    TopInstitution,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProtectedSpec {
    pub famous_author_ids: BTreeSet<String>,
    pub top_institution_names: BTreeSet<String>,
    pub attribute_choice: ProtectedAttribute,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinkRule {
    /// Papers are linked when they share an author.
    #[default]
    SharedAuthor,
    /// Also link when an author of one paper lists an author of the other
    /// as a prior collaborator (either direction).
    SharedAuthorOrCollaboration,
}

/// How author ids and institution names are matched.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdMatching {
    #[default]
    Exact,
    /// Case-folded, with whitespace runs collapsed and ends trimmed.
    Folded,
}

impl IdMatching {
    pub fn key(self, id: &str) -> String {
        match self {
            IdMatching::Exact => id.to_string(),
            IdMatching::Folded => id
                .split_whitespace()
                .collect::<Vec<_>>()
                .join(" ")
                .to_lowercase(),
        }
    }
}

/// Acceptability threshold convention: `y = 1` iff `avg_rating > threshold - 1`.
pub const DEFAULT_THRESHOLD: f64 = 6.0;

fn author_index(
    authors: &[AuthorRecord],
    matching: IdMatching,
) -> Result<HashMap<String, &AuthorRecord>, IngestError> {
    let mut index = HashMap::with_capacity(authors.len());
    for a in authors {
        if index.insert(matching.key(&a.author_id), a).is_some() {
            return Err(IngestError::Duplicate {
                kind: "author",
                id: a.author_id.clone(),
            });
        }
    }
    Ok(index)
}

fn check_papers(
    papers: &[PaperRecord],
    authors: &HashMap<String, &AuthorRecord>,
    matching: IdMatching,
) -> Result<(), IngestError> {
    let mut ids = HashSet::with_capacity(papers.len());
    for p in papers {
        if !ids.insert(p.paper_id.as_str()) {
            return Err(IngestError::Duplicate {
                kind: "paper",
                id: p.paper_id.clone(),
            });
        }
        if p.author_ids.is_empty() {
            return Err(IngestError::NoAuthors(p.paper_id.clone()));
        }
        for a in &p.author_ids {
            if !authors.contains_key(&matching.key(a)) {
                return Err(IngestError::DanglingAuthor {
                    paper: p.paper_id.clone(),
                    author: a.clone(),
                });
            }
        }
    }
    Ok(())
}

/// Edges between papers, as `(i, j)` indices into `papers` with `i < j`,
/// sorted and free of duplicates.
pub fn review_edges(
    papers: &[PaperRecord],
    authors: &[AuthorRecord],
    rule: LinkRule,
    matching: IdMatching,
) -> Result<Vec<(usize, usize)>, IngestError> {
    let index = author_index(authors, matching)?;
    check_papers(papers, &index, matching)?;

    let mut papers_of: HashMap<String, Vec<usize>> = HashMap::new();
    for (i, p) in papers.iter().enumerate() {
        let keys: BTreeSet<String> = p.author_ids.iter().map(|a| matching.key(a)).collect();
        for key in keys {
            papers_of.entry(key).or_default().push(i);
        }
    }

    // linked[a] = authors whose papers connect to a's papers
    let mut linked: HashMap<&str, BTreeSet<String>> = HashMap::new();
    for key in papers_of.keys() {
        linked.entry(key).or_default().insert(key.clone());
    }
    if rule == LinkRule::SharedAuthorOrCollaboration {
        for a in authors {
            let ka = matching.key(&a.author_id);
            for c in &a.prior_collaborator_ids {
                let kc = matching.key(c);
                if let (Some((ka, _)), Some((kc, _))) =
                    (papers_of.get_key_value(&ka), papers_of.get_key_value(&kc))
                {
                    linked.entry(ka).or_default().insert(kc.clone());
                    linked.entry(kc).or_default().insert(ka.clone());
                }
            }
        }
    }

    let mut edges = BTreeSet::new();
    for (author, others) in &linked {
        let mine = &papers_of[*author];
        for other in others {
            for &p in mine {
                for &q in &papers_of[other] {
                    if p != q {
                        edges.insert((p.min(q), p.max(q)));
                    }
                }
            }
        }
    }
    Ok(edges.into_iter().collect())
}

/// `X_p = 0` when any author is famous (or any affiliation is a top
/// institution, per the chosen attribute), otherwise `X_p = 1`.
pub fn assign_protected(
    papers: &[PaperRecord],
    authors: &[AuthorRecord],
    spec: &ProtectedSpec,
    matching: IdMatching,
) -> Result<Vec<Group>, IngestError> {
    let index = author_index(authors, matching)?;
    let list = match spec.attribute_choice {
        ProtectedAttribute::Famous => &spec.famous_author_ids,
        ProtectedAttribute::TopInstitution => &spec.top_institution_names,
    };
    if list.is_empty() {
        return Err(IngestError::EmptyProtectedList(spec.attribute_choice));
    }
    let set: HashSet<String> = list.iter().map(|s| matching.key(s)).collect();
    Ok(papers
        .iter()
        .map(|p| {
            let is_member = |author: &String| match spec.attribute_choice {
                ProtectedAttribute::Famous => set.contains(&matching.key(author)),
                ProtectedAttribute::TopInstitution => index
                    .get(&matching.key(author))
                    .is_some_and(|a| set.contains(&matching.key(&a.affiliation))),
            };
            if p.author_ids.iter().any(is_member) {
                Group(0)
            } else {
                Group(1)
            }
        })
        .collect())
}

/// `y = 1` iff `avg_rating > threshold - 1`.
pub fn acceptability_labels(
    papers: &[PaperRecord],
    threshold: f64,
) -> Result<Vec<bool>, IngestError> {
    papers
        .iter()
        .map(|p| match p.avg_rating {
            Some(r) if r.is_finite() => Ok(r > threshold - 1.0),
            _ => Err(IngestError::MissingRating(p.paper_id.clone())),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReviewOptions {
    pub link_rule: LinkRule,
    pub threshold: f64,
    pub matching: IdMatching,
}

impl Default for ReviewOptions {
    fn default() -> Self {
        ReviewOptions {
            link_rule: LinkRule::SharedAuthor,
            threshold: DEFAULT_THRESHOLD,
            matching: IdMatching::Exact,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReviewNetwork {
    pub network: AttributedNetwork,
    /// Acceptance decisions, `h`.
    pub decisions: DecisionVector,
    /// `paper_ids[i]` is the paper behind node `i`.
    pub paper_ids: Vec<String>,
}

/// One node per paper in input order, with protected value, acceptability
/// outcome and the acceptance decision.
pub fn build_review_network(
    papers: &[PaperRecord],
    authors: &[AuthorRecord],
    spec: &ProtectedSpec,
    options: &ReviewOptions,
) -> Result<ReviewNetwork, IngestError> {
    let edges = review_edges(papers, authors, options.link_rule, options.matching)?;
    let protected = assign_protected(papers, authors, spec, options.matching)?;
    let outcomes = acceptability_labels(papers, options.threshold)?;
    let labels = protected
        .into_iter()
        .zip(outcomes)
        .map(|(protected, outcome)| NodeLabel {
            protected,
            outcome,
            attributes: Vec::new(),
        })
        .collect();
    Ok(ReviewNetwork {
        network: AttributedNetwork::new(labels, &edges)?,
        decisions: DecisionVector::new(papers.iter().map(|p| p.accepted).collect()),
        paper_ids: papers.iter().map(|p| p.paper_id.clone()).collect(),
    })
}

fn open(path: &Path) -> Result<File, IngestError> {
    File::open(path).map_err(|e| IngestError::io(path, e))
}

fn csv_reader<R: Read>(input: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(input)
}

fn is_json(path: &Path) -> bool {
    path.extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

fn split_list(field: &str) -> Vec<String> {
    field
        .split(LIST_SEPARATOR)
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

fn parse_bool(field: &str) -> Option<bool> {
    match field.trim().to_ascii_lowercase().as_str() {
        "1" | "true" | "yes" | "accept" | "accepted" => Some(true),
        "0" | "false" | "no" | "reject" | "rejected" => Some(false),
        _ => None,
    }
}

#[derive(Deserialize)]
struct PaperRow {
    paper_id: String,
    author_ids: String,
    avg_rating: Option<f64>,
    accepted: String,
}

#[derive(Deserialize)]
struct AuthorRow {
    author_id: String,
    #[serde(default)]
    affiliation: String,
    #[serde(default)]
    prior_collaborator_ids: String,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<Vec<T>, IngestError> {
    serde_json::from_reader(std::io::BufReader::new(open(path)?))
        .map_err(|e| IngestError::schema(path, Some(e.line() as u64), e.to_string()))
}

pub fn read_papers(path: &Path) -> Result<Vec<PaperRecord>, IngestError> {
    let papers = if is_json(path) {
        read_json(path)?
    } else {
        let mut reader = csv_reader(open(path)?);
        let headers = reader
            .headers()
            .map_err(|e| IngestError::csv(path, e))?
            .clone();
        let mut papers = Vec::new();
        for record in reader.records() {
            let record = record.map_err(|e| IngestError::csv(path, e))?;
            let line = record.position().map(|p| p.line());
            let row: PaperRow = record
                .deserialize(Some(&headers))
                .map_err(|e| IngestError::csv(path, e))?;
            let accepted = parse_bool(&row.accepted).ok_or_else(|| {
                IngestError::schema(
                    path,
                    line,
                    format!(
                        "paper {}: cannot read accepted = {:?}",
                        row.paper_id, row.accepted
                    ),
                )
            })?;
            papers.push(PaperRecord {
                paper_id: row.paper_id,
                author_ids: split_list(&row.author_ids),
                avg_rating: row.avg_rating,
                accepted,
            });
        }
        papers
    };
    if papers.is_empty() {
        return Err(IngestError::Empty(path.to_path_buf()));
    }
    Ok(papers)
}

pub fn read_authors(path: &Path) -> Result<Vec<AuthorRecord>, IngestError> {
    if is_json(path) {
        return read_json(path);
    }
    let mut reader = csv_reader(open(path)?);
    reader
        .deserialize::<AuthorRow>()
        .map(|row| {
            let row = row.map_err(|e| IngestError::csv(path, e))?;
            Ok(AuthorRecord {
                author_id: row.author_id,
                affiliation: row.affiliation,
                prior_collaborator_ids: split_list(&row.prior_collaborator_ids),
            })
        })
        .collect()
}

/// One entry per line; blank lines and `#` comments are skipped.
pub fn read_list(path: &Path) -> Result<BTreeSet<String>, IngestError> {
    let text = std::fs::read_to_string(path).map_err(|e| IngestError::io(path, e))?;
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(String::from)
        .collect())
}

/// Edge-list cleanup applied by [`LoadOptions::normalize_edges`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeNormalization {
    pub self_loops_dropped: usize,
    pub duplicates_dropped: usize,
}

/// Drops self-loops and repeated edges (either orientation), keeping first
/// occurrences in order.
pub fn normalize_edges(edges: &[(usize, usize)]) -> (Vec<(usize, usize)>, EdgeNormalization) {
    let mut report = EdgeNormalization::default();
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(edges.len());
    for &(a, b) in edges {
        if a == b {
            report.self_loops_dropped += 1;
        } else if seen.insert((a.min(b), a.max(b))) {
            out.push((a, b));
        } else {
            report.duplicates_dropped += 1;
        }
    }
    (out, report)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LoadOptions {
    /// Clean the edge list instead of rejecting self-loops and duplicates.
    pub normalize_edges: bool,
}

fn parse_field<T: std::str::FromStr>(
    path: &Path,
    record: &csv::StringRecord,
    index: usize,
    name: &str,
) -> Result<T, IngestError> {
    let line = record.position().map(|p| p.line());
    let raw = record
        .get(index)
        .ok_or_else(|| IngestError::schema(path, line, format!("missing {name}")))?;
    raw.parse()
        .map_err(|_| IngestError::schema(path, line, format!("cannot parse {name} = {raw:?}")))
}

fn expect_header(
    path: &Path,
    headers: &csv::StringRecord,
    expected: &[&str],
) -> Result<(), IngestError> {
    let found: Vec<&str> = headers.iter().collect();
    if found.len() < expected.len() || found[..expected.len()] != *expected {
        return Err(IngestError::schema(
            path,
            Some(1),
            format!(
                "header must start with {}, found {}",
                expected.join(","),
                found.join(",")
            ),
        ));
    }
    Ok(())
}

fn parse_bit(
    path: &Path,
    record: &csv::StringRecord,
    index: usize,
    name: &str,
) -> Result<bool, IngestError> {
    match parse_field::<u8>(path, record, index, name)? {
        0 => Ok(false),
        1 => Ok(true),
        other => Err(IngestError::schema(
            path,
            record.position().map(|p| p.line()),
            format!("{name} must be 0 or 1, found {other}"),
        )),
    }
}

pub fn read_nodes<R: Read>(
    path: &Path,
    input: R,
) -> Result<(Vec<NodeLabel>, Vec<String>), IngestError> {
    let mut reader = csv_reader(input);
    let headers = reader
        .headers()
        .map_err(|e| IngestError::csv(path, e))?
        .clone();
    expect_header(path, &headers, &["node_id", "protected", "outcome"])?;
    let names: Vec<String> = headers.iter().skip(3).map(String::from).collect();
    let mut slots: Vec<Option<NodeLabel>> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| IngestError::csv(path, e))?;
        let line = record.position().map(|p| p.line());
        let id: usize = parse_field(path, &record, 0, "node_id")?;
        let label = NodeLabel {
            protected: Group(parse_field(path, &record, 1, "protected")?),
            outcome: parse_bit(path, &record, 2, "outcome")?,
            attributes: (0..names.len())
                .map(|i| parse_field(path, &record, 3 + i, &names[i]))
                .collect::<Result<_, _>>()?,
        };
        if id >= slots.len() {
            slots.resize(id + 1, None);
        }
        if slots[id].replace(label).is_some() {
            return Err(IngestError::schema(
                path,
                line,
                format!("node {id} listed twice"),
            ));
        }
    }
    let labels = slots
        .into_iter()
        .enumerate()
        .map(|(i, l)| {
            l.ok_or_else(|| {
                IngestError::schema(path, None, format!("node ids not dense: {i} missing"))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((labels, names))
}

pub fn read_edges<R: Read>(path: &Path, input: R) -> Result<Vec<(usize, usize)>, IngestError> {
    let mut reader = csv_reader(input);
    let headers = reader
        .headers()
        .map_err(|e| IngestError::csv(path, e))?
        .clone();
    expect_header(path, &headers, &["node_a", "node_b"])?;
    reader
        .records()
        .map(|record| {
            let record = record.map_err(|e| IngestError::csv(path, e))?;
            Ok((
                parse_field(path, &record, 0, "node_a")?,
                parse_field(path, &record, 1, "node_b")?,
            ))
        })
        .collect()
}

/// Loads `nodes` and `edges` tables into a network.
pub fn load_network(
    nodes_path: &Path,
    edges_path: &Path,
    options: LoadOptions,
) -> Result<(AttributedNetwork, EdgeNormalization), IngestError> {
    let (labels, names) = read_nodes(nodes_path, open(nodes_path)?)?;
    let mut edges = read_edges(edges_path, open(edges_path)?)?;
    let mut report = EdgeNormalization::default();
    if options.normalize_edges {
        (edges, report) = normalize_edges(&edges);
    }
    let net = AttributedNetwork::with_attribute_names(labels, &edges, names)
        .map_err(|e| IngestError::schema(edges_path, None, e.to_string()))?;
    Ok((net, report))
}

/// Loads `nodes.csv` and `edges.csv` from a directory.
pub fn load_network_dir(
    dir: &Path,
    options: LoadOptions,
) -> Result<(AttributedNetwork, EdgeNormalization), IngestError> {
    load_network(&dir.join(NODES_FILE), &dir.join(EDGES_FILE), options)
}

pub fn read_decisions<R: Read>(
    path: &Path,
    input: R,
    net: &AttributedNetwork,
) -> Result<DecisionVector, IngestError> {
    let mut reader = csv_reader(input);
    let headers = reader
        .headers()
        .map_err(|e| IngestError::csv(path, e))?
        .clone();
    expect_header(path, &headers, &["node_id", "decision"])?;
    let mut slots = vec![None; net.node_count()];
    for record in reader.records() {
        let record = record.map_err(|e| IngestError::csv(path, e))?;
        let line = record.position().map(|p| p.line());
        let id: usize = parse_field(path, &record, 0, "node_id")?;
        let bit = parse_bit(path, &record, 1, "decision")?;
        let slot = slots
            .get_mut(id)
            .ok_or_else(|| IngestError::schema(path, line, format!("node {id} not in network")))?;
        if slot.replace(bit).is_some() {
            return Err(IngestError::schema(
                path,
                line,
                format!("node {id} listed twice"),
            ));
        }
    }
    let decisions = slots
        .into_iter()
        .enumerate()
        .map(|(i, d)| {
            d.ok_or_else(|| IngestError::schema(path, None, format!("no decision for node {i}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DecisionVector::new(decisions))
}

pub fn load_decisions(path: &Path, net: &AttributedNetwork) -> Result<DecisionVector, IngestError> {
    read_decisions(path, open(path)?, net)
}

fn bit(b: bool) -> &'static str {
    if b {
        "1"
    } else {
        "0"
    }
}

pub fn write_nodes<W: Write>(net: &AttributedNetwork, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["node_id".to_string(), "protected".into(), "outcome".into()];
    header.extend(net.attribute_names().iter().cloned());
    w.write_record(&header)?;
    for v in net.nodes() {
        let label = net.label(v);
        let mut row = vec![
            v.to_string(),
            label.protected.to_string(),
            bit(label.outcome).into(),
        ];
        row.extend(label.attributes.iter().map(f64::to_string));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_edges<W: Write>(net: &AttributedNetwork, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["node_a", "node_b"])?;
    for (a, b) in net.edges() {
        w.write_record([a.to_string(), b.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_decisions<W: Write>(h: &DecisionVector, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["node_id", "decision"])?;
    for (i, &d) in h.as_slice().iter().enumerate() {
        w.write_record([NodeId(i).to_string(), bit(d).to_string()])?;
    }
    w.flush()?;
    Ok(())
}

fn create(path: &Path) -> Result<BufWriter<File>, IngestError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| IngestError::io(path, e))
}

fn csv_to_ingest(path: &Path, err: csv::Error) -> IngestError {
    IngestError::csv(path, err)
}

/// Writes `nodes.csv` and `edges.csv` into `dir`, creating it if needed.
pub fn export_network(net: &AttributedNetwork, dir: &Path) -> Result<(), IngestError> {
    std::fs::create_dir_all(dir).map_err(|e| IngestError::io(dir, e))?;
    let nodes = dir.join(NODES_FILE);
    write_nodes(net, create(&nodes)?).map_err(|e| csv_to_ingest(&nodes, e))?;
    let edges = dir.join(EDGES_FILE);
    write_edges(net, create(&edges)?).map_err(|e| csv_to_ingest(&edges, e))?;
    Ok(())
}

pub fn export_decisions(h: &DecisionVector, path: &Path) -> Result<(), IngestError> {
    write_decisions(h, create(path)?).map_err(|e| csv_to_ingest(path, e))
}
