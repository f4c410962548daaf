//! Run manifests and output files. Every file starts with the manifest: `#`
//! lines for delimited and text files, a `manifest` member for JSON.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;

use crate::{Format, Global};

#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub tool: String,
    pub command: String,
    pub inputs: Vec<Entry>,
    pub delta: u32,
    pub degenerate_rule: String,
    pub threshold: f64,
    pub seed: Option<u64>,
    pub parameters: Vec<Entry>,
    pub outputs: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Entry {
    pub name: String,
    pub value: String,
}

impl Entry {
    fn new(name: &str, value: impl ToString) -> Self {
        Entry {
            name: name.to_string(),
            value: value.to_string(),
        }
    }
}

#[derive(Serialize)]
struct JsonDoc<'a, T: Serialize + ?Sized> {
    manifest: &'a Manifest,
    #[serde(skip_serializing_if = "Option::is_none")]
    rows: Option<&'a T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<&'a T>,
}

impl Manifest {
    fn header(&self) -> String {
        let mut lines = vec![
            format!("tool: {}", self.tool),
            format!("command: {}", self.command),
        ];
        lines.extend(
            self.inputs
                .iter()
                .map(|e| format!("input.{}: {}", e.name, e.value)),
        );
        lines.push(format!("delta: {}", self.delta));
        lines.push(format!("degenerate_rule: {}", self.degenerate_rule));
        lines.push(format!("threshold: {}", self.threshold));
        lines.push(format!(
            "seed: {}",
            self.seed
                .map_or_else(|| "none".to_string(), |s| s.to_string())
        ));
        lines.extend(
            self.parameters
                .iter()
                .map(|e| format!("{}: {}", e.name, e.value)),
        );
        lines.push(format!("outputs: {}", self.outputs.join(" ")));
        lines.iter().map(|l| format!("# {l}\n")).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// A report table, written in the selected format.
    Table,
    /// An interchange table, always comma-separated.
    Interchange,
    /// Free text, `.txt` or a JSON document in the selected format.
    Report,
    /// A script whose comment syntax is `#`, named verbatim.
    Script,
}

/// Builds the manifest for one command and writes its outputs.
pub struct Run {
    dir: PathBuf,
    format: Format,
    manifest: Manifest,
}

impl Run {
    pub fn new(global: &Global, command: &str) -> Self {
        Run {
            dir: global.out.clone(),
            format: global.format,
            manifest: Manifest {
                tool: format!("netfair {}", env!("CARGO_PKG_VERSION")),
                command: command.to_string(),
                inputs: Vec::new(),
                delta: global.delta,
                degenerate_rule: global.rule().to_string(),
                threshold: global.threshold,
                seed: None,
                parameters: Vec::new(),
                outputs: Vec::new(),
            },
        }
    }

    pub fn input(&mut self, name: &str, path: &Path) -> &mut Self {
        self.manifest.inputs.push(Entry::new(name, path.display()));
        self
    }

    pub fn param(&mut self, name: &str, value: impl ToString) -> &mut Self {
        self.manifest.parameters.push(Entry::new(name, value));
        self
    }

    pub fn seed(&mut self, seed: u64) -> &mut Self {
        self.manifest.seed = Some(seed);
        self
    }

    pub fn file_name(&self, stem: &str, kind: Kind) -> String {
        match (kind, self.format) {
            (Kind::Interchange, _) => format!("{stem}.csv"),
            (Kind::Script, _) => stem.to_string(),
            (Kind::Table, Format::Csv) => format!("{stem}.csv"),
            (Kind::Report, Format::Csv) => format!("{stem}.txt"),
            (Kind::Table | Kind::Report, Format::Json) => format!("{stem}.json"),
        }
    }

    /// Declares the outputs recorded in the manifest; call before writing.
    pub fn plan(&mut self, files: &[(&str, Kind)]) -> Result<()> {
        self.manifest.outputs = files
            .iter()
            .map(|&(stem, kind)| {
                self.dir
                    .join(self.file_name(stem, kind))
                    .display()
                    .to_string()
            })
            .collect();
        std::fs::create_dir_all(&self.dir)
            .with_context(|| format!("creating {}", self.dir.display()))
    }

    fn create(&self, name: &str) -> Result<(PathBuf, BufWriter<File>)> {
        let path = self.dir.join(name);
        let file = File::create(&path).with_context(|| format!("creating {}", path.display()))?;
        Ok((path, BufWriter::new(file)))
    }

    fn json<T: Serialize + ?Sized>(
        &self,
        path: &Path,
        mut out: BufWriter<File>,
        doc: JsonDoc<T>,
    ) -> Result<()> {
        serde_json::to_writer_pretty(&mut out, &doc)?;
        writeln!(out)?;
        out.flush()
            .with_context(|| format!("writing {}", path.display()))
    }

    /// Writes a report table: flat rows, one column per field.
    pub fn table<T: Serialize>(&self, stem: &str, rows: &[T]) -> Result<PathBuf> {
        let (path, mut out) = self.create(&self.file_name(stem, Kind::Table))?;
        match self.format {
            Format::Json => self.json(
                &path,
                out,
                JsonDoc {
                    manifest: &self.manifest,
                    rows: Some(rows),
                    report: None,
                },
            )?,
            Format::Csv => {
                out.write_all(self.manifest.header().as_bytes())?;
                let mut w = csv::Writer::from_writer(out);
                for row in rows {
                    w.serialize(row)?;
                }
                w.flush()
                    .with_context(|| format!("writing {}", path.display()))?;
            }
        }
        Ok(path)
    }

    /// Writes an interchange table through `write`, after the manifest lines.
    pub fn interchange<F>(&self, stem: &str, write: F) -> Result<PathBuf>
    where
        F: FnOnce(&mut BufWriter<File>) -> csv::Result<()>,
    {
        let (path, mut out) = self.create(&self.file_name(stem, Kind::Interchange))?;
        out.write_all(self.manifest.header().as_bytes())?;
        write(&mut out).with_context(|| format!("writing {}", path.display()))?;
        out.flush()?;
        Ok(path)
    }

    /// Writes `text` (delimited mode) or `structured` (JSON mode).
    pub fn report<T: Serialize>(&self, stem: &str, text: &str, structured: &T) -> Result<PathBuf> {
        let (path, mut out) = self.create(&self.file_name(stem, Kind::Report))?;
        match self.format {
            Format::Json => self.json(
                &path,
                out,
                JsonDoc {
                    manifest: &self.manifest,
                    rows: None,
                    report: Some(structured),
                },
            )?,
            Format::Csv => {
                out.write_all(self.manifest.header().as_bytes())?;
                out.write_all(text.as_bytes())?;
                out.flush()
                    .with_context(|| format!("writing {}", path.display()))?;
            }
        }
        Ok(path)
    }

    pub fn script(&self, name: &str, body: &str) -> Result<PathBuf> {
        let (path, mut out) = self.create(name)?;
        out.write_all(self.manifest.header().as_bytes())?;
        out.write_all(body.as_bytes())?;
        out.flush()
            .with_context(|| format!("writing {}", path.display()))?;
        Ok(path)
    }
}
