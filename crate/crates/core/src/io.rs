//! Edge-list files and CSV/JSON output.
//!
//! Edge lists are UTF-8, one `<source> <target>` pair per line separated by
//! any whitespace. Blank lines and lines starting with `#` are skipped, and
//! both LF and CRLF endings are accepted. Self-loops are dropped and duplicate
//! edges collapse; both are counted in [`ImportDiagnostics`].
//!
//! Edge lists cannot express isolated nodes, so the writer emits one
//! `#node <id>` comment per isolated node. Other tools read these as
//! comments; this reader restores the node.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use crate::fitting::{Evaluation, FitReport};
use crate::graph::{DegreeView, DependencyGraph, Direction, GraphError, NodeClassifier};
use crate::stats::PairwiseKs;

const NODE_DIRECTIVE: &str = "#node ";

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("{path}: {source}")]
    File {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl IoError {
    fn file(path: &Path, source: io::Error) -> Self {
        IoError::File { path: path.display().to_string(), source }
    }
}

/// What the importer dropped and what it kept.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ImportDiagnostics {
    pub self_loops_dropped: usize,
    pub duplicates_dropped: usize,
    pub nodes: usize,
    pub edges: usize,
    /// `None` below two nodes.
    pub density: Option<f64>,
}

pub fn read_edge_list<R: Read>(reader: R) -> Result<(DependencyGraph, ImportDiagnostics), IoError> {
    let mut g = DependencyGraph::new();
    let mut self_loops = 0;
    let mut duplicates = 0;
    for (i, line) in BufReader::new(reader).lines().enumerate() {
        let line = line.map_err(|e| match e.kind() {
            io::ErrorKind::InvalidData => IoError::Malformed { line: i + 1, reason: "invalid UTF-8".into() },
            _ => IoError::Io(e),
        })?;
        let line = line.strip_suffix('\r').unwrap_or(&line);
        if let Some(rest) = line.strip_prefix(NODE_DIRECTIVE) {
            let mut tokens = rest.split_whitespace();
            if let (Some(id), None) = (tokens.next(), tokens.next()) {
                g.intern(id);
            }
            continue;
        }
        let trimmed = line.trim();
        if trimmed.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let (Some(source), Some(target), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(IoError::Malformed {
                line: i + 1,
                reason: format!("expected `<source> <target>`, got {trimmed:?}"),
            });
        };
        let s = g.intern(source);
        let t = g.intern(target);
        if s == t {
            self_loops += 1;
        } else if !g.add_edge(s, t)? {
            duplicates += 1;
        }
    }
    let diagnostics = ImportDiagnostics {
        self_loops_dropped: self_loops,
        duplicates_dropped: duplicates,
        nodes: g.node_count(),
        edges: g.edge_count(),
        density: g.density().ok(),
    };
    Ok((g, diagnostics))
}

pub fn parse_edge_list(path: &Path) -> Result<(DependencyGraph, ImportDiagnostics), IoError> {
    let file = File::open(path).map_err(|e| IoError::file(path, e))?;
    read_edge_list(file)
}

/// Writes `g` as an edge list with LF endings, edges ordered by node index.
pub fn write_edge_list<W: Write>(g: &DependencyGraph, mut out: W) -> io::Result<()> {
    for id in g.nodes() {
        if g.out_degree(id) == 0 && g.in_degree(id) == 0 {
            writeln!(out, "{NODE_DIRECTIVE}{}", g.label(id))?;
        }
    }
    for (s, t) in g.edges() {
        writeln!(out, "{} {}", g.label(s), g.label(t))?;
    }
    Ok(())
}

pub fn save_edge_list(g: &DependencyGraph, path: &Path) -> Result<(), IoError> {
    let file = File::create(path).map_err(|e| IoError::file(path, e))?;
    let mut w = BufWriter::new(file);
    write_edge_list(g, &mut w)?;
    w.flush()?;
    Ok(())
}

/// Reads app-package prefixes, one per line; blank and `#` lines skipped.
pub fn read_classifier<R: Read>(reader: R) -> Result<NodeClassifier, IoError> {
    let mut prefixes = Vec::new();
    for line in BufReader::new(reader).lines() {
        let line = line?;
        let p = line.trim();
        if !p.is_empty() && !p.starts_with('#') {
            prefixes.push(p.to_owned());
        }
    }
    Ok(NodeClassifier::from_prefixes(prefixes))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    Cdf,
    Icd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Proportion,
    Count,
}

/// CSV `degree,value`, one row per observed degree, ascending.
pub fn write_distribution<W: Write>(view: &DegreeView, form: Form, mode: Mode, mut out: W) -> Result<(), IoError> {
    writeln!(out, "degree,value")?;
    let counts = match form {
        Form::Cdf => view.cdf_counts()?,
        Form::Icd => view.icd_counts()?,
    };
    let n = view.total_nodes() as f64;
    for (d, c) in counts {
        match mode {
            Mode::Count => writeln!(out, "{d},{c}")?,
            Mode::Proportion => writeln!(out, "{d},{}", c as f64 / n)?,
        }
    }
    Ok(())
}

pub fn emit_distribution(g: &DependencyGraph, direction: Direction, form: Form, mode: Mode, path: &Path) -> Result<(), IoError> {
    let file = File::create(path).map_err(|e| IoError::file(path, e))?;
    let mut w = BufWriter::new(file);
    write_distribution(&g.degree_view(direction), form, mode, &mut w)?;
    w.flush()?;
    Ok(())
}

pub const FIT_CSV_HEADER: &str = "p,q,stage,delta_min,delta_median,delta_max";

pub fn write_fit_csv<W: Write>(report: &FitReport, mut out: W) -> io::Result<()> {
    writeln!(out, "{FIT_CSV_HEADER}")?;
    for c in &report.cells {
        writeln!(out, "{},{},{},{},{},{}", c.p, c.q, c.stage, c.min, c.median, c.max)?;
    }
    Ok(())
}

pub fn write_json<W: Write, T: Serialize>(value: &T, mut out: W) -> Result<(), IoError> {
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

pub const EVALUATION_CSV_HEADER: &str = "model,replicates,delta_min,delta_median,delta_max";

/// One row shaped like a per-model block of a results table.
pub fn write_evaluation_csv<W: Write>(model: &str, eval: &Evaluation, header: bool, mut out: W) -> io::Result<()> {
    if header {
        writeln!(out, "{EVALUATION_CSV_HEADER}")?;
    }
    writeln!(out, "{model},{},{},{},{}", eval.deltas.len(), eval.min, eval.median, eval.max)
}

pub const PAIRWISE_CSV_HEADER: &str = "direction,rejected,not_rejected,tests,rejected_ratio";

pub fn write_pairwise_csv<W: Write>(summary: &PairwiseKs, mut out: W) -> io::Result<()> {
    writeln!(out, "{PAIRWISE_CSV_HEADER}")?;
    let total = summary.total();
    let rows = summary
        .counts
        .iter()
        .map(|c| (c.direction.name(), c.rejected, c.not_rejected))
        .chain(std::iter::once(("total", total.rejected, total.not_rejected)));
    for (name, rejected, not_rejected) in rows {
        let tests = rejected + not_rejected;
        let ratio = if tests == 0 { 0.0 } else { rejected as f64 / tests as f64 };
        writeln!(out, "{name},{rejected},{not_rejected},{tests},{ratio}")?;
    }
    Ok(())
}
