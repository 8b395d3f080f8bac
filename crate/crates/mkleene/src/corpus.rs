//! Corpus files: one record per line, either `CHECK <proof-file>` or
//! `PROVE "<sequent>" depth=<k>`. Proof paths are relative to the corpus
//! file. Blank lines and lines starting with `#` are skipped.

use std::fmt;
use std::path::{Path, PathBuf};

use mkl_core::calculus::CheckErrorKind;
use mkl_core::check_derivation;
use mkl_core::search::{prove, Failure, SearchBudget};
use mkl_core::syntax::{parse_sequent, Sequent};
use thiserror::Error;

use crate::proof::parse_proof;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Entry {
    Check(PathBuf),
    Prove { sequent: Sequent, depth: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {msg}")]
pub struct CorpusError {
    pub line: usize,
    pub msg: String,
}

/// Parses one record.
fn entry(text: &str) -> Result<Entry, String> {
    if let Some(path) = text.strip_prefix("CHECK ") {
        return Ok(Entry::Check(PathBuf::from(path.trim())));
    }
    let rest = text.strip_prefix("PROVE ").ok_or_else(|| format!("unknown record `{text}`"))?;
    let rest = rest.trim().strip_prefix('"').ok_or("expected a quoted sequent")?;
    let (seq, rest) = rest.split_once('"').ok_or("unterminated sequent")?;
    let sequent = parse_sequent(seq).map_err(|e| format!("bad sequent `{seq}`: {e}"))?;
    let depth = rest
        .trim()
        .strip_prefix("depth=")
        .and_then(|d| d.parse().ok())
        .ok_or("expected `depth=<k>`")?;
    Ok(Entry::Prove { sequent, depth })
}

/// Every record, with its 1-based line number.
pub fn parse_corpus(text: &str) -> Result<Vec<(usize, Entry)>, CorpusError> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(line, l)| entry(l).map(|e| (line, e)).map_err(|msg| CorpusError { line, msg }))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Checked,
    Searched,
    /// A short reason tag, such as `UnknownRule`, and details.
    Failed(&'static str, String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryReport {
    pub line: usize,
    pub label: String,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CorpusReport {
    pub entries: Vec<EntryReport>,
}

impl CorpusReport {
    pub fn passed(&self) -> bool {
        !self.entries.is_empty()
            && self.entries.iter().all(|e| !matches!(e.outcome, Outcome::Failed(..)))
    }

    pub fn count(&self, f: impl Fn(&Outcome) -> bool) -> usize {
        self.entries.iter().filter(|e| f(&e.outcome)).count()
    }
}

impl fmt::Display for CorpusReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            match &e.outcome {
                Outcome::Checked => writeln!(f, "checked {}", e.label)?,
                Outcome::Searched => writeln!(f, "searched {}", e.label)?,
                Outcome::Failed(tag, why) => writeln!(f, "failed({tag}) {}: {why}", e.label)?,
            }
        }
        writeln!(
            f,
            "checked={} searched={} failed={}",
            self.count(|o| *o == Outcome::Checked),
            self.count(|o| *o == Outcome::Searched),
            self.count(|o| matches!(o, Outcome::Failed(..))),
        )
    }
}

fn check_kind_tag(k: &CheckErrorKind) -> &'static str {
    match k {
        CheckErrorKind::UnknownRule(_) => "UnknownRule",
        CheckErrorKind::RuleMismatch { .. } => "RuleMismatch",
        CheckErrorKind::KindMismatch(_) => "KindMismatch",
        CheckErrorKind::SymbolicPower(_) => "SymbolicPower",
        CheckErrorKind::StrayHypothesis => "StrayHypothesis",
        CheckErrorKind::Omega(_) => "Omega",
    }
}

/// Re-checks a stored proof file.
pub fn check_file(path: &Path) -> Outcome {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return Outcome::Failed("Io", e.to_string()),
    };
    let d = match parse_proof(&text) {
        Ok(d) => d,
        Err(e) => return Outcome::Failed("Parse", e.to_string()),
    };
    match check_derivation(&d) {
        Ok(()) => Outcome::Checked,
        Err(e) => Outcome::Failed(check_kind_tag(&e.kind), e.to_string()),
    }
}

fn search(s: &Sequent, depth: usize) -> Outcome {
    match prove(s, &SearchBudget::with_depth(depth)) {
        Ok(d) if check_derivation(&d).is_ok() && d.conclusion == *s => Outcome::Searched,
        Ok(_) => Outcome::Failed("Unchecked", "search returned a bad derivation".into()),
        Err(e @ Failure::Exhausted { .. }) => Outcome::Failed("Exhausted", e.to_string()),
        Err(e @ Failure::Refuted { .. }) => Outcome::Failed("Refuted", e.to_string()),
    }
}

/// Runs every record of the corpus at `path`. Per-entry I/O and parse
/// errors are reported as failed entries; only an unreadable or
/// unparseable corpus file is an error.
pub fn run_corpus(path: &Path) -> Result<CorpusReport, CorpusError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CorpusError { line: 0, msg: format!("{}: {e}", path.display()) })?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let mut report = CorpusReport::default();
    for (line, e) in parse_corpus(&text)? {
        let (label, outcome) = match e {
            Entry::Check(p) => (p.display().to_string(), check_file(&dir.join(&p))),
            Entry::Prove { sequent, depth } => (format!("\"{sequent}\""), search(&sequent, depth)),
        };
        report.entries.push(EntryReport { line, label, outcome });
    }
    Ok(report)
}
