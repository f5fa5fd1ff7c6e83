//! Batch front end: the functions behind `check`, `verify` and `export`.
//! Each returns an exit code and the text to print, so they can be tested
//! without spawning a process.

use std::fmt::Write;
use std::path::Path;
use std::str::FromStr;

use super::localized_failures;
use crate::feedback::Catalogs;
use crate::proof::{export_svg, export_text, verify, ProofFile};
use crate::sequent::parse_sequent;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_SCHEMA: i32 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn io(path: &Path, e: std::io::Error) -> Self {
        Outcome { code: EXIT_IO, stdout: String::new(), stderr: format!("{}: {e}\n", path.display()) }
    }
}

/// Parses every non-blank, non-`#` line of a sequent file.
pub fn check(path: &Path) -> Outcome {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return Outcome::io(path, e),
    };
    let mut out = String::new();
    let (mut ok, mut bad) = (0, 0);
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        match parse_sequent(line) {
            Ok(_) => ok += 1,
            Err(e) => {
                bad += 1;
                let _ = writeln!(out, "line {}: offset {}: {e}", i + 1, e.offset);
                let _ = writeln!(out, "  {line}\n  {}^", " ".repeat(e.offset));
            }
        }
    }
    let _ = writeln!(out, "{ok} sequent(s) parsed, {bad} error(s)");
    Outcome { code: if bad == 0 { EXIT_OK } else { EXIT_FAILED }, stdout: out, stderr: String::new() }
}

fn read_proof(path: &Path) -> Result<ProofFile, Outcome> {
    let bytes = std::fs::read(path).map_err(|e| Outcome::io(path, e))?;
    ProofFile::parse(&bytes).map_err(|e| Outcome {
        code: EXIT_SCHEMA,
        stdout: String::new(),
        stderr: format!("{}: schema error at {e}\n", path.display()),
    })
}

/// Loads and replays a proof file. Exit 0 only for a complete proof whose
/// every step is legal.
pub fn verify_file(path: &Path, catalogs: &Catalogs, locale: &str) -> Outcome {
    let file = match read_proof(path) {
        Ok(f) => f,
        Err(o) => return o,
    };
    let report = verify(&file.into_tree());
    let mut out = String::new();
    let failures = localized_failures(&report, catalogs, locale);
    for f in &failures {
        let _ = writeln!(out, "{}: {} [{}] {}", f.location, f.category, f.detail, f.message);
    }
    for c in report.nodes.iter().filter(|c| c.status == crate::proof::NodeStatus::Open) {
        let _ = writeln!(out, "{}: open goal {}", c.location, c.sequent);
    }
    let _ = if report.ok {
        writeln!(out, "OK: {} node(s), proof complete", report.nodes.len())
    } else {
        writeln!(out, "FAILED: {} error(s), {} open goal(s)", failures.len(), report.open_goals.len())
    };
    Outcome { code: if report.ok { EXIT_OK } else { EXIT_FAILED }, stdout: out, stderr: String::new() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Text,
    Svg,
}

impl FromStr for ExportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(ExportFormat::Text),
            "svg" => Ok(ExportFormat::Svg),
            other => Err(format!("unknown export format `{other}` (expected text or svg)")),
        }
    }
}

/// Renders a proof file; writes to `out` when given, else to stdout.
pub fn export(path: &Path, format: ExportFormat, out: Option<&Path>) -> Outcome {
    let file = match read_proof(path) {
        Ok(f) => f,
        Err(o) => return o,
    };
    let tree = file.into_tree();
    let rendered = match format {
        ExportFormat::Text => export_text(&tree),
        ExportFormat::Svg => export_svg(&tree),
    };
    match out {
        Some(p) => match std::fs::write(p, rendered) {
            Ok(()) => Outcome { code: EXIT_OK, stdout: String::new(), stderr: String::new() },
            Err(e) => Outcome::io(p, e),
        },
        None => Outcome { code: EXIT_OK, stdout: rendered, stderr: String::new() },
    }
}
