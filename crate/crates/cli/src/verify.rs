use std::path::{Path, PathBuf};

use clap::Args;
use densikit::certificates::{sufficiency_from_instance, verify_tuple, SufficiencyReport, Verdict, VerificationReport};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{read_certificate, CliError, CliResult, EXIT_INPUT};

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Certificate files.
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
    /// One JSON object per file instead of the text report.
    #[arg(long)]
    pub json: bool,
}

/// Machine-readable outcome for one file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileOutcome {
    pub file: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<VerificationReport>,
    /// Sufficiency hypotheses of the file's instance; informational.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sufficiency: Option<SufficiencyReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Verdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub exit_code: u8,
}

fn verify_file(path: &Path) -> FileOutcome {
    let file = path.display().to_string();
    let cert = match read_certificate(path) {
        Ok(c) => c,
        Err(CliError::Input(msg) | CliError::Budget(msg)) => {
            return FileOutcome {
                file,
                report: None,
                sufficiency: None,
                expect: None,
                error: Some(msg),
                exit_code: EXIT_INPUT,
            }
        }
    };
    let report = verify_tuple(&cert);
    let sufficiency = cert.sufficiency.as_ref().and_then(|inst| sufficiency_from_instance(&cert, inst, true).ok());
    FileOutcome {
        file,
        exit_code: report.verdict.exit_code() as u8,
        report: Some(report),
        sufficiency,
        expect: cert.expect,
        error: None,
    }
}

pub fn render_outcome(o: &FileOutcome) -> String {
    let mut out = format!("== {}\n", o.file);
    if let Some(e) = &o.error {
        out.push_str(&format!("error: {e}\n"));
        return out;
    }
    let report = o.report.as_ref().unwrap();
    out.push_str(&report.render());
    if !out.ends_with('\n') {
        out.push('\n');
    }
    if let Some(s) = &o.sufficiency {
        out.push_str(&s.render());
        if !out.ends_with('\n') {
            out.push('\n');
        }
    }
    if let Some(x) = o.expect {
        let note = if x == report.verdict { "matches" } else { "DIFFERS" };
        out.push_str(&format!("expected: {x} ({note})\n"));
    }
    out
}

/// Combined exit code: input errors, then refutations, then insufficiency.
fn combine(codes: impl Iterator<Item = u8>) -> u8 {
    let rank = |c: u8| match c {
        3 => 3,
        1 => 2,
        2 => 1,
        _ => 0,
    };
    codes.max_by_key(|&c| rank(c)).unwrap_or(0)
}

pub fn run(args: &VerifyArgs, _seed: u64) -> CliResult {
    let outcomes: Vec<FileOutcome> = args.files.par_iter().map(|p| verify_file(p)).collect();
    for o in &outcomes {
        if args.json {
            outln!("{}", serde_json::to_string(o).expect("outcome serializes"));
        } else {
            crate::emit(&render_outcome(o));
        }
    }
    Ok(combine(outcomes.iter().map(|o| o.exit_code)))
}
