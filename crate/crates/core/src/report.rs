//! Machine-readable suite output: one JSON report per line plus a CSV summary.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::laws::LawReport;

pub const REPORTS_FILE: &str = "reports.jsonl";
pub const SUMMARY_FILE: &str = "summary.csv";

/// Reports as JSON lines, in the given order.
pub fn to_jsonl(reports: &[LawReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&serde_json::to_string(r).expect("reports serialize"));
        out.push('\n');
    }
    out
}

/// CSV with columns `matroid, law, instances, verdict, vacuous`.
pub fn to_summary_csv(reports: &[LawReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Io {
        path: SUMMARY_FILE.into(),
        source: e.into(),
    };
    w.write_record(["matroid", "law", "instances", "verdict", "vacuous"])
        .map_err(csv_err)?;
    for r in reports {
        let verdict = if r.passed() { "pass" } else { "fail" };
        w.write_record([
            r.matroid.as_str(),
            r.law.as_str(),
            &r.instances_checked.to_string(),
            verdict,
            &r.vacuous.to_string(),
        ])
        .map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io {
        path: SUMMARY_FILE.into(),
        source: e.into_error(),
    })?;
    Ok(String::from_utf8(bytes).expect("csv of utf-8 fields"))
}

pub(crate) fn write_file(path: &Path, contents: &str) -> Result<()> {
    let mut f = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    f.write_all(contents.as_bytes()).map_err(|e| Error::io(path, e))
}

/// Writes `reports.jsonl` and `summary.csv` into `dir`, creating it.
pub fn write_reports(reports: &[LawReport], dir: impl AsRef<Path>) -> Result<()> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    write_file(&dir.join(REPORTS_FILE), &to_jsonl(reports))?;
    write_file(&dir.join(SUMMARY_FILE), &to_summary_csv(reports)?)
}

/// Totals for the human-readable summary line.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub reports: usize,
    pub failed: usize,
    pub vacuous: usize,
    pub instances: usize,
}

impl Tally {
    pub fn of(reports: &[LawReport]) -> Self {
        reports.iter().fold(Tally::default(), |mut t, r| {
            t.reports += 1;
            t.failed += usize::from(!r.passed());
            t.vacuous += usize::from(r.vacuous);
            t.instances += r.instances_checked;
            t
        })
    }
}
