//! Run reports and their JSON/CSV emission.

use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harness::config::{Check, ConfigEcho};
use crate::inequality::Verdict;

/// One grid cell of one check. Chain checks fill `mid`; pair checks leave it empty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub check: Check,
    pub function: String,
    pub beta: f64,
    pub a: f64,
    pub b: f64,
    pub n: Option<usize>,
    pub lhs: Option<f64>,
    pub mid: Option<f64>,
    pub rhs: Option<f64>,
    pub margin_left: Option<f64>,
    pub margin_right: Option<f64>,
    pub verdict: Verdict,
    pub evals: usize,
    pub ms: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub holds: usize,
    pub violated: usize,
    pub hypothesis_not_met: usize,
    pub error: usize,
}

impl Summary {
    pub fn of(records: &[Record]) -> Self {
        records.iter().fold(Summary::default(), |mut s, r| {
            match r.verdict {
                Verdict::Holds => s.holds += 1,
                Verdict::Violated => s.violated += 1,
                Verdict::HypothesisNotMet => s.hypothesis_not_met += 1,
                Verdict::Error => s.error += 1,
            }
            s
        })
    }

    pub fn total(&self) -> usize {
        self.holds + self.violated + self.hypothesis_not_met + self.error
    }
}

/// A run's records, the configuration that produced them and the verdict counts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub config: ConfigEcho,
    pub records: Vec<Record>,
    pub summary: Summary,
    /// Error messages of records with an `error` verdict; not serialized.
    #[serde(skip)]
    pub diagnostics: Vec<String>,
}

impl RunReport {
    pub fn new(config: ConfigEcho, records: Vec<Record>, diagnostics: Vec<String>) -> Self {
        let summary = Summary::of(&records);
        Self {
            config,
            records,
            summary,
            diagnostics,
        }
    }

    /// Exit status for the command line: 0 when clean, 2 on violations or record errors.
    pub fn exit_status(&self) -> i32 {
        if self.summary.violated == 0 && self.summary.error == 0 {
            0
        } else {
            2
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::Config(format!("unknown format {other:?}"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

pub const CSV_COLUMNS: [&str; 14] = [
    "check",
    "function",
    "beta",
    "a",
    "b",
    "n",
    "lhs",
    "mid",
    "rhs",
    "margin_left",
    "margin_right",
    "verdict",
    "evals",
    "ms",
];

fn csv_error(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

/// Writes the report in `format` to `out`.
pub fn write_report<W: Write>(r: &RunReport, format: Format, mut out: W) -> Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, r).map_err(|e| Error::Io(e.to_string()))?;
            out.write_all(b"\n")?;
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
            w.write_record(CSV_COLUMNS).map_err(csv_error)?;
            for rec in &r.records {
                w.serialize(rec).map_err(csv_error)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

/// Writes the report to `path`, or to standard output when `path` is `None`.
pub fn emit_report(r: &RunReport, format: Format, path: Option<&Path>) -> Result<()> {
    match path {
        Some(path) => {
            let file = std::fs::File::create(path)?;
            let mut buf = std::io::BufWriter::new(file);
            write_report(r, format, &mut buf)?;
            buf.flush()?;
            Ok(())
        }
        None => write_report(r, format, std::io::stdout().lock()),
    }
}

pub fn parse_json(text: &str) -> Result<RunReport> {
    serde_json::from_str(text).map_err(|e| Error::Io(e.to_string()))
}

/// Reads records back from CSV; the header row must match [`CSV_COLUMNS`].
pub fn parse_csv(text: &str) -> Result<Vec<Record>> {
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    let header = rd.headers().map_err(csv_error)?.clone();
    if header.iter().ne(CSV_COLUMNS) {
        return Err(Error::Io(format!("unexpected CSV header {header:?}")));
    }
    rd.deserialize().map(|r| r.map_err(csv_error)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::RunConfig;

    fn record() -> Record {
        Record {
            check: Check::Steffensen,
            function: "exp_neg/t".into(),
            beta: 0.25,
            a: 0.5,
            b: 2.0,
            n: None,
            lhs: Some(0.125),
            mid: Some(1.0 / 6.0),
            rhs: Some(0.375),
            margin_left: Some(1.0 / 6.0 - 0.125),
            margin_right: Some(0.375 - 1.0 / 6.0),
            verdict: Verdict::Holds,
            evals: 42,
            ms: 0.75,
        }
    }

    fn report(records: Vec<Record>) -> RunReport {
        RunReport::new(RunConfig::default().echo(), records, vec![])
    }

    #[test]
    fn empty_report() {
        let mut buf = Vec::new();
        write_report(&report(vec![]), Format::Json, &mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        let obj = v.as_object().unwrap();
        let mut keys: Vec<_> = obj.keys().cloned().collect();
        keys.sort();
        assert_eq!(keys, ["config", "records", "summary"]);
        assert_eq!(v["records"], serde_json::json!([]));
        assert_eq!(
            v["summary"],
            serde_json::json!({"holds": 0, "violated": 0, "hypothesis_not_met": 0, "error": 0})
        );
    }

    #[test]
    fn json_round_trip_and_field_names() {
        let mut other = record();
        other.check = Check::FundamentalTheorem;
        other.mid = None;
        other.n = Some(3);
        other.verdict = Verdict::Violated;
        let r = report(vec![record(), other]);
        let mut buf = Vec::new();
        write_report(&r, Format::Json, &mut buf).unwrap();
        let back = parse_json(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.summary.violated, 1);

        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        let mut keys: Vec<_> = v["records"][0].as_object().unwrap().keys().cloned().collect();
        keys.sort();
        let mut expected = CSV_COLUMNS.to_vec();
        expected.sort();
        assert_eq!(keys, expected);
        assert_eq!(v["records"][0]["verdict"], "holds");
        assert_eq!(v["records"][0]["check"], "steffensen");
    }

    #[test]
    fn csv_layout() {
        let mut pair = record();
        pair.mid = None;
        pair.function = "a,\"b\"".into();
        let r = report(vec![record(), pair.clone(), record()]);
        let mut buf = Vec::new();
        write_report(&r, Format::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 4);
        assert_eq!(text.lines().next().unwrap(), CSV_COLUMNS.join(","));
        assert!(text.contains("\"a,\"\"b\"\"\""));
        assert!(text.lines().nth(1).unwrap().contains(",,"));
        let back = parse_csv(&text).unwrap();
        assert_eq!(back, r.records);
        assert_eq!(back[1].mid, None);
        assert_eq!(back[1].n, None);
    }

    #[test]
    fn summary_counts() {
        let mut recs = vec![record(); 3];
        recs[1].verdict = Verdict::Error;
        recs[2].verdict = Verdict::HypothesisNotMet;
        let r = report(recs);
        assert_eq!(r.summary.total(), 3);
        assert_eq!(r.summary.error, 1);
        assert_eq!(r.exit_status(), 2);
        assert_eq!(report(vec![record()]).exit_status(), 0);
    }

    #[test]
    fn emit_to_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.csv");
        emit_report(&report(vec![record()]), Format::Csv, Some(&path)).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 2);
        let bad = dir.path().join("missing").join("r.json");
        assert!(matches!(
            emit_report(&report(vec![]), Format::Json, Some(&bad)),
            Err(Error::Io(_))
        ));
    }
}
