//! Verification harness: function corpus, independent oracles, run
//! configuration, grid runner and report emission.

pub mod config;
pub mod corpus;
pub mod oracle;
pub mod report;
pub mod suite;

pub use config::{Check, ConfigEcho, RunConfig};
pub use corpus::{canonical_intervals, default_corpus, CorpusEntry, Tags};
pub use oracle::{oracle_derivative, oracle_integral};
pub use report::{emit_report, parse_csv, parse_json, write_report, Format, Record, RunReport, Summary};
pub use suite::{expected_hypothesis_failures, run_suite};
