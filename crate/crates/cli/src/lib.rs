//! Batch front end: reads JSON case files, runs the engines and writes
//! deterministic reports.

pub mod cache;
pub mod casefile;
pub mod commands;
pub mod report;

pub use cache::{table_key, CacheStats, DiskCache};
pub use casefile::{parse, CaseFile, InputError};
pub use commands::{run, Command, Options};
pub use report::{CheckRecord, Outcome, Recorder, Report, Status};
