//! Std companion to `grpkit-core`: text formats, JSON reports and the CLI.

pub mod cli;
pub mod formats;
pub mod report;

pub use formats::FormatError;
pub use report::ReportEnvelope;
