//! Verification campaigns over graph sources, with JSON-lines reports.

pub mod campaign;
pub mod error;
pub mod property;
pub mod source;

pub use campaign::{read_reports, replay, run_property, run_with, JsonlSink, Report, ReportSink, Summary, VecSink};
pub use error::{HarnessError, Result};
pub use property::{Outcome, Property, Settings, Verdict};
pub use source::{GraphSource, SourceItem};
