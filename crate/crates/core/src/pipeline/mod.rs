//! End-to-end analysis of one structure description: JSON input, the
//! decision pipeline, and deterministic text and JSON reports.

mod analyze;
mod input;
mod report;

pub use analyze::{analyze, Options, TraceRequest};
pub use input::{parse_input, BivectorEntry, ConstantEntry, InputDoc, Mode};
pub use report::{
    render_ideal, render_point, AlmostRegularReport, AnalysisReport, DistributionCheckReport, IsotropyReport,
    LogFReport, OptionsEcho, TraceReport, UnresolvedReport, SCHEMA_VERSION,
};
