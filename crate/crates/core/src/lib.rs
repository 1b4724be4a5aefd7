//! Core engine for smelter: an Elixir code smell analyzer.
//!
//! The pipeline is tokenize → parse (tolerant) → desugar pipes → build a
//! cross-file project model → compute metrics → run the enabled
//! detectors → apply inline suppressions → render a report.

pub mod detect;
pub mod globpat;
pub mod history;
pub mod metrics;
pub mod model;
#[cfg(any(test, feature = "oracle"))]
pub mod oracle;
pub mod report;
pub mod rules;
pub mod span;
pub mod syntax;
