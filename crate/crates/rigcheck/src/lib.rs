//! Diagram specifications and the corpus runner behind the `rigcheck` binary.

pub mod dsl;
pub mod run;

pub use dsl::{parse, DiagramSpec, DslError};
pub use run::{run_corpus, run_sources, Report, RunOptions, Verdict};
