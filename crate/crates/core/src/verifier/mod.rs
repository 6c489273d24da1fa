//! Reproducible scenarios for the three headline claims, with serializable reports.

mod oracle;
mod report;
mod scenarios;

pub use oracle::symmetric_power_oracle;
pub use report::{components_tsv, homology_rows, ComponentRecord, HomologyRow, OracleCheck, Params, Report, Verdict};
pub use scenarios::{run_case_i, run_case_i_with, run_case_ii, run_case_ii_with, run_counterexample};
