//! Property suites, the expression language, and their command-line driver.

pub mod dsl;
pub mod random;
pub mod suites;

pub use dsl::{eval_program, DslError};
pub use suites::{run_suite, SectionReport, SuiteError, SuiteReport, SUITES};
