//! Batch front end for `parahiggs`: JSON job configs in, JSON reports out.

pub mod config;
pub mod corpus;
pub mod report;

pub use config::{load_config, load_raw, parse_config, ConfigError, JobConfig, RawConfig, Task};
pub use corpus::{emit_examples, examples};
pub use report::{run_report, Report, TaskReport};
