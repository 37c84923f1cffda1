//! Scenario files, check orchestration, reports and builtin scenarios on top
//! of the `bsv_core` kernel.

pub mod builtins;
pub mod context;
pub mod report;
pub mod run;
pub mod scenario;

pub use report::{Report, Status};
pub use run::{run_checks, RunOptions};
pub use scenario::{parse_scenario, serialize, ScenarioDoc, ScenarioError};
