//! Scenario runner for the tilted-lattice simulator: config files, figure
//! presets and CSV / graymap output.

pub mod config;
pub mod error;
pub mod format;
pub mod presets;
pub mod run;

pub use config::{parse_config, ConfigError, ScenarioConfig};
pub use error::CliError;
pub use run::{run_scenario, RunSummary};
