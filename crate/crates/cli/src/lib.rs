//! File formats, reports and commands of the `hopfq` tool.

pub mod cli;
pub mod commands;
pub mod error;
pub mod format;
pub mod report;

pub use cli::Cli;
pub use commands::run;
pub use error::{CliError, Result};
pub use format::{parse_structure, serialize_structure, StructureFile};
pub use report::ReportDocument;
