//! Library surface of the CLI: instance format, run reports, verification
//! suites and the command implementations, so the harness and the binary
//! share one code path.

pub mod commands;
pub mod format;
pub mod report;
pub mod suites;
