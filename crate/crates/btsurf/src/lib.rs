//! File formats, reports, and subcommand drivers for the `btsurf`
//! command-line tool.  The mathematics lives in `btsurf-core`; this
//! crate owns everything that touches the filesystem.

pub mod formats;
pub mod report;
pub mod run;
