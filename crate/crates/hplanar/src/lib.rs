//! File formats and the command-line front end over `hplanar-core`.

pub mod cli;
pub mod format;
