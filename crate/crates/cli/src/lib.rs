//! File formats, embedded fixtures, parallel search and the command-line
//! front end for `addhull-core`.

pub mod cli;
pub mod fixtures;
pub mod format;
pub mod parallel;
pub mod report;

pub use addhull_core as core;
