//! File formats, JSON reports, parallel drivers and the command-line front
//! end for conjugated Clifford circuits. The algorithms live in `ccc-core`.

pub mod cli;
pub mod formats;
pub mod parallel;
pub mod report;

pub use ccc_core as core;
