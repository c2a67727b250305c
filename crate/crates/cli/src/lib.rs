//! Instance files, reports and the command-line driver around
//! `planar-bisect-core`.

pub mod cli;
pub mod instance;
pub mod ratio;
pub mod report;
