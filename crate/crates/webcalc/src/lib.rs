//! File formats, caching, reports and the command-line driver for the
//! `webcalc-core` evaluation engine.

pub mod cache;
pub mod cli;
pub mod dsl;
pub mod opfile;
pub mod report;
