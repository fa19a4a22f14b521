//! File formats, instance generation, benchmarking and rendering for the
//! `wil` command-line tool.

pub mod bench;
pub mod cli;
pub mod generate;
pub mod instance;
pub mod layout_file;
pub mod run;
pub mod svg;
