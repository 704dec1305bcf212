//! Instance documents and command dispatch for the `dblcat` binary.

pub mod doc;
pub mod run;
