//! Library behind the `monodromy` binary: descriptor parsing, report
//! rendering, the embedded golden corpus, and the command
//! implementations, all exposed for direct testing.

pub mod commands;
pub mod corpus;
pub mod descriptor;
pub mod entry;
pub mod error;
pub mod report;
