//! Library surface of the CLI: the CSV writer/reader used by the binary and
//! by downstream consumers of its outputs.

pub mod report;
