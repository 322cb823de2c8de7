//! File formats and command implementations behind the `axial` binary.

pub mod commands;
pub mod format;

pub use commands::{Outcome, ParamStrings, Suite};
pub use format::{AlgebraJson, CliScalar, DerivedTableJson, FieldSpec, MatrixJson, TextScalar, SCHEMA_VERSION};
