//! File formats and command implementations for the `mkleene` workbench.
//!
//! Every command returns a [`Verdict`]: the report text and whether the
//! requested property holds. The binary prints the text, then
//! `RESULT: PASS` or `RESULT: FAIL`, and exits 0 or 1 accordingly.

pub mod commands;
pub mod corpus;
pub mod model;
pub mod proof;
pub mod sexpr;

pub use commands::{UsageError, Verdict};
