//! Multi-type display calculus for measurable Kleene logic.
//!
//! The crate is split along the usual lines of a proof-theory workbench:
//!
//! - [`syntax`]: formulas, structures, sequents, the ASCII grammar and the
//!   translation from the single-type language into the multi-type one.
//! - [`calculus`]: the rule catalog, the derivation checker (with schematic
//!   omega premise families), identity expansion, omega lifting and
//!   principal cut reduction.
//! - [`search`]: bounded backward proof search without cut.
//! - [`algebra`]: finite Kleene algebras and their heterogeneous
//!   presentations, used as a brute-force semantic oracle.
//! - [`golden`]: hand-built derivations of the translated axioms and rules.
//!
//! Everything here is `no_std` with `alloc`; file formats and the command
//! line live in the `mkleene` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod calculus;
pub mod golden;
pub mod search;
pub mod syntax;

pub use calculus::{check_derivation, rule_catalog, Derivation, PremiseFamily, RuleSchema};
pub use syntax::{
    parse_formula, parse_sequent, translate, Formula, Kind, Lang, Sequent, Structure,
};
