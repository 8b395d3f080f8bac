//! The display calculus: rule schemas, derivations and their checker,
//! identity derivations, principal cut reduction and omega families.

mod catalog;
mod cut;
mod derivation;
mod identity;
mod omega;
pub mod pattern;

pub use catalog::{
    catalog, lookup, omega_printed_schema, omega_schema, rule_catalog, Direction, RuleKind,
    RuleSchema,
};
pub use cut::{principal_cut_instance, principal_cut_instances, reduce_principal_cut, CutError};
pub use derivation::{
    by, by_with, check_derivation, check_family_bounded, expand_family, family_at, family_at_one,
    family_successor, infer, verify_omega_family, BoundedCheck, BuildError, CheckError,
    CheckErrorKind, Derivation, NodePath, OmegaError, PathStep, PremiseFamily, HYP,
};
pub use identity::{derive_identity, NotMultiType};
pub use omega::{display_family, omega_by_closure, omega_lift, omega_lift_node, ShapeError, Side};
pub use pattern::Bindings;
