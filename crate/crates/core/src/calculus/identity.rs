use alloc::vec;

use thiserror::Error;

use super::derivation::{by, by_with, Derivation};
use super::pattern::Bindings;
#[cfg(test)]
use crate::syntax::Structure;
use crate::syntax::{Formula, Sequent};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("`{0}` is not a multi-type formula")]
pub struct NotMultiType(pub Formula);

/// A cut-free derivation of `A |- A` that uses `Id` only on atoms.
pub fn derive_identity(f: &Formula) -> Result<Derivation, NotMultiType> {
    Ok(match f {
        Formula::Atom(_) => Derivation::new("Id", Sequent::of(f.clone(), f.clone()), vec![]),
        Formula::One => by("one_L", vec![by("one_R", vec![])]),
        Formula::Zero => by("zero_R", vec![by("zero_L", vec![])]),
        Formula::Union(a, b) => {
            let left = by_with(
                "cup_R1",
                vec![derive_identity(a)?],
                Bindings::new().with_formula("A2", (**b).clone()),
            );
            let right = by_with(
                "cup_R2",
                vec![derive_identity(b)?],
                Bindings::new().with_formula("A1", (**a).clone()),
            );
            by("cup_L", vec![left, right])
        }
        Formula::Comp(a, b) => {
            by("cdot_L", vec![by("cdot_R", vec![derive_identity(a)?, derive_identity(b)?])])
        }
        Formula::BoxF(x) => {
            let inner = by("w_bal_fwd", vec![derive_identity(x)?]);
            by("box_R", vec![by("box_L", vec![inner])])
        }
        Formula::FDia(a) => by("fdia_L", vec![by("fdia_R", vec![derive_identity(a)?])]),
        Formula::BBox(a) => by("bbox_R", vec![by("bbox_L", vec![derive_identity(a)?])]),
        Formula::Star(_) | Formula::DualStar(_) => return Err(NotMultiType(f.clone())),
    })
}

/// `Id` on an atom leaf.
#[cfg(test)]
pub(crate) fn id_atom(name: &str) -> Derivation {
    Derivation::new("Id", Sequent::of(Structure::atom(name), Structure::atom(name)), vec![])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::check_derivation;
    use crate::syntax::{parse_formula, Lang};
    use alloc::string::ToString;

    fn id(s: &str) -> Derivation {
        derive_identity(&parse_formula(s, Lang::MultiType).unwrap()).unwrap()
    }

    #[test]
    fn atoms_use_id() {
        let d = id("a");
        assert_eq!(d.rule, "Id");
        assert_eq!(d, id_atom("a"));
    }

    #[test]
    fn compound_identities_check() {
        for s in ["1", "0", "(a + b)", "(a . 1)", "box(fdia(a))", "box(bbox((a + 0)))", "fdia(b)"] {
            let d = id(s);
            check_derivation(&d).unwrap();
            assert_eq!(d.conclusion.ant, d.conclusion.suc);
            assert_eq!(d.conclusion.ant.to_string(), s);
        }
    }

    #[test]
    fn box_identity_shape() {
        let d = id("box(fdia(a))");
        let rules: alloc::vec::Vec<_> = {
            let mut v = alloc::vec::Vec::new();
            d.walk(&mut |n| v.push(n.rule.clone()));
            v
        };
        assert_eq!(rules, ["box_R", "box_L", "w_bal_fwd", "fdia_L", "fdia_R", "Id"]);
    }

    #[test]
    fn single_type_rejected() {
        let f = parse_formula("a^*", Lang::SingleType).unwrap();
        assert!(derive_identity(&f).is_err());
    }
}
