use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use super::derivation::{by, by_with, check_derivation, CheckError, Derivation};
use super::identity::{derive_identity, NotMultiType};
use super::pattern::Bindings;
use crate::syntax::{Formula, Structure};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CutError {
    #[error("`{0}` is not a cut node")]
    NotACut(String),
    #[error("cut formula `{formula}` is not principal in both premises ({left}, {right})")]
    NotPrincipal { formula: String, left: String, right: String },
    #[error("no reduction for `{formula}` with premises ({left}, {right})")]
    Unsupported { formula: String, left: String, right: String },
    #[error("reduct does not check: {0}")]
    Check(#[from] CheckError),
    #[error(transparent)]
    NotMultiType(#[from] NotMultiType),
}

fn child(d: &Derivation, i: usize) -> Derivation {
    d.children[i].clone()
}

/// Replaces a principal cut by cuts on proper subformulas of the cut
/// formula. The reduct has the same conclusion and is checked before it is
/// returned.
pub fn reduce_principal_cut(d: &Derivation) -> Result<Derivation, CutError> {
    let Some(formula) = d.cut_formula().cloned() else {
        return Err(CutError::NotACut(d.rule.clone()));
    };
    let (l, r) = (&d.children[0], &d.children[1]);
    let not_principal = || CutError::NotPrincipal {
        formula: formula.to_string(),
        left: l.rule.clone(),
        right: r.rule.clone(),
    };
    let reduct = match (&formula, l.rule.as_str(), r.rule.as_str()) {
        (_, "Id", _) => r.clone(),
        (_, _, "Id") => l.clone(),
        (Formula::One, "one_R", "one_L") => child(r, 0),
        (Formula::Zero, "zero_R", "zero_L") => child(l, 0),
        (Formula::Union(..), "cup_R1", "cup_L") => by("Cut_g", vec![child(l, 0), child(r, 0)]),
        (Formula::Union(..), "cup_R2", "cup_L") => by("Cut_g", vec![child(l, 0), child(r, 1)]),
        (Formula::Comp(..), "cdot_R", "cdot_L") => {
            let (p1, p2, p3) = (child(l, 0), child(l, 1), child(r, 0));
            let inner = by("Cut_g", vec![p1, by("res2_fwd", vec![p3])]);
            let moved = by("res1_fwd", vec![by("res2_bwd", vec![inner])]);
            by("res1_bwd", vec![by("Cut_g", vec![p2, moved])])
        }
        (Formula::FDia(_), "fdia_R", "fdia_L") => {
            let cut = by("Cut_g", vec![child(l, 0), by("adj1_bwd", vec![child(r, 0)])]);
            by("adj1_fwd", vec![cut])
        }
        (Formula::BBox(_), "bbox_R", "bbox_L") => {
            let cut = by("Cut_g", vec![by("adj2_bwd", vec![child(l, 0)]), child(r, 0)]);
            by("adj2_fwd", vec![cut])
        }
        (Formula::BoxF(_), "box_R", "box_L") => {
            reduce_box(child(l, 0), child(r, 0)).ok_or_else(|| CutError::Unsupported {
                formula: formula.to_string(),
                left: l.children[0].conclusion.to_string(),
                right: r.children[0].conclusion.to_string(),
            })?
        }
        _ => return Err(not_principal()),
    };
    debug_assert_eq!(reduct.conclusion, d.conclusion);
    check_derivation(&reduct)?;
    Ok(reduct)
}

/// `p1: G |- o(Y)` and `p2: o(Y) |- D`. Needs one side to be a `o`-structure.
fn reduce_box(p1: Derivation, p2: Derivation) -> Option<Derivation> {
    if matches!(p2.conclusion.suc, Structure::Circ(_)) {
        let cut = by("Cut_s", vec![by("adj1_fwd", vec![p1]), by("w_bal_bwd", vec![p2])]);
        return Some(by("adj1_bwd", vec![cut]));
    }
    if matches!(p1.conclusion.ant, Structure::Circ(_)) {
        let cut = by("Cut_s", vec![by("w_bal_bwd", vec![p1]), by("adj2_fwd", vec![p2])]);
        return Some(by("adj2_bwd", vec![cut]));
    }
    None
}

/// A cut on `f` whose premises both introduce `f` by an operational rule
/// (or are `Id`, for atoms).
pub fn principal_cut_instance(f: &Formula) -> Result<Derivation, CutError> {
    let id = derive_identity(f)?;
    let (left, right) = match f {
        Formula::Atom(_) => (id.clone(), id),
        Formula::One => (by("one_R", vec![]), id),
        Formula::Zero => (id, by("zero_L", vec![])),
        Formula::Union(a, b) => {
            let left = if a.size() <= b.size() {
                by_with(
                    "cup_R1",
                    vec![derive_identity(a)?],
                    Bindings::new().with_formula("A2", (**b).clone()),
                )
            } else {
                by_with(
                    "cup_R2",
                    vec![derive_identity(b)?],
                    Bindings::new().with_formula("A1", (**a).clone()),
                )
            };
            (left, id)
        }
        Formula::Comp(a, b) => (by("cdot_R", vec![derive_identity(a)?, derive_identity(b)?]), id),
        Formula::FDia(a) => (by("fdia_R", vec![derive_identity(a)?]), id),
        Formula::BBox(a) => (id, by("bbox_L", vec![derive_identity(a)?])),
        Formula::BoxF(x) => {
            let w = by("w_bal_fwd", vec![derive_identity(x)?]);
            (by("box_R", vec![w.clone()]), by("box_L", vec![w]))
        }
        Formula::Star(_) | Formula::DualStar(_) => return Err(NotMultiType(f.clone()).into()),
    };
    let rule = match f.kind() {
        crate::syntax::Kind::General => "Cut_g",
        crate::syntax::Kind::Special => "Cut_s",
    };
    Ok(by(rule, vec![left, right]))
}

/// [`principal_cut_instance`] for each formula, skipping single-type ones.
pub fn principal_cut_instances(formulas: &[Formula]) -> Vec<Derivation> {
    formulas.iter().filter_map(|f| principal_cut_instance(f).ok()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, Lang};

    fn mt(s: &str) -> Formula {
        parse_formula(s, Lang::MultiType).unwrap()
    }

    fn reduces(s: &str) {
        let f = mt(s);
        let cut = principal_cut_instance(&f).unwrap();
        check_derivation(&cut).unwrap();
        let red = reduce_principal_cut(&cut).unwrap();
        assert_eq!(red.conclusion, cut.conclusion);
        for c in red.cuts() {
            let g = c.cut_formula().unwrap();
            assert!(g.is_proper_subformula_of(&f), "{g} in {f}");
        }
    }

    #[test]
    fn every_connective_reduces() {
        for s in [
            "a",
            "1",
            "0",
            "(a + b)",
            "((a . b) + 1)",
            "(a . b)",
            "fdia(a)",
            "bbox(a)",
            "box(fdia(a))",
            "box(bbox((a . b)))",
        ] {
            reduces(s);
        }
    }

    #[test]
    fn non_principal_left() {
        let f = mt("(a . b)");
        let id = derive_identity(&f).unwrap();
        let cut = by("Cut_g", vec![id.clone(), id]);
        assert!(matches!(reduce_principal_cut(&cut), Err(CutError::NotPrincipal { .. })));
    }

    #[test]
    fn not_a_cut() {
        let d = derive_identity(&mt("1")).unwrap();
        assert!(matches!(reduce_principal_cut(&d), Err(CutError::NotACut(_))));
    }
}
