use alloc::string::{String, ToString};
use alloc::vec;

use thiserror::Error;

use super::derivation::{by, Derivation, PremiseFamily};
use super::identity::derive_identity;
use crate::syntax::{Formula, Sequent, Structure};

/// Side of `G` in a closure premise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `(G , B) |- B`, lifted to `o(b(G)) |- (B < B)`.
    Left,
    /// `(B , G) |- B`, lifted to `o(b(G)) |- (B > B)`.
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("expected a conclusion of the form `{expected}`, found `{found}`")]
pub struct ShapeError {
    pub expected: &'static str,
    pub found: String,
}

fn shape(expected: &'static str, d: &Derivation) -> ShapeError {
    ShapeError { expected, found: d.conclusion.to_string() }
}

/// Splits `(G , B) |- B` (left) or `(B , G) |- B` (right) into `(G, B)`.
fn closure_parts(d: &Derivation, side: Side) -> Result<(Structure, Formula), ShapeError> {
    let expected = match side {
        Side::Left => "(G , B) |- B",
        Side::Right => "(B , G) |- B",
    };
    let (Structure::Odot(x, y), Structure::Leaf(b)) = (&d.conclusion.ant, &d.conclusion.suc) else {
        return Err(shape(expected, d));
    };
    let (g, leaf) = match side {
        Side::Left => (x, y),
        Side::Right => (y, x),
    };
    if **leaf != Structure::Leaf(b.clone()) || g.has_pow() {
        return Err(shape(expected, d));
    }
    Ok(((**g).clone(), b.clone()))
}

/// Concatenates copies of `d`: from `d` concluding `(G , B) |- B` builds the family
/// `(pow(G, n) , B) |- B` (left), and from `(B , G) |- B` the family
/// `(B , pow(G, n)) |- B` (right). The base is `d` itself.
pub fn omega_lift(d: &Derivation, side: Side) -> Result<PremiseFamily, ShapeError> {
    let (g, b) = closure_parts(d, side)?;
    let bs = Structure::Leaf(b);
    let pow = Structure::pow(g.clone());
    let sequent = match side {
        Side::Left => Sequent::of(Structure::odot(pow, bs.clone()), bs),
        Side::Right => Sequent::of(Structure::odot(bs.clone(), pow), bs),
    };
    let hyp = Derivation::hyp(sequent.clone());
    let step = match (side, &g) {
        (Side::Left, Structure::Leaf(a)) => {
            let id = derive_identity(a).map_err(|_| shape("(A , B) |- B", d))?;
            let lifted = by("cdot_R", vec![id, hyp]);
            by("assoc_bwd", vec![by("Cut_g", vec![lifted, by("cdot_L", vec![d.clone()])])])
        }
        (Side::Left, _) => {
            let cut = by("Cut_g", vec![hyp, by("res1_fwd", vec![d.clone()])]);
            by("assoc_bwd", vec![by("res1_bwd", vec![cut])])
        }
        (Side::Right, _) => {
            let cut = by("Cut_g", vec![d.clone(), by("res2_fwd", vec![hyp])]);
            by("assoc_fwd", vec![by("res2_bwd", vec![cut])])
        }
    };
    Ok(PremiseFamily { sequent, base: d.clone(), step })
}

/// Pushes a family through an invertible unary rule: `fwd` maps each member
/// `S(n)` to the new member, `bwd` is its inverse.
///
/// # Panics
/// If `fwd` does not apply to the family sequent.
pub fn display_family(fam: &PremiseFamily, fwd: &str, bwd: &str) -> PremiseFamily {
    let base = by(fwd, vec![fam.base.clone()]);
    let moved = by(fwd, vec![Derivation::hyp(fam.sequent.clone())]).conclusion;
    let back = by(bwd, vec![Derivation::hyp(moved.clone())]);
    let step = by(fwd, vec![replace_hyp(&fam.step, &back)]);
    PremiseFamily { sequent: moved, base, step }
}

fn replace_hyp(d: &Derivation, with: &Derivation) -> Derivation {
    if d.rule == super::derivation::HYP {
        return with.clone();
    }
    Derivation { children: d.children.iter().map(|c| replace_hyp(c, with)).collect(), ..d.clone() }
}

/// The omega node concluding `o(b(G)) |- (B < B)` (left) or
/// `o(b(G)) |- (B > B)` (right), with family `pow(G, n) |- (B < B)` or
/// `pow(G, n) |- (B > B)` displayed from [`omega_lift`].
pub fn omega_lift_node(d: &Derivation, side: Side) -> Result<Derivation, ShapeError> {
    let lifted = omega_lift(d, side)?;
    let (g, b) = closure_parts(d, side)?;
    let id = derive_identity(&b).map_err(|_| shape("a multi-type formula B", d))?;
    let (fam, unit) = match side {
        Side::Left => (
            display_family(&lifted, "res2_fwd", "res2_bwd"),
            by("res2_fwd", vec![by("PhiL_fwd", vec![id])]),
        ),
        Side::Right => (
            display_family(&lifted, "res1_fwd", "res1_bwd"),
            by("res1_fwd", vec![by("PhiR_fwd", vec![id])]),
        ),
    };
    let conclusion =
        Sequent::of(Structure::circ(Structure::bullet(g)), unit.conclusion.suc.clone());
    Ok(Derivation::omega(conclusion, unit, fam))
}

/// Omega for a succedent formula closed under composition: from
/// `G |- B`, `(B , B) |- B` and `I |- B`, derives `o(b(G)) |- B`.
pub fn omega_by_closure(
    g_proof: Derivation,
    square: Derivation,
    unit: Derivation,
) -> Result<Derivation, ShapeError> {
    let Structure::Leaf(b) = &g_proof.conclusion.suc else {
        return Err(shape("G |- B", &g_proof));
    };
    let bs = Structure::Leaf(b.clone());
    if square.conclusion != Sequent::of(Structure::odot(bs.clone(), bs.clone()), bs.clone()) {
        return Err(shape("(B , B) |- B", &square));
    }
    if unit.conclusion != Sequent::of(Structure::Phi, bs.clone()) {
        return Err(shape("I |- B", &unit));
    }
    let g = g_proof.conclusion.ant.clone();
    if g.has_pow() {
        return Err(shape("G |- B", &g_proof));
    }
    let sequent = Sequent::of(Structure::pow(g.clone()), bs.clone());
    let step = by(
        "Cut_g",
        vec![
            by("cdot_R", vec![g_proof.clone(), Derivation::hyp(sequent.clone())]),
            by("cdot_L", vec![square]),
        ],
    );
    let fam = PremiseFamily { sequent, base: g_proof, step };
    let conclusion = Sequent::of(Structure::circ(Structure::bullet(g)), bs);
    Ok(Derivation::omega(conclusion, unit, fam))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::derivation::by_with;
    use crate::calculus::identity::id_atom;
    use crate::calculus::pattern::Bindings;
    use crate::calculus::{check_derivation, check_family_bounded, verify_omega_family};

    fn absorb(side: Side) -> Derivation {
        // (a , 0) |- 0 and (0 , a) |- 0 via PhiW on 0 |- I
        let z = by("zero_L", vec![]);
        let (res, order) = match side {
            Side::Left => {
                ("res1_bwd", Structure::right_res(Structure::atom("a"), Formula::Zero.into()))
            }
            Side::Right => {
                ("res2_bwd", Structure::left_res(Formula::Zero.into(), Structure::atom("a")))
            }
        };
        let w = by_with("PhiW", vec![z], Bindings::new().with_structure("D", order));
        by(res, vec![w])
    }

    #[test]
    fn left_lift_verifies() {
        let d = absorb(Side::Left);
        assert_eq!(d.conclusion.to_string(), "(a , 0) |- 0");
        let fam = omega_lift(&d, Side::Left).unwrap();
        assert_eq!(fam.sequent.to_string(), "(pow(a, n) , 0) |- 0");
        verify_omega_family(&fam).unwrap();
        check_family_bounded(&fam, 4).unwrap();
        check_derivation(&omega_lift_node(&d, Side::Left).unwrap()).unwrap();
    }

    #[test]
    fn right_lift_verifies() {
        let d = absorb(Side::Right);
        assert_eq!(d.conclusion.to_string(), "(0 , a) |- 0");
        let node = omega_lift_node(&d, Side::Right).unwrap();
        assert_eq!(node.conclusion.to_string(), "o(b(a)) |- (0 > 0)");
        check_derivation(&node).unwrap();
    }

    fn one_one() -> Derivation {
        let id = derive_identity(&Formula::One).unwrap();
        let shifted = by("res2_fwd", vec![by("PhiL_fwd", vec![id])]);
        by("res2_bwd", vec![by("one_L", vec![shifted])])
    }

    #[test]
    fn unit_family() {
        let d = one_one();
        assert_eq!(d.conclusion.to_string(), "(1 , 1) |- 1");
        for side in [Side::Left, Side::Right] {
            let fam = omega_lift(&d, side).unwrap();
            verify_omega_family(&fam).unwrap();
            check_family_bounded(&fam, 5).unwrap();
            check_derivation(&omega_lift_node(&d, side).unwrap()).unwrap();
        }
        let fam = omega_lift(&d, Side::Left).unwrap();
        assert_eq!(fam.sequent.to_string(), "(pow(1, n) , 1) |- 1");
    }

    #[test]
    fn structural_base() {
        let d = by("PhiL_fwd", vec![derive_identity(&Formula::One).unwrap()]);
        let fam = omega_lift(&d, Side::Left).unwrap();
        assert_eq!(fam.sequent.to_string(), "(pow(I, n) , 1) |- 1");
        verify_omega_family(&fam).unwrap();
        check_derivation(&omega_lift_node(&d, Side::Left).unwrap()).unwrap();
    }

    #[test]
    fn wrong_shape() {
        assert!(omega_lift(&id_atom("a"), Side::Left).is_err());
    }
}
