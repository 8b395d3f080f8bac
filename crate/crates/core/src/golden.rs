//! Hand-built derivations of the translated star and dual-star axioms and
//! rules. Premises of rules are instantiated (`α := a`, `β := box(fdia(a))`)
//! and derived in place, since derivations have no open assumptions.

use alloc::vec;
use alloc::vec::Vec;

use crate::calculus::{by, by_with, derive_identity, omega_by_closure, omega_lift_node, Bindings};
use crate::calculus::{Derivation, PremiseFamily, Side};
use crate::syntax::{parse_formula, Formula, Lang, Sequent, Structure};

/// One corpus entry.
#[derive(Debug, Clone)]
pub struct Golden {
    /// File stem of the proof file.
    pub name: &'static str,
    /// The displayed sequent in the single-type notation, for reports.
    pub display: &'static str,
    pub derivation: Derivation,
}

fn f(s: &str) -> Formula {
    parse_formula(s, Lang::MultiType).expect("compiled-in formula")
}

fn leaf(s: &str) -> Structure {
    Structure::Leaf(f(s))
}

fn id(s: &str) -> Derivation {
    derive_identity(&f(s)).expect("multi-type formula")
}

fn fresh_p(s: &str) -> Bindings {
    Bindings::new().with_structure("P", leaf(s))
}

/// `I |- o(fdia(x))` or `I |- o(bbox(x))` by `one`, then `box_R`.
fn unit_box(special: &str) -> Derivation {
    by("box_R", vec![by_with("one", vec![], fresh_p(special))])
}

/// `a |- o(fdia(a))`.
fn below_star(a: &str) -> Derivation {
    by("adj1_bwd", vec![by("fdia_R", vec![id(a)])])
}

/// `box(Y) |- o(Y)` for `Y` a `fdia` or `bbox` formula.
fn box_counit(y: &str) -> Derivation {
    let inner = match f(y) {
        Formula::FDia(a) => by("fdia_L", vec![by("fdia_R", vec![derive_identity(&a).unwrap()])]),
        Formula::BBox(a) => by("bbox_R", vec![by("bbox_L", vec![derive_identity(&a).unwrap()])]),
        _ => panic!("not a special formula: {y}"),
    };
    by("box_L", vec![by("w_bal_fwd", vec![inner])])
}

/// `(box(Y) , box(Y)) |- box(Y)`.
fn box_square(y: &str) -> Derivation {
    by("box_R", vec![by("abs", vec![box_counit(y), box_counit(y)])])
}

/// From `o(b(a)) |- D` to `box(fdia(a)) |- D`.
fn star_left(d: Derivation) -> Derivation {
    let d = by("adj2_fwd", vec![d]);
    let d = by("fdia_L", vec![d]);
    let d = by("adj2_bwd", vec![d]);
    by("box_L", vec![d])
}

const A_STAR: &str = "box(fdia(a))";

/// `□♦a · β ⊢ β` from `a · β ⊢ β`, with `β := □♦a`.
pub fn k4() -> Derivation {
    let premise = by("box_R", vec![by("abs", vec![below_star("a"), box_counit("fdia(a)")])]);
    let omega = omega_lift_node(&premise, Side::Left).expect("closure shape");
    by("cdot_L", vec![by("res2_bwd", vec![star_left(omega)])])
}

/// `β · □♦a ⊢ β` from `β · a ⊢ β`, with `β := □♦a`.
pub fn k5() -> Derivation {
    let premise = by("box_R", vec![by("abs", vec![box_counit("fdia(a)"), below_star("a")])]);
    let omega = omega_lift_node(&premise, Side::Right).expect("closure shape");
    by("cdot_L", vec![by("res1_bwd", vec![star_left(omega)])])
}

fn one_below_star(special: &str) -> Derivation {
    by("one_L", vec![unit_box(special)])
}

/// `1 ∪ a · □♦a ⊢ □♦a`.
pub fn star_unfold() -> Derivation {
    let step = by(
        "cdot_L",
        vec![by("box_R", vec![by("abs", vec![below_star("a"), box_counit("fdia(a)")])])],
    );
    by("cup_L", vec![one_below_star("fdia(a)"), step])
}

/// `1 ∪ □♦a · □♦a ⊢ □♦a`.
pub fn star_square() -> Derivation {
    by("cup_L", vec![one_below_star("fdia(a)"), by("cdot_L", vec![box_square("fdia(a)")])])
}

fn zero_left() -> Derivation {
    by("zero_L", vec![])
}

fn weaken(d: Derivation, to: Structure) -> Derivation {
    by_with("PhiW", vec![d], Bindings::new().with_structure("D", to))
}

/// `0 · a ⊢ 0`.
pub fn zero_comp() -> Derivation {
    let w = weaken(zero_left(), Structure::left_res(Structure::Phi, leaf("a")));
    by("zero_R", vec![by("cdot_L", vec![by("res2_bwd", vec![w])])])
}

/// `0 ⊢ a · 0`.
pub fn zero_below_comp() -> Derivation {
    weaken(zero_left(), leaf("(a . 0)"))
}

/// `□♦0 ⊢ 1`.
pub fn box_fdia_zero() -> Derivation {
    let w = weaken(zero_left(), Structure::circ(Structure::bullet(leaf("1"))));
    let d = by("adj1_fwd", vec![w]);
    let d = by("fdia_L", vec![d]);
    by("box_L", vec![by("adj2_bwd", vec![d])])
}

/// `1 ⊢ □♦0`.
pub fn one_box_fdia_zero() -> Derivation {
    one_below_star("fdia(0)")
}

/// `□♦1 ⊢ 1`, through `omega` with the family `pow(I, n) |- 1`.
pub fn box_fdia_one() -> Derivation {
    let one = leaf("1");
    let sequent = Sequent::of(Structure::pow(Structure::Phi), one.clone());
    let step = by("PhiL_fwd", vec![Derivation::hyp(sequent.clone())]);
    let fam = PremiseFamily { sequent, base: by("one_R", vec![]), step };
    let conclusion = Sequent::of(Structure::circ(Structure::bullet(Structure::Phi)), one);
    let omega = Derivation::omega(conclusion, by("one_R", vec![]), fam);
    let d = by("adj2_fwd", vec![omega]);
    let d = by("adj1_bwd", vec![d]);
    let d = by("one_L", vec![d]);
    let d = by("adj1_fwd", vec![d]);
    let d = by("fdia_L", vec![d]);
    by("box_L", vec![by("adj2_bwd", vec![d])])
}

/// `1 ⊢ □■a`.
pub fn one_box_bbox() -> Derivation {
    one_below_star("bbox(a)")
}

/// `□■a ⊙ □■a ⊢ □■a`.
pub fn box_bbox_square() -> Derivation {
    box_square("bbox(a)")
}

/// `□■a ⊢ a`.
pub fn box_bbox_counit() -> Derivation {
    let d = by("bbox_L", vec![id("a")]);
    by("box_L", vec![by("adj2_bwd", vec![d])])
}

/// `□■a ⊢ □■□■a`.
pub fn box_bbox_idem() -> Derivation {
    let d = by("bbox_R", vec![by("bbox_L", vec![id("a")])]);
    let d = by("b_bal", vec![d]);
    let d = by("adj2_bwd", vec![d]);
    let d = by("box_R", vec![d]);
    let d = by("adj2_fwd", vec![d]);
    let d = by("bbox_R", vec![d]);
    let d = by("adj1_bwd", vec![d]);
    let d = by("box_R", vec![d]);
    by("box_L", vec![d])
}

/// `□■a ⊢ □■a`.
pub fn box_bbox_id() -> Derivation {
    id("box(bbox(a))")
}

/// The ternary rule with `β := □♦a` and `α := □♦a ∪ b`: from `β ⊢ α`,
/// `1 ⊢ β` and `β · β ⊢ β`, derives `β ⊢ □■α`.
pub fn ternary() -> Derivation {
    let beta = A_STAR;
    let below = by_with("cup_R1", vec![id(beta)], Bindings::new().with_formula("A2", f("b")));
    let omega = omega_by_closure(id(beta), box_square("fdia(a)"), unit_box("fdia(a)"))
        .expect("closure shape");
    let d = by("Cut_g", vec![omega, below]);
    let d = by("adj2_fwd", vec![d]);
    let d = by("bbox_R", vec![d]);
    let d = by("adj1_bwd", vec![d]);
    by("box_R", vec![d])
}

/// The whole corpus, in a fixed order.
pub fn corpus() -> Vec<Golden> {
    let g = |name, display, derivation| Golden { name, display, derivation };
    vec![
        g("k4", "□♦α · β ⊢ β (from α · β ⊢ β)", k4()),
        g("k5", "β · □♦α ⊢ β (from β · α ⊢ β)", k5()),
        g("star_unfold", "1 ∪ α·□♦α ⊢ □♦α", star_unfold()),
        g("star_square", "1 ∪ □♦α·□♦α ⊢ □♦α", star_square()),
        g("zero_comp", "0·α ⊢ 0", zero_comp()),
        g("zero_below_comp", "0 ⊢ α·0", zero_below_comp()),
        g("box_fdia_zero", "□♦0 ⊢ 1", box_fdia_zero()),
        g("one_box_fdia_zero", "1 ⊢ □♦0", one_box_fdia_zero()),
        g("box_fdia_one", "□♦1 ⊢ 1", box_fdia_one()),
        g("one_box_bbox", "1 ⊢ □■α", one_box_bbox()),
        g("box_bbox_square", "□■α⊙□■α ⊢ □■α", box_bbox_square()),
        g("box_bbox_counit", "□■α ⊢ α", box_bbox_counit()),
        g("box_bbox_idem", "□■α ⊢ □■□■α", box_bbox_idem()),
        g("box_bbox_id", "□■α ⊢ □■α", box_bbox_id()),
        g("ternary", "β ⊢ □■α (from β ⊢ α, 1 ⊢ β, β·β ⊢ β)", ternary()),
    ]
}
