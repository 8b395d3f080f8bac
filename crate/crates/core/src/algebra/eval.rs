use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use super::hetero::{lift, HeteroAlgebra};
use super::FiniteAlgebra;
use crate::calculus::pattern::{FPat, SPat, SeqPat, VarSort};
use crate::calculus::{RuleKind, RuleSchema};
use crate::syntax::{translate, Formula, Kind, Sequent, Structure};

/// Atom names to elements of the general carrier.
pub type Assignment = BTreeMap<String, usize>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Position {
    Precedent,
    Succedent,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("`{connective}` has no interpretation in {position:?} position")]
    NoInterpretation { connective: &'static str, position: Position },
    #[error("iota is undefined at element {0}")]
    IotaPartial(usize),
    #[error("dual star is undefined at element {0}")]
    DualStarPartial(usize),
    #[error("unassigned atom `{0}`")]
    Unassigned(String),
    #[error("symbolic power cannot be evaluated")]
    SymbolicPower,
    #[error("`{0}` is not a multi-type formula")]
    SingleType(String),
    #[error("`{0}` is not a single-type formula")]
    MultiType(String),
}

impl EvalError {
    /// Errors that make an assignment irrelevant rather than the input bad.
    fn is_partiality(&self) -> bool {
        matches!(self, EvalError::IotaPartial(_) | EvalError::DualStarPartial(_))
    }
}

fn iota(h: &HeteroAlgebra, a: usize) -> Result<usize, EvalError> {
    h.iota(a).ok_or(EvalError::IotaPartial(a))
}

/// Evaluates a multi-type formula; the result lies in `A` or `S` according
/// to the formula's type.
pub fn eval_formula(h: &HeteroAlgebra, asg: &Assignment, f: &Formula) -> Result<usize, EvalError> {
    let a = &h.general;
    Ok(match f {
        Formula::Atom(n) => *asg.get(n).ok_or_else(|| EvalError::Unassigned(n.clone()))?,
        Formula::One => a.one,
        Formula::Zero => a.zero,
        Formula::Union(x, y) => a.j(eval_formula(h, asg, x)?, eval_formula(h, asg, y)?),
        Formula::Comp(x, y) => a.c(eval_formula(h, asg, x)?, eval_formula(h, asg, y)?),
        Formula::BoxF(x) => h.embed(eval_formula(h, asg, x)?),
        Formula::FDia(x) => h.gamma(eval_formula(h, asg, x)?),
        Formula::BBox(x) => iota(h, eval_formula(h, asg, x)?)?,
        Formula::Star(_) | Formula::DualStar(_) => {
            return Err(EvalError::SingleType(format!("{f}")))
        }
    })
}

/// Evaluates a structure, reading structural connectives by position.
pub fn eval_structure(
    h: &HeteroAlgebra,
    asg: &Assignment,
    s: &Structure,
    pos: Position,
) -> Result<usize, EvalError> {
    let a = &h.general;
    let none = |connective| Err(EvalError::NoInterpretation { connective, position: pos });
    use Position::{Precedent as P, Succedent as S};
    Ok(match (s, pos) {
        (Structure::Leaf(f), _) => eval_formula(h, asg, f)?,
        (Structure::Phi, P) => a.one,
        (Structure::Phi, S) => a.zero,
        (Structure::Odot(x, y), P) => {
            a.c(eval_structure(h, asg, x, P)?, eval_structure(h, asg, y, P)?)
        }
        (Structure::Odot(..), S) => return none(","),
        (Structure::LeftRes(t, d), S) => {
            a.residuals(eval_structure(h, asg, d, P)?, eval_structure(h, asg, t, S)?).1
        }
        (Structure::RightRes(g, t), S) => {
            a.residuals(eval_structure(h, asg, g, P)?, eval_structure(h, asg, t, S)?).0
        }
        (Structure::LeftRes(..), P) => return none("<"),
        (Structure::RightRes(..), P) => return none(">"),
        (Structure::Circ(p), _) => h.embed(eval_structure(h, asg, p, pos)?),
        (Structure::Bullet(g), P) => h.gamma(eval_structure(h, asg, g, P)?),
        (Structure::Bullet(g), S) => iota(h, eval_structure(h, asg, g, S)?)?,
        (Structure::Pow(_), _) => return Err(EvalError::SymbolicPower),
    })
}

/// Outcome of checking an inequality under every assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Validity {
    pub valid: bool,
    /// First falsifying assignment, in lexicographic order.
    pub countermodel: Option<Assignment>,
    pub checked: usize,
    /// Assignments skipped because a partial map was undefined.
    pub skipped: usize,
}

/// Calls `f` on every map from `names` to `0..size`, in lexicographic
/// order, until it returns `false`.
fn for_each_assignment(names: &[String], size: usize, mut f: impl FnMut(&Assignment) -> bool) {
    let mut idx = vec![0usize; names.len()];
    loop {
        let asg: Assignment = names.iter().cloned().zip(idx.iter().copied()).collect();
        if !f(&asg) {
            return;
        }
        let mut i = names.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < size {
                break;
            }
            idx[i] = 0;
        }
    }
}

fn check_all(
    names: &[String],
    size: usize,
    holds: impl Fn(&Assignment) -> Result<bool, EvalError>,
) -> Result<Validity, EvalError> {
    let mut out = Validity { valid: true, countermodel: None, checked: 0, skipped: 0 };
    let mut err = None;
    for_each_assignment(names, size, |asg| match holds(asg) {
        Ok(true) => {
            out.checked += 1;
            true
        }
        Ok(false) => {
            out.checked += 1;
            out.valid = false;
            out.countermodel = Some(asg.clone());
            false
        }
        Err(e) if e.is_partiality() => {
            out.skipped += 1;
            true
        }
        Err(e) => {
            err = Some(e);
            false
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// `eval(precedent) <= eval(succedent)` under every assignment of the
/// sequent's atoms.
pub fn valid(h: &HeteroAlgebra, s: &Sequent) -> Result<Validity, EvalError> {
    check_all(&s.atoms(), h.general.size, |asg| {
        let l = eval_structure(h, asg, &s.ant, Position::Precedent)?;
        let r = eval_structure(h, asg, &s.suc, Position::Succedent)?;
        Ok(match s.kind {
            Kind::General => h.general.leq(l, r),
            Kind::Special => h.special.leq(l, r),
        })
    })
}

/// Evaluates a single-type formula directly in `K`.
pub fn eval_single(m: &FiniteAlgebra, asg: &Assignment, f: &Formula) -> Result<usize, EvalError> {
    Ok(match f {
        Formula::Atom(n) => *asg.get(n).ok_or_else(|| EvalError::Unassigned(n.clone()))?,
        Formula::One => m.one,
        Formula::Zero => m.zero,
        Formula::Union(x, y) => m.j(eval_single(m, asg, x)?, eval_single(m, asg, y)?),
        Formula::Comp(x, y) => m.c(eval_single(m, asg, x)?, eval_single(m, asg, y)?),
        Formula::Star(x) => m.star(eval_single(m, asg, x)?),
        Formula::DualStar(x) => {
            let v = eval_single(m, asg, x)?;
            m.dstar(v).ok_or(EvalError::DualStarPartial(v))?
        }
        Formula::BoxF(_) | Formula::FDia(_) | Formula::BBox(_) => {
            return Err(EvalError::MultiType(format!("{f}")))
        }
    })
}

/// `K ⊨ α <= β`.
pub fn valid_single(m: &FiniteAlgebra, a: &Formula, b: &Formula) -> Result<Validity, EvalError> {
    let mut names = Vec::new();
    a.atoms_into(&mut names);
    b.atoms_into(&mut names);
    check_all(&names, m.size, |asg| Ok(m.leq(eval_single(m, asg, a)?, eval_single(m, asg, b)?)))
}

/// Whether `K ⊨ α <= β` agrees with `K⁺ ⊨ αᵗ <= βᵗ`.
pub fn translation_invariance(m: &FiniteAlgebra, a: &Formula, b: &Formula) -> bool {
    let Ok(h) = lift(m) else {
        return false;
    };
    let seq = Sequent::of(translate(a), translate(b));
    match (valid_single(m, a, b), valid(&h, &seq)) {
        (Ok(l), Ok(r)) => l.valid == r.valid,
        _ => false,
    }
}

/// Outcome of [`check_rule_soundness`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Soundness {
    pub sound: bool,
    /// Metavariable values under which the premises hold and the
    /// conclusion fails.
    pub witness: Option<String>,
    pub checked: usize,
    pub skipped: usize,
}

type Env = BTreeMap<String, usize>;

fn eval_fpat(h: &HeteroAlgebra, env: &Env, f: &FPat) -> Result<usize, EvalError> {
    let a = &h.general;
    Ok(match f {
        FPat::Var(n, _) => env[n],
        FPat::One => a.one,
        FPat::Zero => a.zero,
        FPat::Union(x, y) => a.j(eval_fpat(h, env, x)?, eval_fpat(h, env, y)?),
        FPat::Comp(x, y) => a.c(eval_fpat(h, env, x)?, eval_fpat(h, env, y)?),
        FPat::BoxF(x) => h.embed(eval_fpat(h, env, x)?),
        FPat::FDia(x) => h.gamma(eval_fpat(h, env, x)?),
        FPat::BBox(x) => iota(h, eval_fpat(h, env, x)?)?,
    })
}

/// `pow` is the value standing for the symbolic power, if any.
fn eval_spat(
    h: &HeteroAlgebra,
    env: &Env,
    s: &SPat,
    pos: Position,
    pow: Option<usize>,
) -> Result<usize, EvalError> {
    let a = &h.general;
    let none = |connective| Err(EvalError::NoInterpretation { connective, position: pos });
    use Position::{Precedent as P, Succedent as S};
    Ok(match (s, pos) {
        (SPat::Var(n, _), _) => env[n],
        (SPat::Leaf(f), _) => eval_fpat(h, env, f)?,
        (SPat::Phi, P) => a.one,
        (SPat::Phi, S) => a.zero,
        (SPat::Odot(x, y), P) => a.c(eval_spat(h, env, x, P, pow)?, eval_spat(h, env, y, P, pow)?),
        (SPat::Odot(..), S) => return none(","),
        (SPat::LeftRes(t, d), S) => {
            a.residuals(eval_spat(h, env, d, P, pow)?, eval_spat(h, env, t, S, pow)?).1
        }
        (SPat::RightRes(g, t), S) => {
            a.residuals(eval_spat(h, env, g, P, pow)?, eval_spat(h, env, t, S, pow)?).0
        }
        (SPat::LeftRes(..), P) => return none("<"),
        (SPat::RightRes(..), P) => return none(">"),
        (SPat::Circ(p), _) => h.embed(eval_spat(h, env, p, pos, pow)?),
        (SPat::Bullet(g), P) => h.gamma(eval_spat(h, env, g, P, pow)?),
        (SPat::Bullet(g), S) => iota(h, eval_spat(h, env, g, S, pow)?)?,
        (SPat::Pow(_), _) => pow.ok_or(EvalError::SymbolicPower)?,
    })
}

fn holds(h: &HeteroAlgebra, env: &Env, p: &SeqPat, pow: Option<usize>) -> Result<bool, EvalError> {
    let l = eval_spat(h, env, &p.ant, Position::Precedent, pow)?;
    let r = eval_spat(h, env, &p.suc, Position::Succedent, pow)?;
    Ok(match p.kind() {
        Kind::General => h.general.leq(l, r),
        Kind::Special => h.special.leq(l, r),
    })
}

fn pow_base(p: &SPat) -> Option<&SPat> {
    match p {
        SPat::Pow(g) => Some(g),
        SPat::Var(..) | SPat::Leaf(_) | SPat::Phi => None,
        SPat::Odot(x, y) | SPat::LeftRes(x, y) | SPat::RightRes(x, y) => {
            pow_base(x).or_else(|| pow_base(y))
        }
        SPat::Circ(x) | SPat::Bullet(x) => pow_base(x),
    }
}

/// Whether the rule preserves validity in `h`: for every value of its
/// metavariables in the sort's carrier, premises holding implies the
/// conclusion holding. The premises of `omega` range over every `n >= 1`,
/// using the eventually periodic powers of the base.
pub fn check_rule_soundness(h: &HeteroAlgebra, rule: &RuleSchema) -> Soundness {
    let mut vars: BTreeMap<String, VarSort> = rule.conclusion.vars();
    for p in rule.premises.iter().chain(rule.family.iter()) {
        vars.extend(p.vars());
    }
    let names: Vec<(String, usize)> = vars
        .into_iter()
        .map(|(n, s)| {
            let size = match s.kind() {
                Kind::General => h.general.size,
                Kind::Special => h.special.size,
            };
            (n, size)
        })
        .collect();
    let mut out = Soundness { sound: true, witness: None, checked: 0, skipped: 0 };
    let mut idx = vec![0usize; names.len()];
    loop {
        let env: Env = names.iter().map(|(n, _)| n.clone()).zip(idx.iter().copied()).collect();
        match rule_instance(h, rule, &env) {
            Ok(true) => out.checked += 1,
            Ok(false) => {
                out.checked += 1;
                out.sound = false;
                let w: Vec<String> = env.iter().map(|(n, v)| format!("{n}={v}")).collect();
                out.witness = Some(w.join(" "));
                return out;
            }
            Err(e) if e.is_partiality() => out.skipped += 1,
            Err(e) => {
                out.sound = false;
                out.witness = Some(format!("{e}"));
                return out;
            }
        }
        let mut i = names.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < names[i].1 {
                break;
            }
            idx[i] = 0;
        }
    }
}

/// `Ok(false)` exactly when the premises hold and the conclusion fails.
fn rule_instance(h: &HeteroAlgebra, rule: &RuleSchema, env: &Env) -> Result<bool, EvalError> {
    for p in &rule.premises {
        if !holds(h, env, p, None)? {
            return Ok(true);
        }
    }
    if let Some(fam) = &rule.family {
        let base = pow_base(&fam.ant).or_else(|| pow_base(&fam.suc));
        let g = match base {
            Some(b) => eval_spat(h, env, b, Position::Precedent, None)?,
            None => return Err(EvalError::SymbolicPower),
        };
        for v in h.general.powers(g).values_from(1) {
            if !holds(h, env, fam, Some(v))? {
                return Ok(true);
            }
        }
    }
    debug_assert!(rule.kind != RuleKind::Omega || rule.family.is_some());
    holds(h, env, &rule.conclusion, None)
}

/// Unsound variants of catalog rules, each refuted by some small model.
pub fn mutated_rules() -> Vec<RuleSchema> {
    vec![
        RuleSchema::from_patterns("abs_drop_premise", &["G |- o(P)"], "(G , D) |- o(P)"),
        RuleSchema::from_patterns("contraction_general", &["(G , G) |- D"], "G |- D"),
        RuleSchema::from_patterns("phi_axiom", &[], "I |- D"),
        RuleSchema::from_patterns("cup_R_elim", &["G |- (A1 + A2)"], "G |- A1"),
        RuleSchema::from_patterns("exchange", &["(G , D) |- T"], "(D , G) |- T"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{lookup, omega_printed_schema};
    use crate::syntax::{parse_formula, parse_sequent, Lang};

    fn b2() -> HeteroAlgebra {
        lift(&FiniteAlgebra::b2()).unwrap()
    }

    #[test]
    fn phi_is_one_in_precedent() {
        let h = b2();
        let v = eval_structure(&h, &Assignment::new(), &Structure::Phi, Position::Precedent);
        assert_eq!(v, Ok(1));
    }

    #[test]
    fn circ_bullet_is_star() {
        let h = lift(&FiniteAlgebra::rel(2)).unwrap();
        let s = parse_sequent("o(b(a)) |- a").unwrap().ant;
        for x in h.general.elements() {
            let asg: Assignment = [("a".into(), x)].into_iter().collect();
            let v = eval_structure(&h, &asg, &s, Position::Precedent).unwrap();
            assert_eq!(v, FiniteAlgebra::rel(2).star(x));
        }
    }

    #[test]
    fn residual_in_precedent_has_no_interpretation() {
        let h = b2();
        let s = parse_sequent("(a < b) |- a").unwrap();
        assert!(matches!(valid(&h, &s), Err(EvalError::NoInterpretation { .. })));
    }

    #[test]
    fn validity_examples() {
        let h = b2();
        assert!(valid(&h, &parse_sequent("a |- a").unwrap()).unwrap().valid);
        assert!(valid(&h, &parse_sequent("I |- o(b(1))").unwrap()).unwrap().valid);
        let v = valid(&h, &parse_sequent("a |- b").unwrap()).unwrap();
        assert!(!v.valid);
        let cm = v.countermodel.unwrap();
        assert_eq!((cm["a"], cm["b"]), (1, 0));
    }

    #[test]
    fn omega_sound_only_with_unit_premise() {
        let h = b2();
        assert!(check_rule_soundness(&h, lookup("omega").unwrap()).sound);
        let printed = check_rule_soundness(&h, &omega_printed_schema());
        assert!(!printed.sound);
        assert_eq!(printed.witness.as_deref(), Some("D=0 G=0"));
    }

    #[test]
    fn abs_sound_and_mutant_refuted() {
        let h = lift(&FiniteAlgebra::rel(2)).unwrap();
        assert!(check_rule_soundness(&h, lookup("abs").unwrap()).sound);
        let exchange = &mutated_rules()[4];
        assert!(!check_rule_soundness(&h, exchange).sound);
    }

    #[test]
    fn translation_examples() {
        let st = |s| parse_formula(s, Lang::SingleType).unwrap();
        assert!(translation_invariance(&FiniteAlgebra::b2(), &st("a^*"), &st("1")));
        assert!(translation_invariance(&FiniteAlgebra::rel(2), &st("(a . a)"), &st("a^*")));
        assert!(translation_invariance(&FiniteAlgebra::rel(2), &st("b"), &st("b")));
    }
}
