//! Bounded backward proof search without cut.
//!
//! Rules are tried in a fixed order: axioms, invertible operational rules
//! (applied eagerly, without backtracking into alternatives), the remaining
//! operational rules, structural rules, and finally `omega` through the
//! three closure patterns of [`crate::calculus::omega_lift_node`] and
//! [`crate::calculus::omega_by_closure`]. Every subgoal is first evaluated
//! in the heterogeneous lifts of the guarded models of size at most 3; a
//! falsified subgoal is abandoned.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{enumerate, lift, valid, Assignment, FiniteAlgebra, HeteroAlgebra, Mode};
use crate::calculus::{
    check_derivation, lookup, omega_by_closure, omega_lift_node, Bindings, Derivation, Side,
};
use crate::syntax::{Sequent, Structure};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Largest derivation height explored, not counting omega families.
    pub max_depth: usize,
    /// Largest number of goal expansions before giving up.
    pub max_visited: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_depth: 12, max_visited: 200_000 }
    }
}

impl SearchBudget {
    pub fn with_depth(max_depth: usize) -> Self {
        SearchBudget { max_depth, ..Self::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    /// The budget ran out, or the bounded space held no derivation.
    Exhausted { visited: usize },
    /// The goal fails in `model` under `countermodel`.
    Refuted { model: FiniteAlgebra, countermodel: Assignment },
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Exhausted { visited } => write!(f, "exhausted after {visited} goals"),
            Failure::Refuted { model, countermodel } => {
                let asg: Vec<String> =
                    countermodel.iter().map(|(k, v)| format!("{k}={v}")).collect();
                write!(f, "refuted in a model of size {} by {}", model.size, asg.join(" "))
            }
        }
    }
}

const AXIOMS: &[&str] = &["Id", "one_R", "zero_L", "one"];
const INVERTIBLE: &[&str] =
    &["one_L", "cdot_L", "cup_L", "fdia_L", "box_L", "zero_R", "box_R", "bbox_R"];
const OPERATIONAL: &[&str] = &["cdot_R", "cup_R1", "cup_R2", "fdia_R", "bbox_L"];
/// `PhiL_bwd` and `PhiR_bwd` are left out: read backward they insert `I`
/// anywhere, without bound.
const STRUCTURAL: &[&str] = &[
    "w_bal_fwd",
    "b_bal",
    "PhiL_fwd",
    "PhiR_fwd",
    "res1_fwd",
    "res1_bwd",
    "res2_fwd",
    "res2_bwd",
    "adj1_fwd",
    "adj1_bwd",
    "adj2_fwd",
    "adj2_bwd",
    "assoc_fwd",
    "assoc_bwd",
    "abs",
    "circC",
    "w_bal_bwd",
    "PhiW",
];

/// Lifts of the guarded models of size at most 3, with their Kleene
/// algebras.
pub fn pruning_models() -> Vec<(FiniteAlgebra, HeteroAlgebra)> {
    enumerate(3, Mode::MeasurableGuarded)
        .expect("size 3 is below the cap")
        .into_iter()
        .map(|m| {
            let h = lift(&m).expect("guarded dual star values lie in the kernel");
            (m, h)
        })
        .collect()
}

fn refute_in(
    models: &[(FiniteAlgebra, HeteroAlgebra)],
    s: &Sequent,
) -> Option<(usize, Assignment)> {
    if s.has_pow() {
        return None;
    }
    models.iter().enumerate().find_map(|(i, (_, h))| match valid(h, s) {
        Ok(v) if !v.valid => v.countermodel.map(|c| (i, c)),
        _ => None,
    })
}

/// The first pruning model and assignment falsifying `s`, if any.
pub fn countermodel(s: &Sequent) -> Option<(FiniteAlgebra, Assignment)> {
    let models = pruning_models();
    refute_in(&models, s).map(|(i, c)| (models[i].0.clone(), c))
}

fn size(s: &Sequent) -> usize {
    s.ant.size() + s.suc.size()
}

enum Outcome {
    Found(Derivation),
    Fail,
    Abort,
}

struct Searcher {
    models: Vec<(FiniteAlgebra, HeteroAlgebra)>,
    budget: SearchBudget,
    size_cap: usize,
    visited: usize,
    refuted: BTreeMap<Sequent, bool>,
    /// Largest remaining depth at which a goal is known to fail.
    failed: BTreeMap<Sequent, usize>,
    path: Vec<Sequent>,
}

impl Searcher {
    fn new(
        root: &Sequent,
        budget: &SearchBudget,
        models: Vec<(FiniteAlgebra, HeteroAlgebra)>,
    ) -> Self {
        Searcher {
            models,
            budget: *budget,
            size_cap: 2 * size(root) + 4,
            visited: 0,
            refuted: BTreeMap::new(),
            failed: BTreeMap::new(),
            path: Vec::new(),
        }
    }

    fn is_refuted(&mut self, s: &Sequent) -> bool {
        if let Some(&r) = self.refuted.get(s) {
            return r;
        }
        let r = refute_in(&self.models, s).is_some();
        self.refuted.insert(s.clone(), r);
        r
    }

    fn premises(&self, rule: &str, goal: &Sequent) -> Option<Vec<Sequent>> {
        let r = lookup(rule)?;
        let mut b = Bindings::new();
        if !r.conclusion.matches(goal, &mut b) {
            return None;
        }
        r.premises.iter().map(|p| p.instantiate(&b)).collect()
    }

    fn solve(&mut self, goal: &Sequent, depth: usize) -> Outcome {
        if depth == 0 || self.path.contains(goal) {
            return Outcome::Fail;
        }
        if self.failed.get(goal).is_some_and(|&d| d >= depth) {
            return Outcome::Fail;
        }
        if size(goal) > self.size_cap || self.is_refuted(goal) {
            return Outcome::Fail;
        }
        self.visited += 1;
        if self.visited > self.budget.max_visited {
            return Outcome::Abort;
        }
        self.path.push(goal.clone());
        let out = self.expand(goal, depth);
        self.path.pop();
        if matches!(out, Outcome::Fail) {
            let d = self.failed.entry(goal.clone()).or_insert(0);
            *d = (*d).max(depth);
        }
        out
    }

    fn expand(&mut self, goal: &Sequent, depth: usize) -> Outcome {
        for &rule in AXIOMS {
            if self.premises(rule, goal).is_some() {
                return Outcome::Found(Derivation::new(rule, goal.clone(), vec![]));
            }
        }
        for &rule in INVERTIBLE {
            if let Some(ps) = self.premises(rule, goal) {
                return self.apply(rule, goal, &ps, depth);
            }
        }
        for &rule in OPERATIONAL.iter().chain(STRUCTURAL) {
            if let Some(ps) = self.premises(rule, goal) {
                match self.apply(rule, goal, &ps, depth) {
                    Outcome::Fail => {}
                    done => return done,
                }
            }
        }
        self.omega(goal, depth)
    }

    fn apply(&mut self, rule: &str, goal: &Sequent, ps: &[Sequent], depth: usize) -> Outcome {
        let mut children = Vec::with_capacity(ps.len());
        for p in ps {
            match self.solve(p, depth - 1) {
                Outcome::Found(d) => children.push(d),
                other => return other,
            }
        }
        Outcome::Found(Derivation::new(rule, goal.clone(), children))
    }

    /// Tries `omega` on `o(b(G)) |- D` with `D` one of `(B < B)`, `(B > B)`
    /// or a formula `B`.
    fn omega(&mut self, goal: &Sequent, depth: usize) -> Outcome {
        let Structure::Circ(inner) = &goal.ant else {
            return Outcome::Fail;
        };
        let Structure::Bullet(g) = &**inner else {
            return Outcome::Fail;
        };
        if g.has_pow() {
            return Outcome::Fail;
        }
        let g = (**g).clone();
        let closure = |side: Side, b: &Structure| match side {
            Side::Left => Sequent::of(Structure::odot(g.clone(), b.clone()), b.clone()),
            Side::Right => Sequent::of(Structure::odot(b.clone(), g.clone()), b.clone()),
        };
        match &goal.suc {
            Structure::LeftRes(x, y) | Structure::RightRes(x, y)
                if x == y && matches!(**x, Structure::Leaf(_)) =>
            {
                let side = match goal.suc {
                    Structure::LeftRes(..) => Side::Left,
                    _ => Side::Right,
                };
                match self.solve(&closure(side, x), depth - 1) {
                    Outcome::Found(d) => match omega_lift_node(&d, side) {
                        Ok(node) => Outcome::Found(node),
                        Err(_) => Outcome::Fail,
                    },
                    other => other,
                }
            }
            Structure::Leaf(_) => {
                let b = goal.suc.clone();
                let subgoals = [
                    Sequent::of(g.clone(), b.clone()),
                    Sequent::of(Structure::odot(b.clone(), b.clone()), b.clone()),
                    Sequent::of(Structure::Phi, b),
                ];
                let mut found = Vec::new();
                for s in &subgoals {
                    match self.solve(s, depth - 1) {
                        Outcome::Found(d) => found.push(d),
                        other => return other,
                    }
                }
                let unit = found.pop().expect("three subgoals");
                let square = found.pop().expect("three subgoals");
                let g_proof = found.pop().expect("three subgoals");
                match omega_by_closure(g_proof, square, unit) {
                    Ok(node) => Outcome::Found(node),
                    Err(_) => Outcome::Fail,
                }
            }
            _ => Outcome::Fail,
        }
    }
}

/// Searches for a cut-free derivation of `s` within `budget`.
///
/// A goal falsified by one of the pruning models is reported as
/// [`Failure::Refuted`] without searching.
pub fn prove(s: &Sequent, budget: &SearchBudget) -> Result<Derivation, Failure> {
    prove_with(s, budget, pruning_models())
}

/// [`prove`] with a caller-supplied list of pruning models, so that
/// repeated searches can share them.
pub fn prove_with(
    s: &Sequent,
    budget: &SearchBudget,
    models: Vec<(FiniteAlgebra, HeteroAlgebra)>,
) -> Result<Derivation, Failure> {
    if let Some((i, countermodel)) = refute_in(&models, s) {
        return Err(Failure::Refuted { model: models[i].0.clone(), countermodel });
    }
    let mut searcher = Searcher::new(s, budget, models);
    match searcher.solve(s, budget.max_depth) {
        Outcome::Found(d) => {
            debug_assert!(check_derivation(&d).is_ok(), "search built an invalid derivation");
            Ok(d)
        }
        Outcome::Fail | Outcome::Abort => Err(Failure::Exhausted { visited: searcher.visited }),
    }
}
