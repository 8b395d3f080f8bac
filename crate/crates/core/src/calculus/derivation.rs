use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use super::catalog::{lookup, RuleKind, RuleSchema};
use super::pattern::Bindings;
use crate::syntax::{Sequent, Structure};

/// Rule name of hypothesis leaves inside omega step templates.
pub const HYP: &str = "hyp";

/// A finite proof tree. Omega nodes carry their unit premise as the only
/// child and the remaining premises as a [`PremiseFamily`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub rule: String,
    pub conclusion: Sequent,
    pub children: Vec<Derivation>,
    pub family: Option<Box<PremiseFamily>>,
}

/// The premises `S(n)`, `n >= 1`, of an omega node, given by a derivation
/// of `S(1)` and a template deriving `S(n+1)` from the hypothesis `S(n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PremiseFamily {
    /// `S(n)`, containing at least one `pow(G, n)`.
    pub sequent: Sequent,
    pub base: Derivation,
    pub step: Derivation,
}

impl Derivation {
    pub fn new(rule: impl Into<String>, conclusion: Sequent, children: Vec<Derivation>) -> Self {
        Derivation { rule: rule.into(), conclusion, children, family: None }
    }

    /// Hypothesis leaf of a step template.
    pub fn hyp(conclusion: Sequent) -> Self {
        Derivation::new(HYP, conclusion, Vec::new())
    }

    pub fn omega(conclusion: Sequent, unit: Derivation, family: PremiseFamily) -> Self {
        Derivation {
            rule: "omega".into(),
            conclusion,
            children: alloc::vec![unit],
            family: Some(Box::new(family)),
        }
    }

    /// Number of rule applications, counting each family's base and step once.
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(Derivation::size).sum::<usize>()
            + self.family.as_ref().map_or(0, |f| f.base.size() + f.step.size())
    }

    pub fn height(&self) -> usize {
        let fam = self.family.as_ref().map_or(0, |f| f.base.height().max(f.step.height()));
        1 + self.children.iter().map(Derivation::height).max().unwrap_or(0).max(fam)
    }

    /// Visits every node in pre-order, including family components.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Derivation)) {
        f(self);
        for c in &self.children {
            c.walk(f);
        }
        if let Some(fam) = &self.family {
            fam.base.walk(f);
            fam.step.walk(f);
        }
    }

    /// All cut nodes, in pre-order.
    pub fn cuts(&self) -> Vec<&Derivation> {
        let mut out = Vec::new();
        self.walk(&mut |d| {
            if d.rule == "Cut_g" || d.rule == "Cut_s" {
                out.push(d);
            }
        });
        out
    }

    /// For a cut node, the cut formula.
    pub fn cut_formula(&self) -> Option<&crate::syntax::Formula> {
        if self.rule != "Cut_g" && self.rule != "Cut_s" {
            return None;
        }
        match &self.children.first()?.conclusion.suc {
            Structure::Leaf(f) => Some(f),
            _ => None,
        }
    }

    fn count_hyps(&self) -> usize {
        let own = usize::from(self.rule == HYP);
        own + self.children.iter().map(Derivation::count_hyps).sum::<usize>()
    }

    fn map_conclusions(&self, f: &impl Fn(&Sequent) -> Sequent) -> Derivation {
        Derivation {
            rule: self.rule.clone(),
            conclusion: f(&self.conclusion),
            children: self.children.iter().map(|c| c.map_conclusions(f)).collect(),
            family: self.family.clone(),
        }
    }

    fn replace_hyp(self, with: &Derivation) -> Derivation {
        if self.rule == HYP {
            return with.clone();
        }
        Derivation {
            children: self.children.into_iter().map(|c| c.replace_hyp(with)).collect(),
            ..self
        }
    }
}

/// One step of a path from the root of a derivation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathStep {
    Child(usize),
    Base,
    Step,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NodePath(pub Vec<PathStep>);

impl NodePath {
    fn push(&self, s: PathStep) -> NodePath {
        let mut v = self.0.clone();
        v.push(s);
        NodePath(v)
    }
}

impl fmt::Display for NodePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("root")?;
        for s in &self.0 {
            match s {
                PathStep::Child(i) => write!(f, ".{i}")?,
                PathStep::Base => f.write_str(".base")?,
                PathStep::Step => f.write_str(".step")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OmegaError {
    #[error("base concludes `{found}` but the family at 1 is `{expected}`")]
    BaseMismatch { expected: String, found: String },
    #[error("hypothesis `{found}` is not the family at n, `{expected}`")]
    StepHypothesisMismatch { expected: String, found: String },
    #[error("step concludes `{found}` but the family at n+1 is `{expected}`")]
    StepConclusionMismatch { expected: String, found: String },
    #[error("malformed premise family: {0}")]
    FamilyShape(String),
    #[error("omega node inside a step template")]
    NestedOmega,
    #[error("omega node without a premise family")]
    MissingFamily,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckErrorKind {
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("`{rule}` expects {expected}, found {found}")]
    RuleMismatch { rule: String, expected: String, found: String },
    #[error("ill-typed sequent `{0}`")]
    KindMismatch(String),
    #[error("symbolic power outside a step template in `{0}`")]
    SymbolicPower(String),
    #[error("hypothesis leaf outside a step template")]
    StrayHypothesis,
    #[error(transparent)]
    Omega(#[from] OmegaError),
}

/// First failing node of a derivation, in pre-order.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at {path}: {kind}")]
pub struct CheckError {
    pub path: NodePath,
    pub kind: CheckErrorKind,
}

fn fail<T>(path: &NodePath, kind: impl Into<CheckErrorKind>) -> Result<T, CheckError> {
    Err(CheckError { path: path.clone(), kind: kind.into() })
}

fn mismatch(rule: &str, expected: impl ToString, found: impl ToString) -> CheckErrorKind {
    CheckErrorKind::RuleMismatch {
        rule: rule.into(),
        expected: expected.to_string(),
        found: found.to_string(),
    }
}

/// Checks that every node is an instance of its named rule.
pub fn check_derivation(d: &Derivation) -> Result<(), CheckError> {
    check_node(d, None, &NodePath::default())
}

fn well_typed(s: &Sequent) -> bool {
    matches!(Sequent::new(s.ant.clone(), s.suc.clone()), Ok(t) if t.kind == s.kind)
}

fn check_node(d: &Derivation, hyp: Option<&Sequent>, path: &NodePath) -> Result<(), CheckError> {
    if !well_typed(&d.conclusion) {
        return fail(path, CheckErrorKind::KindMismatch(d.conclusion.to_string()));
    }
    if hyp.is_none() && d.conclusion.has_pow() {
        return fail(path, CheckErrorKind::SymbolicPower(d.conclusion.to_string()));
    }
    if d.rule == HYP {
        return match hyp {
            None => fail(path, CheckErrorKind::StrayHypothesis),
            Some(h) if *h != d.conclusion => fail(
                path,
                OmegaError::StepHypothesisMismatch {
                    expected: h.to_string(),
                    found: d.conclusion.to_string(),
                },
            ),
            Some(_) if !d.children.is_empty() => {
                fail(path, mismatch(HYP, "a leaf", "a node with premises"))
            }
            Some(_) => Ok(()),
        };
    }
    let Some(rule) = lookup(&d.rule) else {
        return fail(path, CheckErrorKind::UnknownRule(d.rule.clone()));
    };
    if rule.kind == RuleKind::Omega && hyp.is_some() {
        return fail(path, OmegaError::NestedOmega);
    }
    let env = match_instance(rule, d).map_err(|kind| CheckError { path: path.clone(), kind })?;

    match (&d.family, rule.kind) {
        (Some(fam), RuleKind::Omega) => {
            let pat = rule.family.as_ref().expect("omega schema has a family");
            match pat.instantiate(&env) {
                Some(expected) if expected == fam.sequent => {}
                Some(expected) => return fail(path, mismatch(rule.name, expected, &fam.sequent)),
                None => return fail(path, mismatch(rule.name, pat, &fam.sequent)),
            }
            verify_family_at(fam, path)?;
        }
        (None, RuleKind::Omega) => return fail(path, OmegaError::MissingFamily),
        (Some(_), _) => return fail(path, mismatch(rule.name, "no premise family", "a family")),
        (None, _) => {}
    }
    for (i, c) in d.children.iter().enumerate() {
        check_node(c, hyp, &path.push(PathStep::Child(i)))?;
    }
    Ok(())
}

/// Matches the conclusion, then each premise against the child conclusions.
fn match_instance(rule: &RuleSchema, d: &Derivation) -> Result<Bindings, CheckErrorKind> {
    let mut env = Bindings::new();
    if !rule.conclusion.matches(&d.conclusion, &mut env) {
        return Err(mismatch(rule.name, &rule.conclusion, &d.conclusion));
    }
    if d.children.len() != rule.premises.len() {
        return Err(mismatch(
            rule.name,
            format!("{} premises", rule.premises.len()),
            d.children.len(),
        ));
    }
    for (p, c) in rule.premises.iter().zip(&d.children) {
        if !p.matches(&c.conclusion, &mut env) {
            let expected = p.instantiate(&env).map_or_else(|| p.to_string(), |s| s.to_string());
            return Err(mismatch(rule.name, expected, &c.conclusion));
        }
    }
    Ok(env)
}

/// `S(1)`: every `pow(G, n)` replaced by `G`.
pub fn family_at_one(s: &Sequent) -> Sequent {
    s.map_pow(&|g| g.clone())
}

/// `S(n+1)`: every `pow(G, n)` replaced by `(G , pow(G, n))`.
pub fn family_successor(s: &Sequent) -> Sequent {
    s.map_pow(&|g| Structure::odot(g.clone(), Structure::pow(g.clone())))
}

/// `S(k)` for a literal `k >= 1`.
pub fn family_at(s: &Sequent, k: usize) -> Sequent {
    s.map_pow(&|g| Structure::power(g, k))
}

/// Certifies `S(n)` for every `n >= 1` by induction on `n`.
pub fn verify_omega_family(fam: &PremiseFamily) -> Result<(), CheckError> {
    verify_family_at(fam, &NodePath::default())
}

fn verify_family_at(fam: &PremiseFamily, path: &NodePath) -> Result<(), CheckError> {
    if !fam.sequent.has_pow() {
        return fail(
            path,
            OmegaError::FamilyShape(format!("`{}` has no symbolic power", fam.sequent)),
        );
    }
    if !well_typed(&fam.sequent) {
        return fail(path, CheckErrorKind::KindMismatch(fam.sequent.to_string()));
    }
    let one = family_at_one(&fam.sequent);
    if fam.base.conclusion != one {
        return fail(
            path,
            OmegaError::BaseMismatch {
                expected: one.to_string(),
                found: fam.base.conclusion.to_string(),
            },
        );
    }
    check_node(&fam.base, None, &path.push(PathStep::Base))?;

    let next = family_successor(&fam.sequent);
    if fam.step.conclusion != next {
        return fail(
            path,
            OmegaError::StepConclusionMismatch {
                expected: next.to_string(),
                found: fam.step.conclusion.to_string(),
            },
        );
    }
    let hyps = fam.step.count_hyps();
    if hyps != 1 {
        return fail(
            path,
            OmegaError::FamilyShape(format!("step has {hyps} hypothesis leaves, expected 1")),
        );
    }
    check_node(&fam.step, Some(&fam.sequent), &path.push(PathStep::Step))
}

/// Member `k` of a family as a concrete derivation: the base followed by
/// `k - 1` copies of the step with `n` instantiated.
///
/// # Panics
/// If `k == 0`.
pub fn expand_family(fam: &PremiseFamily, k: usize) -> Derivation {
    assert!(k >= 1, "family members start at 1");
    let mut acc = fam.base.clone();
    for i in 1..k {
        acc = fam.step.map_conclusions(&|s| family_at(s, i)).replace_hyp(&acc);
    }
    acc
}

/// Outcome of the bounded check, which only looks at finitely many members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedCheck {
    pub members_checked: usize,
    /// Always `"unsound-bounded"`: finitely many members do not certify an
    /// omega premise.
    pub flag: &'static str,
}

/// Checks members `1..=max_n` of a family as concrete derivations.
pub fn check_family_bounded(fam: &PremiseFamily, max_n: usize) -> Result<BoundedCheck, CheckError> {
    for k in 1..=max_n {
        let member = expand_family(fam, k);
        let expected = family_at(&fam.sequent, k);
        if member.conclusion != expected {
            return fail(
                &NodePath::default(),
                OmegaError::StepConclusionMismatch {
                    expected: expected.to_string(),
                    found: member.conclusion.to_string(),
                },
            );
        }
        check_derivation(&member)?;
    }
    Ok(BoundedCheck { members_checked: max_n, flag: "unsound-bounded" })
}

/// Why [`infer`] could not build a node.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("`{rule}` does not apply: {reason}")]
    NotApplicable { rule: String, reason: String },
}

/// Applies `rule` forwards to `children`, computing the conclusion.
/// Metavariables that only occur in the conclusion are taken from `fresh`.
pub fn infer(
    rule: &str,
    children: Vec<Derivation>,
    fresh: Bindings,
) -> Result<Derivation, BuildError> {
    let schema = lookup(rule).ok_or_else(|| BuildError::UnknownRule(rule.into()))?;
    let na = |reason: String| BuildError::NotApplicable { rule: rule.into(), reason };
    if schema.kind == RuleKind::Omega {
        return Err(na("use `Derivation::omega`".into()));
    }
    if children.len() != schema.premises.len() {
        return Err(na(format!(
            "{} premises given, {} expected",
            children.len(),
            schema.premises.len()
        )));
    }
    let mut env = fresh;
    for (p, c) in schema.premises.iter().zip(&children) {
        if !p.matches(&c.conclusion, &mut env) {
            return Err(na(format!("`{}` is not an instance of `{p}`", c.conclusion)));
        }
    }
    let conclusion = schema
        .conclusion
        .instantiate(&env)
        .ok_or_else(|| na(format!("unbound metavariables in `{}`", schema.conclusion)))?;
    Ok(Derivation::new(rule, conclusion, children))
}

/// [`infer`] for compiled-in constructions that cannot fail.
///
/// # Panics
/// If the rule does not apply.
pub fn by(rule: &str, children: Vec<Derivation>) -> Derivation {
    infer(rule, children, Bindings::new()).unwrap_or_else(|e| panic!("{e}"))
}

/// [`by`] with fresh bindings.
///
/// # Panics
/// If the rule does not apply.
pub fn by_with(rule: &str, children: Vec<Derivation>, fresh: Bindings) -> Derivation {
    infer(rule, children, fresh).unwrap_or_else(|e| panic!("{e}"))
}

/// Renders a derivation in the s-expression proof format.
impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tree(self, 0, f)
    }
}

fn indent(depth: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for _ in 0..depth {
        f.write_str("  ")?;
    }
    Ok(())
}

fn write_tree(d: &Derivation, depth: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if d.rule == HYP {
        return f.write_str("(hyp)");
    }
    write!(f, "({} \"{}\"", d.rule, d.conclusion)?;
    for c in &d.children {
        f.write_str("\n")?;
        indent(depth + 1, f)?;
        if d.family.is_some() {
            f.write_str("(unit ")?;
            write_tree(c, depth + 2, f)?;
            f.write_str(")")?;
        } else {
            write_tree(c, depth + 1, f)?;
        }
    }
    if let Some(fam) = &d.family {
        f.write_str("\n")?;
        indent(depth + 1, f)?;
        write!(f, "(family \"{}\"", fam.sequent)?;
        f.write_str("\n")?;
        indent(depth + 2, f)?;
        f.write_str("(base ")?;
        write_tree(&fam.base, depth + 3, f)?;
        f.write_str(")\n")?;
        indent(depth + 2, f)?;
        f.write_str("(step ")?;
        write_tree(&fam.step, depth + 3, f)?;
        f.write_str("))")?;
    }
    f.write_str(")")
}
