use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use once_cell::race::OnceBox;

use super::pattern::SeqPat;
use crate::syntax::Kind;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleKind {
    Axiom,
    Unary,
    Binary,
    Omega,
}

/// Reading direction of a rule. Double-line rules contribute one schema per
/// direction; all other rules are `Forward`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSchema {
    pub name: &'static str,
    pub premises: Vec<SeqPat>,
    /// The infinitely many premises of `omega`, indexed by `n >= 1`.
    pub family: Option<SeqPat>,
    pub conclusion: SeqPat,
    pub kind: RuleKind,
    pub direction: Direction,
    /// Conclusion metavariables that occur in no premise; the checker reads
    /// them off the stated conclusion.
    pub fresh: Vec<String>,
}

impl RuleSchema {
    /// Builds a schema from pattern strings.
    ///
    /// # Panics
    /// On a malformed pattern.
    pub fn from_patterns(name: &'static str, premises: &[&str], conclusion: &str) -> Self {
        Self::new(name, premises, conclusion, Direction::Forward)
    }

    fn new(name: &'static str, premises: &[&str], conclusion: &str, direction: Direction) -> Self {
        let premises: Vec<SeqPat> = premises.iter().map(|p| SeqPat::parse(p)).collect();
        let conclusion = SeqPat::parse(conclusion);
        let kind = match premises.len() {
            0 => RuleKind::Axiom,
            1 => RuleKind::Unary,
            _ => RuleKind::Binary,
        };
        let mut schema = RuleSchema {
            name,
            premises,
            family: None,
            conclusion,
            kind,
            direction,
            fresh: Vec::new(),
        };
        schema.fresh = schema.compute_fresh();
        schema
    }

    fn compute_fresh(&self) -> Vec<String> {
        let mut above: BTreeSet<String> = BTreeSet::new();
        for p in self.premises.iter().chain(self.family.iter()) {
            above.extend(p.vars().into_keys());
        }
        self.conclusion.vars().into_keys().filter(|v| !above.contains(v)).collect()
    }

    pub fn introduces_fresh(&self) -> bool {
        !self.fresh.is_empty()
    }

    /// Sequent kind of the conclusion.
    pub fn sequent_kind(&self) -> Kind {
        self.conclusion.kind()
    }

    /// Rules whose principal formula is introduced by the rule itself.
    pub fn is_operational(&self) -> bool {
        matches!(
            self.name,
            "Id" | "one_L"
                | "one_R"
                | "zero_L"
                | "zero_R"
                | "cup_L"
                | "cup_R1"
                | "cup_R2"
                | "cdot_L"
                | "cdot_R"
                | "fdia_L"
                | "fdia_R"
                | "bbox_L"
                | "bbox_R"
                | "box_L"
                | "box_R"
        )
    }
}

use Direction::{Backward as Bwd, Forward as Fwd};

fn both(out: &mut Vec<RuleSchema>, fwd: &'static str, bwd: &'static str, upper: &str, lower: &str) {
    out.push(RuleSchema::new(fwd, &[upper], lower, Fwd));
    out.push(RuleSchema::new(bwd, &[lower], upper, Bwd));
}

/// The omega rule with its unit premise `I |- D` (the member `n = 0`).
pub fn omega_schema() -> RuleSchema {
    let mut r = RuleSchema::new("omega", &["I |- D"], "o(b(G)) |- D", Fwd);
    r.family = Some(SeqPat::parse("pow(G, n) |- D"));
    r.kind = RuleKind::Omega;
    r.fresh = r.compute_fresh();
    r
}

/// The omega rule with only the premises `n >= 1`. Not part of the
/// catalog: it is unsound, since `o(b(G))` denotes a join that includes the
/// zeroth power.
pub fn omega_printed_schema() -> RuleSchema {
    let mut r = RuleSchema::new("omega_printed", &[], "o(b(G)) |- D", Fwd);
    r.family = Some(SeqPat::parse("pow(G, n) |- D"));
    r.kind = RuleKind::Omega;
    r.fresh = r.compute_fresh();
    r
}

fn build() -> Vec<RuleSchema> {
    let mut c = Vec::with_capacity(40);
    c.push(RuleSchema::new("Id", &[], "Q |- Q", Fwd));
    c.push(RuleSchema::new("Cut_g", &["G |- A", "A |- D"], "G |- D", Fwd));
    c.push(RuleSchema::new("Cut_s", &["P |- Y", "Y |- X"], "P |- X", Fwd));

    both(&mut c, "res1_fwd", "res1_bwd", "(G , D) |- T", "D |- (G > T)");
    both(&mut c, "res2_fwd", "res2_bwd", "(G , D) |- T", "G |- (T < D)");
    both(&mut c, "adj1_fwd", "adj1_bwd", "G |- o(X)", "b(G) |- X");
    both(&mut c, "adj2_fwd", "adj2_bwd", "o(X) |- G", "X |- b(G)");
    both(&mut c, "PhiL_fwd", "PhiL_bwd", "G |- D", "(I , G) |- D");
    both(&mut c, "PhiR_fwd", "PhiR_bwd", "G |- D", "(G , I) |- D");
    both(&mut c, "assoc_fwd", "assoc_bwd", "((G1 , G2) , G3) |- D", "(G1 , (G2 , G3)) |- D");
    c.push(RuleSchema::new("PhiW", &["G |- I"], "G |- D", Fwd));

    c.push(RuleSchema::new("one", &[], "I |- o(P)", Fwd));
    c.push(RuleSchema::new("abs", &["G |- o(P)", "D |- o(P)"], "(G , D) |- o(P)", Fwd));
    c.push(RuleSchema::new("b_bal", &["P |- S"], "b(o(P)) |- b(o(S))", Fwd));
    both(&mut c, "w_bal_fwd", "w_bal_bwd", "P |- X", "o(P) |- o(X)");
    c.push(omega_schema());
    c.push(RuleSchema::new("circC", &["(o(P) , o(P)) |- D"], "o(P) |- D", Fwd));

    c.push(RuleSchema::new("one_L", &["I |- D"], "1 |- D", Fwd));
    c.push(RuleSchema::new("one_R", &[], "I |- 1", Fwd));
    c.push(RuleSchema::new("zero_L", &[], "0 |- I", Fwd));
    c.push(RuleSchema::new("zero_R", &["G |- I"], "G |- 0", Fwd));
    c.push(RuleSchema::new("cup_L", &["A1 |- D", "A2 |- D"], "(A1 + A2) |- D", Fwd));
    c.push(RuleSchema::new("cup_R1", &["G |- A1"], "G |- (A1 + A2)", Fwd));
    c.push(RuleSchema::new("cup_R2", &["G |- A2"], "G |- (A1 + A2)", Fwd));
    c.push(RuleSchema::new("cdot_L", &["(A , B) |- D"], "(A . B) |- D", Fwd));
    c.push(RuleSchema::new("cdot_R", &["G |- A", "D |- B"], "(G , D) |- (A . B)", Fwd));
    c.push(RuleSchema::new("fdia_L", &["b(A) |- P"], "fdia(A) |- P", Fwd));
    c.push(RuleSchema::new("fdia_R", &["G |- A"], "b(G) |- fdia(A)", Fwd));
    c.push(RuleSchema::new("bbox_L", &["A |- G"], "bbox(A) |- b(G)", Fwd));
    c.push(RuleSchema::new("bbox_R", &["P |- b(A)"], "P |- bbox(A)", Fwd));
    c.push(RuleSchema::new("box_L", &["o(Y) |- G"], "box(Y) |- G", Fwd));
    c.push(RuleSchema::new("box_R", &["G |- o(Y)"], "G |- box(Y)", Fwd));
    c
}

static CATALOG: OnceBox<Vec<RuleSchema>> = OnceBox::new();

/// The directed rule catalog, in a fixed order.
pub fn catalog() -> &'static [RuleSchema] {
    CATALOG.get_or_init(|| Box::new(build()))
}

/// An owned copy of [`catalog`].
pub fn rule_catalog() -> Vec<RuleSchema> {
    catalog().to_vec()
}

/// Looks a rule up by name.
pub fn lookup(name: &str) -> Option<&'static RuleSchema> {
    catalog().iter().find(|r| r.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn forty_directed_names() {
        let c = rule_catalog();
        assert_eq!(c.len(), 40);
        let names: BTreeSet<_> = c.iter().map(|r| r.name).collect();
        assert_eq!(names.len(), 40);
    }

    #[test]
    fn abs_schema() {
        let r = lookup("abs").unwrap();
        assert_eq!(r.kind, RuleKind::Binary);
        let p: Vec<_> = r.premises.iter().map(|p| p.to_string()).collect();
        assert_eq!(p, ["G |- o(P)", "D |- o(P)"]);
        assert_eq!(r.conclusion.to_string(), "(G , D) |- o(P)");
    }

    #[test]
    fn one_is_an_axiom_with_fresh_special_structure() {
        let r = lookup("one").unwrap();
        assert_eq!(r.kind, RuleKind::Axiom);
        assert_eq!(r.conclusion.to_string(), "I |- o(P)");
        assert_eq!(r.fresh, ["P"]);
    }

    #[test]
    fn unknown_rule() {
        assert!(lookup("nosuch").is_none());
    }

    #[test]
    fn fresh_flags() {
        let fresh: Vec<_> = rule_catalog()
            .into_iter()
            .filter(|r| r.kind != RuleKind::Axiom && r.introduces_fresh())
            .map(|r| r.name)
            .collect();
        assert_eq!(fresh, ["PhiW", "cup_R1", "cup_R2"]);
    }

    #[test]
    fn double_line_rules_are_inverse_pairs() {
        let c = rule_catalog();
        for r in c.iter().filter(|r| r.direction == Direction::Backward) {
            let stem = r.name.strip_suffix("_bwd").unwrap();
            let f = c.iter().find(|x| x.name == alloc::format!("{stem}_fwd")).unwrap();
            assert_eq!(f.premises[0], r.conclusion);
            assert_eq!(r.premises[0], f.conclusion);
        }
    }

    #[test]
    fn kinds() {
        assert_eq!(lookup("Cut_s").unwrap().sequent_kind(), Kind::Special);
        assert_eq!(lookup("fdia_L").unwrap().sequent_kind(), Kind::Special);
        assert_eq!(lookup("omega").unwrap().kind, RuleKind::Omega);
    }
}
