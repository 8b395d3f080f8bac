//! Rule patterns: structures and formulas with metavariables.
//!
//! Metavariable sorts are fixed by name:
//!
//! | names                    | sort                 |
//! |--------------------------|----------------------|
//! | `G D T G1 G2 G3`         | General structure    |
//! | `P X S`                  | Special structure    |
//! | `A B A1 A2`              | General formula      |
//! | `Y`                      | Special formula      |
//! | `Q`                      | atom                 |

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt;

use crate::syntax::parse::{BinOp, PostOp};
use crate::syntax::{parse_raw_sequent, Formula, Kind, Raw, RawNode, Sequent, Structure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum VarSort {
    GeneralStructure,
    SpecialStructure,
    GeneralFormula,
    SpecialFormula,
    Atom,
}

impl VarSort {
    pub fn of(name: &str) -> Option<VarSort> {
        Some(match name {
            "G" | "D" | "T" | "G1" | "G2" | "G3" => VarSort::GeneralStructure,
            "P" | "X" | "S" => VarSort::SpecialStructure,
            "A" | "B" | "A1" | "A2" => VarSort::GeneralFormula,
            "Y" => VarSort::SpecialFormula,
            "Q" => VarSort::Atom,
            _ => return None,
        })
    }

    pub fn kind(self) -> Kind {
        match self {
            VarSort::SpecialStructure | VarSort::SpecialFormula => Kind::Special,
            _ => Kind::General,
        }
    }

    pub fn is_structural(self) -> bool {
        matches!(self, VarSort::GeneralStructure | VarSort::SpecialStructure)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FPat {
    Var(String, VarSort),
    One,
    Zero,
    Union(Box<FPat>, Box<FPat>),
    Comp(Box<FPat>, Box<FPat>),
    BoxF(Box<FPat>),
    FDia(Box<FPat>),
    BBox(Box<FPat>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SPat {
    Var(String, VarSort),
    Leaf(FPat),
    Phi,
    Odot(Box<SPat>, Box<SPat>),
    LeftRes(Box<SPat>, Box<SPat>),
    RightRes(Box<SPat>, Box<SPat>),
    Circ(Box<SPat>),
    Bullet(Box<SPat>),
    /// `pow(G, n)`; only used in omega family patterns.
    Pow(Box<SPat>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeqPat {
    pub ant: SPat,
    pub suc: SPat,
}

/// Metavariable assignment produced by matching.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Bindings {
    pub structures: BTreeMap<String, Structure>,
    pub formulas: BTreeMap<String, Formula>,
}

impl Bindings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_structure(mut self, name: &str, s: Structure) -> Self {
        self.structures.insert(name.into(), s);
        self
    }

    pub fn with_formula(mut self, name: &str, f: Formula) -> Self {
        self.formulas.insert(name.into(), f);
        self
    }

    fn bind_formula(&mut self, name: &str, sort: VarSort, f: &Formula) -> bool {
        let ok = match sort {
            VarSort::Atom => matches!(f, Formula::Atom(_)),
            _ => f.kind() == sort.kind(),
        };
        if !ok {
            return false;
        }
        match self.formulas.get(name) {
            Some(old) => old == f,
            None => {
                self.formulas.insert(name.into(), f.clone());
                true
            }
        }
    }

    fn bind_structure(&mut self, name: &str, sort: VarSort, s: &Structure) -> bool {
        if s.kind() != sort.kind() {
            return false;
        }
        match self.structures.get(name) {
            Some(old) => old == s,
            None => {
                self.structures.insert(name.into(), s.clone());
                true
            }
        }
    }
}

impl FPat {
    pub fn matches(&self, f: &Formula, b: &mut Bindings) -> bool {
        match (self, f) {
            (FPat::Var(name, sort), _) => b.bind_formula(name, *sort, f),
            (FPat::One, Formula::One) | (FPat::Zero, Formula::Zero) => true,
            (FPat::Union(p, q), Formula::Union(x, y)) | (FPat::Comp(p, q), Formula::Comp(x, y)) => {
                p.matches(x, b) && q.matches(y, b)
            }
            (FPat::BoxF(p), Formula::BoxF(x))
            | (FPat::FDia(p), Formula::FDia(x))
            | (FPat::BBox(p), Formula::BBox(x)) => p.matches(x, b),
            _ => false,
        }
    }

    pub fn instantiate(&self, b: &Bindings) -> Option<Formula> {
        Some(match self {
            FPat::Var(name, _) => b.formulas.get(name)?.clone(),
            FPat::One => Formula::One,
            FPat::Zero => Formula::Zero,
            FPat::Union(p, q) => Formula::union(p.instantiate(b)?, q.instantiate(b)?),
            FPat::Comp(p, q) => Formula::comp(p.instantiate(b)?, q.instantiate(b)?),
            FPat::BoxF(p) => Formula::boxf(p.instantiate(b)?),
            FPat::FDia(p) => Formula::fdia(p.instantiate(b)?),
            FPat::BBox(p) => Formula::bbox(p.instantiate(b)?),
        })
    }

    pub fn vars_into(&self, out: &mut BTreeMap<String, VarSort>) {
        match self {
            FPat::Var(n, s) => {
                out.insert(n.clone(), *s);
            }
            FPat::One | FPat::Zero => {}
            FPat::Union(p, q) | FPat::Comp(p, q) => {
                p.vars_into(out);
                q.vars_into(out);
            }
            FPat::BoxF(p) | FPat::FDia(p) | FPat::BBox(p) => p.vars_into(out),
        }
    }
}

impl SPat {
    pub fn matches(&self, s: &Structure, b: &mut Bindings) -> bool {
        match (self, s) {
            (SPat::Var(name, sort), _) => b.bind_structure(name, *sort, s),
            (SPat::Leaf(p), Structure::Leaf(f)) => p.matches(f, b),
            (SPat::Phi, Structure::Phi) => true,
            (SPat::Odot(p, q), Structure::Odot(x, y))
            | (SPat::LeftRes(p, q), Structure::LeftRes(x, y))
            | (SPat::RightRes(p, q), Structure::RightRes(x, y)) => {
                p.matches(x, b) && q.matches(y, b)
            }
            (SPat::Circ(p), Structure::Circ(x))
            | (SPat::Bullet(p), Structure::Bullet(x))
            | (SPat::Pow(p), Structure::Pow(x)) => p.matches(x, b),
            _ => false,
        }
    }

    pub fn instantiate(&self, b: &Bindings) -> Option<Structure> {
        Some(match self {
            SPat::Var(name, _) => b.structures.get(name)?.clone(),
            SPat::Leaf(p) => Structure::Leaf(p.instantiate(b)?),
            SPat::Phi => Structure::Phi,
            SPat::Odot(p, q) => Structure::odot(p.instantiate(b)?, q.instantiate(b)?),
            SPat::LeftRes(p, q) => Structure::left_res(p.instantiate(b)?, q.instantiate(b)?),
            SPat::RightRes(p, q) => Structure::right_res(p.instantiate(b)?, q.instantiate(b)?),
            SPat::Circ(p) => Structure::circ(p.instantiate(b)?),
            SPat::Bullet(p) => Structure::bullet(p.instantiate(b)?),
            SPat::Pow(p) => Structure::pow(p.instantiate(b)?),
        })
    }

    pub fn vars_into(&self, out: &mut BTreeMap<String, VarSort>) {
        match self {
            SPat::Var(n, s) => {
                out.insert(n.clone(), *s);
            }
            SPat::Leaf(p) => p.vars_into(out),
            SPat::Phi => {}
            SPat::Odot(p, q) | SPat::LeftRes(p, q) | SPat::RightRes(p, q) => {
                p.vars_into(out);
                q.vars_into(out);
            }
            SPat::Circ(p) | SPat::Bullet(p) | SPat::Pow(p) => p.vars_into(out),
        }
    }

    pub fn kind(&self) -> Kind {
        match self {
            SPat::Var(_, s) => s.kind(),
            SPat::Leaf(FPat::Var(_, s)) => s.kind(),
            SPat::Leaf(FPat::FDia(_) | FPat::BBox(_)) | SPat::Bullet(_) => Kind::Special,
            _ => Kind::General,
        }
    }
}

impl SeqPat {
    /// Parses a pattern in the term grammar, with metavariables in capitals.
    ///
    /// # Panics
    /// On malformed input; patterns are compiled-in constants.
    pub fn parse(text: &str) -> SeqPat {
        let (l, r) =
            parse_raw_sequent(text).unwrap_or_else(|e| panic!("bad pattern `{text}`: {e}"));
        let p = SeqPat { ant: spat(&l), suc: spat(&r) };
        assert_eq!(p.ant.kind(), p.suc.kind(), "ill-kinded pattern `{text}`");
        p
    }

    pub fn matches(&self, s: &Sequent, b: &mut Bindings) -> bool {
        self.ant.matches(&s.ant, b) && self.suc.matches(&s.suc, b)
    }

    pub fn instantiate(&self, b: &Bindings) -> Option<Sequent> {
        let ant = self.ant.instantiate(b)?;
        let suc = self.suc.instantiate(b)?;
        Sequent::new(ant, suc).ok()
    }

    pub fn vars(&self) -> BTreeMap<String, VarSort> {
        let mut out = BTreeMap::new();
        self.ant.vars_into(&mut out);
        self.suc.vars_into(&mut out);
        out
    }

    pub fn kind(&self) -> Kind {
        self.ant.kind()
    }
}

fn fpat(raw: &Raw) -> FPat {
    match &raw.node {
        RawNode::Num(0) => FPat::Zero,
        RawNode::Num(1) => FPat::One,
        RawNode::Ident(n) => match VarSort::of(n) {
            Some(s) if !s.is_structural() => FPat::Var(n.clone(), s),
            _ => panic!("`{n}` is not a formula metavariable"),
        },
        RawNode::Bin(BinOp::Union, a, b) => FPat::Union(Box::new(fpat(a)), Box::new(fpat(b))),
        RawNode::Bin(BinOp::Comp, a, b) => FPat::Comp(Box::new(fpat(a)), Box::new(fpat(b))),
        RawNode::Call(n, args) if args.len() == 1 => {
            let inner = Box::new(fpat(&args[0]));
            match n.as_str() {
                "box" => FPat::BoxF(inner),
                "fdia" => FPat::FDia(inner),
                "bbox" => FPat::BBox(inner),
                _ => panic!("`{n}` is not a formula connective"),
            }
        }
        RawNode::Post(PostOp::Star | PostOp::DualStar, _) => panic!("stars do not occur in rules"),
        other => panic!("unexpected pattern node {other:?}"),
    }
}

fn spat(raw: &Raw) -> SPat {
    match &raw.node {
        RawNode::Phi => SPat::Phi,
        RawNode::Ident(n) => match VarSort::of(n) {
            Some(s) if s.is_structural() => SPat::Var(n.clone(), s),
            _ => SPat::Leaf(fpat(raw)),
        },
        RawNode::Bin(BinOp::Odot, a, b) => SPat::Odot(Box::new(spat(a)), Box::new(spat(b))),
        RawNode::Bin(BinOp::LeftRes, a, b) => SPat::LeftRes(Box::new(spat(a)), Box::new(spat(b))),
        RawNode::Bin(BinOp::RightRes, a, b) => SPat::RightRes(Box::new(spat(a)), Box::new(spat(b))),
        RawNode::Call(n, args) if n == "o" => SPat::Circ(Box::new(spat(&args[0]))),
        RawNode::Call(n, args) if n == "b" => SPat::Bullet(Box::new(spat(&args[0]))),
        RawNode::Call(n, args) if n == "pow" => SPat::Pow(Box::new(spat(&args[0]))),
        _ => SPat::Leaf(fpat(raw)),
    }
}

impl fmt::Display for FPat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FPat::Var(n, _) => f.write_str(n),
            FPat::One => f.write_str("1"),
            FPat::Zero => f.write_str("0"),
            FPat::Union(a, b) => write!(f, "({a} + {b})"),
            FPat::Comp(a, b) => write!(f, "({a} . {b})"),
            FPat::BoxF(a) => write!(f, "box({a})"),
            FPat::FDia(a) => write!(f, "fdia({a})"),
            FPat::BBox(a) => write!(f, "bbox({a})"),
        }
    }
}

impl fmt::Display for SPat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SPat::Var(n, _) => f.write_str(n),
            SPat::Leaf(p) => p.fmt(f),
            SPat::Phi => f.write_str("I"),
            SPat::Odot(a, b) => write!(f, "({a} , {b})"),
            SPat::LeftRes(a, b) => write!(f, "({a} < {b})"),
            SPat::RightRes(a, b) => write!(f, "({a} > {b})"),
            SPat::Circ(a) => write!(f, "o({a})"),
            SPat::Bullet(a) => write!(f, "b({a})"),
            SPat::Pow(a) => write!(f, "pow({a}, n)"),
        }
    }
}

impl fmt::Display for SeqPat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} |- {}", self.ant, self.suc)
    }
}
