//! Formulas, structures and sequents of the single-type and multi-type
//! Kleene languages, with their ASCII concrete syntax.
//!
//! Rendering goes through [`core::fmt::Display`]; the output of every
//! `Display` impl in this module re-parses to the same value.

mod generate;
pub(crate) mod parse;
mod translate;

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub use generate::{formulas, same_kind_pairs, Signature};
pub use parse::{parse_formula, parse_sequent, parse_structure, ParseError};
pub(crate) use parse::{parse_raw_sequent, Raw, RawNode};
pub use translate::translate;

/// The two types of the multi-type language.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    General,
    Special,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::General => f.write_str("General"),
            Kind::Special => f.write_str("Special"),
        }
    }
}

/// Which term language a formula belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lang {
    /// `a | 1 | 0 | + | . | ^* | ^#`
    SingleType,
    /// `a | 1 | 0 | + | . | box | fdia | bbox`
    MultiType,
}

/// Operational term.
///
/// `Star` and `DualStar` belong to the single-type language only; `BoxF`,
/// `FDia` and `BBox` to the multi-type one.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(String),
    One,
    Zero,
    Union(Box<Formula>, Box<Formula>),
    Comp(Box<Formula>, Box<Formula>),
    Star(Box<Formula>),
    DualStar(Box<Formula>),
    /// `box(xi)`: Special to General.
    BoxF(Box<Formula>),
    /// `fdia(alpha)`: General to Special.
    FDia(Box<Formula>),
    /// `bbox(alpha)`: General to Special.
    BBox(Box<Formula>),
}

/// A connective received a child of the wrong type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IllTyped {
    pub connective: &'static str,
    pub expected: Kind,
    pub found: Kind,
}

impl fmt::Display for IllTyped {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "`{}` expects a {} argument, found {}",
            self.connective, self.expected, self.found
        )
    }
}

fn expect(connective: &'static str, expected: Kind, found: Kind) -> Result<(), IllTyped> {
    if expected == found {
        Ok(())
    } else {
        Err(IllTyped { connective, expected, found })
    }
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    pub fn union(a: Formula, b: Formula) -> Self {
        Formula::Union(Box::new(a), Box::new(b))
    }

    pub fn comp(a: Formula, b: Formula) -> Self {
        Formula::Comp(Box::new(a), Box::new(b))
    }

    pub fn star(a: Formula) -> Self {
        Formula::Star(Box::new(a))
    }

    pub fn dual_star(a: Formula) -> Self {
        Formula::DualStar(Box::new(a))
    }

    pub fn boxf(xi: Formula) -> Self {
        Formula::BoxF(Box::new(xi))
    }

    pub fn fdia(a: Formula) -> Self {
        Formula::FDia(Box::new(a))
    }

    pub fn bbox(a: Formula) -> Self {
        Formula::BBox(Box::new(a))
    }

    /// Type tag of the outermost connective.
    pub fn kind(&self) -> Kind {
        match self {
            Formula::FDia(_) | Formula::BBox(_) => Kind::Special,
            _ => Kind::General,
        }
    }

    /// Checks the typing discipline of the whole term and returns its type.
    pub fn check(&self) -> Result<Kind, IllTyped> {
        match self {
            Formula::Atom(_) | Formula::One | Formula::Zero => Ok(Kind::General),
            Formula::Union(a, b) => {
                expect("+", Kind::General, a.check()?)?;
                expect("+", Kind::General, b.check()?)?;
                Ok(Kind::General)
            }
            Formula::Comp(a, b) => {
                expect(".", Kind::General, a.check()?)?;
                expect(".", Kind::General, b.check()?)?;
                Ok(Kind::General)
            }
            Formula::Star(a) => expect("^*", Kind::General, a.check()?).map(|_| Kind::General),
            Formula::DualStar(a) => expect("^#", Kind::General, a.check()?).map(|_| Kind::General),
            Formula::BoxF(x) => expect("box", Kind::Special, x.check()?).map(|_| Kind::General),
            Formula::FDia(a) => expect("fdia", Kind::General, a.check()?).map(|_| Kind::Special),
            Formula::BBox(a) => expect("bbox", Kind::General, a.check()?).map(|_| Kind::Special),
        }
    }

    /// Number of connective and leaf nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::One | Formula::Zero => 1,
            Formula::Union(a, b) | Formula::Comp(a, b) => 1 + a.size() + b.size(),
            Formula::Star(a)
            | Formula::DualStar(a)
            | Formula::BoxF(a)
            | Formula::FDia(a)
            | Formula::BBox(a) => 1 + a.size(),
        }
    }

    /// Height of the term; leaves have depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::One | Formula::Zero => 1,
            Formula::Union(a, b) | Formula::Comp(a, b) => 1 + a.depth().max(b.depth()),
            Formula::Star(a)
            | Formula::DualStar(a)
            | Formula::BoxF(a)
            | Formula::FDia(a)
            | Formula::BBox(a) => 1 + a.depth(),
        }
    }

    /// Number of `Star` and `DualStar` nodes.
    pub fn star_count(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::One | Formula::Zero => 0,
            Formula::Union(a, b) | Formula::Comp(a, b) => a.star_count() + b.star_count(),
            Formula::Star(a) | Formula::DualStar(a) => 1 + a.star_count(),
            Formula::BoxF(a) | Formula::FDia(a) | Formula::BBox(a) => a.star_count(),
        }
    }

    /// True when the term uses only the connectives of `lang`.
    pub fn is_in(&self, lang: Lang) -> bool {
        match self {
            Formula::Atom(_) | Formula::One | Formula::Zero => true,
            Formula::Union(a, b) | Formula::Comp(a, b) => a.is_in(lang) && b.is_in(lang),
            Formula::Star(a) | Formula::DualStar(a) => lang == Lang::SingleType && a.is_in(lang),
            Formula::BoxF(a) | Formula::FDia(a) | Formula::BBox(a) => {
                lang == Lang::MultiType && a.is_in(lang)
            }
        }
    }

    /// True when `self` occurs in `other` and differs from it.
    pub fn is_proper_subformula_of(&self, other: &Formula) -> bool {
        match other {
            Formula::Atom(_) | Formula::One | Formula::Zero => false,
            Formula::Union(a, b) | Formula::Comp(a, b) => {
                **a == *self
                    || **b == *self
                    || self.is_proper_subformula_of(a)
                    || self.is_proper_subformula_of(b)
            }
            Formula::Star(a)
            | Formula::DualStar(a)
            | Formula::BoxF(a)
            | Formula::FDia(a)
            | Formula::BBox(a) => **a == *self || self.is_proper_subformula_of(a),
        }
    }

    /// Collects atom names in first-occurrence order, without duplicates.
    pub fn atoms_into(&self, out: &mut Vec<String>) {
        match self {
            Formula::Atom(name) => {
                if !out.contains(name) {
                    out.push(name.clone());
                }
            }
            Formula::One | Formula::Zero => {}
            Formula::Union(a, b) | Formula::Comp(a, b) => {
                a.atoms_into(out);
                b.atoms_into(out);
            }
            Formula::Star(a)
            | Formula::DualStar(a)
            | Formula::BoxF(a)
            | Formula::FDia(a)
            | Formula::BBox(a) => a.atoms_into(out),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(name) => f.write_str(name),
            Formula::One => f.write_str("1"),
            Formula::Zero => f.write_str("0"),
            Formula::Union(a, b) => write!(f, "({a} + {b})"),
            Formula::Comp(a, b) => write!(f, "({a} . {b})"),
            Formula::Star(a) => write!(f, "{a}^*"),
            Formula::DualStar(a) => write!(f, "{a}^#"),
            Formula::BoxF(x) => write!(f, "box({x})"),
            Formula::FDia(a) => write!(f, "fdia({a})"),
            Formula::BBox(a) => write!(f, "bbox({a})"),
        }
    }
}

/// Structural term. Leaves are operational formulas.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Structure {
    Leaf(Formula),
    /// The neutral structure `I`.
    Phi,
    /// `(G , D)`
    Odot(Box<Structure>, Box<Structure>),
    /// `(G < D)`
    LeftRes(Box<Structure>, Box<Structure>),
    /// `(G > D)`
    RightRes(Box<Structure>, Box<Structure>),
    /// `o(P)`: Special to General.
    Circ(Box<Structure>),
    /// `b(G)`: General to Special.
    Bullet(Box<Structure>),
    /// `pow(G, n)` with the symbolic index `n`; only meaningful inside
    /// omega premise families. Literal powers are always unfolded, see
    /// [`Structure::power`].
    Pow(Box<Structure>),
}

impl Structure {
    pub fn leaf(f: Formula) -> Self {
        Structure::Leaf(f)
    }

    pub fn atom(name: &str) -> Self {
        Structure::Leaf(Formula::atom(name))
    }

    pub fn odot(a: Structure, b: Structure) -> Self {
        Structure::Odot(Box::new(a), Box::new(b))
    }

    pub fn left_res(a: Structure, b: Structure) -> Self {
        Structure::LeftRes(Box::new(a), Box::new(b))
    }

    pub fn right_res(a: Structure, b: Structure) -> Self {
        Structure::RightRes(Box::new(a), Box::new(b))
    }

    pub fn circ(p: Structure) -> Self {
        Structure::Circ(Box::new(p))
    }

    pub fn bullet(g: Structure) -> Self {
        Structure::Bullet(Box::new(g))
    }

    pub fn pow(g: Structure) -> Self {
        Structure::Pow(Box::new(g))
    }

    /// `g^(k)` unfolded: `g^(1) = g`, `g^(k+1) = g , g^(k)`.
    ///
    /// # Panics
    /// If `k == 0`.
    pub fn power(g: &Structure, k: usize) -> Structure {
        assert!(k >= 1, "structural powers start at 1");
        let mut acc = g.clone();
        for _ in 1..k {
            acc = Structure::odot(g.clone(), acc);
        }
        acc
    }

    /// Type tag of the outermost constructor.
    pub fn kind(&self) -> Kind {
        match self {
            Structure::Leaf(f) => f.kind(),
            Structure::Bullet(_) => Kind::Special,
            _ => Kind::General,
        }
    }

    /// Checks the typing discipline of the whole term and returns its type.
    pub fn check(&self) -> Result<Kind, IllTyped> {
        match self {
            Structure::Leaf(f) => f.check(),
            Structure::Phi => Ok(Kind::General),
            Structure::Odot(a, b) => {
                expect(",", Kind::General, a.check()?)?;
                expect(",", Kind::General, b.check()?).map(|_| Kind::General)
            }
            Structure::LeftRes(a, b) => {
                expect("<", Kind::General, a.check()?)?;
                expect("<", Kind::General, b.check()?).map(|_| Kind::General)
            }
            Structure::RightRes(a, b) => {
                expect(">", Kind::General, a.check()?)?;
                expect(">", Kind::General, b.check()?).map(|_| Kind::General)
            }
            Structure::Circ(p) => expect("o", Kind::Special, p.check()?).map(|_| Kind::General),
            Structure::Bullet(g) => expect("b", Kind::General, g.check()?).map(|_| Kind::Special),
            Structure::Pow(g) => expect("pow", Kind::General, g.check()?).map(|_| Kind::General),
        }
    }

    /// True when a symbolic power occurs anywhere in the term.
    pub fn has_pow(&self) -> bool {
        match self {
            Structure::Pow(_) => true,
            Structure::Leaf(_) | Structure::Phi => false,
            Structure::Odot(a, b) | Structure::LeftRes(a, b) | Structure::RightRes(a, b) => {
                a.has_pow() || b.has_pow()
            }
            Structure::Circ(a) | Structure::Bullet(a) => a.has_pow(),
        }
    }

    /// Bases of all symbolic powers, in traversal order.
    pub fn pow_bases<'a>(&'a self, out: &mut Vec<&'a Structure>) {
        match self {
            Structure::Pow(g) => out.push(g),
            Structure::Leaf(_) | Structure::Phi => {}
            Structure::Odot(a, b) | Structure::LeftRes(a, b) | Structure::RightRes(a, b) => {
                a.pow_bases(out);
                b.pow_bases(out);
            }
            Structure::Circ(a) | Structure::Bullet(a) => a.pow_bases(out),
        }
    }

    /// Replaces every symbolic power `pow(g, n)` by `f(g)`.
    pub fn map_pow(&self, f: &impl Fn(&Structure) -> Structure) -> Structure {
        match self {
            Structure::Pow(g) => f(g),
            Structure::Leaf(_) | Structure::Phi => self.clone(),
            Structure::Odot(a, b) => Structure::odot(a.map_pow(f), b.map_pow(f)),
            Structure::LeftRes(a, b) => Structure::left_res(a.map_pow(f), b.map_pow(f)),
            Structure::RightRes(a, b) => Structure::right_res(a.map_pow(f), b.map_pow(f)),
            Structure::Circ(a) => Structure::circ(a.map_pow(f)),
            Structure::Bullet(a) => Structure::bullet(a.map_pow(f)),
        }
    }

    pub fn atoms_into(&self, out: &mut Vec<String>) {
        match self {
            Structure::Leaf(f) => f.atoms_into(out),
            Structure::Phi => {}
            Structure::Odot(a, b) | Structure::LeftRes(a, b) | Structure::RightRes(a, b) => {
                a.atoms_into(out);
                b.atoms_into(out);
            }
            Structure::Circ(a) | Structure::Bullet(a) | Structure::Pow(a) => a.atoms_into(out),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Structure::Leaf(f) => f.size(),
            Structure::Phi => 1,
            Structure::Odot(a, b) | Structure::LeftRes(a, b) | Structure::RightRes(a, b) => {
                1 + a.size() + b.size()
            }
            Structure::Circ(a) | Structure::Bullet(a) | Structure::Pow(a) => 1 + a.size(),
        }
    }
}

impl From<Formula> for Structure {
    fn from(f: Formula) -> Self {
        Structure::Leaf(f)
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Structure::Leaf(x) => x.fmt(f),
            Structure::Phi => f.write_str("I"),
            Structure::Odot(a, b) => write!(f, "({a} , {b})"),
            Structure::LeftRes(a, b) => write!(f, "({a} < {b})"),
            Structure::RightRes(a, b) => write!(f, "({a} > {b})"),
            Structure::Circ(p) => write!(f, "o({p})"),
            Structure::Bullet(g) => write!(f, "b({g})"),
            Structure::Pow(g) => write!(f, "pow({g}, n)"),
        }
    }
}

/// A typed pair of structures.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sequent {
    pub ant: Structure,
    pub suc: Structure,
    pub kind: Kind,
}

/// Precedent and succedent have different types.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KindMismatch {
    pub precedent: Kind,
    pub succedent: Kind,
}

impl Sequent {
    /// Builds a sequent, checking that both sides are well typed and agree.
    pub fn new(ant: Structure, suc: Structure) -> Result<Sequent, SequentError> {
        let left = ant.check().map_err(SequentError::IllTyped)?;
        let right = suc.check().map_err(SequentError::IllTyped)?;
        if left != right {
            return Err(SequentError::KindMismatch(KindMismatch {
                precedent: left,
                succedent: right,
            }));
        }
        Ok(Sequent { ant, suc, kind: left })
    }

    /// Builds a sequent whose sides are already known to be well typed.
    ///
    /// # Panics
    /// If the sides have different outer types.
    pub fn of(ant: impl Into<Structure>, suc: impl Into<Structure>) -> Sequent {
        let ant = ant.into();
        let suc = suc.into();
        let kind = ant.kind();
        assert_eq!(kind, suc.kind(), "sequent sides of different kinds: {ant} |- {suc}");
        Sequent { ant, suc, kind }
    }

    pub fn has_pow(&self) -> bool {
        self.ant.has_pow() || self.suc.has_pow()
    }

    pub fn map_pow(&self, f: &impl Fn(&Structure) -> Structure) -> Sequent {
        Sequent { ant: self.ant.map_pow(f), suc: self.suc.map_pow(f), kind: self.kind }
    }

    /// Atom names in first-occurrence order.
    pub fn atoms(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.ant.atoms_into(&mut out);
        self.suc.atoms_into(&mut out);
        out
    }
}

/// Why a pair of structures does not form a sequent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SequentError {
    IllTyped(IllTyped),
    KindMismatch(KindMismatch),
}

impl fmt::Display for SequentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequentError::IllTyped(e) => e.fmt(f),
            SequentError::KindMismatch(k) => {
                write!(f, "precedent is {} but succedent is {}", k.precedent, k.succedent)
            }
        }
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} |- {}", self.ant, self.suc)
    }
}
