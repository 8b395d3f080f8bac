use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use thiserror::Error;

use super::{Formula, IllTyped, Kind, Lang, Sequent, Structure};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("type error at {pos}: {msg}")]
    Type { pos: usize, msg: String },
    #[error("kind mismatch: precedent is {left}, succedent is {right}")]
    KindMismatch { left: Kind, right: Kind },
}

fn syntax<T>(pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError::Syntax { pos, msg: msg.into() })
}

fn type_err(pos: usize, e: IllTyped) -> ParseError {
    ParseError::Type { pos, msg: e.to_string() }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(usize),
    LParen,
    RParen,
    Plus,
    Dot,
    Comma,
    Lt,
    Gt,
    Caret,
    Star,
    Hash,
    Turnstile,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'+' => Tok::Plus,
            b'.' => Tok::Dot,
            b',' => Tok::Comma,
            b'<' => Tok::Lt,
            b'>' => Tok::Gt,
            b'^' => Tok::Caret,
            b'*' => Tok::Star,
            b'#' => Tok::Hash,
            b'|' => {
                if bytes.get(i + 1) == Some(&b'-') {
                    i += 2;
                    out.push((start, Tok::Turnstile));
                    continue;
                }
                return syntax(i, "expected `|-`");
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = text[start..i].parse().map_err(|_| ParseError::Syntax {
                    pos: start,
                    msg: "numeral too large".into(),
                })?;
                out.push((start, Tok::Num(n)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].into())));
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return syntax(i, format!("unexpected character `{ch}`"));
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum BinOp {
    Union,
    Comp,
    Odot,
    LeftRes,
    RightRes,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum PostOp {
    Star,
    DualStar,
}

/// Untyped parse tree shared by the term parser and the rule-pattern parser.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Raw {
    pub pos: usize,
    pub node: RawNode,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum RawNode {
    Ident(String),
    Num(usize),
    Phi,
    Bin(BinOp, Box<Raw>, Box<Raw>),
    Post(PostOp, Box<Raw>),
    Call(String, Vec<Raw>),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser { toks: lex(text)?, at: 0, end: text.len() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            Some(_) => syntax(pos, format!("expected {what}")),
            None => syntax(pos, format!("expected {what}, found end of input")),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.at < self.toks.len() {
            syntax(self.pos(), "trailing input")
        } else {
            Ok(())
        }
    }

    fn term(&mut self) -> Result<Raw, ParseError> {
        let mut t = self.primary()?;
        while self.peek() == Some(&Tok::Caret) {
            let pos = self.pos();
            self.bump();
            let op = match self.bump() {
                Some(Tok::Star) => PostOp::Star,
                Some(Tok::Hash) => PostOp::DualStar,
                _ => return syntax(pos, "expected `*` or `#` after `^`"),
            };
            t = Raw { pos, node: RawNode::Post(op, Box::new(t)) };
        }
        Ok(t)
    }

    fn primary(&mut self) -> Result<Raw, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Num(n)) => Ok(Raw { pos, node: RawNode::Num(n) }),
            Some(Tok::Ident(name)) if name == "I" => Ok(Raw { pos, node: RawNode::Phi }),
            Some(Tok::Ident(name)) => {
                if self.peek() == Some(&Tok::LParen) {
                    self.bump();
                    let mut args = alloc::vec![self.term()?];
                    while self.peek() == Some(&Tok::Comma) {
                        self.bump();
                        args.push(self.term()?);
                    }
                    self.expect(Tok::RParen, "`)`")?;
                    Ok(Raw { pos, node: RawNode::Call(name, args) })
                } else {
                    Ok(Raw { pos, node: RawNode::Ident(name) })
                }
            }
            Some(Tok::LParen) => {
                let left = self.term()?;
                let op_pos = self.pos();
                let op = match self.bump() {
                    Some(Tok::Plus) => BinOp::Union,
                    Some(Tok::Dot) => BinOp::Comp,
                    Some(Tok::Comma) => BinOp::Odot,
                    Some(Tok::Lt) => BinOp::LeftRes,
                    Some(Tok::Gt) => BinOp::RightRes,
                    // `(t)` is `t`
                    Some(Tok::RParen) => return Ok(left),
                    _ => return syntax(op_pos, "expected a binary connective"),
                };
                let right = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Raw { pos, node: RawNode::Bin(op, Box::new(left), Box::new(right)) })
            }
            Some(_) => syntax(pos, "expected a term"),
            None => syntax(pos, "unexpected end of input"),
        }
    }
}

fn raw_of(text: &str) -> Result<Raw, ParseError> {
    let mut p = Parser::new(text)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

/// Splits `G |- D` into two raw trees.
pub(crate) fn parse_raw_sequent(text: &str) -> Result<(Raw, Raw), ParseError> {
    let mut p = Parser::new(text)?;
    let left = p.term()?;
    p.expect(Tok::Turnstile, "`|-`")?;
    let right = p.term()?;
    p.finish()?;
    Ok((left, right))
}

fn unary_arg<'a>(pos: usize, name: &str, args: &'a [Raw]) -> Result<&'a Raw, ParseError> {
    match args {
        [x] => Ok(x),
        _ => syntax(pos, format!("`{name}` takes exactly one argument")),
    }
}

fn formula_of(raw: &Raw, lang: Lang) -> Result<Formula, ParseError> {
    let pos = raw.pos;
    let f = match &raw.node {
        RawNode::Num(0) => Formula::Zero,
        RawNode::Num(1) => Formula::One,
        RawNode::Num(n) => return syntax(pos, format!("numeral {n} is not a formula")),
        RawNode::Phi => return syntax(pos, "structural constant `I` inside a formula"),
        RawNode::Ident(name) => {
            if !name.starts_with(|c: char| c.is_ascii_lowercase()) {
                return syntax(pos, format!("atom `{name}` must start with a lowercase letter"));
            }
            Formula::Atom(name.clone())
        }
        RawNode::Bin(op, a, b) => {
            let (fa, fb) = (formula_of(a, lang)?, formula_of(b, lang)?);
            let f = match op {
                BinOp::Union => Formula::union(fa, fb),
                BinOp::Comp => Formula::comp(fa, fb),
                _ => return syntax(pos, "structural connective inside a formula"),
            };
            f.check().map_err(|e| type_err(pos, e))?;
            f
        }
        RawNode::Post(op, a) => {
            if lang != Lang::SingleType {
                return syntax(pos, "`^*` and `^#` belong to the single-type language");
            }
            let fa = formula_of(a, lang)?;
            let f = match op {
                PostOp::Star => Formula::star(fa),
                PostOp::DualStar => Formula::dual_star(fa),
            };
            f.check().map_err(|e| type_err(pos, e))?;
            f
        }
        RawNode::Call(name, args) => {
            let wrap: fn(Formula) -> Formula = match name.as_str() {
                "box" => Formula::boxf,
                "fdia" => Formula::fdia,
                "bbox" => Formula::bbox,
                "o" | "b" | "pow" => {
                    return syntax(pos, format!("structural connective `{name}` inside a formula"))
                }
                _ => return syntax(pos, format!("unknown connective `{name}`")),
            };
            if lang != Lang::MultiType {
                return syntax(pos, format!("`{name}` belongs to the multi-type language"));
            }
            let f = wrap(formula_of(unary_arg(pos, name, args)?, lang)?);
            f.check().map_err(|e| type_err(pos, e))?;
            f
        }
    };
    Ok(f)
}

fn structure_of(raw: &Raw) -> Result<Structure, ParseError> {
    let pos = raw.pos;
    let s = match &raw.node {
        RawNode::Phi => Structure::Phi,
        RawNode::Bin(op @ (BinOp::Odot | BinOp::LeftRes | BinOp::RightRes), a, b) => {
            let (sa, sb) = (structure_of(a)?, structure_of(b)?);
            match op {
                BinOp::Odot => Structure::odot(sa, sb),
                BinOp::LeftRes => Structure::left_res(sa, sb),
                _ => Structure::right_res(sa, sb),
            }
        }
        RawNode::Call(name, args) if name == "o" => {
            Structure::circ(structure_of(unary_arg(pos, name, args)?)?)
        }
        RawNode::Call(name, args) if name == "b" => {
            Structure::bullet(structure_of(unary_arg(pos, name, args)?)?)
        }
        RawNode::Call(name, args) if name == "pow" => {
            let [base, index] = args.as_slice() else {
                return syntax(pos, "`pow` takes a structure and an index");
            };
            let g = structure_of(base)?;
            match &index.node {
                RawNode::Ident(n) if n == "n" => Structure::pow(g),
                RawNode::Num(k) if *k >= 1 => {
                    g.check().map_err(|e| type_err(pos, e))?;
                    if g.kind() != Kind::General {
                        return Err(ParseError::Type {
                            pos,
                            msg: "`pow` expects a General argument, found Special".into(),
                        });
                    }
                    Structure::power(&g, *k)
                }
                _ => return syntax(index.pos, "power index must be `n` or a positive numeral"),
            }
        }
        _ => Structure::Leaf(formula_of(raw, Lang::MultiType)?),
    };
    s.check().map_err(|e| type_err(pos, e))?;
    Ok(s)
}

/// Parses a formula of the given language.
pub fn parse_formula(text: &str, lang: Lang) -> Result<Formula, ParseError> {
    formula_of(&raw_of(text)?, lang)
}

/// Parses a structure; leaves are multi-type formulas.
pub fn parse_structure(text: &str) -> Result<Structure, ParseError> {
    structure_of(&raw_of(text)?)
}

/// Parses `G |- D` and checks that both sides have the same type.
pub fn parse_sequent(text: &str) -> Result<Sequent, ParseError> {
    let (l, r) = parse_raw_sequent(text)?;
    let ant = structure_of(&l)?;
    let suc = structure_of(&r)?;
    let (left, right) = (ant.kind(), suc.kind());
    if left != right {
        return Err(ParseError::KindMismatch { left, right });
    }
    Ok(Sequent { ant, suc, kind: left })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Formula {
        Formula::atom("a")
    }

    #[test]
    fn single_type_star() {
        let f = parse_formula("(a . b)^*", Lang::SingleType).unwrap();
        assert_eq!(f, Formula::star(Formula::comp(a(), Formula::atom("b"))));
    }

    #[test]
    fn multi_type_box_fdia() {
        let f = parse_formula("box(fdia(a))", Lang::MultiType).unwrap();
        assert_eq!(f, Formula::boxf(Formula::fdia(a())));
    }

    #[test]
    fn fdia_of_special_is_type_error() {
        let e = parse_formula("fdia(fdia(a))", Lang::MultiType).unwrap_err();
        assert!(matches!(e, ParseError::Type { pos: 0, .. }), "{e:?}");
    }

    #[test]
    fn language_separation() {
        assert!(parse_formula("a^*", Lang::MultiType).is_err());
        assert!(parse_formula("box(fdia(a))", Lang::SingleType).is_err());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert_eq!(
            parse_formula("(a + b", Lang::SingleType),
            Err(ParseError::Syntax { pos: 6, msg: "expected `)`, found end of input".into() })
        );
        assert!(matches!(
            parse_formula("a + b", Lang::SingleType),
            Err(ParseError::Syntax { pos: 2, .. })
        ));
        assert_eq!(
            parse_formula("((a^*))", Lang::SingleType),
            parse_formula("a^*", Lang::SingleType)
        );
        assert!(matches!(parse_formula("()", Lang::SingleType), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_formula("A", Lang::SingleType), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_formula("2", Lang::SingleType), Err(ParseError::Syntax { .. })));
        assert!(matches!(
            parse_formula("a $", Lang::SingleType),
            Err(ParseError::Syntax { pos: 2, .. })
        ));
    }

    #[test]
    fn sequents() {
        let s = parse_sequent("I |- o(b(1))").unwrap();
        assert_eq!(s.kind, Kind::General);
        assert_eq!(s.ant, Structure::Phi);
        assert_eq!(s.suc, Structure::circ(Structure::bullet(Formula::One.into())));

        let s = parse_sequent("b(a) |- fdia(a)").unwrap();
        assert_eq!(s.kind, Kind::Special);

        assert_eq!(
            parse_sequent("b(a) |- a"),
            Err(ParseError::KindMismatch { left: Kind::Special, right: Kind::General })
        );
    }

    #[test]
    fn literal_powers_unfold() {
        let s = parse_structure("(a , pow(b, 2))").unwrap();
        assert_eq!(s.to_string(), "(a , (b , b))");
        assert_eq!(parse_structure("pow(b, 1)").unwrap(), Structure::atom("b"));
        let s = parse_structure("pow((a , b), n)").unwrap();
        assert_eq!(s.to_string(), "pow((a , b), n)");
        assert!(parse_structure("pow(b(a), 2)").is_err());
        assert!(parse_structure("pow(a, 0)").is_err());
    }

    #[test]
    fn structure_typing() {
        assert!(matches!(parse_structure("o(a)"), Err(ParseError::Type { .. })));
        assert!(matches!(parse_structure("b(b(a))"), Err(ParseError::Type { .. })));
        assert!(matches!(parse_structure("(b(a) , a)"), Err(ParseError::Type { .. })));
        assert!(parse_structure("o(b((a < I)))").is_ok());
    }

    #[test]
    fn atoms_named_like_connectives() {
        assert_eq!(parse_formula("b", Lang::MultiType).unwrap(), Formula::atom("b"));
        assert_eq!(parse_structure("(o , b)").unwrap().to_string(), "(o , b)");
    }
}
