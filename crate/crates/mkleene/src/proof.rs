//! Proof files: one derivation per file, written as
//! `(<rule> "<sequent>" <child>*)`. Omega nodes read
//! `(omega "<sequent>" (unit <tree>) (family "<sequent>" (base <tree>) (step <tree>)))`
//! and the step tree contains exactly one `(hyp)` leaf standing for the
//! family at `n`.

use mkl_core::calculus::HYP;
use mkl_core::syntax::{parse_sequent, ParseError, Sequent};
use mkl_core::{Derivation, PremiseFamily};
use thiserror::Error;

use crate::sexpr::{self, Sexp, SexpError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofError {
    #[error(transparent)]
    Sexp(#[from] SexpError),
    #[error("expected exactly one derivation, found {0}")]
    Count(usize),
    #[error("malformed node `{0}`")]
    Shape(String),
    #[error("bad sequent `{text}`: {err}")]
    Sequent { text: String, err: ParseError },
    #[error("`(hyp)` outside a step template")]
    StrayHyp,
}

/// Reads the single derivation in `text`. Rule names are not looked up
/// here; an unknown name surfaces when the tree is checked.
pub fn parse_proof(text: &str) -> Result<Derivation, ProofError> {
    let items = sexpr::parse(text)?;
    match items.as_slice() {
        [one] => node(one, None),
        _ => Err(ProofError::Count(items.len())),
    }
}

/// The file text for `d`, ending in a newline.
pub fn render_proof(d: &Derivation) -> String {
    format!("{d}\n")
}

fn sequent(x: &Sexp) -> Result<Sequent, ProofError> {
    let text = x.as_str().ok_or_else(|| ProofError::Shape(x.to_string()))?;
    parse_sequent(text).map_err(|err| ProofError::Sequent { text: text.into(), err })
}

/// The single tree wrapped in `(<tag> <tree>)`.
fn tagged<'a>(x: &'a Sexp, tag: &str) -> Option<&'a Sexp> {
    match x.as_list()? {
        [t, tree] if t.as_atom() == Some(tag) => Some(tree),
        _ => None,
    }
}

/// `hyp` is the family sequent when inside a step template.
fn node(x: &Sexp, hyp: Option<&Sequent>) -> Result<Derivation, ProofError> {
    let shape = || ProofError::Shape(x.to_string());
    let items = x.as_list().ok_or_else(shape)?;
    let rule = items.first().and_then(Sexp::as_atom).ok_or_else(shape)?;
    if rule == HYP {
        let h = hyp.ok_or(ProofError::StrayHyp)?;
        return match &items[1..] {
            [] => Ok(Derivation::hyp(h.clone())),
            [s] => Ok(Derivation::hyp(sequent(s)?)),
            _ => Err(shape()),
        };
    }
    let conclusion = sequent(items.get(1).ok_or_else(shape)?)?;
    let rest = &items[2..];
    if rule != "omega" {
        let children = rest.iter().map(|c| node(c, hyp)).collect::<Result<_, _>>()?;
        return Ok(Derivation::new(rule, conclusion, children));
    }
    let mut units = Vec::new();
    let mut family = None;
    for c in rest {
        if let Some(t) = tagged(c, "unit") {
            units.push(node(t, hyp)?);
            continue;
        }
        let parts = c.as_list().ok_or_else(shape)?;
        match parts {
            [t, s, base, step] if t.as_atom() == Some("family") && family.is_none() => {
                let seq = sequent(s)?;
                let base = tagged(base, "base").ok_or_else(shape)?;
                let step = tagged(step, "step").ok_or_else(shape)?;
                family = Some(PremiseFamily {
                    base: node(base, None)?,
                    step: node(step, Some(&seq))?,
                    sequent: seq,
                });
            }
            _ => return Err(shape()),
        }
    }
    match (units.pop(), units.is_empty(), family) {
        (Some(unit), true, Some(family)) => Ok(Derivation::omega(conclusion, unit, family)),
        _ => Err(shape()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use mkl_core::check_derivation;
    use mkl_core::golden::corpus;

    #[test]
    fn golden_round_trip() {
        for g in corpus() {
            let text = render_proof(&g.derivation);
            let back = parse_proof(&text).unwrap_or_else(|e| panic!("{}: {e}", g.name));
            assert_eq!(back, g.derivation, "{}", g.name);
            assert!(check_derivation(&back).is_ok());
        }
    }

    #[test]
    fn malformed_inputs() {
        assert_eq!(parse_proof(""), Err(ProofError::Count(0)));
        assert!(matches!(parse_proof("(Id)"), Err(ProofError::Shape(_))));
        assert!(matches!(parse_proof("(Id \"a |-\")"), Err(ProofError::Sequent { .. })));
        assert_eq!(parse_proof("(hyp)"), Err(ProofError::StrayHyp));
        assert!(matches!(parse_proof("(omega \"I |- 1\")"), Err(ProofError::Shape(_))));
    }

    /// Run with `MKLEENE_BLESS=1` to rewrite the stored proofs.
    #[test]
    fn stored_proofs_match_golden() {
        let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../proofs");
        let bless = std::env::var_os("MKLEENE_BLESS").is_some();
        let listing = std::fs::read_to_string(dir.join("corpus.txt")).unwrap();
        for g in corpus() {
            let path = dir.join(format!("{}.prf", g.name));
            let want = render_proof(&g.derivation);
            if bless {
                std::fs::write(&path, &want).unwrap();
            }
            let got = std::fs::read_to_string(&path)
                .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            assert_eq!(got, want, "{}", path.display());
            assert!(listing.contains(&format!("CHECK {}.prf", g.name)), "{}", g.name);
        }
    }

    #[test]
    fn unknown_rules_parse() {
        let d = parse_proof("(Idd \"a |- a\")").unwrap();
        assert_eq!(d.rule, "Idd");
    }
}
