use std::fmt::Write as _;
use std::path::Path;

use mkl_core::algebra::{
    check_rule_soundness, enumerate, lift, mutated_rules, translation_invariance, validate,
    AlgebraError, FiniteAlgebra, HeteroAlgebra, Mode,
};
use mkl_core::calculus::{
    derive_identity, lookup, principal_cut_instance, reduce_principal_cut, Derivation, RuleSchema,
};
use mkl_core::search::{prove, SearchBudget};
use mkl_core::syntax::{
    formulas, parse_formula, parse_sequent, parse_structure, translate, Formula, Kind, Lang,
    Signature,
};
use mkl_core::{check_derivation, rule_catalog};
use thiserror::Error;

use crate::corpus::run_corpus;
use crate::model::{parse_model, render_model};
use crate::proof::{parse_proof, render_proof};

/// A report and its verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub text: String,
    pub pass: bool,
}

impl Verdict {
    /// The full output, ending in the `RESULT:` line.
    pub fn render(&self) -> String {
        format!("{}RESULT: {}\n", self.text, if self.pass { "PASS" } else { "FAIL" })
    }
}

/// Bad input on the command line or in a named file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct UsageError(pub String);

fn usage(e: impl std::fmt::Display) -> UsageError {
    UsageError(e.to_string())
}

fn read(path: &Path) -> Result<String, UsageError> {
    std::fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn kind_name(k: Kind) -> &'static str {
    match k {
        Kind::General => "general",
        Kind::Special => "special",
    }
}

pub fn parse(text: &str) -> Result<Verdict, UsageError> {
    let line = if text.contains("|-") {
        let s = parse_sequent(text).map_err(usage)?;
        format!("sequent {}: {s}", kind_name(s.kind))
    } else if let Ok(f) = parse_formula(text, Lang::MultiType) {
        format!("formula multi-type {}: {f}", kind_name(f.kind()))
    } else if let Ok(f) = parse_formula(text, Lang::SingleType) {
        format!("formula single-type: {f}")
    } else {
        let s = parse_structure(text).map_err(usage)?;
        format!("structure {}: {s}", kind_name(s.kind()))
    };
    Ok(Verdict { text: line + "\n", pass: true })
}

pub fn translate_cmd(text: &str) -> Result<Verdict, UsageError> {
    let f = parse_formula(text, Lang::SingleType).map_err(usage)?;
    Ok(Verdict { text: format!("{}\n", translate(&f)), pass: true })
}

fn describe(d: &Derivation) -> String {
    format!("conclusion: {}\nsize={} height={}\n", d.conclusion, d.size(), d.height())
}

pub fn check(path: &Path) -> Result<Verdict, UsageError> {
    let d = parse_proof(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let mut text = describe(&d);
    let pass = match check_derivation(&d) {
        Ok(()) => {
            text.push_str("ok\n");
            true
        }
        Err(e) => {
            writeln!(text, "error {e}").unwrap();
            false
        }
    };
    Ok(Verdict { text, pass })
}

pub fn prove_cmd(sequent: &str, depth: usize) -> Result<Verdict, UsageError> {
    let s = parse_sequent(sequent).map_err(usage)?;
    Ok(match prove(&s, &SearchBudget::with_depth(depth)) {
        Ok(d) => {
            let ok = check_derivation(&d).is_ok() && d.conclusion == s;
            Verdict { text: describe(&d) + &render_proof(&d), pass: ok }
        }
        Err(e) => Verdict { text: format!("no derivation: {e}\n"), pass: false },
    })
}

pub fn identity(formula: &str) -> Result<Verdict, UsageError> {
    let f = parse_formula(formula, Lang::MultiType).map_err(usage)?;
    let d = derive_identity(&f).map_err(|_| usage("not a multi-type formula"))?;
    let pass = check_derivation(&d).is_ok();
    Ok(Verdict { text: describe(&d) + &render_proof(&d), pass })
}

/// Reduces the cut at the root of the proof in `arg` if it names a file,
/// otherwise of the principal cut instance on the formula `arg`.
pub fn reduce_cut(arg: &str) -> Result<Verdict, UsageError> {
    let path = Path::new(arg);
    let cut = if path.is_file() {
        parse_proof(&read(path)?).map_err(usage)?
    } else {
        let f = parse_formula(arg, Lang::MultiType).map_err(usage)?;
        principal_cut_instance(&f).map_err(usage)?
    };
    let Some(cf) = cut.cut_formula().cloned() else {
        return Err(usage("the root is not a cut"));
    };
    let mut text = format!("cut formula: {cf}\n");
    let red = match reduce_principal_cut(&cut) {
        Ok(r) => r,
        Err(e) => {
            writeln!(text, "not reduced: {e}").unwrap();
            return Ok(Verdict { text, pass: false });
        }
    };
    let same = red.conclusion == cut.conclusion;
    let checks = check_derivation(&red).is_ok();
    let smaller: Vec<&Formula> =
        red.cuts().into_iter().filter_map(Derivation::cut_formula).collect();
    let shrinks = smaller.iter().all(|g| g.is_proper_subformula_of(&cf));
    writeln!(text, "endsequent preserved: {same}").unwrap();
    writeln!(text, "reduct checks: {checks}").unwrap();
    let names: Vec<String> = smaller.iter().map(ToString::to_string).collect();
    writeln!(text, "remaining cuts: [{}]", names.join(", ")).unwrap();
    writeln!(text, "cut formulas shrink: {shrinks}").unwrap();
    text.push_str(&render_proof(&red));
    Ok(Verdict { text, pass: same && checks && shrinks })
}

pub fn model_validate(path: &Path) -> Result<Verdict, UsageError> {
    let (m, mode) = parse_model(&read(path)?).map_err(usage)?;
    let r = validate(&m, mode);
    Ok(Verdict { text: format!("mode={} size={}\n{r}", mode.name(), m.size), pass: r.passed() })
}

pub fn model_enumerate(max_size: usize, mode: Mode) -> Result<Verdict, UsageError> {
    let ms = enumerate(max_size, mode).map_err(usage)?;
    let mut text = String::new();
    let mut pass = true;
    for m in &ms {
        text.push_str(&render_model(m, mode));
        text.push('\n');
        pass &= validate(m, mode).passed();
    }
    for n in 1..=max_size {
        writeln!(text, "count size={n} {}", ms.iter().filter(|m| m.size == n).count()).unwrap();
    }
    writeln!(text, "total {}", ms.len()).unwrap();
    Ok(Verdict { text, pass })
}

/// Heterogeneous lifts checked by the soundness sweep: the enumerated
/// models of `mode` up to `max_size`, and `rel(2)` unless the mode is
/// literal (no dual star on `rel(2)` satisfies the literal axioms).
pub fn soundness_models(
    mode: Mode,
    max_size: usize,
) -> Result<Vec<(String, HeteroAlgebra)>, AlgebraError> {
    let mut out = Vec::new();
    let mut seen = [0usize; 8];
    for m in enumerate(max_size, mode)? {
        let label = format!("m{}.{}", m.size, seen[m.size]);
        seen[m.size] += 1;
        out.push((label, lift(&m)?));
    }
    let rel2 = match mode {
        Mode::MeasurableLiteral => None,
        Mode::MeasurableGuarded => Some(FiniteAlgebra::rel(2).with_guarded_dstar()),
        Mode::Kleene => Some(FiniteAlgebra::rel(2)),
    };
    if let Some(r) = rel2 {
        out.push(("rel2".into(), lift(&r)?));
    }
    Ok(out)
}

/// `Ok(checked, skipped)` or `Err(model label, witness)`.
pub fn sweep_rule(
    models: &[(String, HeteroAlgebra)],
    rule: &RuleSchema,
) -> Result<(usize, usize), (String, String)> {
    let (mut checked, mut skipped) = (0, 0);
    for (label, h) in models {
        let s = check_rule_soundness(h, rule);
        if !s.sound {
            return Err((label.clone(), s.witness.unwrap_or_default()));
        }
        checked += s.checked;
        skipped += s.skipped;
    }
    Ok((checked, skipped))
}

/// With `mutated`, checks that every deliberately unsound rule is refuted;
/// otherwise that the selected rules are sound on every model.
pub fn soundness(
    mode: Mode,
    max_size: usize,
    rule: &str,
    mutated: bool,
) -> Result<Verdict, UsageError> {
    let models = soundness_models(mode, max_size).map_err(usage)?;
    let mut text = format!("models={}\n", models.len());
    let mut pass = true;
    if mutated {
        for r in mutated_rules() {
            match sweep_rule(&models, &r) {
                Err((m, w)) => writeln!(text, "REFUTED {} model={m} witness={w}", r.name).unwrap(),
                Ok(_) => {
                    writeln!(text, "NOT-REFUTED {}", r.name).unwrap();
                    pass = false;
                }
            }
        }
        return Ok(Verdict { text, pass });
    }
    let rules: Vec<RuleSchema> = if rule == "all" {
        rule_catalog()
    } else if let Some(r) = lookup(rule) {
        vec![r.clone()]
    } else if let Some(r) = mutated_rules().into_iter().find(|r| r.name == rule) {
        vec![r]
    } else {
        return Err(usage(format!("unknown rule `{rule}`")));
    };
    for r in &rules {
        match sweep_rule(&models, r) {
            Ok((c, s)) => writeln!(text, "SOUND {} checked={c} skipped={s}", r.name).unwrap(),
            Err((m, w)) => {
                writeln!(text, "UNSOUND {} model={m} witness={w}", r.name).unwrap();
                pass = false;
            }
        }
    }
    Ok(Verdict { text, pass })
}

pub fn corpus(path: &Path) -> Result<Verdict, UsageError> {
    let r = run_corpus(path).map_err(usage)?;
    Ok(Verdict { text: r.to_string(), pass: r.passed() })
}

/// Single-type formulas without dual star over `a`, `b`, `1`, `0`, up to
/// `depth`.
pub fn invariance_formulas(depth: usize) -> Vec<Formula> {
    let sig =
        Signature { lang: Lang::SingleType, atoms: &["a", "b"], constants: true, dual_star: false };
    formulas(&sig, depth)
}

/// Every violating `(model, x, y)` over the Kleene models up to `max_size`.
pub fn invariance_violations(
    max_size: usize,
    depth: usize,
) -> Result<(usize, usize, Vec<String>), AlgebraError> {
    let fs = invariance_formulas(depth);
    let ms = enumerate(max_size, Mode::Kleene)?;
    let mut bad = Vec::new();
    for (i, m) in ms.iter().enumerate() {
        for x in &fs {
            for y in &fs {
                if !translation_invariance(m, x, y) {
                    bad.push(format!("model {i}: {x} <= {y}"));
                }
            }
        }
    }
    Ok((ms.len(), fs.len() * fs.len(), bad))
}

pub fn invariance(max_size: usize, depth: usize) -> Result<Verdict, UsageError> {
    let (models, pairs, bad) = invariance_violations(max_size, depth).map_err(usage)?;
    let mut text = format!("models={models} pairs={pairs} violations={}\n", bad.len());
    for b in bad.iter().take(20) {
        writeln!(text, "VIOLATION {b}").unwrap();
    }
    Ok(Verdict { text, pass: bad.is_empty() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn translate_star() {
        assert_eq!(translate_cmd("(a^*)").unwrap().render(), "box(fdia(a))\nRESULT: PASS\n");
    }

    #[test]
    fn parse_reports_kinds() {
        assert_eq!(parse("fdia(a)").unwrap().text, "formula multi-type special: fdia(a)\n");
        assert_eq!(parse("a^*").unwrap().text, "formula single-type: a^*\n");
        assert!(parse("a |-").is_err());
    }

    #[test]
    fn abs_is_sound() {
        let v = soundness(Mode::MeasurableGuarded, 3, "abs", false).unwrap();
        assert!(v.pass, "{}", v.text);
        assert!(soundness(Mode::MeasurableGuarded, 2, "nope", false).is_err());
    }

    #[test]
    fn reduce_atom_cut() {
        let v = reduce_cut("a").unwrap();
        assert!(v.pass, "{}", v.text);
    }
}
