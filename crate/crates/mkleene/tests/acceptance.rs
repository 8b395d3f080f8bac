//! Exit criteria. Prints one `PASS` or `FAIL` line per criterion and exits
//! non-zero if any criterion fails.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use mkl_core::algebra::{
    closure_law_violations, enumerate, kernel, kernel_join_witness, lift, mutated_rules,
    roundtrip_check, roundtrip_check_h, validate, FiniteAlgebra, Mode,
};
use mkl_core::calculus::{derive_identity, principal_cut_instances, reduce_principal_cut};
use mkl_core::golden::corpus;
use mkl_core::search::{prove, SearchBudget};
use mkl_core::syntax::{formulas, Lang, Sequent, Signature};
use mkl_core::{check_derivation, rule_catalog};
use mkleene::commands::{invariance_violations, soundness_models, sweep_rule};
use mkleene::proof::parse_proof;

const GOLDEN_MIN: usize = 14;
const GOLDEN_LIMIT: Duration = Duration::from_secs(5);
const IDENTITY_DEPTH: usize = 3;
const IDENTITY_BUDGET: usize = 12;
const IDENTITY_LIMIT: Duration = Duration::from_secs(60);
const SOUNDNESS_SIZE: usize = 3;
const MUTATED_RULES: usize = 5;
const SOUNDNESS_LIMIT: Duration = Duration::from_secs(5 * 60);
const SWEEP_SIZE: usize = 3;
const INVARIANCE_DEPTH: usize = 2;
const INVARIANCE_LIMIT: Duration = Duration::from_secs(2 * 60);
const CUT_DEPTH: usize = 3;
const CUTS_MIN: usize = 100;
const COLLAPSE_LIMIT: Duration = Duration::from_secs(60);

type Outcome = Result<String, String>;
type Criterion = (&'static str, Box<dyn FnOnce() -> Outcome>);

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let r = f();
    let took = start.elapsed();
    let note = format!("{:.2}s, limit {}s", took.as_secs_f64(), limit.as_secs());
    match r {
        Ok(m) if took < limit => Ok(format!("{m}; {note}")),
        Ok(m) => Err(format!("{m}; over time: {note}")),
        Err(m) => Err(format!("{m}; {note}")),
    }
}

fn two_atoms(lang: Lang, constants: bool) -> Signature<'static> {
    Signature { lang, atoms: &["a", "b"], constants, dual_star: false }
}

fn golden() -> Outcome {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../proofs");
    let entries = corpus();
    let mut ok = 0;
    for g in &entries {
        check_derivation(&g.derivation).map_err(|e| format!("{}: {e}", g.name))?;
        let path = dir.join(format!("{}.prf", g.name));
        let text =
            std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        let stored = parse_proof(&text).map_err(|e| format!("{}: {e}", g.name))?;
        check_derivation(&stored).map_err(|e| format!("{}: {e}", path.display()))?;
        if stored.conclusion != g.derivation.conclusion {
            return Err(format!("{}: stored proof concludes {}", g.name, stored.conclusion));
        }
        ok += 1;
    }
    if ok < GOLDEN_MIN {
        return Err(format!("{ok} proofs, need {GOLDEN_MIN}"));
    }
    Ok(format!("{ok} proofs check"))
}

fn identities() -> Outcome {
    let fs = formulas(&two_atoms(Lang::MultiType, false), IDENTITY_DEPTH);
    let budget = SearchBudget::with_depth(IDENTITY_BUDGET);
    for f in &fs {
        let goal = Sequent::of(f.clone(), f.clone());
        let oracle = derive_identity(f).map_err(|e| e.to_string())?;
        if oracle.conclusion != goal || check_derivation(&oracle).is_err() {
            return Err(format!("oracle derivation of {goal} is wrong"));
        }
        let d = prove(&goal, &budget).map_err(|e| format!("{goal}: {e}"))?;
        if d.conclusion != goal || check_derivation(&d).is_err() {
            return Err(format!("{goal}: search returned a bad derivation"));
        }
    }
    Ok(format!("{} identities found within depth {IDENTITY_BUDGET}", fs.len()))
}

fn soundness() -> Outcome {
    let models =
        soundness_models(Mode::MeasurableGuarded, SOUNDNESS_SIZE).map_err(|e| e.to_string())?;
    if !models.iter().any(|(l, _)| l == "rel2") {
        return Err("rel(2) missing from the sweep".into());
    }
    let rules = rule_catalog();
    for r in &rules {
        if let Err((m, w)) = sweep_rule(&models, r) {
            return Err(format!("{} unsound on {m} at {w}", r.name));
        }
    }
    let mutants = mutated_rules();
    let mut refuted = Vec::new();
    for r in &mutants {
        match sweep_rule(&models, r) {
            Err((m, w)) if !w.is_empty() => refuted.push(format!("{}@{m}[{w}]", r.name)),
            Err(_) => return Err(format!("{} refuted without a witness", r.name)),
            Ok(_) => return Err(format!("mutated rule {} not refuted", r.name)),
        }
    }
    if refuted.len() != MUTATED_RULES {
        return Err(format!("{} mutated rules, expected {MUTATED_RULES}", refuted.len()));
    }
    Ok(format!(
        "{} rules sound on {} lifts; mutants refuted: {}",
        rules.len(),
        models.len(),
        refuted.join(" ")
    ))
}

/// Enumerated Kleene and guarded models up to the sweep size, plus B2, the
/// singleton and rel(2).
fn sweep() -> Vec<FiniteAlgebra> {
    let mut ms = enumerate(SWEEP_SIZE, Mode::Kleene).unwrap();
    ms.extend(enumerate(SWEEP_SIZE, Mode::MeasurableGuarded).unwrap());
    ms.push(FiniteAlgebra::b2());
    ms.push(FiniteAlgebra::singleton());
    ms.push(FiniteAlgebra::rel(2));
    ms.push(FiniteAlgebra::rel(2).with_guarded_dstar());
    ms
}

fn round_trips() -> Outcome {
    let ms = sweep();
    for (i, m) in ms.iter().enumerate() {
        let h = lift(m).map_err(|e| format!("model {i}: {e}"))?;
        if !roundtrip_check(m) || !roundtrip_check_h(&h) {
            return Err(format!("model {i} of size {} does not round-trip", m.size));
        }
    }
    Ok(format!("{} models round-trip both ways", ms.len()))
}

fn closure_laws() -> Outcome {
    let ms = sweep();
    let bad: Vec<String> = ms.iter().flat_map(closure_law_violations).collect();
    if !bad.is_empty() {
        return Err(format!("{} violations, first: {}", bad.len(), bad[0]));
    }
    Ok(format!("0 violations on {} models", ms.len()))
}

fn invariance() -> Outcome {
    let (models, pairs, bad) =
        invariance_violations(SWEEP_SIZE, INVARIANCE_DEPTH).map_err(|e| e.to_string())?;
    if !bad.is_empty() {
        return Err(format!("{} violations, first: {}", bad.len(), bad[0]));
    }
    Ok(format!("0 violations over {pairs} pairs on {models} models"))
}

fn cuts() -> Outcome {
    let fs = formulas(&two_atoms(Lang::MultiType, true), CUT_DEPTH);
    let instances = principal_cut_instances(&fs);
    for cut in &instances {
        check_derivation(cut).map_err(|e| format!("instance does not check: {e}"))?;
        let f = cut.cut_formula().expect("instances are cuts").clone();
        let red = reduce_principal_cut(cut).map_err(|e| format!("{f}: {e}"))?;
        if red.conclusion != cut.conclusion {
            return Err(format!("{f}: endsequent changed"));
        }
        check_derivation(&red).map_err(|e| format!("{f}: reduct: {e}"))?;
        if let Some(g) = red
            .cuts()
            .iter()
            .filter_map(|c| c.cut_formula())
            .find(|g| !g.is_proper_subformula_of(&f))
        {
            return Err(format!("{f}: cut on {g} does not shrink"));
        }
    }
    if instances.len() < CUTS_MIN {
        return Err(format!("{} instances, need {CUTS_MIN}", instances.len()));
    }
    Ok(format!("{} principal cuts reduced", instances.len()))
}

fn collapse() -> Outcome {
    let lit = enumerate(SWEEP_SIZE, Mode::MeasurableLiteral).map_err(|e| e.to_string())?;
    if lit.len() != 1 || lit[0].size != 1 {
        return Err(format!(
            "{} literal models, sizes {:?}",
            lit.len(),
            lit.iter().map(|m| m.size).collect::<Vec<_>>()
        ));
    }
    let mut witnesses = Vec::new();
    for d0 in 0..2 {
        for d1 in 0..2 {
            let mut b2 = FiniteAlgebra::b2();
            b2.dstar = Some(vec![Some(d0), Some(d1)]);
            let r = validate(&b2, Mode::MeasurableLiteral);
            match r.get("MK3/MK4").and_then(|c| c.witness.clone()) {
                Some(w) => witnesses.push(format!("{w:?}")),
                None => return Err(format!("no MK3/MK4 witness on B2 with dstar ({d0},{d1})")),
            }
        }
    }
    Ok(format!("only the singleton survives; B2 MK3/MK4 witnesses {}", witnesses.join(" ")))
}

fn kernel_witness() -> Outcome {
    let m = FiniteAlgebra::rel(2);
    match kernel_join_witness(&m) {
        Some((x, y, kj, j)) => Ok(format!("rel(2): {x} kernel-join {y} = {kj}, union {j}")),
        None => {
            let specials = kernel(&m).embed.len();
            let larger = match kernel_join_witness(&FiniteAlgebra::rel(3)) {
                Some((x, y, kj, j)) => {
                    format!("rel(3) has one: {x} kernel-join {y} = {kj}, union {j}")
                }
                None => "rel(3) has none either".into(),
            };
            Err(format!(
                "rel(2): no witness, its {specials} special elements are closed under union; {larger}"
            ))
        }
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("golden corpus", Box::new(|| timed(GOLDEN_LIMIT, golden))),
        ("identity completeness", Box::new(|| timed(IDENTITY_LIMIT, identities))),
        ("rule soundness sweep", Box::new(|| timed(SOUNDNESS_LIMIT, soundness))),
        ("round trips", Box::new(round_trips)),
        ("closure laws", Box::new(closure_laws)),
        ("translation invariance", Box::new(|| timed(INVARIANCE_LIMIT, invariance))),
        ("principal cut reduction", Box::new(cuts)),
        ("literal collapse", Box::new(|| timed(COLLAPSE_LIMIT, collapse))),
        ("kernel join witness", Box::new(kernel_witness)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        match run() {
            Ok(m) => println!("criterion {} {name}: PASS ({m})", i + 1),
            Err(m) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({m})", i + 1);
            }
        }
    }
    println!("acceptance: {} of 9 criteria pass", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
