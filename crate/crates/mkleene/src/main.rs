use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mkl_core::algebra::Mode;
use mkleene::commands;

#[derive(Parser)]
#[command(
    name = "mkleene",
    about = "Display calculus and finite model workbench for measurable Kleene logic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Literal,
    Guarded,
    Kleene,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Literal => Mode::MeasurableLiteral,
            ModeArg::Guarded => Mode::MeasurableGuarded,
            ModeArg::Kleene => Mode::Kleene,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula, structure or sequent and print it back.
    Parse { text: String },
    /// Translate a single-type formula into the multi-type language.
    Translate { formula: String },
    /// Check a proof file.
    Check { proof: PathBuf },
    /// Search for a cut-free derivation.
    Prove {
        sequent: String,
        #[arg(long, default_value_t = 12)]
        depth: usize,
    },
    /// Print the derivation of `f |- f`.
    Identity { formula: String },
    /// Reduce a principal cut, given as a proof file or a cut formula.
    ReduceCut { input: String },
    /// Check a model file against the axioms of its mode.
    ModelValidate { model: PathBuf },
    /// List the models up to isomorphism.
    ModelEnumerate {
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Guarded)]
        mode: ModeArg,
    },
    /// Check rules for soundness on the lifts of the enumerated models.
    Soundness {
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Guarded)]
        mode: ModeArg,
        #[arg(long, default_value = "all")]
        rule: String,
        /// Check instead that each deliberately unsound rule is refuted.
        #[arg(long)]
        mutated: bool,
    },
    /// Run a corpus of stored proofs and search goals.
    Corpus {
        #[arg(long, default_value = "proofs/corpus.txt")]
        corpus: PathBuf,
    },
    /// Compare validity of single-type inequalities with their translations.
    Invariance {
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        /// Largest formula depth; leaves have depth 1.
        #[arg(long, default_value_t = 2)]
        formula_depth: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let verdict = match cli.command {
        Command::Parse { text } => commands::parse(&text),
        Command::Translate { formula } => commands::translate_cmd(&formula),
        Command::Check { proof } => commands::check(&proof),
        Command::Prove { sequent, depth } => commands::prove_cmd(&sequent, depth),
        Command::Identity { formula } => commands::identity(&formula),
        Command::ReduceCut { input } => commands::reduce_cut(&input),
        Command::ModelValidate { model } => commands::model_validate(&model),
        Command::ModelEnumerate { max_size, mode } => {
            commands::model_enumerate(max_size, mode.into())
        }
        Command::Soundness { max_size, mode, rule, mutated } => {
            commands::soundness(mode.into(), max_size, &rule, mutated)
        }
        Command::Corpus { corpus } => commands::corpus(&corpus),
        Command::Invariance { max_size, formula_depth } => {
            commands::invariance(max_size, formula_depth)
        }
    };
    match verdict {
        Ok(v) => {
            print!("{}", v.render());
            if v.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            println!("error: {e}");
            println!("RESULT: FAIL");
            ExitCode::from(2)
        }
    }
}
