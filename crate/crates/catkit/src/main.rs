//! Command-line front end: load models, run checkers, render reports and
//! diagrams, compile and evaluate IMLL proofs.
//!
//! Exit codes: 0 pass, 1 verdict-false, 2 usage/input error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use catkit::constructions::{
    analyze_structure, monos_are_equalizers, Polarity, SubobjectClassifierWitness,
};
use catkit::error::{CatError, Result};
use catkit::imll;
use catkit::io::{self, CategoryFile, MonoidalFile, WitnessFile};
use catkit::models::{self, LatticeSpec};
use catkit::report::StructureReport;

#[derive(Parser)]
#[command(name = "catkit", version, about = "Finite category theory checker")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a structure file against its axioms.
    Check {
        #[command(subcommand)]
        target: CheckTarget,
    },
    /// Run the structure ladder and related analyses on a category.
    Analyze {
        file: PathBuf,
        /// Print the terminal/products/exponentials/classifier/topos ladder.
        #[arg(long)]
        ladder: bool,
        /// Certify that every monomorphism is an equalizer.
        #[arg(long)]
        monos_equalizers: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Compile and evaluate IMLL sequent proofs.
    Imll {
        #[command(subcommand)]
        action: ImllAction,
    },
    /// Render a witness file as a fixed-width ASCII diagram.
    Render {
        kind: RenderKind,
        file: PathBuf,
    },
    /// Generate a stock model and print (or save) its JSON.
    Gen {
        #[command(subcommand)]
        model: GenModel,
    },
}

#[derive(Args)]
struct Common {
    /// Emit the report as JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Carrier-size guard for brute-force work (CATKIT_MAX_SIZE overrides
    /// the default of 600).
    #[arg(long)]
    max_size: Option<usize>,
}

impl Common {
    fn max(&self) -> Result<usize> {
        match self.max_size {
            Some(n) => Ok(n),
            None => io::effective_max_size(),
        }
    }
}

#[derive(Subcommand)]
enum CheckTarget {
    /// Category axioms S1–S6 + NE.
    Category {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Functor conditions (1)–(5).
    Functor {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Natural transformation conditions (1)–(5).
    Nattrans {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Monoidal coherence: bifunctoriality, α/λ/ρ, triangle, pentagon.
    Monoidal {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Full symmetric monoidal closed law suite.
    Smcc {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum ImllAction {
    /// Parse, check, and compile a proof; print the term and its type.
    Compile { proof: PathBuf },
    /// Compile, then evaluate in a model under an environment.
    Eval {
        proof: PathBuf,
        /// SMCC model file.
        #[arg(long)]
        model: PathBuf,
        /// Environment file mapping atoms to identities.
        #[arg(long)]
        env: PathBuf,
        /// Expected element index, compared under Kleene equality.
        #[arg(long)]
        expect: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderKind {
    Pullback,
    Product,
}

#[derive(Subcommand)]
enum GenModel {
    /// Skeletal category of finite sets with objects 0..=max.
    Finset {
        #[arg(long)]
        max: usize,
        #[command(flatten)]
        out: GenOut,
    },
    /// Divisor-lattice poset category.
    Poset {
        #[arg(long)]
        divisors: u64,
        #[command(flatten)]
        out: GenOut,
    },
    /// Boolean-algebra Heyting SMCC model on 2^k elements.
    Heyting {
        #[arg(long, value_name = "K")]
        bool: u32,
        #[command(flatten)]
        out: GenOut,
    },
    /// Discrete ℤ/n group SMCC model.
    Group {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: GenOut,
    },
}

#[derive(Args)]
struct GenOut {
    /// Write to a file instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Check { target } => cmd_check(target),
        Command::Analyze {
            file,
            ladder,
            monos_equalizers,
            common,
        } => cmd_analyze(&file, ladder, monos_equalizers, &common),
        Command::Imll { action } => cmd_imll(action),
        Command::Render { kind, file } => cmd_render(kind, &file),
        Command::Gen { model } => cmd_gen(model),
    }
}

fn emit_report(report: &StructureReport, json: bool) -> Result<ExitCode> {
    if json {
        println!("{}", serde_json::to_string_pretty(report)?);
    } else {
        println!("{report}");
    }
    Ok(if report.verdict() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_check(target: CheckTarget) -> Result<ExitCode> {
    match target {
        CheckTarget::Category { file, common } => {
            let cat = io::load_category(&file, common.max()?)?;
            emit_report(&cat.check(), common.json)
        }
        CheckTarget::Functor { file, common } => {
            let f = io::load_functor(&file, common.max()?)?;
            emit_report(&f.check(), common.json)
        }
        CheckTarget::Nattrans { file, common } => {
            let t = io::load_nattrans(&file, common.max()?)?;
            emit_report(&t.check(), common.json)
        }
        CheckTarget::Monoidal { file, common } => {
            let m = io::load_monoidal(&file, common.max()?)?;
            emit_report(&m.check()?, common.json)
        }
        CheckTarget::Smcc { file, common } => {
            let s = io::load_smcc(&file, common.max()?)?;
            emit_report(&s.check()?, common.json)
        }
    }
}

fn cmd_analyze(
    file: &PathBuf,
    ladder: bool,
    monos_equalizers: bool,
    common: &Common,
) -> Result<ExitCode> {
    let cat = io::load_category(file, common.max()?)?;
    let axioms = cat.check();
    if !axioms.verdict() {
        println!("{axioms}");
        return Ok(ExitCode::from(1));
    }
    let mut failed = false;
    let (lad, _) = analyze_structure(&cat)?;
    if ladder || !monos_equalizers {
        if common.json {
            println!("{}", serde_json::to_string_pretty(&lad)?);
        } else {
            println!("terminal: {}", describe_obj(lad.has_terminal, lad.terminal));
            match lad.failing_pair {
                Some((a, b)) if !lad.has_binary_products => {
                    println!("binary_products: false (failing pair ({a}, {b}))")
                }
                _ => println!("binary_products: {}", lad.has_binary_products),
            }
            match lad.has_exponentials {
                None => println!("exponentials: skipped (not cartesian)"),
                Some(v) => println!("exponentials: {v}"),
            }
            match (lad.has_subobject_classifier, lad.omega) {
                (true, Some(omega)) => {
                    println!("subobject_classifier: true (Ω = object {omega})")
                }
                _ => println!(
                    "subobject_classifier: {}",
                    lad.has_subobject_classifier
                ),
            }
            println!("is_topos: {}", lad.is_topos);
        }
    }
    if monos_equalizers {
        let classifier = match (lad.omega, lad.truth, lad.terminal) {
            (Some(omega), Some(truth), Some(terminal)) => Some(SubobjectClassifierWitness {
                omega,
                truth,
                terminal,
            }),
            _ => None,
        };
        let me = monos_are_equalizers(&cat, classifier.as_ref())?;
        if common.json {
            println!("{}", serde_json::to_string_pretty(&me)?);
        } else if me.verdict() {
            let count = me
                .notes
                .first()
                .cloned()
                .unwrap_or_else(|| "all".to_string());
            println!("monos_are_equalizers: true ({count})");
        } else {
            println!("{me}");
        }
        failed |= !me.verdict();
    }
    Ok(if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn describe_obj(has: bool, obj: Option<usize>) -> String {
    match (has, obj) {
        (true, Some(o)) => format!("true (object {o})"),
        _ => has.to_string(),
    }
}

fn cmd_imll(action: ImllAction) -> Result<ExitCode> {
    match action {
        ImllAction::Compile { proof } => {
            let text = std::fs::read_to_string(&proof)?;
            let tree = imll::parse_proof(&text)?;
            let (sequent, term) = imll::compile_proof(&tree)?;
            println!("sequent: {sequent}");
            println!("dom: {}", term.source()?);
            println!("cod: {}", term.target()?);
            println!("term: {term}");
            Ok(ExitCode::SUCCESS)
        }
        ImllAction::Eval {
            proof,
            model,
            env,
            expect,
            common,
        } => {
            let text = std::fs::read_to_string(&proof)?;
            let tree = imll::parse_proof(&text)?;
            let (sequent, term) = imll::compile_proof(&tree)?;
            let s = io::load_smcc(&model, common.max()?)?;
            let environment = io::load_environment(&env)?;
            environment.validate(&s)?;
            let value = imll::evaluate_term(&term, &environment, &s)?;
            let report = imll::dom_cod_check(&term, &sequent, &environment, &s)?;
            println!("sequent: {sequent}");
            println!("value: {value}");
            if common.json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                println!("{report}");
            }
            let mut ok = report.verdict();
            if let Some(e) = expect {
                let agrees = s.base().carrier().kleene_eq(value, e)?;
                println!("expect {e}: {}", if agrees { "match" } else { "mismatch" });
                ok &= agrees;
            }
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn cmd_render(kind: RenderKind, file: &PathBuf) -> Result<ExitCode> {
    let witness: WitnessFile = io::read_json(file)?;
    match kind {
        RenderKind::Pullback => {
            let w = witness
                .pullback
                .ok_or_else(|| CatError::input("witness file has no \"pullback\" entry"))?;
            print!("{}", render_pullback(w.p0, w.p1, w.f, w.g));
        }
        RenderKind::Product => {
            let w = witness
                .product
                .ok_or_else(|| CatError::input("witness file has no \"product\" entry"))?;
            let tag = match w.polarity {
                Polarity::Product => "product",
                Polarity::Coproduct => "coproduct",
            };
            print!("{}", render_product(tag, w.object, w.proj1, w.proj2));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn render_pullback(p0: usize, p1: usize, f: usize, g: usize) -> String {
    format!(
        "P ----p1={p1}----> B\n\
         |                |\n\
         p0={p0}            g={g}\n\
         |                |\n\
         v                v\n\
         A ----f={f}-----> C\n"
    )
}

fn render_product(tag: &str, object: usize, proj1: usize, proj2: usize) -> String {
    format!(
        "{tag} object {object}\n\
         \n\
        \x20       {object}\n\
        \x20      / \\\n\
        \x20 p1={proj1}   p2={proj2}\n\
        \x20    /     \\\n\
        \x20   v       v\n\
        \x20  A         B\n"
    )
}

fn cmd_gen(model: GenModel) -> Result<ExitCode> {
    match model {
        GenModel::Finset { max, out } => {
            let cat = models::skeletal_finset(max, out.common.max()?)?;
            write_out(&out, &CategoryFile::from_category(&cat))
        }
        GenModel::Poset { divisors, out } => {
            let cat = models::poset_category(&LatticeSpec::divisors(divisors))?;
            guard(cat.size(), out.common.max()?)?;
            write_out(&out, &CategoryFile::from_category(&cat))
        }
        GenModel::Heyting { bool: k, out } => {
            let s = models::heyting_smcc(&LatticeSpec::boolean(k))?;
            guard(s.base().size(), out.common.max()?)?;
            write_out(&out, &MonoidalFile::from_smcc(&s))
        }
        GenModel::Group { n, out } => {
            let s = models::group_smcc(n)?;
            guard(s.base().size(), out.common.max()?)?;
            write_out(&out, &MonoidalFile::from_smcc(&s))
        }
    }
}

fn guard(size: usize, max: usize) -> Result<()> {
    if size > max {
        return Err(CatError::Resource(format!(
            "carrier size {size} exceeds the limit {max}"
        )));
    }
    Ok(())
}

fn write_out<T: serde::Serialize>(out: &GenOut, value: &T) -> Result<ExitCode> {
    match &out.output {
        Some(path) => io::save_json(path, value)?,
        None => println!("{}", serde_json::to_string_pretty(value)?),
    }
    Ok(ExitCode::SUCCESS)
}
