//! `mtalc`: validate TBoxes and decide satisfiability or subsumption of
//! spatio-temporal concepts.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use mtalc_core::algebra::Calculus;
use mtalc_core::atemporal::RationalOrderDomain;
use mtalc_core::error::EngineError;
use mtalc_core::lang::{parse, validate, role_counts, Classification, Directive, Document};
use mtalc_core::temporal::{satisfiable, subsumes, Outcome, SearchOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CalculusArg {
    Rcc8,
    Cyct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Validate,
    Sat,
    Subsume,
}

#[derive(Debug, Parser)]
#[command(name = "mtalc", version, about = "Decide MTALC(Dx, D) concepts against weakly cyclic TBoxes")]
struct Cli {
    /// Problem file.
    input: PathBuf,
    #[arg(long, value_enum, default_value = "rcc8")]
    calculus: CalculusArg,
    #[arg(long, value_enum, default_value = "sat")]
    mode: Mode,
    /// Number of times each loop is repeated when solving the global CSP.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    unfold: u32,
    /// Write the witness of each satisfiable `check sat` here as JSON.
    #[arg(long)]
    witness: Option<PathBuf>,
    /// Solve the spatial CSP only once a run is complete.
    #[arg(long)]
    no_online_filtering: bool,
    #[arg(short, long)]
    verbose: bool,
}

enum Failure {
    Rejected(String),
    Error(String),
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::Rejected(reason) => Failure::Rejected(format!("REJECTED: {reason}")),
            e => Failure::Error(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Rejected(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Error(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let calculus = match cli.calculus {
        CalculusArg::Rcc8 => Calculus::Rcc8,
        CalculusArg::Cyct => Calculus::Cyct,
    };
    let text = fs::read_to_string(&cli.input)
        .map_err(|e| Failure::Error(format!("{}: {e}", cli.input.display())))?;
    let doc = parse(&text, calculus, &RationalOrderDomain).map_err(|errs| {
        let lines: Vec<String> = errs
            .iter()
            .map(|e| format!("{}:{e}", cli.input.display()))
            .collect();
        Failure::Error(lines.join("\n"))
    })?;
    let options = SearchOptions {
        unfold: cli.unfold as usize,
        online_filtering: !cli.no_online_filtering,
    };
    if cli.verbose {
        let (p, q) = role_counts(doc.tbox.axioms().iter().map(|ax| &ax.rhs));
        eprintln!("{} axioms, p = {p}, q = {q}, calculus {calculus}", doc.tbox.len());
    }
    match cli.mode {
        Mode::Validate => cmd_validate(&doc),
        Mode::Sat => cmd_sat(cli, &doc, calculus, &options),
        Mode::Subsume => cmd_subsume(cli, &doc, calculus, &options),
    }
}

fn cmd_validate(doc: &Document) -> Result<(), Failure> {
    let class = validate(&doc.tbox);
    println!("{class}");
    match class {
        Classification::Rejected(reason) => Err(Failure::Rejected(format!("TBox rejected by {reason}"))),
        _ => Ok(()),
    }
}

/// Witness path for the `k`-th (1-based) of `total` directives.
fn witness_path(base: &Path, k: usize, total: usize) -> PathBuf {
    if total == 1 {
        return base.to_path_buf();
    }
    let stem = base.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match base.extension() {
        Some(ext) => format!("{stem}.{k}.{}", ext.to_string_lossy()),
        None => format!("{stem}.{k}"),
    };
    base.with_file_name(name)
}

fn cmd_sat(cli: &Cli, doc: &Document, calculus: Calculus, options: &SearchOptions) -> Result<(), Failure> {
    let checks: Vec<_> = doc
        .directives
        .iter()
        .filter_map(|d| match d {
            Directive::Sat(c) => Some(c),
            _ => None,
        })
        .collect();
    for (k, c) in checks.iter().enumerate() {
        if cli.verbose {
            eprintln!("check sat {c}");
        }
        let out = satisfiable(c, &doc.tbox, calculus, &RationalOrderDomain, options)?;
        match &out {
            Outcome::Sat(w) => {
                println!("SAT");
                if let Some(base) = &cli.witness {
                    let path = witness_path(base, k + 1, checks.len());
                    fs::write(&path, w.to_json() + "\n")
                        .map_err(|e| Failure::Error(format!("{}: {e}", path.display())))?;
                }
            }
            Outcome::Unsat => println!("UNSAT"),
        }
    }
    Ok(())
}

fn cmd_subsume(cli: &Cli, doc: &Document, calculus: Calculus, options: &SearchOptions) -> Result<(), Failure> {
    for d in &doc.directives {
        let Directive::Subsume(sub, sup) = d else { continue };
        if cli.verbose {
            eprintln!("check subsume {sub} {sup}");
        }
        let yes = subsumes(sup, sub, &doc.tbox, calculus, &RationalOrderDomain, options)?;
        println!("{}", if yes { "YES" } else { "NO" });
    }
    Ok(())
}
