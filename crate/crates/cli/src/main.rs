mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use incalg_core::io::error_json;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    PosetInfo,
    Mobius,
    Invert,
    Radical,
    Structmat,
    AutBuild,
    AutDecompose,
    AutVerify,
    DerivSpace,
    DerivDecompose,
    DerivOracle,
    ReducedTypes,
    ReducedCoeffs,
    ReducedMul,
}

/// Exact computations in incidence algebras of finite preorders.
///
/// Inputs are JSON files; `-` reads standard input. Results are printed as
/// JSON. Exit status: 0 on success, 2 on a mathematical obstruction, 1 on
/// malformed input.
#[derive(Debug, Parser)]
#[command(name = "incalg", version)]
pub struct Cli {
    pub verb: Verb,
    /// Poset or preorder file: {"n": .., "relations": [[i, j], ..]}.
    #[arg(long)]
    pub poset: Option<PathBuf>,
    /// Second poset: isomorphism target for poset-info, image poset for
    /// aut-verify.
    #[arg(long)]
    pub poset2: Option<PathBuf>,
    /// Q, Zmod:<n>, Mat:<k>:Q or Mat:<k>:Zmod:<n>.
    #[arg(long)]
    pub ring: Option<String>,
    /// Function file; repeat for verbs taking two operands.
    #[arg(long = "fn")]
    pub functions: Vec<PathBuf>,
    #[arg(long)]
    pub cocycle: Option<PathBuf>,
    /// Basis-image table of an automorphism or derivation.
    #[arg(long)]
    pub table: Option<PathBuf>,
    /// Interval partition for the reduced verbs (default: isomorphism types).
    #[arg(long)]
    pub partition: Option<PathBuf>,
    /// Poset automorphism for aut-build, as comma-separated images.
    #[arg(long)]
    pub tau: Option<String>,
    /// Overrides the mode given in the cocycle file.
    #[arg(long, value_parser = ["full", "tree"])]
    pub mode: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn emit(out: Option<&PathBuf>, text: &str) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(value) => {
            let text = serde_json::to_string_pretty(&value).expect("JSON values serialize") + "\n";
            if let Err(e) = emit(cli.out.as_ref(), &text) {
                eprintln!("incalg: cannot write output: {e}");
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            log::error!("{e}");
            let text =
                serde_json::to_string_pretty(&error_json(&e)).expect("JSON values serialize");
            println!("{text}");
            ExitCode::from(if e.is_malformed_input() { 1 } else { 2 })
        }
    }
}
