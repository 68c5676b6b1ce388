//! `smith`: command-line front end for smith-core.
//!
//! Exit codes: 0 on success, 1 when a checked property fails (the
//! counterexample is printed), 2 on malformed input or an unknown command.

mod charp;
mod check;
mod euler;
mod fan;
mod hecke;
mod input;
mod output;
mod root;
mod tate;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::{Failure, Output};

#[derive(Parser, Debug)]
#[command(name = "smith", version, about = "Exact Euler calculus with group actions, root data and Tate invariants")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Coefficient ring (Z, F2, F3, F5, ...); overrides or reduces input rings
    #[arg(long, global = true)]
    ring: Option<String>,
    /// Seed for randomized commands
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Write the report to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Constructible functions on simplicial complexes
    #[command(subcommand)]
    Euler(euler::Cmd),
    /// Hecke kernels and the Smith operator on them
    #[command(subcommand)]
    Hecke(hecke::Cmd),
    /// Conic functions on fans and the Fourier-Sato transform
    #[command(subcommand)]
    Fan(fan::Cmd),
    /// Root data, Kac nodes, centralizers and characters
    #[command(subcommand)]
    Root(root::Cmd),
    /// Orthogonal and symplectic groups in characteristic 2
    #[command(subcommand)]
    Charp(charp::Cmd),
    /// Complexes of modules over F_p[Z/p]
    #[command(subcommand)]
    Tate(tate::Cmd),
    /// The property suite
    #[command(subcommand)]
    Check(check::Cmd),
}

fn dispatch(cli: &Cli) -> Result<Output, Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Euler(c) => euler::run(c, g),
        Command::Hecke(c) => hecke::run(c, g),
        Command::Fan(c) => fan::run(c, g),
        Command::Root(c) => root::run(c, g),
        Command::Charp(c) => charp::run(c, g),
        Command::Tate(c) => tate::run(c, g),
        Command::Check(c) => check::run(c, g),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = dispatch(&cli);
    output::finish(result, &cli.global)
}
