use clap::{Args, Subcommand};
use serde_json::json;
use smith_core::checks;

use crate::output::{Failure, Output};
use crate::Global;

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Run the property suite (seeded by --seed)
    All(All),
    /// List the check names
    List,
}

#[derive(Args, Debug)]
pub struct All {
    /// Only run checks whose name starts with this prefix
    #[arg(long, default_value = "")]
    only: String,
}

pub fn run(cmd: &Cmd, g: &Global) -> Result<Output, Failure> {
    match cmd {
        Cmd::List => {
            let names = checks::names();
            Ok(Output::json(json!(names)).with_text(names.join("\n")))
        }
        Cmd::All(a) => {
            let reports = checks::run(g.seed, &a.only);
            if reports.is_empty() {
                return Err(Failure::Input(format!("no check name starts with {:?}", a.only)));
            }
            let width = reports.iter().map(|r| r.name.len()).max().unwrap_or(0);
            let mut text: Vec<String> = reports
                .iter()
                .map(|r| {
                    let verdict = if r.passed() { "ok" } else { "FAIL" };
                    format!("{verdict:<4} {:<width$} {:>6} instances", r.name, r.instances)
                })
                .collect();
            let failed: Vec<_> = reports.iter().filter(|r| !r.passed()).collect();
            text.push(format!("{} checks, {} failed (seed {})", reports.len(), failed.len(), g.seed));
            let tsv: String = std::iter::once("check\tinstances\tfailures\n".to_string())
                .chain(reports.iter().map(|r| format!("{}\t{}\t{}\n", r.name, r.instances, r.failures)))
                .collect();
            let counterexample = failed
                .iter()
                .map(|r| {
                    let cx = r.counterexample.as_deref().unwrap_or("no instances were generated");
                    format!("[{}] {} of {} instances failed\n{cx}", r.name, r.failures, r.instances)
                })
                .collect::<Vec<_>>()
                .join("\n\n");
            Ok(Output::json(json!({ "seed": g.seed, "reports": reports }))
                .with_text(text.join("\n"))
                .with_tsv(tsv)
                .check(failed.is_empty(), || counterexample))
        }
    }
}
