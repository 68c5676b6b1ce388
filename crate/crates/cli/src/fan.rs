use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Subcommand};
use serde_json::json;
use smith_core::conic::{ft, ft_value, smith_conic, smith_ft_square, ConicCFun, Fan};
use smith_core::io::{ConicFunctionFile, FanFile};
use smith_core::Ring;

use crate::input;
use crate::output::{Failure, Output};
use crate::Global;

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Fourier-Sato transform, at one covector or as a function on a fan
    Ft(Ft),
    /// Smith operator for a coordinate permutation; with --covector, both
    /// paths around the Smith/transform square
    Smith(Smith),
}

#[derive(Args, Debug)]
pub struct Ft {
    #[arg(long)]
    fan: PathBuf,
    #[arg(long)]
    function: PathBuf,
    /// Fan on the dual space carrying the result (defaults to --fan)
    #[arg(long)]
    dual_fan: Option<PathBuf>,
    /// Evaluate at this integer covector only, e.g. `1,-2`
    #[arg(long, allow_hyphen_values = true)]
    covector: Option<String>,
}

#[derive(Args, Debug)]
pub struct Smith {
    #[arg(long)]
    fan: PathBuf,
    #[arg(long)]
    function: PathBuf,
    /// Coordinate permutation as images of 0..n, e.g. `1,0`
    #[arg(long)]
    perm: String,
    /// Covector of the fixed line at which to compare both paths
    #[arg(long, allow_hyphen_values = true)]
    covector: Option<String>,
}

fn load(fan: &Path, function: &Path, g: &Global) -> Result<ConicCFun, Failure> {
    let fan = Arc::new(input::read::<FanFile>(fan, "fan")?.build()?);
    let f = input::read::<ConicFunctionFile>(function, "conic function")?.build(fan)?;
    match input::ring(g)? {
        None => Ok(f),
        Some(r) if r == f.ring() => Ok(f),
        Some(Ring::Prime(p)) => Ok(f.reduce(p)?),
        Some(r) => Err(Failure::Input(format!("function is over {}, cannot lift to {r}", f.ring()))),
    }
}

pub fn run(cmd: &Cmd, g: &Global) -> Result<Output, Failure> {
    match cmd {
        Cmd::Ft(a) => {
            let f = load(&a.fan, &a.function, g)?;
            if let Some(xi) = &a.covector {
                let xi = input::integers(xi, "covector")?;
                let v = ft_value(&f, &xi)?;
                return Ok(Output::json(json!({ "ring": v.ring.to_string(), "covector": xi, "value": v.value }))
                    .with_text(v.value.to_string()));
            }
            let dual: Arc<Fan> = match &a.dual_fan {
                Some(p) => Arc::new(input::read::<FanFile>(p, "fan")?.build()?),
                None => f.fan().clone(),
            };
            Ok(conic_output(&ft(&f, dual)?))
        }
        Cmd::Smith(a) => {
            let f = load(&a.fan, &a.function, g)?;
            let perm = input::indices(&a.perm, "perm")?;
            match &a.covector {
                None => Ok(conic_output(&smith_conic(&f, &perm)?)),
                Some(eta) => {
                    let eta = input::integers(eta, "covector")?;
                    let (upper, lower) = smith_ft_square(&f, &perm, &eta)?;
                    Ok(Output::json(json!({
                        "ring": upper.ring.to_string(),
                        "covector": eta,
                        "smith_of_transform": upper.value,
                        "transform_of_smith": lower.value,
                        "commutes": upper == lower,
                    }))
                    .with_text(format!("Psm(FT f) = {}\nFT(Psm f) = {}", upper.value, lower.value))
                    .check(upper == lower, || format!("paths differ at {eta:?}: {upper} vs {lower}")))
                }
            }
        }
    }
}

fn conic_output(f: &ConicCFun) -> Output {
    let file = ConicFunctionFile::from_function(f);
    let tsv: String = file.coefficients.iter().map(|(k, v)| format!("{k}\t{v}\n")).collect();
    Output::json(json!({ "fan": FanFile::from_fan(f.fan()), "function": file })).with_tsv(tsv)
}
