use std::path::PathBuf;

use clap::{Args, Subcommand};
use serde_json::json;
use smith_core::io::{ComplexFile, FunctionFile};
use smith_core::simplicial::{
    dualize, euler_integral, pullback, pullback_shriek, pushforward, pushforward_star, smith_restrict, specialize, CFun,
    Sign,
};

use crate::input;
use crate::output::{Failure, Output};
use crate::Global;

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Euler integral of a constructible function
    Integral(OnComplex),
    /// Pullback u^* (or u^! with --shriek) along a simplicial map
    Pull(AlongMap),
    /// Pushforward u_! (or u_* with --star) along a simplicial map
    Push(AlongMap),
    /// Verdier dual
    Dual(OnComplex),
    /// Restriction of an invariant F_p function to the fixed subcomplex
    Smith(Smith),
    /// Nearby-cycle specialization for a sign labeling of the vertices
    Specialize(Specialize),
}

#[derive(Args, Debug)]
pub struct OnComplex {
    #[arg(long)]
    complex: PathBuf,
    #[arg(long)]
    function: PathBuf,
}

#[derive(Args, Debug)]
pub struct AlongMap {
    /// Source complex of the map
    #[arg(long)]
    source: PathBuf,
    /// Target complex of the map
    #[arg(long)]
    target: PathBuf,
    /// Vertex assignment: {"assignment": {"a": "x", ...}}
    #[arg(long)]
    map: PathBuf,
    /// Function on the target (pull) or the source (push)
    #[arg(long)]
    function: PathBuf,
    /// Use u^! instead of u^*
    #[arg(long)]
    shriek: bool,
    /// Use u_* instead of u_!
    #[arg(long)]
    star: bool,
}

#[derive(Args, Debug)]
pub struct Smith {
    #[arg(long)]
    complex: PathBuf,
    /// Generator and order of the cyclic action
    #[arg(long)]
    action: PathBuf,
    #[arg(long)]
    function: PathBuf,
}

#[derive(Args, Debug)]
pub struct Specialize {
    #[arg(long)]
    complex: PathBuf,
    #[arg(long)]
    function: PathBuf,
    /// One sign per vertex, e.g. `a=+,b=0,c=-`
    #[arg(long)]
    signs: String,
}

pub fn run(cmd: &Cmd, g: &Global) -> Result<Output, Failure> {
    match cmd {
        Cmd::Integral(a) => {
            let c = input::complex(&a.complex)?;
            let f = input::function(&a.function, c, g)?;
            let s = euler_integral(&f);
            Ok(Output::json(json!({ "ring": s.ring.to_string(), "integral": s.value })).with_text(s.value.to_string()))
        }
        Cmd::Pull(a) => {
            let (src, tgt) = (input::complex(&a.source)?, input::complex(&a.target)?);
            let u = input::map(&a.map, src, tgt.clone())?;
            let f = input::function(&a.function, tgt, g)?;
            let out = if a.shriek { pullback_shriek(&u, &f)? } else { pullback(&u, &f)? };
            Ok(function_output(&out, false))
        }
        Cmd::Push(a) => {
            let (src, tgt) = (input::complex(&a.source)?, input::complex(&a.target)?);
            let u = input::map(&a.map, src.clone(), tgt)?;
            let f = input::function(&a.function, src, g)?;
            let out = if a.star { pushforward_star(&u, &f)? } else { pushforward(&u, &f)? };
            Ok(function_output(&out, false))
        }
        Cmd::Dual(a) => {
            let c = input::complex(&a.complex)?;
            let f = input::function(&a.function, c, g)?;
            Ok(function_output(&dualize(&f), false))
        }
        Cmd::Smith(a) => {
            let c = input::complex(&a.complex)?;
            let act = input::action(&a.action, c.clone())?;
            let f = input::function(&a.function, c, g)?;
            let out = smith_restrict(&act, &f)?;
            let (before, after) = (euler_integral(&f), euler_integral(&out));
            Ok(function_output(&out, true)
                .check(before == after, || {
                    format!("integral {before} of the function differs from {after} on the fixed locus")
                }))
        }
        Cmd::Specialize(a) => {
            let c = input::complex(&a.complex)?;
            let f = input::function(&a.function, c.clone(), g)?;
            let mut signs = vec![None; c.num_vertices()];
            for part in a.signs.split(',').filter(|s| !s.trim().is_empty()) {
                let (v, s) = part
                    .split_once('=')
                    .ok_or_else(|| Failure::Input(format!("sign {part:?} is not of the form vertex=sign")))?;
                let i = c.vertex(v.trim()).ok_or_else(|| Failure::Input(format!("unknown vertex {v:?}")))?;
                signs[i] = Some(s.parse::<Sign>()?);
            }
            let signs: Vec<Sign> = signs
                .into_iter()
                .enumerate()
                .map(|(i, s)| s.ok_or_else(|| Failure::Input(format!("no sign for vertex {}", c.label(i)))))
                .collect::<Result<_, _>>()?;
            let out = specialize(&f, &signs)?;
            Ok(function_output(&out, true))
        }
    }
}

/// A function report; when the carrier is new it is included as well.
fn function_output(f: &CFun, with_carrier: bool) -> Output {
    let file = FunctionFile::from_function(f);
    let tsv: String = file.coefficients.iter().map(|(k, v)| format!("{k}\t{v}\n")).collect();
    let json = if with_carrier {
        json!({ "complex": ComplexFile::from_complex(f.carrier()), "function": file })
    } else {
        serde_json::to_value(&file).expect("serializable")
    };
    Output::json(json).with_tsv(tsv)
}
