use std::path::PathBuf;

use clap::{Args, Subcommand};
use serde_json::{json, Value};
use smith_core::io::TateFile;
use smith_core::tate::{
    equivariant_cochains, is_perfect, link_cone_perfection, periodicity_witness, tate_cohomology, tate_cohomology_in,
    LinkVerdict, TateComplex, TateTable,
};

use crate::input;
use crate::output::{Failure, Output};
use crate::Global;

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Euler characteristic mod p
    Chi(OnComplex),
    /// Tate hypercohomology dimensions
    Cohomology(Cohomology),
    /// Whether the complex is Tate-acyclic
    Perfect(OnComplex),
    /// The periodicity splice M -> M[2] (M -> M[1] with --short, p = 2)
    Witness(Witness),
    /// Equivariant simplicial cochains of a cyclic action
    Cochains(Cochains),
}

#[derive(Args, Debug)]
pub struct OnComplex {
    #[arg(long)]
    complex: PathBuf,
}

#[derive(Args, Debug)]
pub struct Cohomology {
    #[arg(long)]
    complex: PathBuf,
    /// Lowest degree of the window (defaults to the stable window)
    #[arg(long, allow_hyphen_values = true, requires = "hi")]
    lo: Option<i64>,
    #[arg(long, allow_hyphen_values = true, requires = "lo")]
    hi: Option<i64>,
}

#[derive(Args, Debug)]
pub struct Witness {
    #[arg(long)]
    complex: PathBuf,
    #[arg(long)]
    short: bool,
}

#[derive(Args, Debug)]
pub struct Cochains {
    /// Simplicial complex file
    #[arg(long)]
    complex: PathBuf,
    #[arg(long)]
    action: PathBuf,
    /// Also decide perfection of the cochains of the link of this fixed
    /// vertex
    #[arg(long)]
    link: Option<String>,
}

fn load(path: &std::path::Path) -> Result<TateComplex, Failure> {
    Ok(input::read::<TateFile>(path, "tate complex")?.build()?)
}

fn table_json(t: &TateTable) -> Value {
    json!({ "p": t.p, "dims": t.dims.iter().map(|(n, d)| (n.to_string(), json!(d))).collect::<serde_json::Map<_, _>>() })
}

fn table_tsv(t: &TateTable) -> String {
    std::iter::once("degree\tdim\n".to_string()).chain(t.dims.iter().map(|(n, d)| format!("{n}\t{d}\n"))).collect()
}

pub fn run(cmd: &Cmd, _g: &Global) -> Result<Output, Failure> {
    match cmd {
        Cmd::Chi(a) => {
            let m = load(&a.complex)?;
            let chi = m.chi_mod_p();
            Ok(Output::json(json!({ "p": m.p(), "chi": chi })).with_text(chi.to_string()))
        }
        Cmd::Cohomology(a) => {
            let m = load(&a.complex)?;
            let t = match (a.lo, a.hi) {
                (Some(lo), Some(hi)) if lo <= hi => tate_cohomology_in(&m, lo, hi),
                (Some(_), Some(_)) => return Err(Failure::Input("--lo must not exceed --hi".into())),
                _ => tate_cohomology(&m),
            };
            let tsv = table_tsv(&t);
            Ok(Output::json(table_json(&t)).with_tsv(tsv.clone()).with_text(tsv))
        }
        Cmd::Perfect(a) => {
            let m = load(&a.complex)?;
            let perfect = is_perfect(&m);
            Ok(Output::json(json!({ "p": m.p(), "perfect": perfect, "chi": m.chi_mod_p() }))
                .with_text(if perfect { "perfect" } else { "not perfect" }))
        }
        Cmd::Witness(a) => {
            let m = load(&a.complex)?;
            let w = periodicity_witness(&m, a.short).ok_or_else(|| {
                Failure::Input("the three-term witness exists only for p = 2".into())
            })?;
            let passed = w.passed();
            let json = json!({
                "p": m.p(),
                "shift": w.shift,
                "sequence_exact": w.sequence_exact,
                "middle_free": w.middle_free,
                "cone_perfect": w.cone_perfect,
                "passed": passed,
                "cone": TateFile::from_complex(&w.cone),
            });
            let text = format!(
                "shift {}: exact {}, free middle {}, perfect cone {}",
                w.shift, w.sequence_exact, w.middle_free, w.cone_perfect
            );
            let cone = TateFile::from_complex(&w.cone);
            Ok(Output::json(json).with_text(text).check(passed, || {
                format!("witness fails; cone:\n{}", serde_json::to_string_pretty(&cone).expect("serializable"))
            }))
        }
        Cmd::Cochains(a) => {
            let c = input::complex(&a.complex)?;
            let act = input::action(&a.action, c)?;
            let m = equivariant_cochains(&act)?;
            let perfect = is_perfect(&m);
            let mut json = json!({
                "p": m.p(),
                "chi": m.chi_mod_p(),
                "perfect": perfect,
                "complex": TateFile::from_complex(&m),
            });
            let mut text = format!("chi = {} mod {}, {}", m.chi_mod_p(), m.p(), if perfect { "perfect" } else { "not perfect" });
            let mut link_failed = None;
            if let Some(v) = &a.link {
                let verdict = link_cone_perfection(&act, v)?;
                if verdict == LinkVerdict::NotPerfect {
                    link_failed = Some(v.clone());
                }
                let verdict = match verdict {
                    LinkVerdict::Perfect => "perfect",
                    LinkVerdict::NotPerfect => "not perfect",
                    LinkVerdict::NotApplicable => "not applicable",
                };
                json["link"] = json!({ "vertex": v, "verdict": verdict });
                text += &format!("\nlink of {v}: {verdict}");
            }
            Ok(Output::json(json).with_text(text).check(link_failed.is_none(), || {
                format!("the link of the isolated fixed vertex {} has non-perfect cochains", link_failed.unwrap_or_default())
            }))
        }
    }
}
