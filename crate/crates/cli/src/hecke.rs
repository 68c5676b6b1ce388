use std::path::PathBuf;

use clap::{Args, Subcommand};
use serde_json::json;
use smith_core::hecke::{check_invariance, convolve, group_ring_bridge, smith_hecke, FiniteGroup, HeckeElement};
use smith_core::io::{ComplexFile, GroupFile, KernelFile};
use smith_core::Ring;

use crate::input;
use crate::output::{Failure, Output};
use crate::Global;

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Convolution of two kernels on X×X
    Convolve(Convolve),
    /// Restriction of an invariant F_p kernel to the fixed locus of ϖ
    Smith(Smith),
    /// The isomorphism between the Hecke algebra of G acting on itself and
    /// the group ring, checked on every product
    Groupring(Groupring),
}

#[derive(Args, Debug)]
pub struct Convolve {
    #[arg(long)]
    complex: PathBuf,
    #[arg(long)]
    left: PathBuf,
    #[arg(long)]
    right: PathBuf,
}

#[derive(Args, Debug)]
pub struct Smith {
    #[arg(long)]
    complex: PathBuf,
    /// Group generators and the distinguished element ϖ
    #[arg(long)]
    group: PathBuf,
    #[arg(long)]
    kernel: PathBuf,
}

#[derive(Args, Debug)]
pub struct Groupring {
    /// One of Z2, Z3, Z4, Z2xZ2, Z6, S3, Z8, Z4xZ2, Z2xZ2xZ2, D4, Q8, or `all`
    #[arg(long, default_value = "all")]
    group: String,
}

pub fn run(cmd: &Cmd, g: &Global) -> Result<Output, Failure> {
    match cmd {
        Cmd::Convolve(a) => {
            let c = input::complex(&a.complex)?;
            let f1 = input::kernel(&a.left, c.clone(), g)?;
            let f2 = input::kernel(&a.right, c, g)?;
            Ok(kernel_output(&convolve(&f1, &f2)?, false))
        }
        Cmd::Smith(a) => {
            let c = input::complex(&a.complex)?;
            let act = input::read::<GroupFile>(&a.group, "group")?.build(c.clone())?;
            let f = input::kernel(&a.kernel, c, g)?;
            if !check_invariance(&f, &act) {
                return Err(Failure::Input("kernel is not invariant under the group".into()));
            }
            Ok(kernel_output(&smith_hecke(&f, &act)?, true))
        }
        Cmd::Groupring(a) => {
            let ring = input::ring(g)?.unwrap_or(Ring::Integers);
            let groups: Vec<(&str, FiniteGroup)> = FiniteGroup::small_groups()
                .into_iter()
                .filter(|(name, _)| a.group == "all" || *name == a.group)
                .collect();
            if groups.is_empty() {
                return Err(Failure::Input(format!("unknown group {:?}", a.group)));
            }
            let mut rows = Vec::new();
            let mut failed = Vec::new();
            for (name, group) in groups {
                let r = group_ring_bridge(&group, ring)?.verify()?;
                if !r.passed() {
                    failed.push(name.to_string());
                }
                rows.push(json!({
                    "group": name,
                    "order": r.order,
                    "products_checked": r.products_checked,
                    "unit_preserved": r.unit_preserved,
                    "mutually_inverse": r.mutually_inverse,
                    "multiplicative": r.multiplicative,
                    "inverse_normalization_antimultiplicative": r.inverse_normalization_antimultiplicative,
                    "passed": r.passed(),
                }));
            }
            let tsv: String = std::iter::once("group\torder\tproducts\tpassed\n".to_string())
                .chain(rows.iter().map(|r| {
                    format!("{}\t{}\t{}\t{}\n", r["group"].as_str().unwrap_or(""), r["order"], r["products_checked"], r["passed"])
                }))
                .collect();
            let text = rows
                .iter()
                .map(|r| {
                    let verdict = if r["passed"] == true { "ok" } else { "FAILED" };
                    format!("{:<10} order {:>2}  {:>4} products  {verdict}", r["group"].as_str().unwrap_or(""), r["order"], r["products_checked"])
                })
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output::json(json!({ "ring": ring.to_string(), "groups": rows }))
                .with_tsv(tsv)
                .with_text(text)
                .check(failed.is_empty(), || format!("group-ring isomorphism fails for {}", failed.join(", "))))
        }
    }
}

fn kernel_output(k: &HeckeElement, with_carrier: bool) -> Output {
    let file = KernelFile::from_kernel(k);
    let tsv: String = file.entries.iter().map(|(key, v)| format!("{key}\t{v}\n")).collect();
    let json = if with_carrier {
        json!({ "complex": ComplexFile::from_complex(k.carrier()), "kernel": file })
    } else {
        serde_json::to_value(&file).expect("serializable")
    };
    Output::json(json).with_tsv(tsv)
}
