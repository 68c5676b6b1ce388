use clap::{Args, Subcommand, ValueEnum};
use serde_json::json;
use smith_core::charp::{dickson_invariant, f4_primitivity_check, odd_orthogonal_sum_embedding, so_to_sp, Coverage, Gf, GfMat, QuadForm};

use crate::output::{Failure, Output};
use crate::Global;

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Check an embedding of orthogonal groups in characteristic 2
    Verify(Verify),
    /// Dickson invariant of an isometry of the standard form
    Dickson(Dickson),
    /// Primitivity of the roots and coroots of F4
    F4,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    /// O(2a+1) × O(2b+1) fixing the radical line, into O(2a+2b+2)
    OddSum,
    /// O(2a) into Sp(2a)
    SoSp,
}

#[derive(Args, Debug)]
pub struct Verify {
    #[arg(long, value_enum)]
    construction: Construction,
    #[arg(long)]
    a: usize,
    /// Second block size (odd-sum only)
    #[arg(long, default_value_t = 1)]
    b: usize,
    /// Field size, 2 or 4
    #[arg(long, default_value_t = 2)]
    field: u32,
    /// Number of random elements; without it the smallest cases are
    /// enumerated and larger ones use 1000 samples
    #[arg(long)]
    samples: Option<usize>,
}

#[derive(Args, Debug)]
pub struct Dickson {
    /// Field size, 2 or 4
    #[arg(long, default_value_t = 2)]
    field: u32,
    /// Matrix as JSON rows, e.g. `[[0,1],[1,0]]`
    #[arg(long)]
    matrix: String,
}

pub fn run(cmd: &Cmd, g: &Global) -> Result<Output, Failure> {
    match cmd {
        Cmd::Verify(a) => {
            let field = Gf::new(a.field)?;
            let small = a.field == 2
                && match a.construction {
                    Construction::OddSum => a.a == 1 && a.b == 1,
                    Construction::SoSp => a.a <= 2,
                };
            let coverage = match a.samples {
                Some(samples) => Coverage::Sampled { samples, seed: g.seed },
                None if small => Coverage::Exhaustive,
                None => Coverage::Sampled { samples: 1000, seed: g.seed },
            };
            let (json, passed, failures) = match a.construction {
                Construction::OddSum => {
                    let r = odd_orthogonal_sum_embedding(a.a, a.b, field, coverage)?;
                    (serde_json::to_value(&r).expect("serializable"), r.passed(), serde_json::to_value(&r.failures))
                }
                Construction::SoSp => {
                    let r = so_to_sp(a.a, field, coverage)?;
                    (serde_json::to_value(&r).expect("serializable"), r.passed(), serde_json::to_value(&r.failures))
                }
            };
            let text = format!(
                "{}: {} ({} elements)",
                match a.construction {
                    Construction::OddSum => format!("O({})xO({}) over {field}", 2 * a.a + 1, 2 * a.b + 1),
                    Construction::SoSp => format!("O({}) into Sp({}) over {field}", 2 * a.a, 2 * a.a),
                },
                if passed { "pass" } else { "FAIL" },
                json.get("pairs_checked").or_else(|| json.get("elements_checked")).cloned().unwrap_or_default()
            );
            let failures = failures.expect("serializable");
            Ok(Output::json(json)
                .with_text(text)
                .check(passed, || serde_json::to_string_pretty(&failures).expect("serializable")))
        }
        Cmd::Dickson(a) => {
            let field = Gf::new(a.field)?;
            let rows: Vec<Vec<u8>> =
                serde_json::from_str(&a.matrix).map_err(|e| Failure::Input(format!("matrix: {e}")))?;
            let m = GfMat::from_rows(field, &rows)?;
            if m.rows() != m.cols() {
                return Err(Failure::Input("matrix must be square".into()));
            }
            let form = QuadForm::standard(m.rows(), field);
            let d = dickson_invariant(&form, &m)?;
            Ok(Output::json(json!({ "field": field.to_string(), "dim": m.rows(), "dickson": d })).with_text(d.to_string()))
        }
        Cmd::F4 => {
            let r = f4_primitivity_check();
            let passed = r.passed();
            let text = format!(
                "F4: {} roots and {} coroots checked, {} imprimitive: {}",
                r.roots_checked,
                r.coroots_checked,
                r.imprimitive.len(),
                if passed { "pass" } else { "FAIL" }
            );
            let bad = r.imprimitive.clone();
            Ok(Output::json(serde_json::to_value(&r).expect("serializable"))
                .with_text(text)
                .check(passed, || format!("imprimitive: {bad:?}")))
        }
    }
}
