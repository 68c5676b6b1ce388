use std::collections::BTreeSet;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Subcommand};
use serde_json::{json, Value};
use smith_core::checks::first_dominant;
use smith_core::io::ElementFile;
use smith_core::roots::{
    affine_deletion, center_check, centralizer_datum, congruence_subsystem, decompose, kac_nodes, kac_order_p_nodes,
    restrict_invariants, verify_coroot_compatibility, weight_key, weyl_character, KacNode, RootDatum, ShaModel,
};
use smith_core::scalar::is_prime;
use smith_core::Ring;

use crate::input;
use crate::output::{Failure, Output};
use crate::Global;

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Cartan matrix, root count, highest root and center of a datum
    Data(Datum),
    /// Nodes whose highest-root coefficient is the prime p
    Kac(Kac),
    /// Centralizer of the order-c element attached to a node, computed by
    /// affine deletion and by congruence
    Centralizer(Node),
    /// The Langlands dual datum
    Dual(Datum),
    /// Weight multiplicities of a Weyl module
    Character(Character),
    /// Characters of the dual group restricted to the dual of a centralizer
    /// and decomposed, as TSV (weight, constituent, multiplicity)
    Branch(Branch),
    /// Restriction to the centralizer followed by reduction mod p, in the
    /// lattice model of the spherical Hecke algebra
    SmithSha(SmithSha),
    /// Coroot and reflection compatibility for the centralizers of one node
    /// or of every node of prime coefficient
    CorootCheck(CorootCheck),
}

#[derive(Args, Debug)]
pub struct Datum {
    /// Cartan type such as E8 or C3
    #[arg(long = "type")]
    ty: String,
    /// sc (simply connected) or ad (adjoint)
    #[arg(long, default_value = "sc")]
    isogeny: String,
}

#[derive(Args, Debug)]
pub struct Kac {
    #[arg(long = "type")]
    ty: String,
    #[arg(long)]
    p: u32,
}

#[derive(Args, Debug)]
pub struct Node {
    #[arg(long = "type")]
    ty: String,
    /// Node number, counted from 1 in Bourbaki order
    #[arg(long)]
    node: usize,
}

#[derive(Args, Debug)]
pub struct Character {
    #[arg(long = "type")]
    ty: String,
    #[arg(long, default_value = "sc")]
    isogeny: String,
    /// Dominant highest weight, e.g. `1,0`
    #[arg(long)]
    weight: String,
}

#[derive(Args, Debug)]
pub struct Branch {
    #[arg(long = "type")]
    ty: String,
    #[arg(long)]
    node: usize,
    /// Highest weights of the dual group; defaults to the first five
    /// dominant weights by level
    #[arg(long)]
    weight: Vec<String>,
}

#[derive(Args, Debug)]
pub struct SmithSha {
    #[arg(long = "type")]
    ty: String,
    #[arg(long)]
    node: usize,
    /// Element file on the dual datum
    #[arg(long, conflicts_with = "weight")]
    element: Option<PathBuf>,
    /// Use the Weyl character of this dual highest weight
    #[arg(long)]
    weight: Option<String>,
}

#[derive(Args, Debug)]
pub struct CorootCheck {
    #[arg(long = "type")]
    ty: String,
    #[arg(long, conflicts_with = "p")]
    node: Option<usize>,
    #[arg(long)]
    p: Option<u32>,
}

fn datum(ty: &str, isogeny: &str) -> Result<RootDatum, Failure> {
    let ty = ty.trim();
    let split = ty.char_indices().nth(1).map_or(ty.len(), |(i, _)| i);
    let (family, rank) = ty.split_at(split);
    let rank: usize = rank.parse().map_err(|_| Failure::Input(format!("type {ty:?} must be a letter followed by a rank")))?;
    Ok(RootDatum::parse(&family.to_uppercase(), rank, isogeny)?)
}

/// The node numbered from 1; its coefficient must be prime.
fn node(rd: &RootDatum, number: usize) -> Result<KacNode, Failure> {
    let nodes = kac_nodes(rd)?;
    let n = number
        .checked_sub(1)
        .and_then(|i| nodes.get(i))
        .cloned()
        .ok_or_else(|| Failure::Input(format!("{rd} has nodes 1..={}", nodes.len())))?;
    if !is_prime(n.coefficient as u64) {
        return Err(Failure::Input(format!("node {number} has coefficient {}, which is not prime", n.coefficient)));
    }
    Ok(n)
}

fn node_json(rd: &RootDatum, n: &KacNode) -> Result<Value, Failure> {
    let h = centralizer_datum(rd, n)?;
    Ok(json!({
        "node": n.index + 1,
        "coefficient": n.coefficient,
        "order": n.order,
        "coweight": serde_json::to_value(n).expect("serializable")["coweight"],
        "centralizer": h.label(),
    }))
}

fn weight(s: &str) -> Result<Vec<i64>, Failure> {
    input::integers(s, "weight")
}

pub fn run(cmd: &Cmd, g: &Global) -> Result<Output, Failure> {
    match cmd {
        Cmd::Data(a) => {
            let rd = datum(&a.ty, &a.isogeny)?;
            Ok(datum_output(&rd)?)
        }
        Cmd::Dual(a) => {
            let rd = datum(&a.ty, &a.isogeny)?.dual();
            Ok(datum_output(&rd)?)
        }
        Cmd::Kac(a) => {
            let rd = datum(&a.ty, "sc")?;
            let nodes = kac_order_p_nodes(&rd, a.p)?;
            let rows: Vec<Value> = nodes.iter().map(|n| node_json(&rd, n)).collect::<Result<_, _>>()?;
            let tsv: String = std::iter::once("node\tcoefficient\tcentralizer\n".to_string())
                .chain(rows.iter().map(|r| format!("{}\t{}\t{}\n", r["node"], r["coefficient"], r["centralizer"].as_str().unwrap_or(""))))
                .collect();
            let mut text = format!("{rd}, p = {}: {} node(s)", a.p, rows.len());
            for r in &rows {
                text += &format!("\n  node {}: centralizer {}", r["node"], r["centralizer"].as_str().unwrap_or(""));
            }
            Ok(Output::json(json!({ "datum": rd.to_string(), "p": a.p, "count": rows.len(), "nodes": rows }))
                .with_tsv(tsv)
                .with_text(text))
        }
        Cmd::Centralizer(a) => {
            let rd = datum(&a.ty, "sc")?;
            let n = node(&rd, a.node)?;
            let deletion: BTreeSet<Vec<i64>> = affine_deletion(&rd, &n)?.roots().iter().cloned().collect();
            let congruence: BTreeSet<Vec<i64>> = congruence_subsystem(&rd, &n)?.into_iter().collect();
            let agree = deletion == congruence;
            let h = centralizer_datum(&rd, &n)?;
            let center = center_check(&rd, &n)?;
            let json = json!({
                "datum": rd.to_string(),
                "node": a.node,
                "order": n.order,
                "centralizer": h.label(),
                "cartan": h.cartan(),
                "roots": h.roots().len(),
                "deletion_equals_congruence": agree,
                "center": center,
            });
            let text = format!(
                "{rd} node {}: centralizer {} with {} roots\ndeletion = congruence: {agree}\ncenter {:?} -> {:?} (split: {})",
                a.node,
                h.label(),
                h.roots().len(),
                center.ambient,
                center.centralizer,
                center.split_extension
            );
            Ok(Output::json(json).with_text(text).check(agree && center.extension, || {
                format!("node {}: deletion gives {} roots, congruence {}", a.node, deletion.len(), congruence.len())
            }))
        }
        Cmd::Character(a) => {
            let rd = Arc::new(datum(&a.ty, &a.isogeny)?);
            let ring = input::ring(g)?.unwrap_or(Ring::Integers);
            let chi = weyl_character(&rd, &weight(&a.weight)?, ring)?;
            let file = ElementFile::from_element(&chi);
            let tsv: String = file.weights.iter().map(|(k, v)| format!("{k}\t{v}\n")).collect();
            Ok(Output::json(json!({ "datum": rd.to_string(), "dimension": chi.dimension(), "element": file }))
                .with_tsv(tsv))
        }
        Cmd::Branch(a) => {
            let rd = datum(&a.ty, "sc")?;
            let n = node(&rd, a.node)?;
            let model = ShaModel::new(&rd, Ring::Integers);
            let h = model.centralizer(&n)?;
            let lambdas: Vec<Vec<i64>> = if a.weight.is_empty() {
                if rd.rank() > 4 {
                    return Err(Failure::Input("give --weight explicitly for rank above 4".into()));
                }
                first_dominant(model.dual(), 5)
            } else {
                a.weight.iter().map(|w| weight(w)).collect::<Result<_, _>>()?
            };
            let mut rows = Vec::new();
            let mut tsv = String::from("weight\tconstituent\tmultiplicity\n");
            for lambda in &lambdas {
                let chi = model.character(lambda)?;
                let parts = decompose(&restrict_invariants(model.dual(), h.dual(), &chi)?)?;
                for (mu, m) in &parts {
                    tsv += &format!("{}\t{}\t{m}\n", weight_key(lambda), weight_key(mu));
                }
                rows.push(json!({
                    "weight": lambda,
                    "constituents": parts.iter().map(|(mu, m)| json!({ "weight": mu, "multiplicity": m })).collect::<Vec<_>>(),
                }));
            }
            Ok(Output::json(json!({ "dual": model.dual().to_string(), "centralizer_dual": h.dual().to_string(), "branching": rows }))
                .with_tsv(tsv)
                .tsv_by_default())
        }
        Cmd::SmithSha(a) => {
            let rd = datum(&a.ty, "sc")?;
            let n = node(&rd, a.node)?;
            let p = n.order as u32;
            let model = ShaModel::new(&rd, Ring::Prime(p));
            let e = match (&a.element, &a.weight) {
                (Some(path), _) => input::read::<ElementFile>(path, "element")?.build(model.dual().clone(), Ring::Prime(p))?,
                (None, Some(w)) => model.character(&weight(w)?)?,
                (None, None) => return Err(Failure::Input("give --element or --weight".into())),
            };
            let out = model.smith_sha(&e, &n, p)?;
            let file = ElementFile::from_element(&out);
            let tsv: String = file.weights.iter().map(|(k, v)| format!("{k}\t{v}\n")).collect();
            Ok(Output::json(json!({ "target": out.datum().to_string(), "p": p, "element": file })).with_tsv(tsv))
        }
        Cmd::CorootCheck(a) => {
            let rd = datum(&a.ty, "sc")?;
            let nodes: Vec<KacNode> = match (a.node, a.p) {
                (Some(k), _) => vec![node(&rd, k)?],
                (None, Some(p)) => kac_order_p_nodes(&rd, p)?,
                (None, None) => kac_nodes(&rd)?.into_iter().filter(|n| is_prime(n.coefficient as u64)).collect(),
            };
            let mut rows = Vec::new();
            let mut bad = Vec::new();
            for n in &nodes {
                let r = verify_coroot_compatibility(&rd, n)?;
                if !r.passed() {
                    bad.push(format!("node {}: {}", n.index + 1, r.violations.join("; ")));
                }
                rows.push(json!({ "node": n.index + 1, "order": n.order, "report": r, "passed": r.passed() }));
            }
            let tsv: String = std::iter::once("node\troots\treflections\tpassed\n".to_string())
                .chain(rows.iter().map(|r| {
                    format!("{}\t{}\t{}\t{}\n", r["node"], r["report"]["roots_checked"], r["report"]["reflections_checked"], r["passed"])
                }))
                .collect();
            let text = format!("{rd}: {} node(s) checked, {} failed", rows.len(), bad.len());
            Ok(Output::json(json!({ "datum": rd.to_string(), "nodes": rows }))
                .with_tsv(tsv)
                .with_text(text)
                .check(bad.is_empty(), || bad.join("\n")))
        }
    }
}

fn datum_output(rd: &RootDatum) -> Result<Output, Failure> {
    let json = json!({
        "datum": rd.to_string(),
        "label": rd.label(),
        "rank": rd.rank(),
        "cartan": rd.cartan(),
        "roots": rd.roots().len(),
        "highest_root": rd.highest_root_coeffs()?,
        "center": rd.root_lattice_quotient(),
    });
    let rows: Vec<String> = rd.cartan().iter().map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")).collect();
    let text = format!(
        "{rd}\nroots: {}\nhighest root: {:?}\nX/ZΦ invariant factors: {:?}\ncartan:\n  {}",
        rd.roots().len(),
        rd.highest_root_coeffs()?,
        rd.root_lattice_quotient(),
        rows.join("\n  ")
    );
    Ok(Output::json(json).with_text(text))
}
