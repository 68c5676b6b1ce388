//! JSON file formats. Every map is a `BTreeMap`, so serialization is
//! byte-stable.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::conic::{ConicCFun, Fan};
use crate::error::{Error, Result};
use crate::hecke::{FiniteGroupAction, HeckeElement};
use crate::linalg::FpMatrix;
use crate::roots::{InvariantElement, RootDatum};
use crate::scalar::Ring;
use crate::simplicial::{CFun, Complex, GComplex};
use crate::tate::{Module, TateComplex};

/// Parses JSON, reporting line and column on failure.
pub fn parse<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Malformed(format!("{what}: {e}")))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

/// Vertex labels may be written as strings or integers.
fn label(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(Error::Malformed(format!("vertex label {other} must be a string or integer"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub simplices: Vec<Vec<Value>>,
}

impl ComplexFile {
    pub fn build(&self) -> Result<Complex> {
        let faces: Vec<Vec<String>> =
            self.simplices.iter().map(|f| f.iter().map(label).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
        Complex::from_maximal(&faces)
    }

    pub fn from_complex(c: &Complex) -> Self {
        Self { simplices: c.maximal_label_lists().into_iter().map(|f| f.into_iter().map(Value::String).collect()).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionFile {
    pub generator: BTreeMap<String, String>,
    pub order: u64,
}

impl ActionFile {
    pub fn build(&self, base: Arc<Complex>) -> Result<GComplex> {
        GComplex::from_labels(base, &self.generator, self.order)
    }

    pub fn from_action(g: &GComplex) -> Self {
        Self { generator: g.generator_labels(), order: g.order() }
    }
}

pub fn parse_ring(s: &str) -> Result<Ring> {
    s.parse()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionFile {
    pub ring: String,
    pub coefficients: BTreeMap<String, i64>,
}

impl FunctionFile {
    pub fn build(&self, carrier: Arc<Complex>) -> Result<CFun> {
        let ring = parse_ring(&self.ring)?;
        check_range(ring, self.coefficients.values())?;
        CFun::from_keys(carrier, ring, &self.coefficients)
    }

    pub fn from_function(f: &CFun) -> Self {
        Self { ring: f.ring().to_string(), coefficients: f.to_keys() }
    }
}

fn check_range<'a>(ring: Ring, values: impl Iterator<Item = &'a i64>) -> Result<()> {
    if let Ring::Prime(p) = ring {
        if let Some(v) = values.into_iter().find(|&&v| v < 0 || v >= i64::from(p)) {
            return Err(Error::Malformed(format!("value {v} is outside [0, {p}) for ring F{p}")));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelFile {
    pub ring: String,
    pub entries: BTreeMap<String, i64>,
}

impl KernelFile {
    pub fn build(&self, carrier: Arc<Complex>) -> Result<HeckeElement> {
        let ring = parse_ring(&self.ring)?;
        check_range(ring, self.entries.values())?;
        HeckeElement::from_entries(carrier, ring, &self.entries)
    }

    pub fn from_kernel(f: &HeckeElement) -> Self {
        Self { ring: f.ring().to_string(), entries: f.to_entries() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub generators: Vec<BTreeMap<String, String>>,
    pub varpi: BTreeMap<String, String>,
}

impl GroupFile {
    pub fn build(&self, carrier: Arc<Complex>) -> Result<FiniteGroupAction> {
        FiniteGroupAction::from_labels(carrier, &self.generators, &self.varpi)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeEntry {
    pub rays: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanFile {
    pub dim: usize,
    pub cones: Vec<ConeEntry>,
}

impl FanFile {
    pub fn build(&self) -> Result<Fan> {
        let cones: Vec<Vec<Vec<i64>>> = self.cones.iter().map(|c| c.rays.clone()).collect();
        Fan::new(self.dim, &cones)
    }

    pub fn from_fan(f: &Fan) -> Self {
        Self { dim: f.dim(), cones: f.maximal_ray_lists().into_iter().map(|rays| ConeEntry { rays }).collect() }
    }
}

/// Conic function keyed by cone: rays `x,y` joined by `;`, the origin `""`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConicFunctionFile {
    pub ring: String,
    pub coefficients: BTreeMap<String, i64>,
}

impl ConicFunctionFile {
    pub fn build(&self, fan: Arc<Fan>) -> Result<ConicCFun> {
        let ring = parse_ring(&self.ring)?;
        check_range(ring, self.coefficients.values())?;
        ConicCFun::from_keys(fan, ring, &self.coefficients)
    }

    pub fn from_function(f: &ConicCFun) -> Self {
        Self { ring: f.ring().to_string(), coefficients: f.to_keys() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootDatumFile {
    #[serde(rename = "type")]
    pub family: String,
    pub rank: usize,
    pub isogeny: String,
}

impl RootDatumFile {
    pub fn build(&self) -> Result<RootDatum> {
        RootDatum::parse(&self.family, self.rank, &self.isogeny)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<String>,
    pub weights: BTreeMap<String, i64>,
}

impl ElementFile {
    pub fn build(&self, datum: Arc<RootDatum>, default_ring: Ring) -> Result<InvariantElement> {
        let ring = match &self.ring {
            Some(r) => parse_ring(r)?,
            None => default_ring,
        };
        InvariantElement::from_keys(datum, ring, &self.weights)
    }

    pub fn from_element(e: &InvariantElement) -> Self {
        Self { ring: Some(e.ring().to_string()), weights: e.to_keys() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeEntry {
    pub dim: usize,
    /// Generator matrix; omitted means the trivial action.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TateFile {
    pub p: u32,
    pub degrees: BTreeMap<String, DegreeEntry>,
    #[serde(default)]
    pub differentials: BTreeMap<String, Vec<Vec<i64>>>,
}

fn degree(key: &str) -> Result<i64> {
    key.trim().parse().map_err(|_| Error::Malformed(format!("degree key {key:?} is not an integer")))
}

fn matrix(p: u32, rows: &[Vec<i64>], shape: (usize, usize), what: &str) -> Result<FpMatrix> {
    if shape.0 == 0 || shape.1 == 0 {
        return Ok(FpMatrix::zeros(p, shape.0, shape.1));
    }
    if rows.len() != shape.0 || rows.iter().any(|r| r.len() != shape.1) {
        return Err(Error::Malformed(format!("{what} must be {}×{}", shape.0, shape.1)));
    }
    Ok(FpMatrix::from_rows(p, rows))
}

impl TateFile {
    pub fn build(&self) -> Result<TateComplex> {
        let p = self.p;
        let mut modules = BTreeMap::new();
        for (k, e) in &self.degrees {
            let n = degree(k)?;
            let action = match &e.action {
                Some(rows) => matrix(p, rows, (e.dim, e.dim), &format!("action in degree {n}"))?,
                None => FpMatrix::identity(p, e.dim),
            };
            modules.insert(n, Module { action });
        }
        let dim = |n: i64| modules.get(&n).map_or(0, Module::dim);
        let mut diffs = BTreeMap::new();
        for (k, rows) in &self.differentials {
            let n = degree(k)?;
            diffs.insert(n, matrix(p, rows, (dim(n + 1), dim(n)), &format!("differential {n}"))?);
        }
        TateComplex::new(p, modules, diffs)
    }

    pub fn from_complex(c: &TateComplex) -> Self {
        let degrees = c
            .modules()
            .iter()
            .map(|(n, m)| (n.to_string(), DegreeEntry { dim: m.dim(), action: Some(m.action.to_rows()) }))
            .collect();
        let differentials = c
            .modules()
            .keys()
            .filter(|&&n| c.dim(n + 1) > 0 && !c.differential(n).is_zero())
            .map(|&n| (n.to_string(), c.differential(n).to_rows()))
            .collect();
        Self { p: c.p(), degrees, differentials }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_boundary_round_trip() {
        let text = r#"{"simplices": [["1","2"],["2","3"],["3","4"],["1","4"]]}"#;
        let base = Arc::new(parse::<ComplexFile>(text, "complex").unwrap().build().unwrap());
        let act: ActionFile = parse(r#"{"generator": {"1":"1","2":"4","3":"3","4":"2"}, "order": 2}"#, "action").unwrap();
        let g = act.build(base.clone()).unwrap();
        let out1 = to_json(&ComplexFile::from_complex(&base)) + &to_json(&ActionFile::from_action(&g));
        let base2 = Arc::new(parse::<ComplexFile>(&to_json(&ComplexFile::from_complex(&base)), "c").unwrap().build().unwrap());
        let g2 = ActionFile::from_action(&g).build(base2.clone()).unwrap();
        let out2 = to_json(&ComplexFile::from_complex(&base2)) + &to_json(&ActionFile::from_action(&g2));
        assert_eq!(out1, out2);
    }

    #[test]
    fn function_with_bad_key_names_it() {
        let base = Arc::new(Complex::from_maximal(&[vec!["a", "b"]]).unwrap());
        let f: FunctionFile = parse(r#"{"ring":"Z","coefficients":{"a,c":1}}"#, "function").unwrap();
        let err = f.build(base).unwrap_err().to_string();
        assert!(err.contains("a,c"), "{err}");
    }

    #[test]
    fn f4_datum_round_trip() {
        let f: RootDatumFile = parse(r#"{"type":"F","rank":4,"isogeny":"sc"}"#, "datum").unwrap();
        let rd = f.build().unwrap();
        let again: RootDatumFile = parse(&to_json(&f), "datum").unwrap();
        assert_eq!(again.build().unwrap().cartan(), rd.cartan());
        assert_eq!(rd.cartan()[2], vec![0, -2, 2, -1]);
    }

    #[test]
    fn tate_file_round_trip() {
        let text = r#"{"p":3,"degrees":{"0":{"dim":3,"action":[[0,0,1],[1,0,0],[0,1,0]]},"1":{"dim":1}},"differentials":{"0":[[1,1,1]]}}"#;
        let c = parse::<TateFile>(text, "tate").unwrap().build().unwrap();
        let back = TateFile::from_complex(&c).build().unwrap();
        assert_eq!(back, c);
        assert!(parse::<TateFile>(r#"{"p":3,"degrees":{"0":{"dim":2,"action":[[1]]}}}"#, "t").unwrap().build().is_err());
    }
}
