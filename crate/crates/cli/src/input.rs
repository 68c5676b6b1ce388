use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::Deserialize;
use smith_core::io::{self, ActionFile, ComplexFile, FunctionFile, KernelFile};
use smith_core::scalar::Ring;
use smith_core::simplicial::{CFun, Complex, GComplex, SimplicialMap};

use crate::output::Failure;
use crate::Global;

pub fn read<T: DeserializeOwned>(path: &Path, what: &str) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    Ok(io::parse(&text, &format!("{what} {}", path.display()))?)
}

pub fn complex(path: &Path) -> Result<Arc<Complex>, Failure> {
    Ok(Arc::new(read::<ComplexFile>(path, "complex")?.build()?))
}

pub fn action(path: &Path, base: Arc<Complex>) -> Result<GComplex, Failure> {
    Ok(read::<ActionFile>(path, "action")?.build(base)?)
}

pub fn ring(g: &Global) -> Result<Option<Ring>, Failure> {
    g.ring.as_deref().map(io::parse_ring).transpose().map_err(Failure::from)
}

/// Reduces an integral input to the requested ring; other mismatches are
/// errors.
pub fn function(path: &Path, carrier: Arc<Complex>, g: &Global) -> Result<CFun, Failure> {
    let f = read::<FunctionFile>(path, "function")?.build(carrier)?;
    match ring(g)? {
        None => Ok(f),
        Some(r) if r == f.ring() => Ok(f),
        Some(Ring::Prime(p)) => Ok(f.reduce(p)?),
        Some(r) => Err(Failure::Input(format!("function is over {}, cannot lift to {r}", f.ring()))),
    }
}

pub fn kernel(path: &Path, carrier: Arc<Complex>, g: &Global) -> Result<smith_core::hecke::HeckeElement, Failure> {
    let k = read::<KernelFile>(path, "kernel")?.build(carrier)?;
    match ring(g)? {
        None => Ok(k),
        Some(r) if r == k.ring() => Ok(k),
        Some(Ring::Prime(p)) => Ok(k.reduce(p)?),
        Some(r) => Err(Failure::Input(format!("kernel is over {}, cannot lift to {r}", k.ring()))),
    }
}

/// A simplicial map as a vertex assignment.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub assignment: BTreeMap<String, String>,
}

pub fn map(path: &Path, source: Arc<Complex>, target: Arc<Complex>) -> Result<SimplicialMap, Failure> {
    let m: MapFile = read(path, "map")?;
    Ok(SimplicialMap::new(source, target, &m.assignment)?)
}

/// Parses `1,-2,0` into integers.
pub fn integers(s: &str, what: &str) -> Result<Vec<i64>, Failure> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| Failure::Input(format!("{what}: {x:?} is not an integer"))))
        .collect()
}

pub fn indices(s: &str, what: &str) -> Result<Vec<usize>, Failure> {
    integers(s, what)?
        .into_iter()
        .map(|x| usize::try_from(x).map_err(|_| Failure::Input(format!("{what}: {x} is negative"))))
        .collect()
}
