use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::FpMatrix;
use crate::simplicial::GComplex;

use super::cohomology::is_perfect;
use super::complex::{Module, TateComplex};

/// Sign of the permutation sorting `v`.
fn sort_sign(v: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Simplicial cochains of the base with the action of the order-`p`
/// subgroup, in degrees `0..=dim`.
pub fn equivariant_cochains(g: &GComplex) -> Result<TateComplex> {
    g.require_regular()?;
    let h = g.prime_subgroup();
    let p = h.prime();
    let base = h.base();
    let Some(top) = base.dimension() else {
        return Ok(TateComplex::zero(p));
    };
    // simplices of each dimension with their position in that degree
    let mut by_dim: Vec<Vec<usize>> = vec![Vec::new(); top + 1];
    let mut pos = vec![0; base.len()];
    for i in 0..base.len() {
        let k = base.dim_of(i);
        pos[i] = by_dim[k].len();
        by_dim[k].push(i);
    }
    let mut modules = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for (k, cells) in by_dim.iter().enumerate() {
        // (g f)(σ) = f(g⁻¹σ): the basis cochain of σ goes to ± that of gσ
        let mut act = FpMatrix::zeros(p, cells.len(), cells.len());
        for &s in cells {
            let t = h.act(1, s);
            let image: Vec<usize> = base.simplex(s).iter().map(|&v| h.act_vertex(1, v)).collect();
            let sign = sort_sign(&image).rem_euclid(i64::from(p)) as u32;
            act.set(pos[t], pos[s], sign);
        }
        modules.insert(k as i64, Module { action: act });
        if k < top {
            // (δf)(τ) = Σ_i (−1)^i f(τ without its i-th vertex)
            let mut d = FpMatrix::zeros(p, by_dim[k + 1].len(), cells.len());
            for &t in &by_dim[k + 1] {
                let verts = base.simplex(t);
                for i in 0..verts.len() {
                    let face: Vec<usize> = verts.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect();
                    let s = base.find(&face).expect("faces are simplices");
                    let sign = if i % 2 == 0 { 1 } else { p - 1 };
                    d.set(pos[t], pos[s], sign);
                }
            }
            diffs.insert(k as i64, d);
        }
    }
    TateComplex::new(p, modules, diffs).map_err(|e| Error::Internal(format!("cochain complex is invalid: {e}")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinkVerdict {
    Perfect,
    NotPerfect,
    /// The link meets the fixed locus, so its action is not free.
    NotApplicable,
}

/// For a fixed vertex `v`, checks that the cochains of its link are
/// perfect; certified only when the link avoids the fixed subcomplex.
pub fn link_cone_perfection(g: &GComplex, v: &str) -> Result<LinkVerdict> {
    g.require_regular()?;
    let h = g.prime_subgroup();
    let base = h.base();
    let vi = base.vertex(v).ok_or_else(|| Error::Malformed(format!("no vertex {v:?}")))?;
    if h.act_vertex(1, vi) != vi {
        return Err(Error::InvalidAction(format!("vertex {v} is not fixed")));
    }
    let link = Arc::new(base.link(vi));
    if link.labels().iter().any(|l| {
        let w = base.vertex(l).expect("link vertices are vertices");
        h.act_vertex(1, w) == w
    }) {
        return Ok(LinkVerdict::NotApplicable);
    }
    if link.is_empty() {
        return Ok(LinkVerdict::Perfect);
    }
    let action = h.restrict_to(link)?;
    Ok(if is_perfect(&equivariant_cochains(&action)?) { LinkVerdict::Perfect } else { LinkVerdict::NotPerfect })
}
