//! Hecke algebras of invariant kernels on `X × X` under Euler-signed
//! convolution, and the equivariant Smith homomorphism.

mod bridge;
mod group;

use std::collections::BTreeMap;
use std::sync::Arc;

pub use bridge::{group_ring_bridge, BridgeReport, GroupRingBridge};
pub use group::{closure, compose, invert, FiniteGroup, FiniteGroupAction};

use crate::error::{Error, Result};
use crate::scalar::Ring;
use crate::simplicial::{Complex, SimplicialMap};

/// A kernel on pairs of open simplices; dense `n × n`, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeElement {
    carrier: Arc<Complex>,
    ring: Ring,
    kernel: Vec<i64>,
}

impl HeckeElement {
    pub fn zero(carrier: Arc<Complex>, ring: Ring) -> Self {
        let n = carrier.len();
        Self { carrier, ring, kernel: vec![0; n * n] }
    }

    pub fn constant(carrier: Arc<Complex>, ring: Ring, c: i64) -> Self {
        let n = carrier.len();
        Self { carrier, ring, kernel: vec![ring.reduce(c); n * n] }
    }

    pub fn from_rows(carrier: Arc<Complex>, ring: Ring, rows: &[Vec<i64>]) -> Result<Self> {
        let n = carrier.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Malformed(format!("kernel must be {n} x {n}")));
        }
        let kernel = rows.iter().flatten().map(|&v| ring.reduce(v)).collect();
        Ok(Self { carrier, ring, kernel })
    }

    /// Parses `"σ|τ"` keys; absent pairs are 0.
    pub fn from_entries(carrier: Arc<Complex>, ring: Ring, entries: &BTreeMap<String, i64>) -> Result<Self> {
        let mut f = Self::zero(carrier, ring);
        for (key, &v) in entries {
            let (a, b) = key
                .split_once('|')
                .ok_or_else(|| Error::Malformed(format!("kernel key {key:?} must have the form \"σ|τ\"")))?;
            let find = |k: &str| {
                f.carrier
                    .find_key(k)
                    .ok_or_else(|| Error::Malformed(format!("kernel key {key:?}: {k:?} is not a simplex")))
            };
            let (s, t) = (find(a)?, find(b)?);
            f.set(s, t, ring.add(f.get(s, t), v));
        }
        Ok(f)
    }

    pub fn to_entries(&self) -> BTreeMap<String, i64> {
        let n = self.size();
        let mut out = BTreeMap::new();
        for s in 0..n {
            for t in 0..n {
                let v = self.get(s, t);
                if v != 0 {
                    out.insert(format!("{}|{}", self.carrier.simplex_key(s), self.carrier.simplex_key(t)), v);
                }
            }
        }
        out
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.kernel.chunks(self.size().max(1)).map(<[i64]>::to_vec).collect()
    }

    pub fn carrier(&self) -> &Arc<Complex> {
        &self.carrier
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn size(&self) -> usize {
        self.carrier.len()
    }

    pub fn get(&self, s: usize, t: usize) -> i64 {
        self.kernel[s * self.size() + t]
    }

    pub fn set(&mut self, s: usize, t: usize, v: i64) {
        let n = self.size();
        self.kernel[s * n + t] = self.ring.reduce(v);
    }

    pub fn is_zero(&self) -> bool {
        self.kernel.iter().all(|&v| v == 0)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let kernel = self.kernel.iter().zip(&other.kernel).map(|(&a, &b)| self.ring.add(a, b)).collect();
        Ok(Self { carrier: self.carrier.clone(), ring: self.ring, kernel })
    }

    pub fn reduce(&self, p: u32) -> Result<Self> {
        let ring = Ring::prime_field(p)?;
        match self.ring {
            Ring::Integers => {
                let kernel = self.kernel.iter().map(|&v| ring.reduce(v)).collect();
                Ok(Self { carrier: self.carrier.clone(), ring, kernel })
            }
            Ring::Prime(q) if q == p => Ok(self.clone()),
            Ring::Prime(q) => Err(Error::RingMismatch(format!("cannot reduce an F{q} kernel mod {p}"))),
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring, other.ring)));
        }
        if !(Arc::ptr_eq(&self.carrier, &other.carrier) || *self.carrier == *other.carrier) {
            return Err(Error::Malformed("kernels live on different complexes".into()));
        }
        Ok(())
    }
}

/// `(f1 ∗ f2)(σ, τ) = Σ_ρ (-1)^{dim ρ} f1(σ, ρ) f2(ρ, τ)`.
pub fn convolve(f1: &HeckeElement, f2: &HeckeElement) -> Result<HeckeElement> {
    f1.check_compatible(f2)?;
    let ring = f1.ring;
    let n = f1.size();
    let mut out = HeckeElement::zero(f1.carrier.clone(), ring);
    for r in 0..n {
        let sign = ring.sign(f1.carrier.dim_of(r));
        for s in 0..n {
            let a = f1.get(s, r);
            if a == 0 {
                continue;
            }
            let a = ring.mul(a, sign);
            for t in 0..n {
                let b = f2.get(r, t);
                if b != 0 {
                    let idx = s * n + t;
                    out.kernel[idx] = ring.add(out.kernel[idx], ring.mul(a, b));
                }
            }
        }
    }
    Ok(out)
}

fn invariant_under(f: &HeckeElement, perms: &[&[usize]]) -> Option<(usize, usize)> {
    let n = f.size();
    for perm in perms {
        for s in 0..n {
            for t in 0..n {
                if f.get(perm[s], perm[t]) != f.get(s, t) {
                    return Some((s, t));
                }
            }
        }
    }
    None
}

/// True iff `f(gσ, gτ) = f(σ, τ)` for every group element.
pub fn check_invariance(f: &HeckeElement, act: &FiniteGroupAction) -> bool {
    let perms: Vec<&[usize]> = (0..act.elements().len()).map(|k| act.simplex_perm(k)).collect();
    invariant_under(f, &perms).is_none()
}

/// `Σ_g f(gσ, gτ)`, an invariant kernel.
pub fn orbit_sum(f: &HeckeElement, act: &FiniteGroupAction) -> HeckeElement {
    let n = f.size();
    let ring = f.ring;
    let mut out = HeckeElement::zero(f.carrier.clone(), ring);
    for k in 0..act.elements().len() {
        let perm = act.simplex_perm(k);
        for s in 0..n {
            for t in 0..n {
                let idx = s * n + t;
                out.kernel[idx] = ring.add(out.kernel[idx], f.get(perm[s], perm[t]));
            }
        }
    }
    out
}

/// The restriction of a `G`-invariant `F_p` kernel to pairs of `ϖ`-fixed
/// simplices. The result is checked to be invariant under the centralizer
/// and the normalizer of `ϖ`, acting on the fixed subcomplex.
pub fn smith_hecke(f: &HeckeElement, act: &FiniteGroupAction) -> Result<HeckeElement> {
    let p = act.prime();
    match f.ring {
        Ring::Prime(q) if p == 0 || q == p => {}
        other => {
            return Err(Error::RingMismatch(format!("Smith operator needs F{p} coefficients, got {other}")))
        }
    }
    if let Some((s, t)) = {
        let perms: Vec<&[usize]> = (0..act.elements().len()).map(|k| act.simplex_perm(k)).collect();
        invariant_under(f, &perms)
    } {
        return Err(Error::NonInvariant(format!(
            "kernel differs from its translate at {}|{}",
            f.carrier.simplex_key(s),
            f.carrier.simplex_key(t)
        )));
    }
    let varpi = act.varpi_action()?;
    let fixed = varpi.fixed_subcomplex()?;
    let inc = SimplicialMap::inclusion(fixed.clone(), f.carrier.clone())?;
    let m = fixed.len();
    let mut out = HeckeElement::zero(fixed.clone(), f.ring);
    for s in 0..m {
        for t in 0..m {
            out.set(s, t, f.get(inc.image(s), inc.image(t)));
        }
    }

    let induced = induced_on_fixed(act, &fixed, &inc, &act.normalizer())?;
    let perms: Vec<&[usize]> = induced.iter().map(Vec::as_slice).collect();
    if let Some((s, t)) = invariant_under(&out, &perms) {
        return Err(Error::Internal(format!(
            "Smith image is not normalizer-invariant at {}|{}",
            fixed.simplex_key(s),
            fixed.simplex_key(t)
        )));
    }
    Ok(out)
}

/// Simplex permutations of the fixed subcomplex induced by the given group
/// elements (which must normalize `⟨ϖ⟩`).
pub fn induced_on_fixed(
    act: &FiniteGroupAction,
    fixed: &Arc<Complex>,
    inc: &SimplicialMap,
    elements: &[usize],
) -> Result<Vec<Vec<usize>>> {
    let back: BTreeMap<usize, usize> = (0..fixed.len()).map(|s| (inc.image(s), s)).collect();
    elements
        .iter()
        .map(|&k| {
            let perm = act.simplex_perm(k);
            (0..fixed.len())
                .map(|s| {
                    back.get(&perm[inc.image(s)]).copied().ok_or_else(|| {
                        Error::Internal("a normalizing element moved a fixed simplex off the fixed locus".into())
                    })
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{euler_integral, CFun};

    fn arc(faces: &[&[&str]]) -> Arc<Complex> {
        let v: Vec<Vec<&str>> = faces.iter().map(|f| f.to_vec()).collect();
        Arc::new(Complex::from_maximal(&v).unwrap())
    }

    #[test]
    fn discrete_convolution_is_matrix_product() {
        let c = arc(&[&["x"], &["y"]]);
        let f1 = HeckeElement::from_rows(c.clone(), Ring::Integers, &[vec![1, 2], vec![0, 1]]).unwrap();
        let f2 = HeckeElement::from_rows(c.clone(), Ring::Integers, &[vec![1, 0], vec![3, 1]]).unwrap();
        assert_eq!(convolve(&f1, &f2).unwrap().to_rows(), vec![vec![7, 2], vec![3, 1]]);
        let z = HeckeElement::zero(c, Ring::Integers);
        assert!(convolve(&f1, &z).unwrap().is_zero());
    }

    #[test]
    fn constant_kernel_on_circle_squares_to_zero() {
        let c = arc(&[&["a", "b"], &["b", "c"], &["c", "a"]]);
        let one = HeckeElement::constant(c.clone(), Ring::Integers, 1);
        let chi = euler_integral(&CFun::constant(c, Ring::Integers, 1)).value;
        let sq = convolve(&one, &one).unwrap();
        assert!(sq.kernel.iter().all(|&v| v == chi));
        assert_eq!(chi, 0);
    }

    #[test]
    fn smith_on_square_reflection() {
        let c = arc(&[&["1", "2"], &["2", "3"], &["3", "4"], &["4", "1"]]);
        let refl = vec![0, 3, 2, 1];
        let act = FiniteGroupAction::new(c.clone(), &[refl.clone()], refl).unwrap();
        let f = HeckeElement::constant(c, Ring::Prime(2), 1);
        let s = smith_hecke(&f, &act).unwrap();
        assert_eq!(s.to_rows(), vec![vec![1, 1], vec![1, 1]]);
        let left = smith_hecke(&convolve(&f, &f).unwrap(), &act).unwrap();
        let right = convolve(&s, &s).unwrap();
        assert!(left.is_zero());
        assert_eq!(left, right);
    }

    #[test]
    fn invariance_checks() {
        let c = arc(&[&["1", "2"], &["2", "3"], &["3", "4"], &["4", "1"]]);
        let rot = vec![1, 2, 3, 0];
        let act = FiniteGroupAction::new(c.clone(), &[rot.clone()], vec![2, 3, 0, 1]).unwrap();
        assert!(check_invariance(&HeckeElement::constant(c.clone(), Ring::Integers, 5), &act));
        let mut f = HeckeElement::zero(c.clone(), Ring::Integers);
        f.set(0, 5, 1);
        assert!(!check_invariance(&f, &act));
        assert!(check_invariance(&orbit_sum(&f, &act), &act));
        assert!(smith_hecke(&f.reduce(2).unwrap(), &act).is_err());
        // free ϖ: the Smith image lives on the empty complex
        let s = smith_hecke(&orbit_sum(&f, &act).reduce(2).unwrap(), &act).unwrap();
        assert_eq!(s.size(), 0);
    }
}
