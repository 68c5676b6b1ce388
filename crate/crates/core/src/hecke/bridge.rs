use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Ring;
use crate::simplicial::Complex;

use super::{check_invariance, convolve, FiniteGroup, FiniteGroupAction, HeckeElement};

/// Identification of invariant kernels on the discrete complex `G` (with
/// left translation) and the group algebra `k[G]`.
#[derive(Clone, Debug)]
pub struct GroupRingBridge {
    group: FiniteGroup,
    ring: Ring,
    carrier: Arc<Complex>,
    action: FiniteGroupAction,
}

/// Outcome of the exhaustive verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BridgeReport {
    pub order: usize,
    pub products_checked: usize,
    pub unit_preserved: bool,
    pub mutually_inverse: bool,
    pub multiplicative: bool,
    /// The `f ↦ Σ f(g, 1) g` normalization reverses products.
    pub inverse_normalization_antimultiplicative: bool,
}

impl BridgeReport {
    pub fn passed(&self) -> bool {
        self.unit_preserved && self.mutually_inverse && self.multiplicative && self.inverse_normalization_antimultiplicative
    }
}

pub fn group_ring_bridge(group: &FiniteGroup, ring: Ring) -> Result<GroupRingBridge> {
    GroupRingBridge::new(group.clone(), ring)
}

impl GroupRingBridge {
    pub fn new(group: FiniteGroup, ring: Ring) -> Result<Self> {
        let n = group.order();
        let faces: Vec<Vec<String>> = (0..n).map(|g| vec![g.to_string()]).collect();
        let carrier = Arc::new(Complex::from_maximal(&faces)?);
        let gens = group.left_regular();
        let id: Vec<usize> = (0..n).collect();
        let action = FiniteGroupAction::new(carrier.clone(), &gens, id)?;
        Ok(Self { group, ring, carrier, action })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn carrier(&self) -> &Arc<Complex> {
        &self.carrier
    }

    pub fn action(&self) -> &FiniteGroupAction {
        &self.action
    }

    /// `f ↦ Σ_g f(1, g) g`.
    pub fn to_group_ring(&self, f: &HeckeElement) -> Vec<i64> {
        let e = self.group.identity();
        (0..self.group.order()).map(|g| f.get(e, g)).collect()
    }

    /// The second normalization `f ↦ Σ_g f(g, 1) g`.
    pub fn to_group_ring_inverse(&self, f: &HeckeElement) -> Vec<i64> {
        let e = self.group.identity();
        (0..self.group.order()).map(|g| f.get(g, e)).collect()
    }

    /// `Σ a_g g ↦ ((x, y) ↦ a_{x⁻¹ y})`.
    pub fn from_group_ring(&self, a: &[i64]) -> HeckeElement {
        let n = self.group.order();
        let mut f = HeckeElement::zero(self.carrier.clone(), self.ring);
        for x in 0..n {
            for y in 0..n {
                f.set(x, y, a[self.group.mul(self.group.inv(x), y)]);
            }
        }
        f
    }

    pub fn group_algebra_mul(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let n = self.group.order();
        let mut out = vec![0; n];
        for g in 0..n {
            for h in 0..n {
                let k = self.group.mul(g, h);
                out[k] = self.ring.add(out[k], self.ring.mul(a[g], b[h]));
            }
        }
        out
    }

    fn basis(&self, g: usize) -> Vec<i64> {
        let mut a = vec![0; self.group.order()];
        a[g] = 1;
        a
    }

    /// Checks bijectivity, unit, and multiplicativity on every pair of basis
    /// elements (which span, so this is exhaustive).
    pub fn verify(&self) -> Result<BridgeReport> {
        let n = self.group.order();
        let kernels: Vec<HeckeElement> = (0..n).map(|g| self.from_group_ring(&self.basis(g))).collect();
        for k in &kernels {
            if !check_invariance(k, &self.action) {
                return Err(Error::Internal("image of a group element is not invariant".into()));
            }
        }
        let mutually_inverse = (0..n).all(|g| self.to_group_ring(&kernels[g]) == self.basis(g))
            && kernels.iter().all(|k| self.from_group_ring(&self.to_group_ring(k)) == *k);

        let mut diagonal = HeckeElement::zero(self.carrier.clone(), self.ring);
        for x in 0..n {
            diagonal.set(x, x, 1);
        }
        let unit_preserved = self.to_group_ring(&diagonal) == self.basis(self.group.identity());

        let mut multiplicative = true;
        let mut anti = true;
        for g in 0..n {
            for h in 0..n {
                let prod = convolve(&kernels[g], &kernels[h])?;
                let expected = self.group_algebra_mul(&self.basis(g), &self.basis(h));
                multiplicative &= self.to_group_ring(&prod) == expected;
                let psi = |f: &HeckeElement| self.to_group_ring_inverse(f);
                anti &= psi(&prod) == self.group_algebra_mul(&psi(&kernels[h]), &psi(&kernels[g]));
            }
        }
        Ok(BridgeReport {
            order: n,
            products_checked: n * n,
            unit_preserved,
            mutually_inverse,
            multiplicative,
            inverse_normalization_antimultiplicative: anti,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_expansion() {
        let b = GroupRingBridge::new(FiniteGroup::cyclic(2), Ring::Integers).unwrap();
        let (al, be, al2, be2) = (3, 5, -2, 7);
        let f = b.from_group_ring(&[al, be]);
        let g = b.from_group_ring(&[al2, be2]);
        assert_eq!(f.get(0, 0), al);
        assert_eq!(f.get(0, 1), be);
        let prod = b.to_group_ring(&convolve(&f, &g).unwrap());
        assert_eq!(prod, vec![al * al2 + be * be2, al * be2 + be * al2]);
    }

    #[test]
    fn all_small_groups_pass() {
        for (name, g) in FiniteGroup::small_groups() {
            let report = GroupRingBridge::new(g, Ring::Integers).unwrap().verify().unwrap();
            assert!(report.passed(), "{name}: {report:?}");
        }
    }
}
