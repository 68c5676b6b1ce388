//! Conic constructible functions on complete simplicial fans, their
//! Fourier-Sato transform, and the Smith operator for coordinate
//! permutation actions.

mod fan;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

pub use fan::{coordinates, dot, ray_key, Fan, MAX_DIM, Q};

use crate::error::{Error, Result};
use crate::scalar::{is_prime, Ring, Scalar};

/// The region of relint `C` being measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HalfSpace {
    /// `ξ < 1`
    BelowOne,
    /// `ξ < 0`
    Negative,
    /// `ξ = 0`
    Zero,
    /// `ξ = 1`
    One,
}

impl std::str::FromStr for HalfSpace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "<1" | "lt1" => Ok(HalfSpace::BelowOne),
            "<0" | "lt0" => Ok(HalfSpace::Negative),
            "=0" | "eq0" => Ok(HalfSpace::Zero),
            "=1" | "eq1" => Ok(HalfSpace::One),
            other => Err(Error::Malformed(format!("unknown region {other:?}; expected <1, <0, =0 or =1"))),
        }
    }
}

fn sign(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `χ_c(relint C ∩ region)` for cone `i` of `fan`.
///
/// Writing points of relint `C` as `Σ λ_j r_j` with all `λ_j > 0`, the
/// regions `ξ < 0` and `ξ = 0`, `ξ = 1` are relatively open convex sets
/// whose dimension is read off from the signs of `ξ(r_j)`; the region
/// `ξ < 1` is the union of `ξ ≤ 0` with `(0, 1) × {ξ = 1}`.
pub fn halfspace_chi(fan: &Fan, i: usize, xi: &[i64], mode: HalfSpace) -> Result<i64> {
    if xi.len() != fan.dim() {
        return Err(Error::Malformed(format!("covector must have {} coordinates", fan.dim())));
    }
    let k = fan.cone_dim(i);
    let signs: Vec<i128> = fan.cone_rays(i).iter().map(|r| dot(xi, r).signum()).collect();
    let pos = signs.contains(&1);
    let neg = signs.contains(&-1);
    let negative = if neg { sign(k) } else { 0 };
    let zero = if !pos && !neg {
        sign(k)
    } else if pos && neg {
        sign(k + 1)
    } else {
        0
    };
    let one = if pos { sign(k + 1) } else { 0 };
    Ok(match mode {
        HalfSpace::Negative => negative,
        HalfSpace::Zero => zero,
        HalfSpace::One => one,
        // χ_c((0,1)) = -1
        HalfSpace::BelowOne => negative + zero - one,
    })
}

/// `χ_c` of the closed cone `C` intersected with the region: the sum over
/// all faces of `C`.
pub fn halfspace_chi_closed(fan: &Fan, i: usize, xi: &[i64], mode: HalfSpace) -> Result<i64> {
    fan.faces(i).into_iter().map(|f| halfspace_chi(fan, f, xi, mode)).sum()
}

/// A conic constructible function: one value per relatively open cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicCFun {
    fan: Arc<Fan>,
    ring: Ring,
    values: Vec<i64>,
}

impl ConicCFun {
    pub fn zero(fan: Arc<Fan>, ring: Ring) -> Self {
        let n = fan.len();
        Self { fan, ring, values: vec![0; n] }
    }

    pub fn constant(fan: Arc<Fan>, ring: Ring, c: i64) -> Self {
        let n = fan.len();
        Self { fan, ring, values: vec![ring.reduce(c); n] }
    }

    pub fn from_values(fan: Arc<Fan>, ring: Ring, values: Vec<i64>) -> Self {
        assert_eq!(values.len(), fan.len(), "one value per cone");
        let values = values.into_iter().map(|v| ring.reduce(v)).collect();
        Self { fan, ring, values }
    }

    /// Indicator of the closed cone `i` (all of its faces).
    pub fn closed_cone(fan: Arc<Fan>, ring: Ring, i: usize) -> Self {
        let mut f = Self::zero(fan.clone(), ring);
        for face in fan.faces(i) {
            f.values[face] = ring.reduce(1);
        }
        f
    }

    pub fn from_keys(fan: Arc<Fan>, ring: Ring, values: &BTreeMap<String, i64>) -> Result<Self> {
        let mut f = Self::zero(fan, ring);
        for (key, &v) in values {
            let i = f.fan.find_key(key).ok_or_else(|| Error::Malformed(format!("{key:?} is not a cone of the fan")))?;
            f.values[i] = ring.add(f.values[i], v);
        }
        Ok(f)
    }

    pub fn to_keys(&self) -> BTreeMap<String, i64> {
        (0..self.fan.len())
            .filter(|&i| self.values[i] != 0)
            .map(|i| (self.fan.cone_key(i), self.values[i]))
            .collect()
    }

    pub fn fan(&self) -> &Arc<Fan> {
        &self.fan
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn get(&self, i: usize) -> i64 {
        self.values[i]
    }

    /// Value at a point.
    pub fn eval(&self, x: &[Q]) -> i64 {
        self.values[self.fan.locate(x)]
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring || *self.fan != *other.fan {
            return Err(Error::RingMismatch("functions differ in ring or fan".into()));
        }
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| self.ring.add(a, b)).collect();
        Ok(Self { fan: self.fan.clone(), ring: self.ring, values })
    }

    pub fn scale(&self, c: i64) -> Self {
        let values = self.values.iter().map(|&a| self.ring.mul(a, self.ring.reduce(c))).collect();
        Self { fan: self.fan.clone(), ring: self.ring, values }
    }

    pub fn reduce(&self, p: u32) -> Result<Self> {
        let ring = Ring::prime_field(p)?;
        match self.ring {
            Ring::Integers => Ok(Self::from_values(self.fan.clone(), ring, self.values.clone())),
            Ring::Prime(q) if q == p => Ok(self.clone()),
            Ring::Prime(q) => Err(Error::RingMismatch(format!("cannot reduce an F{q} function mod {p}"))),
        }
    }
}

/// `FT(f)(ξ) = ∫_{ξ < 1} f`.
pub fn ft_value(f: &ConicCFun, xi: &[i64]) -> Result<Scalar> {
    let ring = f.ring;
    let mut total = 0;
    for i in 0..f.fan.len() {
        let v = f.values[i];
        if v != 0 {
            total = ring.add(total, ring.mul(v, halfspace_chi(&f.fan, i, xi, HalfSpace::BelowOne)?));
        }
    }
    Ok(Scalar::new(ring, total))
}

/// The transform as a conic function on `dual_fan`, sampled at several
/// interior points of every cone; disagreement means the fan is too coarse.
pub fn ft(f: &ConicCFun, dual_fan: Arc<Fan>) -> Result<ConicCFun> {
    if dual_fan.dim() != f.fan.dim() {
        return Err(Error::Malformed("dual fan has the wrong dimension".into()));
    }
    let mut values = Vec::with_capacity(dual_fan.len());
    for i in 0..dual_fan.len() {
        let samples = sample_points(&dual_fan, i);
        let first = ft_value(f, &samples[0])?.value;
        for s in &samples[1..] {
            if ft_value(f, s)?.value != first {
                return Err(Error::RefinementNeeded { cone: dual_fan.cone_key(i) });
            }
        }
        values.push(first);
    }
    Ok(ConicCFun::from_values(dual_fan, f.ring, values))
}

/// Interior sample points of a cone: the ray sum and its tilts toward each
/// ray.
fn sample_points(fan: &Fan, i: usize) -> Vec<Vec<i64>> {
    let base = fan.interior_point(i);
    let mut out = vec![base.clone()];
    for r in fan.cone_rays(i) {
        out.push(base.iter().zip(r).map(|(b, x)| 2 * b + x).collect());
    }
    out
}

/// The cycles of a coordinate permutation.
pub fn cycles(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut c = vec![start];
        seen[start] = true;
        let mut j = perm[start];
        while j != start {
            seen[j] = true;
            c.push(j);
            j = perm[j];
        }
        out.push(c);
    }
    out
}

/// Order of a permutation (lcm of cycle lengths).
pub fn perm_order(perm: &[usize]) -> u64 {
    use num_integer::Integer;
    cycles(perm).iter().fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
}

/// Averaged lift of a covector `η` on `V^ϖ` (coordinates with respect to the
/// cycle indicator basis) to a `ϖ`-invariant covector on `V`:
/// `ξ̃(v) = (1/p) η(Σ_g g v)`, computed over `Q`.
pub fn avg_lift(perm: &[usize], eta: &[i64]) -> Result<Vec<Q>> {
    let cs = cycles(perm);
    if eta.len() != cs.len() {
        return Err(Error::Malformed(format!("covector on the fixed subspace needs {} coordinates", cs.len())));
    }
    let p = perm_order(perm) as i128;
    let mut out = vec![Q::zero(); perm.len()];
    for (c, &e) in cs.iter().zip(eta) {
        // Σ_g g e_k = (p / |c|) · 1_c for k in c
        let value = Q::new(e as i128 * (p / c.len() as i128), p);
        for &k in c {
            out[k] = value;
        }
    }
    Ok(out)
}

/// Clears denominators of a rational covector by a positive factor.
pub fn integer_covector(xi: &[Q]) -> Vec<i64> {
    use num_integer::Integer;
    let l = xi.iter().fold(1i128, |acc, q| acc.lcm(q.denom()));
    xi.iter().map(|q| (q.numer() * (l / q.denom())) as i64).collect()
}

/// The line fan `{0, (0,∞), (-∞,0)}` of a one-dimensional fixed subspace.
pub fn line_fan() -> Fan {
    Fan::new(1, &[vec![vec![1]], vec![vec![-1]]]).expect("the line fan is complete")
}

/// The Smith operator for a coordinate permutation of prime order: the
/// restriction of an invariant function to `V^ϖ`, presented on the line fan
/// when `V^ϖ` is a line (coordinate `t` along `Σ e_i`), or unchanged when the
/// permutation is trivial.
pub fn smith_conic(f: &ConicCFun, perm: &[usize]) -> Result<ConicCFun> {
    let fan = &f.fan;
    if perm.len() != fan.dim() {
        return Err(Error::Malformed("permutation size differs from the dimension".into()));
    }
    let p = perm_order(perm);
    let cs = cycles(perm);
    if p > 1 && !is_prime(p) {
        return Err(Error::InvalidAction(format!("permutation has non-prime order {p}")));
    }
    match f.ring {
        Ring::Prime(q) if p == 1 || q as u64 == p => {}
        other => return Err(Error::RingMismatch(format!("Smith operator needs F{p} coefficients, got {other}"))),
    }
    let moved = fan
        .permuted_cones(perm)
        .ok_or_else(|| Error::InvalidFan("fan is not invariant under the permutation".into()))?;
    if let Some(i) = (0..fan.len()).find(|&i| f.values[i] != f.values[moved[i]]) {
        return Err(Error::NonInvariant(format!("value on cone [{}] differs from its translate", fan.cone_key(i))));
    }
    match cs.len() {
        n if n == fan.dim() => Ok(f.clone()),
        1 => {
            let line = Arc::new(line_fan());
            let d: Vec<Q> = vec![Q::one(); fan.dim()];
            let minus: Vec<Q> = d.iter().map(|x| -x).collect();
            let mut values = vec![0; line.len()];
            values[0] = f.values[0];
            values[line.find_key("1").expect("ray")] = f.eval(&d);
            values[line.find_key("-1").expect("ray")] = f.eval(&minus);
            Ok(ConicCFun::from_values(line, f.ring, values))
        }
        k => Err(Error::Unsupported(format!("fixed subspaces of dimension {k} inside dimension {}", fan.dim()))),
    }
}

/// Both paths around the Smith/Fourier-Sato square at a covector `η` of the
/// fixed subspace: `(Psm(FT f))(ξ̃)` and `FT(Psm f)(η)`.
pub fn smith_ft_square(f: &ConicCFun, perm: &[usize], eta: &[i64]) -> Result<(Scalar, Scalar)> {
    let lift = integer_covector(&avg_lift(perm, eta)?);
    let upper = ft_value(f, &lift)?;
    let lower = ft_value(&smith_conic(f, perm)?, eta)?;
    Ok((upper, lower))
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z: Ring = Ring::Integers;

    #[test]
    fn halfspace_examples() {
        let line = line_fan();
        assert_eq!(halfspace_chi(&line, 0, &[5], HalfSpace::BelowOne).unwrap(), 1);
        let pos = line.find_key("1").unwrap();
        // closed ray [0, ∞) against ξ = 1 gives χ_c([0,1)) = 0
        assert_eq!(halfspace_chi_closed(&line, pos, &[1], HalfSpace::BelowOne).unwrap(), 0);
        // the open ray alone gives χ_c((0,1)) = -1
        assert_eq!(halfspace_chi(&line, pos, &[1], HalfSpace::BelowOne).unwrap(), -1);
        let plane = Fan::orthants(2);
        let quad = plane.find_key("1,0;0,1").unwrap();
        assert_eq!(halfspace_chi(&plane, quad, &[0, 0], HalfSpace::BelowOne).unwrap(), 1);
        assert_eq!(halfspace_chi(&plane, quad, &[1, -1], HalfSpace::Zero).unwrap(), -1);
        assert_eq!(halfspace_chi(&plane, quad, &[1, 1], HalfSpace::Negative).unwrap(), 0);
    }

    #[test]
    fn transform_examples() {
        for n in 1..=3 {
            let fan = Arc::new(Fan::orthants(n));
            let one = ConicCFun::constant(fan.clone(), Z, 1);
            let mut origin = ConicCFun::zero(fan.clone(), Z);
            origin.values[0] = 1;
            for xi in [vec![1, -2, 3], vec![0, 0, 0], vec![-1, -1, 4]] {
                assert_eq!(ft_value(&one, &xi[..n]).unwrap().value, sign(n));
                assert_eq!(ft_value(&origin, &xi[..n]).unwrap().value, 1);
            }
        }
        let line = Arc::new(line_fan());
        let closed = ConicCFun::closed_cone(line.clone(), Z, line.find_key("1").unwrap());
        for xi in [-3, 0, 1, 7] {
            assert_eq!(ft_value(&closed, &[xi]).unwrap().value, 0);
        }
        let t = ft(&closed, line).unwrap();
        assert!(t.values().iter().all(|&v| v == 0));
    }

    #[test]
    fn smith_square_on_the_plane_needs_reduction() {
        let fan = Arc::new(Fan::orthants(2).stellar(&[1, 1]).unwrap().stellar(&[-1, -1]).unwrap());
        let f = ConicCFun::constant(fan, Z, 1);
        let (up, down) = smith_ft_square(&f.reduce(2).unwrap(), &[1, 0], &[1]).unwrap();
        assert_eq!(up, down);
        // over Z the two sides are +1 and -1
        assert_eq!(ft_value(&f, &[1, 1]).unwrap().value, 1);
        let line = Arc::new(line_fan());
        assert_eq!(ft_value(&ConicCFun::constant(line, Z, 1), &[1]).unwrap().value, -1);
    }

    #[test]
    fn avg_lift_of_the_swap() {
        let xi = avg_lift(&[1, 0], &[3]).unwrap();
        assert_eq!(xi, vec![Q::new(3, 2), Q::new(3, 2)]);
        assert_eq!(integer_covector(&xi), vec![3, 3]);
        let xi = avg_lift(&[1, 2, 0], &[-2]).unwrap();
        assert_eq!(integer_covector(&xi), vec![-2, -2, -2]);
    }
}
