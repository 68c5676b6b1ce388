use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{Ring, Scalar};

use super::{Complex, SimplicialMap};

/// A constructible function: one coefficient per open simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CFun {
    carrier: Arc<Complex>,
    ring: Ring,
    values: Vec<i64>,
}

impl CFun {
    pub fn zero(carrier: Arc<Complex>, ring: Ring) -> Self {
        let n = carrier.len();
        Self { carrier, ring, values: vec![0; n] }
    }

    pub fn constant(carrier: Arc<Complex>, ring: Ring, c: i64) -> Self {
        let n = carrier.len();
        Self { carrier, ring, values: vec![ring.reduce(c); n] }
    }

    /// Indicator of a union of open simplices.
    pub fn indicator(carrier: Arc<Complex>, ring: Ring, simplices: &[usize]) -> Self {
        let mut f = Self::zero(carrier, ring);
        for &i in simplices {
            f.values[i] = ring.reduce(1);
        }
        f
    }

    pub fn from_values(carrier: Arc<Complex>, ring: Ring, values: Vec<i64>) -> Self {
        assert_eq!(values.len(), carrier.len(), "one value per simplex");
        let values = values.into_iter().map(|v| ring.reduce(v)).collect();
        Self { carrier, ring, values }
    }

    /// Builds a function from comma-joined simplex keys; absent keys are 0.
    pub fn from_keys(carrier: Arc<Complex>, ring: Ring, coefficients: &BTreeMap<String, i64>) -> Result<Self> {
        let mut f = Self::zero(carrier, ring);
        for (key, &v) in coefficients {
            let i = f
                .carrier
                .find_key(key)
                .ok_or_else(|| Error::Malformed(format!("coefficient key {key:?} is not a simplex")))?;
            f.values[i] = ring.add(f.values[i], v);
        }
        Ok(f)
    }

    /// Nonzero coefficients keyed by simplex.
    pub fn to_keys(&self) -> BTreeMap<String, i64> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, &v)| (self.carrier.simplex_key(i), v))
            .collect()
    }

    pub fn carrier(&self) -> &Arc<Complex> {
        &self.carrier
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

    pub fn set(&mut self, i: usize, v: i64) {
        self.values[i] = self.ring.reduce(v);
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    fn check_compatible(&self, other: &CFun) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring, other.ring)));
        }
        if !same_complex(&self.carrier, &other.carrier) {
            return Err(Error::Malformed("functions live on different complexes".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &CFun) -> Result<CFun> {
        self.check_compatible(other)?;
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| self.ring.add(a, b)).collect();
        Ok(Self { carrier: self.carrier.clone(), ring: self.ring, values })
    }

    pub fn scale(&self, c: i64) -> CFun {
        let values = self.values.iter().map(|&a| self.ring.mul(a, self.ring.reduce(c))).collect();
        Self { carrier: self.carrier.clone(), ring: self.ring, values }
    }

    /// Explicit reduction of a Z-valued (or already F_p-valued) function mod `p`.
    pub fn reduce(&self, p: u32) -> Result<CFun> {
        let ring = Ring::prime_field(p)?;
        match self.ring {
            Ring::Integers => Ok(Self::from_values(self.carrier.clone(), ring, self.values.clone())),
            Ring::Prime(q) if q == p => Ok(self.clone()),
            Ring::Prime(q) => Err(Error::RingMismatch(format!("cannot reduce an F{q} function mod {p}"))),
        }
    }
}

pub(crate) fn same_complex(a: &Arc<Complex>, b: &Arc<Complex>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// `Σ_σ f(σ) (-1)^{dim σ}`.
pub fn euler_integral(f: &CFun) -> Scalar {
    let ring = f.ring;
    let total = f
        .values
        .iter()
        .enumerate()
        .fold(0, |acc, (i, &v)| ring.add(acc, ring.mul(v, ring.sign(f.carrier.dim_of(i)))));
    Scalar::new(ring, total)
}

/// `(u^* g)(τ) = g(u(τ))`.
pub fn pullback(u: &SimplicialMap, g: &CFun) -> Result<CFun> {
    if !same_complex(u.target(), &g.carrier) {
        return Err(Error::Malformed("function does not live on the target of the map".into()));
    }
    let values = (0..u.source().len()).map(|t| g.values[u.image(t)]).collect();
    Ok(CFun { carrier: u.source().clone(), ring: g.ring, values })
}

/// Proper pushforward: the open simplex τ contributes `(-1)^{dim τ - dim u(τ)}`
/// to its image.
pub fn pushforward(u: &SimplicialMap, f: &CFun) -> Result<CFun> {
    if !same_complex(u.source(), &f.carrier) {
        return Err(Error::Malformed("function does not live on the source of the map".into()));
    }
    let ring = f.ring;
    let src = u.source();
    let tgt = u.target();
    let mut out = CFun::zero(tgt.clone(), ring);
    for (t, &v) in f.values.iter().enumerate() {
        if v == 0 {
            continue;
        }
        let s = u.image(t);
        let sign = ring.sign(src.dim_of(t) - tgt.dim_of(s));
        out.values[s] = ring.add(out.values[s], ring.mul(v, sign));
    }
    Ok(out)
}

/// Verdier duality: `(𝔻f)(σ) = Σ_{τ ⊇ σ} (-1)^{dim τ} f(τ)`.
pub fn dualize(f: &CFun) -> CFun {
    let ring = f.ring;
    let c = &f.carrier;
    let values = (0..c.len())
        .map(|s| {
            c.cofaces(s)
                .iter()
                .fold(0, |acc, &t| ring.add(acc, ring.mul(f.values[t], ring.sign(c.dim_of(t)))))
        })
        .collect();
    CFun { carrier: c.clone(), ring, values }
}

/// `u_* = 𝔻 u_! 𝔻`.
pub fn pushforward_star(u: &SimplicialMap, f: &CFun) -> Result<CFun> {
    Ok(dualize(&pushforward(u, &dualize(f))?))
}

/// `u^! = 𝔻 u^* 𝔻`.
pub fn pullback_shriek(u: &SimplicialMap, g: &CFun) -> Result<CFun> {
    Ok(dualize(&pullback(u, &dualize(g))?))
}

/// Restriction `i^*` to a subcomplex (matched by labels).
pub fn restrict(f: &CFun, sub: &Arc<Complex>) -> Result<CFun> {
    pullback(&SimplicialMap::inclusion(sub.clone(), f.carrier.clone())?, f)
}

/// Extension by zero `i_!` from a subcomplex.
pub fn extend_by_zero(f: &CFun, sup: &Arc<Complex>) -> Result<CFun> {
    pushforward(&SimplicialMap::inclusion(f.carrier.clone(), sup.clone())?, f)
}

/// Standard and costandard functions of the open star `U` of vertex `v`:
/// `i_U = 1` on the closed star, `j_U = (-1)^{dim U}` on the open star.
pub fn standard_costandard(m: &Arc<Complex>, v: &str, ring: Ring) -> Result<(CFun, CFun)> {
    let vi = m.vertex(v).ok_or_else(|| Error::Malformed(format!("{v:?} is not a vertex")))?;
    let star = m.cofaces(vi);
    let dim = star.iter().map(|&t| m.dim_of(t)).max().unwrap_or(0);
    let i_u = CFun::indicator(m.clone(), ring, &m.closed_star(vi));
    let j_u = CFun::indicator(m.clone(), ring, star).scale(ring.sign(dim));
    Ok((i_u, j_u))
}

/// Sign label of a vertex for [`specialize`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl std::str::FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "-" | "neg" | "-1" => Ok(Sign::Neg),
            "0" | "zero" => Ok(Sign::Zero),
            "+" | "pos" | "1" | "+1" => Ok(Sign::Pos),
            other => Err(Error::Malformed(format!("unknown sign {other:?}; expected -, 0 or +"))),
        }
    }
}

/// Nearby-cycle specialization `ψ⁺ f = i^* j_* j^* f`, where `U` is the union
/// of open simplices with a `+` vertex and the result lives on the subcomplex
/// of all-zero simplices.
pub fn specialize(f: &CFun, signs: &[Sign]) -> Result<CFun> {
    let c = &f.carrier;
    if signs.len() != c.num_vertices() {
        return Err(Error::Malformed("one sign per vertex is required".into()));
    }
    let ring = f.ring;
    let mut in_u = vec![false; c.len()];
    let mut zero = vec![false; c.len()];
    for (i, s) in c.simplices().enumerate() {
        let pos = s.iter().any(|&v| signs[v] == Sign::Pos);
        let neg = s.iter().any(|&v| signs[v] == Sign::Neg);
        if pos && neg {
            return Err(Error::MixedSigns { simplex: c.simplex_key(i) });
        }
        in_u[i] = pos;
        zero[i] = !pos && !neg;
    }
    // dualize within U (coface-closed), extend by zero, dualize on the carrier
    let dual_u: Vec<i64> = (0..c.len())
        .map(|s| {
            if !in_u[s] {
                return 0;
            }
            c.cofaces(s)
                .iter()
                .fold(0, |acc, &t| ring.add(acc, ring.mul(f.values[t], ring.sign(c.dim_of(t)))))
        })
        .collect();
    let pushed = dualize(&CFun { carrier: c.clone(), ring, values: dual_u });
    let zero_complex = Arc::new(c.subcomplex(|i| zero[i])?);
    restrict(&pushed, &zero_complex)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(faces: &[&[&str]]) -> Arc<Complex> {
        let v: Vec<Vec<&str>> = faces.iter().map(|f| f.to_vec()).collect();
        Arc::new(Complex::from_maximal(&v).unwrap())
    }

    fn assign(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
        pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    }

    const Z: Ring = Ring::Integers;

    #[test]
    fn integrals_of_basic_functions() {
        let solid = arc(&[&["a", "b", "c"]]);
        let hollow = arc(&[&["a", "b"], &["b", "c"], &["c", "a"]]);
        assert_eq!(euler_integral(&CFun::constant(solid.clone(), Z, 1)).value, 1);
        assert_eq!(euler_integral(&CFun::constant(hollow, Z, 1)).value, 0);
        let face = solid.find_key("a,b,c").unwrap();
        assert_eq!(euler_integral(&CFun::indicator(solid, Z, &[face]).scale(2)).value, 2);
    }

    #[test]
    fn pull_and_push_along_collapse() {
        let tri = arc(&[&["a", "b", "c"]]);
        let edge = arc(&[&["x", "y"]]);
        let u = SimplicialMap::new(tri.clone(), edge.clone(), &assign(&[("a", "x"), ("b", "x"), ("c", "y")])).unwrap();
        let xy = edge.find_key("x,y").unwrap();
        let g = CFun::indicator(edge.clone(), Z, &[xy]);
        let pulled = pullback(&u, &g).unwrap();
        let keys: Vec<String> = pulled.to_keys().into_keys().collect();
        assert_eq!(keys, vec!["a,b,c", "a,c", "b,c"]);

        let face = tri.find_key("a,b,c").unwrap();
        let pushed = pushforward(&u, &CFun::indicator(tri.clone(), Z, &[face])).unwrap();
        assert_eq!(pushed.to_keys(), BTreeMap::from([("x,y".to_string(), -1)]));

        let pt = SimplicialMap::to_point(tri.clone());
        assert_eq!(pushforward(&pt, &CFun::constant(tri, Z, 1)).unwrap().get(0), 1);
    }

    #[test]
    fn dual_of_open_edge_is_closed_edge() {
        let e = arc(&[&["a", "b"]]);
        let ab = e.find_key("a,b").unwrap();
        let f = CFun::indicator(e.clone(), Z, &[ab]).scale(-1);
        assert_eq!(dualize(&f), CFun::constant(e, Z, 1));
        let pt = Arc::new(Complex::point("p"));
        let one = CFun::constant(pt, Z, 1);
        assert_eq!(dualize(&one), one);
    }

    #[test]
    fn standard_costandard_on_subdivided_edge() {
        let m = arc(&[&["a", "v"], &["v", "b"]]);
        let (i_u, j_u) = standard_costandard(&m, "v", Z).unwrap();
        assert_eq!(i_u, CFun::constant(m.clone(), Z, 1));
        assert_eq!(
            j_u.to_keys(),
            BTreeMap::from([("v".into(), -1), ("a,v".into(), -1), ("b,v".into(), -1)])
        );
        assert_eq!(dualize(&j_u), i_u);

        let iso = arc(&[&["v"], &["w"]]);
        let (i_u, j_u) = standard_costandard(&iso, "v", Z).unwrap();
        assert_eq!(i_u, j_u);
        assert_eq!(dualize(&j_u), i_u);
        assert!(standard_costandard(&iso, "q", Z).is_err());
    }

    #[test]
    fn specialization_examples() {
        let seg = arc(&[&["m", "z"], &["z", "p"]]);
        let signs: Vec<Sign> = seg
            .labels()
            .iter()
            .map(|l| match l.as_str() {
                "m" => Sign::Neg,
                "z" => Sign::Zero,
                _ => Sign::Pos,
            })
            .collect();
        let psi = specialize(&CFun::constant(seg.clone(), Z, 1), &signs).unwrap();
        assert_eq!(psi.to_keys(), BTreeMap::from([("z".into(), 1)]));

        let neg_half: Vec<usize> = ["m", "z", "m,z"].iter().map(|k| seg.find_key(k).unwrap()).collect();
        let psi = specialize(&CFun::indicator(seg.clone(), Z, &neg_half), &signs).unwrap();
        assert!(psi.is_zero());

        let zeros = vec![Sign::Zero; 3];
        assert!(specialize(&CFun::constant(seg.clone(), Z, 1), &zeros).unwrap().is_zero());

        let edge = arc(&[&["m", "p"]]);
        let err = specialize(&CFun::constant(edge, Z, 1), &[Sign::Neg, Sign::Pos]).unwrap_err();
        assert_eq!(err, Error::MixedSigns { simplex: "m,p".into() });
    }

    #[test]
    fn proper_maps_have_equal_pushforwards() {
        let tri = arc(&[&["a", "b", "c"]]);
        let v = Arc::new(Complex::point("a"));
        let i = SimplicialMap::inclusion(v.clone(), tri).unwrap();
        let f = CFun::constant(v, Z, 3);
        assert_eq!(pushforward_star(&i, &f).unwrap(), pushforward(&i, &f).unwrap());
    }

    #[test]
    fn rejects_unknown_keys() {
        let e = arc(&[&["a", "b"]]);
        let err = CFun::from_keys(e, Z, &BTreeMap::from([("a,c".to_string(), 1)])).unwrap_err();
        assert!(err.to_string().contains("a,c"));
    }
}
