use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Ring;

use super::datum::{pair, RootDatum};
use super::kac::{centralizer_datum, KacNode};

/// A finitely supported, Weyl-invariant function on `X^*` (an element of
/// `Z[X^*]^W` or its reduction mod p).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantElement {
    datum: Arc<RootDatum>,
    ring: Ring,
    weights: BTreeMap<Vec<i64>, i64>,
}

impl InvariantElement {
    /// Validates Weyl invariance on simple reflections.
    pub fn new(datum: Arc<RootDatum>, ring: Ring, weights: BTreeMap<Vec<i64>, i64>) -> Result<Self> {
        let e = Self::unchecked(datum, ring, weights);
        for w in e.weights.keys() {
            if w.len() != e.datum.rank() {
                return Err(Error::Malformed(format!("weight {w:?} has the wrong length")));
            }
        }
        if let Some(w) = e.first_noninvariant() {
            return Err(Error::NonInvariant(format!("weight {w:?} and its reflection carry different values")));
        }
        Ok(e)
    }

    fn unchecked(datum: Arc<RootDatum>, ring: Ring, weights: BTreeMap<Vec<i64>, i64>) -> Self {
        let weights = weights.into_iter().map(|(k, v)| (k, ring.reduce(v))).filter(|(_, v)| *v != 0).collect();
        Self { datum, ring, weights }
    }

    pub fn unit(datum: Arc<RootDatum>, ring: Ring) -> Self {
        let zero = vec![0; datum.rank()];
        Self::unchecked(datum, ring, BTreeMap::from([(zero, 1)]))
    }

    pub fn zero(datum: Arc<RootDatum>, ring: Ring) -> Self {
        Self::unchecked(datum, ring, BTreeMap::new())
    }

    /// Sum over the Weyl orbit of `x`.
    pub fn orbit_sum(datum: Arc<RootDatum>, ring: Ring, x: &[i64]) -> Self {
        let weights = datum.orbit(x).into_iter().map(|w| (w, 1)).collect();
        Self::unchecked(datum, ring, weights)
    }

    fn first_noninvariant(&self) -> Option<Vec<i64>> {
        for (w, &v) in &self.weights {
            for i in 0..self.datum.semisimple_rank() {
                if self.get(&self.datum.reflect(i, w)) != v {
                    return Some(w.clone());
                }
            }
        }
        None
    }

    pub fn is_invariant(&self) -> bool {
        self.first_noninvariant().is_none()
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        &self.datum
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn weights(&self) -> &BTreeMap<Vec<i64>, i64> {
        &self.weights
    }

    pub fn get(&self, w: &[i64]) -> i64 {
        self.weights.get(w).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.weights.is_empty()
    }

    /// Sum of all multiplicities (the dimension, for a character).
    pub fn dimension(&self) -> i64 {
        self.weights.values().fold(0, |acc, &v| self.ring.add(acc, v))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring, other.ring)));
        }
        if self.datum != other.datum {
            return Err(Error::Malformed("elements live on different root data".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut w = self.weights.clone();
        for (k, v) in &other.weights {
            *w.entry(k.clone()).or_insert(0) += v;
        }
        Ok(Self::unchecked(self.datum.clone(), self.ring, w))
    }

    pub fn scale(&self, s: i64) -> Self {
        let w = self.weights.iter().map(|(k, v)| (k.clone(), self.ring.mul(*v, s))).collect();
        Self::unchecked(self.datum.clone(), self.ring, w)
    }

    /// Lattice convolution.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut w: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
        for (a, x) in &self.weights {
            for (b, y) in &other.weights {
                let k: Vec<i64> = a.iter().zip(b).map(|(s, t)| s + t).collect();
                let e = w.entry(k).or_insert(0);
                *e = self.ring.add(*e, self.ring.mul(*x, *y));
            }
        }
        Ok(Self::unchecked(self.datum.clone(), self.ring, w))
    }

    pub fn reduce(&self, p: u32) -> Result<Self> {
        let ring = Ring::prime_field(p)?;
        if let Ring::Prime(q) = self.ring {
            if q != p {
                return Err(Error::RingMismatch(format!("cannot reduce F{q} to F{p}")));
            }
        }
        Ok(Self::unchecked(self.datum.clone(), ring, self.weights.clone()))
    }

    /// Keys `"a,b,..."` to values, for serialization.
    pub fn to_keys(&self) -> BTreeMap<String, i64> {
        self.weights.iter().map(|(k, v)| (weight_key(k), *v)).collect()
    }

    pub fn from_keys(datum: Arc<RootDatum>, ring: Ring, keys: &BTreeMap<String, i64>) -> Result<Self> {
        let mut w = BTreeMap::new();
        for (k, v) in keys {
            *w.entry(parse_weight(k)?).or_insert(0) += v;
        }
        Self::new(datum, ring, w)
    }
}

pub fn weight_key(w: &[i64]) -> String {
    w.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

pub fn parse_weight(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Malformed(format!("weight key {s:?} is not a comma-separated integer list"))))
        .collect()
}

/// Dominant weights `μ ≤ λ`, i.e. `λ − μ` a nonnegative integer combination
/// of simple roots.
fn dominant_weights_below(rd: &RootDatum, lambda: &[i64]) -> Vec<Vec<i64>> {
    let mut seen = BTreeSet::new();
    seen.insert(lambda.to_vec());
    let mut stack = vec![lambda.to_vec()];
    while let Some(mu) = stack.pop() {
        for alpha in rd.positive_roots() {
            let nu: Vec<i64> = mu.iter().zip(alpha).map(|(a, b)| a - b).collect();
            if rd.is_dominant(&nu) && !seen.contains(&nu) {
                seen.insert(nu.clone());
                stack.push(nu);
            }
        }
    }
    seen.into_iter().collect()
}

/// `B(x, y) = Σ_{α ∈ Φ} ⟨x, α^∨⟩⟨y, α^∨⟩`, a W-invariant form.
fn form(rd: &RootDatum, x: &[i64], y: &[i64]) -> i64 {
    rd.coroots().iter().map(|c| pair(x, c) * pair(y, c)).sum()
}

/// `⟨μ, 2ρ^∨⟩`; strictly increases along positive roots.
pub fn level(rd: &RootDatum, mu: &[i64]) -> i64 {
    rd.positive_coroots().iter().map(|c| pair(mu, c)).sum()
}

/// Weight multiplicities of the Weyl module with highest weight `λ`, by
/// Freudenthal's recursion.
pub fn weyl_character(rd: &Arc<RootDatum>, lambda: &[i64], ring: Ring) -> Result<InvariantElement> {
    if lambda.len() != rd.rank() {
        return Err(Error::Malformed(format!("weight {lambda:?} has the wrong length")));
    }
    if !rd.is_dominant(lambda) {
        return Err(Error::NotDominant(weight_key(lambda)));
    }
    let mut dominant = dominant_weights_below(rd, lambda);
    // process from the top down
    dominant.sort_by_key(|mu| std::cmp::Reverse(level(rd, mu)));
    let two_rho: Vec<i64> = {
        let mut v = vec![0; rd.rank()];
        for a in rd.positive_roots() {
            for (vi, ai) in v.iter_mut().zip(a) {
                *vi += ai;
            }
        }
        v
    };
    let mut mult: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    let lookup = |mult: &BTreeMap<Vec<i64>, i64>, nu: &[i64]| -> i64 { mult.get(&rd.to_dominant(nu)).copied().unwrap_or(0) };
    let norm = |x: &[i64]| form(rd, x, x);
    for mu in &dominant {
        if mu == lambda {
            mult.insert(mu.clone(), 1);
            continue;
        }
        // (|λ+ρ|² − |μ+ρ|²) m(μ) = 2 Σ_{α>0} Σ_{k≥1} m(μ+kα) B(μ+kα, α)
        let diff: Vec<i64> = lambda.iter().zip(mu).map(|(a, b)| a - b).collect();
        let denom = norm(lambda) - norm(mu) + form(rd, &diff, &two_rho);
        let mut numer = 0i64;
        for alpha in rd.positive_roots() {
            let mut k = 1;
            loop {
                let nu: Vec<i64> = mu.iter().zip(alpha).map(|(m, a)| m + k * a).collect();
                // weight strings are unbroken, so the first weight outside ends the sum
                if !nu_below(rd, lambda, &nu) {
                    break;
                }
                numer += 2 * lookup(&mult, &nu) * form(rd, &nu, alpha);
                k += 1;
            }
        }
        if denom <= 0 || numer % denom != 0 {
            return Err(Error::Internal(format!("Freudenthal recursion failed at {mu:?}")));
        }
        let m = numer / denom;
        if m != 0 {
            mult.insert(mu.clone(), m);
        }
    }
    let mut weights = BTreeMap::new();
    for (mu, m) in &mult {
        for w in rd.orbit(mu) {
            weights.insert(w, *m);
        }
    }
    Ok(InvariantElement::unchecked(rd.clone(), ring, weights))
}

/// Whether `ν` lies in the weight diagram of `λ`, i.e. its dominant
/// representative is `≤ λ`.
fn nu_below(rd: &RootDatum, lambda: &[i64], nu: &[i64]) -> bool {
    let d = rd.to_dominant(nu);
    let diff: Vec<i64> = lambda.iter().zip(&d).map(|(a, b)| a - b).collect();
    in_positive_cone(rd, &diff)
}

fn in_positive_cone(rd: &RootDatum, v: &[i64]) -> bool {
    if v.iter().all(|&x| x == 0) {
        return true;
    }
    match super::datum::solve_rational(&transpose_cols(rd.simple_roots()), v) {
        Some(c) => c.iter().all(|q| q.is_integer() && *q.numer() >= 0),
        None => false,
    }
}

/// Matrix whose columns are the given vectors.
fn transpose_cols(cols: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = cols.first().map_or(0, Vec::len);
    (0..r).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
}

/// Writes an invariant element in the basis of Weyl characters. The
/// reconstruction is verified before returning.
pub fn decompose(e: &InvariantElement) -> Result<Vec<(Vec<i64>, i64)>> {
    if !e.is_invariant() {
        return Err(Error::NonInvariant("element is not Weyl invariant".into()));
    }
    let rd = e.datum();
    let mut rest = e.clone();
    let mut out: Vec<(Vec<i64>, i64)> = Vec::new();
    while !rest.is_zero() {
        let top = rest
            .weights()
            .keys()
            .filter(|w| rd.is_dominant(w))
            .max_by(|a, b| level(rd, a).cmp(&level(rd, b)).then_with(|| a.cmp(b)))
            .cloned()
            .ok_or_else(|| Error::Internal("invariant element without dominant weight".into()))?;
        let m = rest.get(&top);
        let chi = weyl_character(rd, &top, e.ring())?;
        rest = rest.add(&chi.scale(-m))?;
        out.push((top, m));
    }
    out.sort();
    let mut rebuilt = InvariantElement::zero(rd.clone(), e.ring());
    for (lambda, m) in &out {
        rebuilt = rebuilt.add(&weyl_character(rd, lambda, e.ring())?.scale(*m))?;
    }
    if rebuilt != *e {
        return Err(Error::Internal("decomposition does not reconstruct the element".into()));
    }
    Ok(out)
}

/// The inclusion `Z[X^*]^{W_G} ⊆ Z[X^*]^{W_H}` for `H ⊆ G` of equal rank.
pub fn restrict_invariants(g: &RootDatum, h: &Arc<RootDatum>, e: &InvariantElement) -> Result<InvariantElement> {
    if **e.datum() != *g {
        return Err(Error::Malformed("element does not live on the ambient datum".into()));
    }
    check_weyl_subgroup(g, h)?;
    InvariantElement::new(h.clone(), e.ring(), e.weights().clone())
}

/// `W_H ⊆ W_G`, checked on generators: each simple root of `h` is a root of
/// `g` with the same coroot.
pub fn check_weyl_subgroup(g: &RootDatum, h: &RootDatum) -> Result<()> {
    if g.rank() != h.rank() {
        return Err(Error::InvalidRootDatum("data live on lattices of different rank".into()));
    }
    for (a, ac) in h.simple_roots().iter().zip(h.simple_coroots()) {
        match g.root_index(a) {
            Some(k) if g.coroots()[k] == *ac => {}
            _ => return Err(Error::InvalidRootDatum(format!("reflection in {a:?} is not in the ambient Weyl group"))),
        }
    }
    Ok(())
}

/// The lattice model `Z[X_*]^W ⊗ k` of the spherical Hecke algebra of `G`,
/// i.e. invariants on the dual datum.
#[derive(Clone, Debug)]
pub struct ShaModel {
    datum: RootDatum,
    dual: Arc<RootDatum>,
    ring: Ring,
}

impl ShaModel {
    pub fn new(rd: &RootDatum, ring: Ring) -> Self {
        Self { datum: rd.clone(), dual: Arc::new(rd.dual()), ring }
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    /// The dual datum, whose characters are the cocharacters of `G`.
    pub fn dual(&self) -> &Arc<RootDatum> {
        &self.dual
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn unit(&self) -> InvariantElement {
        InvariantElement::unit(self.dual.clone(), self.ring)
    }

    /// Indicator of the double coset of the cocharacter `x`.
    pub fn orbit_element(&self, x: &[i64]) -> InvariantElement {
        InvariantElement::orbit_sum(self.dual.clone(), self.ring, x)
    }

    pub fn character(&self, lambda: &[i64]) -> Result<InvariantElement> {
        weyl_character(&self.dual, lambda, self.ring)
    }

    /// The model of the centralizer of the element attached to `node`.
    pub fn centralizer(&self, node: &KacNode) -> Result<ShaModel> {
        let h = centralizer_datum(&self.datum, node)?;
        Ok(ShaModel { dual: Arc::new(h.dual()), datum: h, ring: self.ring })
    }

    /// `Psm: SHA_G ⊗ F_p → SHA_{Z_G(ϖ)} ⊗ F_p` in the lattice model:
    /// restriction to the centralizer followed by reduction mod `p`.
    pub fn smith_sha(&self, e: &InvariantElement, node: &KacNode, p: u32) -> Result<InvariantElement> {
        if node.order != i64::from(p) {
            return Err(Error::Malformed(format!("node {} has order {}, not {p}", node.index + 1, node.order)));
        }
        if let Ring::Prime(q) = e.ring() {
            if q != p {
                return Err(Error::RingMismatch(format!("element over F{q}, Smith operator over F{p}")));
            }
        }
        let target = self.centralizer(node)?;
        restrict_invariants(&self.dual, &target.dual, e)?.reduce(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::kac::kac_order_p_nodes;

    fn datum(f: &str, n: usize, iso: &str) -> Arc<RootDatum> {
        Arc::new(RootDatum::parse(f, n, iso).unwrap())
    }

    #[test]
    fn a1_fundamental_and_square() {
        let rd = datum("A", 1, "sc");
        let chi = weyl_character(&rd, &[1], Ring::Integers).unwrap();
        assert_eq!(chi.weights(), &BTreeMap::from([(vec![-1], 1), (vec![1], 1)]));
        let sq = chi.mul(&chi).unwrap();
        assert_eq!(decompose(&sq).unwrap(), vec![(vec![0], 1), (vec![2], 1)]);
        let unit = weyl_character(&rd, &[0], Ring::Integers).unwrap();
        assert_eq!(unit, InvariantElement::unit(rd.clone(), Ring::Integers));
        assert_eq!(decompose(&unit).unwrap(), vec![(vec![0], 1)]);
    }

    #[test]
    fn known_dimensions() {
        let dim = |f: &str, n: usize, l: &[i64]| weyl_character(&datum(f, n, "sc"), l, Ring::Integers).unwrap().dimension();
        assert_eq!(dim("A", 2, &[1, 1]), 8);
        assert_eq!(dim("G", 2, &[0, 1]), 7);
        assert_eq!(dim("G", 2, &[1, 0]), 14);
        assert_eq!(dim("C", 2, &[0, 1]), 5);
        assert_eq!(dim("E", 8, &[0, 0, 0, 0, 0, 0, 0, 1]), 248);
        assert_eq!(dim("F", 4, &[0, 0, 0, 1]), 26);
    }

    #[test]
    fn rejects_non_dominant() {
        let rd = datum("A", 1, "sc");
        assert!(matches!(weyl_character(&rd, &[-1], Ring::Integers), Err(Error::NotDominant(_))));
    }

    #[test]
    fn smith_sha_of_c2_orbit() {
        let rd = RootDatum::parse("C", 2, "sc").unwrap();
        let model = ShaModel::new(&rd, Ring::Prime(2));
        let node = kac_order_p_nodes(&rd, 2).unwrap().remove(0);
        let e = model.orbit_element(&[1, 0]);
        let s = model.smith_sha(&e, &node, 2).unwrap();
        assert_eq!(s.weights(), e.weights());
        assert_eq!(s.datum().label(), "A1xA1");
        assert_eq!(model.smith_sha(&model.unit(), &node, 2).unwrap().weights(), model.unit().weights());
        assert!(model.smith_sha(&e, &node, 3).is_err());
    }
}
