use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::prime_power;

use super::{CFun, Complex, SimplicialMap};

/// A complex with an action of the cyclic group of order `p^n`, given by a
/// generating vertex permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GComplex {
    base: Arc<Complex>,
    generator: Vec<usize>,
    order: u64,
    prime: u32,
    simplex_perm: Vec<usize>,
    offending: Option<usize>,
}

impl GComplex {
    pub fn new(base: Arc<Complex>, generator: Vec<usize>, order: u64) -> Result<Self> {
        let (p, _) = prime_power(order)
            .ok_or_else(|| Error::InvalidAction(format!("order {order} is not a prime power")))?;
        let n = base.num_vertices();
        if generator.len() != n {
            return Err(Error::InvalidAction("generator must permute every vertex".into()));
        }
        let mut seen = vec![false; n];
        for &w in &generator {
            if w >= n || std::mem::replace(&mut seen[w], true) {
                return Err(Error::InvalidAction("generator is not a permutation of the vertices".into()));
            }
        }
        let mut simplex_perm = Vec::with_capacity(base.len());
        for (i, s) in base.simplices().enumerate() {
            let img: Vec<usize> = s.iter().map(|&v| generator[v]).collect();
            let j = base.find(&img).ok_or_else(|| {
                Error::InvalidAction(format!("generator sends simplex {} to a non-simplex", base.simplex_key(i)))
            })?;
            simplex_perm.push(j);
        }
        for v in 0..n {
            let mut w = v;
            for _ in 0..order {
                w = generator[w];
            }
            if w != v {
                return Err(Error::InvalidAction(format!(
                    "generator^{order} moves vertex {}",
                    base.label(v)
                )));
            }
        }
        let mut g = Self { base, generator, order, prime: p as u32, simplex_perm, offending: None };
        g.offending = g.find_irregular();
        Ok(g)
    }

    /// Builds the action from a label-to-label generator map.
    pub fn from_labels(base: Arc<Complex>, generator: &BTreeMap<String, String>, order: u64) -> Result<Self> {
        let mut perm = Vec::with_capacity(base.num_vertices());
        for label in base.labels() {
            let image = generator
                .get(label)
                .ok_or_else(|| Error::InvalidAction(format!("generator misses vertex {label:?}")))?;
            perm.push(
                base.vertex(image)
                    .ok_or_else(|| Error::InvalidAction(format!("{image:?} is not a vertex")))?,
            );
        }
        Self::new(base, perm, order)
    }

    /// The trivial action of a group of order `order`.
    pub fn trivial(base: Arc<Complex>, order: u64) -> Result<Self> {
        let n = base.num_vertices();
        Self::new(base, (0..n).collect(), order)
    }

    fn find_irregular(&self) -> Option<usize> {
        (0..self.base.len()).find(|&i| {
            let len = self.orbit(i).len();
            self.base.simplex(i).iter().any(|&v| self.act_vertex(len as u64, v) != v)
        })
    }

    pub fn base(&self) -> &Arc<Complex> {
        &self.base
    }

    pub fn generator(&self) -> &[usize] {
        &self.generator
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn generator_labels(&self) -> BTreeMap<String, String> {
        self.base
            .labels()
            .iter()
            .zip(&self.generator)
            .map(|(l, &w)| (l.clone(), self.base.label(w).to_string()))
            .collect()
    }

    pub fn act_vertex(&self, k: u64, mut v: usize) -> usize {
        for _ in 0..k % self.order {
            v = self.generator[v];
        }
        v
    }

    /// `g^k` applied to simplex `i`.
    pub fn act(&self, k: u64, mut i: usize) -> usize {
        for _ in 0..k % self.order {
            i = self.simplex_perm[i];
        }
        i
    }

    /// The orbit `i, g i, g^2 i, ...` of a simplex.
    pub fn orbit(&self, i: usize) -> Vec<usize> {
        let mut out = vec![i];
        let mut j = self.simplex_perm[i];
        while j != i {
            out.push(j);
            j = self.simplex_perm[j];
        }
        out
    }

    pub fn is_regular(&self) -> bool {
        self.offending.is_none()
    }

    pub fn require_regular(&self) -> Result<()> {
        match self.offending {
            None => Ok(()),
            Some(i) => Err(Error::NonRegular { simplex: self.base.simplex_key(i) }),
        }
    }

    /// True when every simplex has trivial stabilizer.
    pub fn is_free(&self) -> bool {
        (0..self.base.len()).all(|i| self.orbit(i).len() as u64 == self.order)
    }

    /// Simplices fixed vertexwise by the generator (hence by the group).
    pub fn fixed_simplices(&self) -> Vec<usize> {
        (0..self.base.len())
            .filter(|&i| self.base.simplex(i).iter().all(|&v| self.generator[v] == v))
            .collect()
    }

    pub fn fixed_subcomplex(&self) -> Result<Arc<Complex>> {
        self.require_regular()?;
        let fixed = self.fixed_simplices();
        let mut keep = vec![false; self.base.len()];
        for &i in &fixed {
            keep[i] = true;
        }
        Ok(Arc::new(self.base.subcomplex(|i| keep[i])?))
    }

    /// The subgroup of order `p`, generated by `g^(order/p)`.
    pub fn prime_subgroup(&self) -> GComplex {
        let k = self.order / self.prime as u64;
        let generator = (0..self.base.num_vertices()).map(|v| self.act_vertex(k, v)).collect();
        GComplex::new(self.base.clone(), generator, self.prime as u64).expect("subgroup of a valid action")
    }

    /// The same action on an invariant subcomplex (matched by labels).
    pub fn restrict_to(&self, sub: Arc<Complex>) -> Result<GComplex> {
        let inc = SimplicialMap::inclusion(sub.clone(), self.base.clone())?;
        let back: BTreeMap<usize, usize> = inc.vertex_map().iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut gen = Vec::with_capacity(sub.num_vertices());
        for &v in inc.vertex_map() {
            let w = self.generator[v];
            gen.push(*back.get(&w).ok_or_else(|| Error::InvalidAction("subcomplex is not invariant".into()))?);
        }
        GComplex::new(sub, gen, self.order)
    }

    /// Checks `f(g σ) = f(σ)` for every simplex.
    pub fn is_invariant(&self, f: &CFun) -> bool {
        self.first_noninvariant(f).is_none()
    }

    pub(crate) fn first_noninvariant(&self, f: &CFun) -> Option<usize> {
        (0..self.base.len()).find(|&i| f.get(i) != f.get(self.simplex_perm[i]))
    }

    /// Sums `f` over each orbit (each orbit element counted once), producing
    /// an invariant function.
    pub fn symmetrize(&self, f: &CFun) -> CFun {
        let ring = f.ring();
        let values = (0..self.base.len())
            .map(|i| self.orbit(i).into_iter().fold(0, |acc, j| ring.add(acc, f.get(j))))
            .collect();
        CFun::from_values(self.base.clone(), ring, values)
    }

    /// Checks that `u: self -> other` intertwines the generators.
    pub fn is_equivariant(&self, other: &GComplex, u: &SimplicialMap) -> bool {
        (0..self.base.num_vertices())
            .all(|v| u.vertex_map()[self.generator[v]] == other.generator[u.vertex_map()[v]])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(faces: &[&[&str]]) -> Arc<Complex> {
        let v: Vec<Vec<&str>> = faces.iter().map(|f| f.to_vec()).collect();
        Arc::new(Complex::from_maximal(&v).unwrap())
    }

    fn gen(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
        pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    }

    fn square() -> Arc<Complex> {
        arc(&[&["1", "2"], &["2", "3"], &["3", "4"], &["4", "1"]])
    }

    #[test]
    fn square_reflection_is_regular() {
        let g = GComplex::from_labels(square(), &gen(&[("1", "1"), ("2", "4"), ("3", "3"), ("4", "2")]), 2).unwrap();
        assert!(g.is_regular());
        let fixed = g.fixed_subcomplex().unwrap();
        assert_eq!(fixed.labels(), &["1", "3"]);
        assert_eq!(fixed.len(), 2);
    }

    #[test]
    fn rotation_of_hollow_triangle() {
        let c = arc(&[&["a", "b"], &["b", "c"], &["c", "a"]]);
        let g = GComplex::from_labels(c, &gen(&[("a", "b"), ("b", "c"), ("c", "a")]), 3).unwrap();
        assert!(g.is_regular());
        assert!(g.is_free());
        assert!(g.fixed_subcomplex().unwrap().is_empty());
    }

    #[test]
    fn edge_swap_is_not_regular() {
        let c = arc(&[&["a", "b"]]);
        let g = GComplex::from_labels(c, &gen(&[("a", "b"), ("b", "a")]), 2).unwrap();
        assert!(!g.is_regular());
        assert_eq!(g.fixed_subcomplex().unwrap_err(), Error::NonRegular { simplex: "a,b".into() });
    }

    #[test]
    fn rejects_bad_generators() {
        let c = arc(&[&["a", "b"], &["b", "c"]]);
        // a<->c is not simplicial here? it is (reflection), but a->b is not a bijection
        assert!(GComplex::from_labels(c.clone(), &gen(&[("a", "b"), ("b", "b"), ("c", "c")]), 2).is_err());
        // order 3 generator declared with order 2
        let tri = arc(&[&["a", "b", "c"]]);
        assert!(GComplex::from_labels(tri.clone(), &gen(&[("a", "b"), ("b", "c"), ("c", "a")]), 2).is_err());
        assert!(GComplex::from_labels(tri, &gen(&[("a", "a"), ("b", "b"), ("c", "c")]), 6).is_err());
        let path = arc(&[&["a", "b"], &["b", "c"]]);
        assert!(GComplex::from_labels(path, &gen(&[("a", "b"), ("b", "a"), ("c", "c")]), 2).is_err());
    }

    #[test]
    fn trivial_action_fixes_everything() {
        let c = arc(&[&["a", "b", "c"]]);
        let g = GComplex::trivial(c.clone(), 5).unwrap();
        assert_eq!(*g.fixed_subcomplex().unwrap(), *c);
    }
}
