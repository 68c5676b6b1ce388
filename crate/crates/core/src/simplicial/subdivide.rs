use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::{cfun::same_complex, CFun, Complex, GComplex};

/// A barycentric subdivision together with its carrier map: every cell of
/// the subdivision lies in the open simplex `carrier(cell)` of the base.
#[derive(Clone, Debug)]
pub struct Subdivision {
    base: Arc<Complex>,
    complex: Arc<Complex>,
    carrier: Vec<usize>,
    barycenter: Vec<usize>,
}

/// Vertex label of the barycenter of a simplex.
fn barycenter_label(base: &Complex, i: usize) -> String {
    base.simplex_labels(i).join("/")
}

impl Subdivision {
    pub fn new(base: Arc<Complex>) -> Self {
        // chains[t] = all flags of faces ending in t, as base simplex indices
        let mut chains: Vec<Vec<Vec<usize>>> = Vec::with_capacity(base.len());
        for t in 0..base.len() {
            let mut mine = vec![vec![t]];
            for f in base.faces(t) {
                if f == t {
                    continue;
                }
                for c in &chains[f] {
                    let mut c = c.clone();
                    c.push(t);
                    mine.push(c);
                }
            }
            chains.push(mine);
        }
        let label_lists: Vec<Vec<String>> = base
            .maximal_simplices()
            .into_iter()
            .flat_map(|t| chains[t].iter().filter(|c| c.len() == base.dim_of(t) + 1).cloned().collect::<Vec<_>>())
            .map(|c| c.into_iter().map(|s| barycenter_label(&base, s)).collect())
            .collect();
        let complex = Arc::new(Complex::from_maximal(&label_lists).expect("flags are valid simplices"));

        let by_label: HashMap<String, usize> = (0..base.len()).map(|s| (barycenter_label(&base, s), s)).collect();
        let vertex_base: Vec<usize> = complex.labels().iter().map(|l| by_label[l]).collect();
        let carrier = complex
            .simplices()
            .map(|s| s.iter().map(|&v| vertex_base[v]).max_by_key(|&b| base.dim_of(b)).expect("nonempty"))
            .collect();
        let mut barycenter = vec![0; base.len()];
        for (v, &b) in vertex_base.iter().enumerate() {
            barycenter[b] = v;
        }
        Self { base, complex, carrier, barycenter }
    }

    pub fn base(&self) -> &Arc<Complex> {
        &self.base
    }

    pub fn complex(&self) -> &Arc<Complex> {
        &self.complex
    }

    /// Base simplex whose relative interior contains the cell.
    pub fn carrier(&self, cell: usize) -> usize {
        self.carrier[cell]
    }

    /// Vertex of the subdivision at the barycenter of base simplex `i`.
    pub fn barycenter(&self, i: usize) -> usize {
        self.barycenter[i]
    }

    /// Transports a function on the base to the subdivision; the represented
    /// function on the geometric realization is unchanged.
    pub fn transport(&self, f: &CFun) -> Result<CFun> {
        if !same_complex(f.carrier(), &self.base) {
            return Err(Error::Malformed("function does not live on the subdivided complex".into()));
        }
        let values = self.carrier.iter().map(|&b| f.get(b)).collect();
        Ok(CFun::from_values(self.complex.clone(), f.ring(), values))
    }
}

impl Complex {
    pub fn barycentric(self: &Arc<Self>) -> Subdivision {
        Subdivision::new(self.clone())
    }
}

impl GComplex {
    /// Barycentric subdivision with the induced action; always regular.
    pub fn barycentric(&self) -> (GComplex, Subdivision) {
        let sd = Subdivision::new(self.base().clone());
        let n = sd.complex.num_vertices();
        let mut gen = vec![0; n];
        for b in 0..self.base().len() {
            gen[sd.barycenter[b]] = sd.barycenter[self.act(1, b)];
        }
        let g = GComplex::new(sd.complex.clone(), gen, self.order()).expect("induced action is valid");
        debug_assert!(g.is_regular());
        (g, sd)
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::scalar::Ring;
    use crate::simplicial::euler_integral;

    fn arc(faces: &[&[&str]]) -> Arc<Complex> {
        let v: Vec<Vec<&str>> = faces.iter().map(|f| f.to_vec()).collect();
        Arc::new(Complex::from_maximal(&v).unwrap())
    }

    fn gen(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
        pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    }

    #[test]
    fn subdivided_swap_has_one_fixed_point() {
        let g = GComplex::from_labels(arc(&[&["a", "b"]]), &gen(&[("a", "b"), ("b", "a")]), 2).unwrap();
        let (sg, _) = g.barycentric();
        assert_eq!(sg.base().num_vertices(), 3);
        assert!(sg.is_regular());
        let fixed = sg.fixed_subcomplex().unwrap();
        assert_eq!(fixed.labels(), &["a/b"]);
    }

    #[test]
    fn subdivided_triangle_rotation_is_a_free_hexagon() {
        let c = arc(&[&["a", "b"], &["b", "c"], &["c", "a"]]);
        let g = GComplex::from_labels(c, &gen(&[("a", "b"), ("b", "c"), ("c", "a")]), 3).unwrap();
        let (sg, _) = g.barycentric();
        assert_eq!(sg.base().num_vertices(), 6);
        assert_eq!(sg.base().len(), 12);
        assert!(sg.fixed_subcomplex().unwrap().is_empty());
    }

    #[test]
    fn transport_preserves_integrals() {
        let tri = arc(&[&["a", "b", "c"]]);
        let sd = tri.barycentric();
        assert_eq!(sd.complex().len(), 7 + 6 + 12);
        for i in 0..tri.len() {
            let f = CFun::indicator(tri.clone(), Ring::Integers, &[i]);
            let t = sd.transport(&f).unwrap();
            assert_eq!(euler_integral(&t), euler_integral(&f));
        }
    }
}
