use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::Complex;

/// A simplicial map, stored as a vertex assignment together with the image
/// simplex of every source simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    source: Arc<Complex>,
    target: Arc<Complex>,
    vertex_map: Vec<usize>,
    image: Vec<usize>,
}

impl SimplicialMap {
    /// Validates a vertex assignment given by labels.
    pub fn new(
        source: Arc<Complex>,
        target: Arc<Complex>,
        assignment: &BTreeMap<String, String>,
    ) -> Result<Self> {
        let mut vertex_map = Vec::with_capacity(source.num_vertices());
        for label in source.labels() {
            let image = assignment
                .get(label)
                .ok_or_else(|| Error::Malformed(format!("assignment misses source vertex {label:?}")))?;
            let w = target
                .vertex(image)
                .ok_or_else(|| Error::Malformed(format!("{image:?} is not a vertex of the target")))?;
            vertex_map.push(w);
        }
        Self::from_vertex_map(source, target, vertex_map)
    }

    /// Validates a vertex assignment given by indices.
    pub fn from_vertex_map(source: Arc<Complex>, target: Arc<Complex>, vertex_map: Vec<usize>) -> Result<Self> {
        if vertex_map.len() != source.num_vertices() {
            return Err(Error::Malformed("vertex assignment has the wrong length".into()));
        }
        let mut image = Vec::with_capacity(source.len());
        for (i, s) in source.simplices().enumerate() {
            let img: Vec<usize> = s.iter().map(|&v| vertex_map[v]).collect();
            match target.find(&img) {
                Some(t) => image.push(t),
                None => return Err(Error::NotSimplicial { simplex: source.simplex_key(i) }),
            }
        }
        Ok(Self { source, target, vertex_map, image })
    }

    pub fn identity(c: Arc<Complex>) -> Self {
        let n = c.num_vertices();
        Self::from_vertex_map(c.clone(), c, (0..n).collect()).expect("identity is simplicial")
    }

    /// Inclusion of a complex whose labelled simplices all occur in `sup`.
    pub fn inclusion(sub: Arc<Complex>, sup: Arc<Complex>) -> Result<Self> {
        let vm: Result<Vec<usize>> = sub
            .labels()
            .iter()
            .map(|l| sup.vertex(l).ok_or_else(|| Error::Malformed(format!("vertex {l:?} missing from the ambient complex"))))
            .collect();
        Self::from_vertex_map(sub, sup, vm?)
    }

    /// The constant map to a one-vertex complex.
    pub fn to_point(c: Arc<Complex>) -> Self {
        let n = c.num_vertices();
        Self::from_vertex_map(c, Arc::new(Complex::point("pt")), vec![0; n]).expect("constant maps are simplicial")
    }

    pub fn source(&self) -> &Arc<Complex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Complex> {
        &self.target
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    /// Index in the target of the image of source simplex `i`.
    pub fn image(&self, i: usize) -> usize {
        self.image[i]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &SimplicialMap) -> Result<Self> {
        if *self.target != *next.source {
            return Err(Error::Malformed("maps are not composable".into()));
        }
        let vm = self.vertex_map.iter().map(|&v| next.vertex_map[v]).collect();
        Self::from_vertex_map(self.source.clone(), next.target.clone(), vm)
    }

    /// Label form of the vertex assignment.
    pub fn assignment(&self) -> BTreeMap<String, String> {
        self.source
            .labels()
            .iter()
            .zip(&self.vertex_map)
            .map(|(l, &w)| (l.clone(), self.target.label(w).to_string()))
            .collect()
    }
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

    #[test]
    fn collapse_onto_edge() {
        let tri = arc(&[&["a", "b", "c"]]);
        let edge = arc(&[&["x", "y"]]);
        let u = SimplicialMap::new(tri.clone(), edge.clone(), &assign(&[("a", "x"), ("b", "x"), ("c", "y")])).unwrap();
        let face = tri.find_key("a,b,c").unwrap();
        assert_eq!(edge.simplex_key(u.image(face)), "x,y");
    }

    #[test]
    fn rejects_non_simplicial() {
        let hollow = arc(&[&["a", "b"], &["b", "c"], &["c", "a"]]);
        let solid = arc(&[&["a", "b", "c"]]);
        let err = SimplicialMap::inclusion(solid, hollow).unwrap_err();
        assert_eq!(err, Error::NotSimplicial { simplex: "a,b,c".into() });
    }

    #[test]
    fn composition_matches_vertexwise() {
        let tri = arc(&[&["a", "b", "c"]]);
        let id = SimplicialMap::identity(tri.clone());
        let pt = SimplicialMap::to_point(tri.clone());
        assert_eq!(id.then(&pt).unwrap(), pt);
    }
}
