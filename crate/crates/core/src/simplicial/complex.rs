use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};

/// Orders vertex labels numerically when both parse as integers, and
/// lexicographically otherwise (numeric labels first).
pub fn label_cmp(a: &str, b: &str) -> Ordering {
    match (a.parse::<i64>(), b.parse::<i64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y).then_with(|| a.cmp(b)),
        (Ok(_), Err(_)) => Ordering::Less,
        (Err(_), Ok(_)) => Ordering::Greater,
        (Err(_), Err(_)) => a.cmp(b),
    }
}

/// A finite abstract simplicial complex.
///
/// Vertices are indexed `0..n` in label order and simplices are sorted vertex
/// lists, ordered by dimension and then lexicographically. Since every vertex
/// is a simplex, the simplex with index `v < n` is the vertex `v`.
#[derive(Clone)]
pub struct Complex {
    labels: Vec<String>,
    simplices: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    cofaces: Vec<Vec<usize>>,
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.simplices == other.simplices
    }
}

impl Eq for Complex {}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.maximal_simplices().iter().map(|&s| self.simplex_key(s))).finish()
    }
}

impl Complex {
    /// Face closure of a list of vertex sets.
    pub fn from_maximal<S: AsRef<str>>(faces: &[Vec<S>]) -> Result<Self> {
        for face in faces {
            if face.is_empty() {
                return Err(Error::Malformed("empty vertex set".into()));
            }
            if let Some(dup) = face.iter().map(AsRef::as_ref).duplicates().next() {
                return Err(Error::Malformed(format!("vertex {dup:?} repeated within one simplex")));
            }
        }
        let mut labels: Vec<String> =
            faces.iter().flatten().map(|s| s.as_ref().to_string()).unique().collect();
        labels.sort_by(|a, b| label_cmp(a, b));
        let position: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();

        let mut all: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
        for face in faces {
            let mut vs: Vec<usize> = face.iter().map(|s| position[s.as_ref()]).collect();
            vs.sort_unstable();
            if all.contains(&(vs.len(), vs.clone())) {
                continue;
            }
            for k in 1..=vs.len() {
                for sub in vs.iter().copied().combinations(k) {
                    all.insert((k, sub));
                }
            }
        }
        Ok(Self::assemble(labels, all.into_iter().map(|(_, s)| s).collect()))
    }

    pub fn empty() -> Self {
        Self::assemble(Vec::new(), Vec::new())
    }

    /// A single vertex.
    pub fn point(label: &str) -> Self {
        Self::from_maximal(&[vec![label]]).expect("a point is a valid complex")
    }

    // `simplices` must already be face-closed and sorted by (dim, lex).
    fn assemble(labels: Vec<String>, simplices: Vec<Vec<usize>>) -> Self {
        let index: HashMap<Vec<usize>, usize> =
            simplices.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let mut cofaces = vec![Vec::new(); simplices.len()];
        for (i, s) in simplices.iter().enumerate() {
            for k in 1..=s.len() {
                for sub in s.iter().copied().combinations(k) {
                    cofaces[index[&sub]].push(i);
                }
            }
        }
        Self { labels, simplices, index, cofaces }
    }

    /// Number of simplices.
    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn vertex(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn simplex(&self, i: usize) -> &[usize] {
        &self.simplices[i]
    }

    pub fn simplices(&self) -> impl Iterator<Item = &[usize]> {
        self.simplices.iter().map(Vec::as_slice)
    }

    pub fn dim_of(&self, i: usize) -> usize {
        self.simplices[i].len() - 1
    }

    /// Dimension of the complex; `None` when empty.
    pub fn dimension(&self) -> Option<usize> {
        self.simplices.last().map(|s| s.len() - 1)
    }

    /// Index of the simplex with the given (sorted or unsorted) vertex list.
    pub fn find(&self, vertices: &[usize]) -> Option<usize> {
        let mut key = vertices.to_vec();
        key.sort_unstable();
        key.dedup();
        self.index.get(&key).copied()
    }

    pub fn find_labels<S: AsRef<str>>(&self, labels: &[S]) -> Option<usize> {
        let vs: Option<Vec<usize>> = labels.iter().map(|l| self.vertex(l.as_ref())).collect();
        self.find(&vs?)
    }

    /// Looks up a simplex by its comma-joined key, e.g. `"a,b"`.
    pub fn find_key(&self, key: &str) -> Option<usize> {
        let parts: Vec<&str> = key.split(',').map(str::trim).collect();
        if parts.iter().any(|p| p.is_empty()) {
            return None;
        }
        self.find_labels(&parts)
    }

    /// All simplices containing `i`, including `i` itself.
    pub fn cofaces(&self, i: usize) -> &[usize] {
        &self.cofaces[i]
    }

    /// All nonempty faces of `i`, including `i` itself.
    pub fn faces(&self, i: usize) -> Vec<usize> {
        let s = &self.simplices[i];
        (1..=s.len())
            .flat_map(|k| s.iter().copied().combinations(k))
            .map(|sub| self.index[&sub])
            .collect()
    }

    pub fn maximal_simplices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.cofaces[i].len() == 1).collect()
    }

    /// Sorted vertex labels of a simplex.
    pub fn simplex_labels(&self, i: usize) -> Vec<&str> {
        self.simplices[i].iter().map(|&v| self.labels[v].as_str()).collect()
    }

    /// Canonical comma-joined key of a simplex.
    pub fn simplex_key(&self, i: usize) -> String {
        self.simplex_labels(i).join(",")
    }

    /// Maximal simplices as label lists, the serialization form.
    pub fn maximal_label_lists(&self) -> Vec<Vec<String>> {
        self.maximal_simplices()
            .into_iter()
            .map(|i| self.simplex_labels(i).into_iter().map(String::from).collect())
            .collect()
    }

    /// The subcomplex of the simplices selected by `keep`; the selection must
    /// be closed under taking faces.
    pub fn subcomplex(&self, keep: impl Fn(usize) -> bool) -> Result<Complex> {
        let chosen: Vec<usize> = (0..self.len()).filter(|&i| keep(i)).collect();
        for &i in &chosen {
            if let Some(f) = self.faces(i).into_iter().find(|&f| !keep(f)) {
                return Err(Error::Malformed(format!(
                    "selection is not a subcomplex: {} is kept but its face {} is not",
                    self.simplex_key(i),
                    self.simplex_key(f)
                )));
            }
        }
        let lists: Vec<Vec<&str>> = chosen.iter().map(|&i| self.simplex_labels(i)).collect();
        Complex::from_maximal(&lists)
    }

    /// The closed star of a vertex: every face of every simplex containing it.
    pub fn closed_star(&self, v: usize) -> Vec<usize> {
        let mut out: BTreeSet<usize> = BTreeSet::new();
        for &t in self.cofaces(v) {
            out.extend(self.faces(t));
        }
        out.into_iter().collect()
    }

    /// The link of a vertex, as a complex; empty if `v` is isolated.
    pub fn link(&self, v: usize) -> Complex {
        let lists: Vec<Vec<&str>> = self
            .cofaces(v)
            .iter()
            .filter(|&&t| self.dim_of(t) > 0)
            .map(|&t| {
                self.simplices[t].iter().filter(|&&w| w != v).map(|&w| self.labels[w].as_str()).collect()
            })
            .collect();
        Complex::from_maximal(&lists).expect("link faces are valid")
    }

    /// Euler characteristic (of the compact complex).
    pub fn euler_characteristic(&self) -> i64 {
        self.simplices.iter().map(|s| if s.len() % 2 == 1 { 1 } else { -1 }).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(faces: &[&[&str]]) -> Complex {
        let v: Vec<Vec<&str>> = faces.iter().map(|f| f.to_vec()).collect();
        Complex::from_maximal(&v).unwrap()
    }

    #[test]
    fn face_closure_counts() {
        assert_eq!(c(&[&["a", "b", "c"]]).len(), 7);
        assert_eq!(c(&[&["a", "b"], &["b", "c"], &["c", "a"]]).len(), 6);
        assert_eq!(c(&[&["a"]]).len(), 1);
    }

    #[test]
    fn rejects_repeated_vertex() {
        let err = Complex::from_maximal(&[vec!["a", "a"]]).unwrap_err();
        assert!(matches!(err, Error::Malformed(_)));
        assert!(Complex::from_maximal::<&str>(&[vec![]]).is_err());
    }

    #[test]
    fn ordering_is_by_dimension_then_labels() {
        let x = c(&[&["10", "2"], &["2", "3"]]);
        assert_eq!(x.labels(), &["2", "3", "10"]);
        assert_eq!(x.simplex_key(0), "2");
        assert_eq!(x.simplex_key(3), "2,3");
        assert_eq!(x.simplex_key(4), "2,10");
        assert_eq!(x.find_key("10,2"), Some(4));
        assert_eq!(x.find_key("3,10"), None);
    }

    #[test]
    fn cofaces_and_link() {
        let x = c(&[&["a", "b", "c"], &["c", "d"]]);
        let cv = x.vertex("c").unwrap();
        assert_eq!(x.cofaces(cv).len(), 5);
        let link = x.link(cv);
        assert_eq!(link.len(), 4); // edge ab plus isolated d
        assert_eq!(x.euler_characteristic(), 1);
        assert_eq!(x.closed_star(x.vertex("d").unwrap()).len(), 3);
    }

    #[test]
    fn subcomplex_must_be_closed() {
        let x = c(&[&["a", "b"]]);
        let e = x.find_key("a,b").unwrap();
        assert!(x.subcomplex(|i| i == e).is_err());
        assert_eq!(x.subcomplex(|i| x.dim_of(i) == 0).unwrap().len(), 2);
    }
}
