use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Exact rationals used for all fan geometry.
pub type Q = Ratio<i128>;

/// Maximum ambient dimension handled by the cone computations.
pub const MAX_DIM: usize = 3;

/// A complete simplicial fan in `Q^n`, `n ≤ 3`. Cones are sets of ray
/// indices, face-closed, ordered by dimension then lexicographically; the
/// origin cone is index 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    dim: usize,
    rays: Vec<Vec<i64>>,
    cones: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

pub fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    v.iter().map(|&x| x / g).collect()
}

/// Solves `x = Σ λ_i r_i`; `None` if `x` is not in the span of the rays.
/// The rays must be linearly independent.
pub fn coordinates(rays: &[&[i64]], x: &[Q]) -> Option<Vec<Q>> {
    let n = x.len();
    let k = rays.len();
    // augmented n × (k+1) system
    let mut m: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            let mut row: Vec<Q> = rays.iter().map(|r| Q::from_integer(r[i] as i128)).collect();
            row.push(x[i]);
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..k {
        let Some(p) = (row..n).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for c in col..=k {
            m[row][c] *= inv;
        }
        for r in 0..n {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col];
                for c in col..=k {
                    let sub = factor * m[row][c];
                    m[r][c] -= sub;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if m[row..].iter().any(|r| !r[k].is_zero()) {
        return None;
    }
    let mut out = vec![Q::zero(); k];
    for (r, &c) in pivots.iter().enumerate() {
        out[c] = m[r][k];
    }
    Some(out)
}

fn rank(vectors: &[&[i64]]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let n = vectors[0].len();
    let mut m: Vec<Vec<Q>> = vectors.iter().map(|v| v.iter().map(|&x| Q::from_integer(x as i128)).collect()).collect();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col] / m[r][col];
                for c in 0..n {
                    let sub = f * m[r][c];
                    m[i][c] -= sub;
                }
            }
        }
        r += 1;
    }
    r
}

/// A normal vector to the hyperplane spanned by `n - 1` independent vectors.
fn normal(vectors: &[&[i64]], n: usize) -> Vec<i64> {
    match n {
        1 => vec![1],
        2 => vec![-vectors[0][1], vectors[0][0]],
        3 => {
            let (a, b) = (vectors[0], vectors[1]);
            vec![a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
        }
        _ => unreachable!("dimension is capped"),
    }
}

/// Formats a ray as `"x,y"`.
pub fn ray_key(r: &[i64]) -> String {
    r.iter().join(",")
}

impl Fan {
    /// Builds a fan from cones given by their ray generators (the face
    /// closure is added) and validates it.
    pub fn new(dim: usize, cones: &[Vec<Vec<i64>>]) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::Unsupported(format!("fans of dimension {dim}; supported range is 1..=3")));
        }
        let mut rays: Vec<Vec<i64>> = Vec::new();
        let mut listed: Vec<Vec<usize>> = Vec::new();
        for cone in cones {
            let mut idx = Vec::new();
            for r in cone {
                if r.len() != dim {
                    return Err(Error::InvalidFan(format!("ray {r:?} does not have {dim} coordinates")));
                }
                if r.iter().all(|&x| x == 0) {
                    return Err(Error::InvalidFan("zero ray".into()));
                }
                let r = primitive(r);
                let i = match rays.iter().position(|s| *s == r) {
                    Some(i) => i,
                    None => {
                        rays.push(r);
                        rays.len() - 1
                    }
                };
                idx.push(i);
            }
            idx.sort_unstable();
            if idx.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidFan(format!("cone {cone:?} repeats a ray")));
            }
            listed.push(idx);
        }
        // relabel rays in lexicographic order for a canonical layout
        let order: Vec<usize> = (0..rays.len()).sorted_by(|&a, &b| rays[a].cmp(&rays[b])).collect();
        let mut new_index = vec![0; rays.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let rays: Vec<Vec<i64>> = order.iter().map(|&o| rays[o].clone()).collect();
        let mut all: BTreeSet<(usize, Vec<usize>)> = BTreeSet::from([(0, Vec::new())]);
        for c in &listed {
            let c: Vec<usize> = c.iter().map(|&i| new_index[i]).sorted().collect();
            for k in 1..=c.len() {
                for sub in c.iter().copied().combinations(k) {
                    all.insert((k, sub));
                }
            }
        }
        let cones: Vec<Vec<usize>> = all.into_iter().map(|(_, c)| c).collect();
        let index = cones.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        let fan = Self { dim, rays, cones, index };
        fan.validate()?;
        Ok(fan)
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim;
        for (i, c) in self.cones.iter().enumerate() {
            if c.len() > n || rank(&self.cone_rays(i)) != c.len() {
                return Err(Error::InvalidFan(format!("cone [{}] is not simplicial", self.cone_key(i))));
            }
        }
        let maximal: Vec<usize> = (0..self.cones.len()).filter(|&i| self.cones[i].len() == n).collect();
        if maximal.is_empty() {
            return Err(Error::InvalidFan("no full-dimensional cone".into()));
        }
        for i in 0..self.cones.len() {
            if !maximal.iter().any(|&m| self.cones[i].iter().all(|r| self.cones[m].contains(r))) {
                return Err(Error::InvalidFan(format!("cone [{}] is not a face of a maximal cone", self.cone_key(i))));
            }
        }
        let mut walls = Vec::new();
        for w in (0..self.cones.len()).filter(|&i| self.cones[i].len() == n - 1) {
            let around: Vec<usize> =
                maximal.iter().copied().filter(|&m| self.cones[w].iter().all(|r| self.cones[m].contains(r))).collect();
            if around.len() != 2 {
                return Err(Error::InvalidFan(format!(
                    "wall [{}] lies in {} maximal cones instead of 2",
                    self.cone_key(w),
                    around.len()
                )));
            }
            let nv = normal(&self.cone_rays(w), n);
            let side = |m: usize| {
                let extra = self.cones[m].iter().find(|r| !self.cones[w].contains(r)).expect("one extra ray");
                dot(&nv, &self.rays[*extra]).signum()
            };
            if side(around[0]) * side(around[1]) >= 0 {
                return Err(Error::InvalidFan(format!("cones around wall [{}] overlap", self.cone_key(w))));
            }
            walls.push(nv);
        }
        // a point off every wall is covered exactly once iff the fan is complete
        let candidates: [[i64; 3]; 4] =
            [[1_000_003, 7_919, -104_729], [-15_485_863, 2_750_159, 3_571], [611_953, -982_451_653, 17], [3, 5, 7]];
        let point = candidates
            .iter()
            .map(|c| c[..n].to_vec())
            .find(|p| walls.iter().all(|w| dot(w, p) != 0))
            .ok_or_else(|| Error::Internal("no generic test point".into()))?;
        let q: Vec<Q> = point.iter().map(|&x| Q::from_integer(x as i128)).collect();
        let covering = maximal.iter().filter(|&&m| self.relint_contains(m, &q)).count();
        if covering != 1 {
            return Err(Error::InvalidFan(format!("fan is not complete: a generic point lies in {covering} cones")));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub fn cone(&self, i: usize) -> &[usize] {
        &self.cones[i]
    }

    pub fn cone_dim(&self, i: usize) -> usize {
        self.cones[i].len()
    }

    pub fn cone_rays(&self, i: usize) -> Vec<&[i64]> {
        self.cones[i].iter().map(|&r| self.rays[r].as_slice()).collect()
    }

    pub fn maximal_cones(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.cones[i].len() == self.dim).collect()
    }

    /// Canonical key: sorted rays as `"x,y"` joined by `;`; the origin is `""`.
    pub fn cone_key(&self, i: usize) -> String {
        self.cones[i].iter().map(|&r| ray_key(&self.rays[r])).join(";")
    }

    pub fn find_key(&self, key: &str) -> Option<usize> {
        if key.trim().is_empty() {
            return Some(0);
        }
        let mut idx = Vec::new();
        for part in key.split(';') {
            let r: Vec<i64> = part.split(',').map(|x| x.trim().parse().ok()).collect::<Option<_>>()?;
            idx.push(self.rays.iter().position(|s| *s == r)?);
        }
        idx.sort_unstable();
        self.index.get(&idx).copied()
    }

    pub fn find_rays(&self, rays: &[Vec<i64>]) -> Option<usize> {
        let mut idx: Vec<usize> =
            rays.iter().map(|r| self.rays.iter().position(|s| *s == primitive(r))).collect::<Option<_>>()?;
        idx.sort_unstable();
        self.index.get(&idx).copied()
    }

    /// All faces of cone `i` (including the origin and `i`).
    pub fn faces(&self, i: usize) -> Vec<usize> {
        let c = &self.cones[i];
        (0..=c.len()).flat_map(|k| c.iter().copied().combinations(k)).map(|s| self.index[&s]).collect()
    }

    /// True when `x` lies in the relative interior of cone `i`.
    pub fn relint_contains(&self, i: usize, x: &[Q]) -> bool {
        if self.cones[i].is_empty() {
            return x.iter().all(Zero::is_zero);
        }
        coordinates(&self.cone_rays(i), x).is_some_and(|l| l.iter().all(Signed::is_positive))
    }

    /// The unique cone whose relative interior contains `x`.
    pub fn locate(&self, x: &[Q]) -> usize {
        (0..self.len())
            .find(|&i| self.relint_contains(i, x))
            .expect("a complete fan covers every point")
    }

    /// Sum of the rays, a point in the relative interior.
    pub fn interior_point(&self, i: usize) -> Vec<i64> {
        let mut p = vec![0; self.dim];
        for &r in &self.cones[i] {
            for (a, b) in p.iter_mut().zip(&self.rays[r]) {
                *a += b;
            }
        }
        p
    }

    /// Maximal cones as ray lists, the serialization form.
    pub fn maximal_ray_lists(&self) -> Vec<Vec<Vec<i64>>> {
        self.maximal_cones().into_iter().map(|i| self.cone_rays(i).into_iter().map(<[i64]>::to_vec).collect()).collect()
    }

    /// Stellar subdivision at the primitive vector `v`.
    pub fn stellar(&self, v: &[i64]) -> Result<Fan> {
        let q: Vec<Q> = v.iter().map(|&x| Q::from_integer(x as i128)).collect();
        let tau = self.locate(&q);
        if self.cones[tau].is_empty() {
            return Err(Error::InvalidFan("cannot subdivide at the origin".into()));
        }
        let v = primitive(v);
        let mut out = Vec::new();
        for m in self.maximal_cones() {
            let rays: Vec<Vec<i64>> = self.cone_rays(m).into_iter().map(<[i64]>::to_vec).collect();
            if self.cones[tau].iter().all(|r| self.cones[m].contains(r)) {
                for &drop in &self.cones[tau] {
                    let mut c: Vec<Vec<i64>> = rays.iter().filter(|r| **r != self.rays[drop]).cloned().collect();
                    c.push(v.clone());
                    out.push(c);
                }
            } else {
                out.push(rays);
            }
        }
        Fan::new(self.dim, &out)
    }

    /// The coordinate-orthant fan of `Q^n`.
    pub fn orthants(n: usize) -> Fan {
        let cones: Vec<Vec<Vec<i64>>> = (0..1usize << n)
            .map(|mask| {
                (0..n)
                    .map(|i| {
                        let mut r = vec![0; n];
                        r[i] = if mask >> i & 1 == 1 { -1 } else { 1 };
                        r
                    })
                    .collect()
            })
            .collect();
        Fan::new(n, &cones).expect("orthant fans are complete")
    }

    /// True when the coordinate permutation maps cones to cones.
    pub fn is_invariant(&self, perm: &[usize]) -> bool {
        self.permuted_cones(perm).is_some()
    }

    /// Cone index permutation induced by `(g v)_{perm[i]} = v_i`.
    pub fn permuted_cones(&self, perm: &[usize]) -> Option<Vec<usize>> {
        let act = |r: &[i64]| {
            let mut out = vec![0; r.len()];
            for (i, &x) in r.iter().enumerate() {
                out[perm[i]] = x;
            }
            out
        };
        (0..self.len())
            .map(|i| {
                let img: Vec<Vec<i64>> = self.cone_rays(i).into_iter().map(act).collect();
                self.find_rays(&img)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthant_fans_validate() {
        for n in 1..=3 {
            let f = Fan::orthants(n);
            assert_eq!(f.maximal_cones().len(), 1 << n);
            assert_eq!(f.rays().len(), 2 * n);
        }
    }

    #[test]
    fn rejects_incomplete_and_overlapping_fans() {
        let half = vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![-1, 0]]];
        assert!(matches!(Fan::new(2, &half), Err(Error::InvalidFan(_))));
        let overlap = vec![
            vec![vec![1, 0], vec![0, 1]],
            vec![vec![0, 1], vec![1, 1]],
            vec![vec![1, 1], vec![-1, 0]],
            vec![vec![-1, 0], vec![0, -1]],
            vec![vec![0, -1], vec![1, 0]],
        ];
        assert!(Fan::new(2, &overlap).is_err());
        let degenerate = vec![vec![vec![1, 0], vec![2, 0]]];
        assert!(Fan::new(2, &degenerate).is_err());
        assert!(matches!(Fan::new(4, &[]), Err(Error::Unsupported(_))));
    }

    #[test]
    fn stellar_subdivision_and_lookup() {
        let f = Fan::orthants(2).stellar(&[1, 1]).unwrap();
        assert_eq!(f.maximal_cones().len(), 5);
        let i = f.find_key("1,1;0,1").unwrap();
        assert_eq!(f.cone_key(i), "0,1;1,1");
        let x = [Q::from_integer(3), Q::from_integer(3)];
        assert_eq!(f.cone_key(f.locate(&x)), "1,1");
        assert!(f.is_invariant(&[1, 0]));
        let g = Fan::orthants(3).stellar(&[1, 1, 1]).unwrap();
        assert!(g.is_invariant(&[1, 2, 0]));
        assert_eq!(g.maximal_cones().len(), 10);
    }
}
