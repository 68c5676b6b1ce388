//! Independent reference computations. None of these call the operation
//! they are used to check; they work from vertex sets and explicit
//! matrices.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use smith_core::roots::{pair, RootDatum};
use smith_core::simplicial::{CFun, Complex, SimplicialMap};
use smith_core::Ring;

pub fn complex(faces: &[&[&str]]) -> Arc<Complex> {
    let faces: Vec<Vec<&str>> = faces.iter().map(|f| f.to_vec()).collect();
    Arc::new(Complex::from_maximal(&faces).unwrap())
}

fn vertex_set(c: &Complex, i: usize) -> BTreeSet<usize> {
    c.simplex(i).iter().copied().collect()
}

fn sign(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `Σ_σ (−1)^{dim σ} f(σ)`, in the function's ring.
pub fn integral(f: &CFun) -> i64 {
    let c = f.carrier();
    let total: i64 = (0..c.len()).map(|i| sign(c.dim_of(i)) * f.get(i)).sum();
    f.ring().reduce(total)
}

/// Local Euler integral at a point of each open simplex: the open cells
/// meeting a small ball around it are exactly the simplices containing it,
/// each contributing `(−1)^{dim}`. Containment is tested on vertex sets.
pub fn dual_by_local_ball(f: &CFun) -> Vec<i64> {
    let c = f.carrier();
    (0..c.len())
        .map(|s| {
            let vs = vertex_set(c, s);
            let total: i64 =
                (0..c.len()).filter(|&t| vs.is_subset(&vertex_set(c, t))).map(|t| sign(c.dim_of(t)) * f.get(t)).sum();
            f.ring().reduce(total)
        })
        .collect()
}

/// `u_! f` by fibers: the fiber of an open simplex over a point of the
/// open image simplex is an open cell of dimension `dim τ − dim u(τ)`.
pub fn push_by_fibers(u: &SimplicialMap, f: &CFun) -> Vec<i64> {
    let (src, tgt) = (u.source(), u.target());
    let mut out = vec![0i64; tgt.len()];
    for t in 0..src.len() {
        let image: BTreeSet<usize> = src.simplex(t).iter().map(|&v| u.vertex_map()[v]).collect();
        let r = (0..tgt.len()).find(|&r| vertex_set(tgt, r) == image).expect("image is a simplex");
        out[r] += sign(src.dim_of(t) - tgt.dim_of(r)) * f.get(t);
    }
    out.into_iter().map(|x| f.ring().reduce(x)).collect()
}

/// The matrix of a linear operator on functions, column `j` the image of
/// the indicator of simplex `j`.
pub fn matrix_of(carrier: &Arc<Complex>, ring: Ring, op: impl Fn(&CFun) -> CFun) -> Vec<Vec<i64>> {
    let n = carrier.len();
    let cols: Vec<Vec<i64>> = (0..n).map(|j| op(&CFun::indicator(carrier.clone(), ring, &[j])).values().to_vec()).collect();
    let m = cols.first().map_or(0, Vec::len);
    (0..m).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    a.iter().map(|row| (0..m).map(|j| (0..k).map(|l| row[l] * b[l][j]).sum()).collect()).collect()
}

pub fn apply(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// Roots in simple-root coordinates by closing the simple roots under the
/// simple reflections `β ↦ β − ⟨β, α_i^∨⟩ α_i`, with
/// `⟨β, α_i^∨⟩ = Σ_j β_j A_ij`.
pub fn roots_by_reflection(cartan: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
    let n = cartan.len();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut stack: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    while let Some(beta) = stack.pop() {
        if !seen.insert(beta.clone()) {
            continue;
        }
        for i in 0..n {
            let c: i64 = (0..n).map(|j| beta[j] * cartan[i][j]).sum();
            let mut next = beta.clone();
            next[i] -= c;
            if !seen.contains(&next) {
                stack.push(next);
            }
        }
    }
    seen
}

/// Weyl's dimension formula `Π ⟨λ+ρ, α^∨⟩ / ⟨ρ, α^∨⟩`, using `2ρ` so that
/// everything stays integral.
pub fn weyl_dimension(rd: &RootDatum, lambda: &[i64]) -> i128 {
    let two_rho: Vec<i64> =
        (0..rd.rank()).map(|k| rd.positive_roots().iter().map(|a| a[k]).sum()).collect();
    let (mut num, mut den) = (1i128, 1i128);
    for c in rd.positive_coroots() {
        let r = i128::from(pair(&two_rho, c));
        num *= 2 * i128::from(pair(lambda, c)) + r;
        den *= r;
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    assert_eq!(den, 1);
    num
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Product of two finitely supported functions on a lattice.
pub fn lattice_convolution(a: &BTreeMap<Vec<i64>, i64>, b: &BTreeMap<Vec<i64>, i64>) -> BTreeMap<Vec<i64>, i64> {
    let mut out: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    for (x, m) in a {
        for (y, n) in b {
            let z: Vec<i64> = x.iter().zip(y).map(|(p, q)| p + q).collect();
            *out.entry(z).or_insert(0) += m * n;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// Rank of an integer matrix over `F_p`, by elimination on a copy.
pub fn rank_mod_p(rows: &[Vec<i64>], p: i64) -> usize {
    let mut m: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, pivot);
        let inv = (1..p).find(|&x| x * m[rank][c] % p == 1).expect("field");
        let row: Vec<i64> = m[rank].iter().map(|x| x * inv % p).collect();
        for (r, other) in m.iter_mut().enumerate() {
            if r != rank && other[c] != 0 {
                let f = other[c];
                for (o, x) in other.iter_mut().zip(&row) {
                    *o = (*o - f * x).rem_euclid(p);
                }
            }
        }
        m[rank] = row;
        rank += 1;
    }
    rank
}
