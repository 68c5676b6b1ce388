use rand::Rng;

use crate::error::{Error, Result};

use super::field::{Gf, GfMat};

/// A quadratic form `q(v) = Σ_{i≤j} Q_ij v_i v_j` over `F_2` or `F_4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadForm {
    coeffs: GfMat,
}

impl QuadForm {
    /// Takes the upper-triangular part of `q`; entries below the diagonal
    /// must be zero.
    pub fn new(coeffs: GfMat) -> Result<Self> {
        if coeffs.rows() != coeffs.cols() {
            return Err(Error::Malformed("form matrix must be square".into()));
        }
        for r in 0..coeffs.rows() {
            for c in 0..r {
                if coeffs.get(r, c) != 0 {
                    return Err(Error::Malformed("form matrix must be upper triangular".into()));
                }
            }
        }
        Ok(Self { coeffs })
    }

    /// `x_1x_2 + ... + x_{2a-1}x_{2a}` plus `x_d²` when `d` is odd.
    pub fn standard(d: usize, field: Gf) -> Self {
        let mut q = GfMat::zeros(field, d, d);
        for i in 0..d / 2 {
            q.set(2 * i, 2 * i + 1, 1);
        }
        if d % 2 == 1 {
            q.set(d - 1, d - 1, 1);
        }
        Self { coeffs: q }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.rows()
    }

    pub fn field(&self) -> Gf {
        self.coeffs.field()
    }

    pub fn coefficients(&self) -> &GfMat {
        &self.coeffs
    }

    pub fn eval(&self, v: &[u8]) -> u8 {
        let f = self.field();
        let mut acc = 0;
        for i in 0..self.dim() {
            if v[i] == 0 {
                continue;
            }
            for j in i..self.dim() {
                let c = self.coeffs.get(i, j);
                if c != 0 && v[j] != 0 {
                    acc = f.add(acc, f.mul(c, f.mul(v[i], v[j])));
                }
            }
        }
        acc
    }

    /// `B = Q + Qᵀ`, so `B(v, w) = q(v + w) + q(v) + q(w)`.
    pub fn polar(&self) -> GfMat {
        self.coeffs.add(&self.coeffs.transpose())
    }

    pub fn polar_eval(&self, v: &[u8], w: &[u8]) -> u8 {
        let b = self.polar();
        let bw = b.apply(w);
        v.iter().zip(&bw).fold(0, |acc, (&x, &y)| self.field().add(acc, self.field().mul(x, y)))
    }

    /// The polar form is alternating (`B(v, v) = 0`), which in
    /// characteristic 2 amounts to a zero diagonal.
    pub fn polar_is_alternating(&self) -> bool {
        let b = self.polar();
        (0..self.dim()).all(|i| b.get(i, i) == 0)
    }

    /// Dimension of the radical of the polar form.
    pub fn polar_radical_dim(&self) -> usize {
        self.dim() - self.polar().rank()
    }

    /// `q(g e_i) = q(e_i)` and `B(g e_i, g e_j) = B(e_i, e_j)`, which
    /// determine `q ∘ g` completely in characteristic 2; `g` must be invertible.
    pub fn is_isometry(&self, g: &GfMat) -> bool {
        let d = self.dim();
        if g.rows() != d || g.cols() != d || !g.is_invertible() {
            return false;
        }
        let cols: Vec<Vec<u8>> = (0..d).map(|i| g.column(i)).collect();
        let b = self.polar();
        for i in 0..d {
            if self.eval(&cols[i]) != self.coeffs.get(i, i) {
                return false;
            }
            for j in i + 1..d {
                if self.polar_eval(&cols[i], &cols[j]) != b.get(i, j) {
                    return false;
                }
            }
        }
        true
    }

    /// Checks `q(gv) = q(v)` on every vector; only for `q^d ≤ 2^12`.
    pub fn preserves_everywhere(&self, g: &GfMat) -> Option<bool> {
        if (self.field().size() as u32).checked_pow(self.dim() as u32).is_none_or(|n| n > 1 << 12) {
            return None;
        }
        let vectors = all_vectors(self.field(), self.dim())?;
        Some(vectors.iter().all(|v| self.eval(&g.apply(v)) == self.eval(v)))
    }

    /// Every isometry, by backtracking over images of basis vectors.
    pub fn orthogonal_group(&self) -> Result<Vec<GfMat>> {
        let d = self.dim();
        let vectors = all_vectors(self.field(), d).ok_or_else(|| Error::Unsupported("group too large to enumerate".into()))?;
        let b = self.polar();
        let mut out = Vec::new();
        let mut chosen: Vec<Vec<u8>> = Vec::new();
        self.extend(&vectors, &b, &mut chosen, &mut out);
        Ok(out)
    }

    fn extend(&self, vectors: &[Vec<u8>], b: &GfMat, chosen: &mut Vec<Vec<u8>>, out: &mut Vec<GfMat>) {
        let i = chosen.len();
        if i == self.dim() {
            let g = GfMat::from_columns(self.field(), chosen);
            if g.is_invertible() {
                out.push(g);
            }
            return;
        }
        for v in vectors {
            if self.eval(v) != self.coeffs.get(i, i) {
                continue;
            }
            if chosen.iter().enumerate().any(|(j, w)| self.polar_eval(w, v) != b.get(j, i)) {
                continue;
            }
            chosen.push(v.clone());
            self.extend(vectors, b, chosen, out);
            chosen.pop();
        }
    }

    /// The orthogonal transvection `v ↦ v + B(v, u) q(u)⁻¹ u`, for `q(u) ≠ 0`.
    pub fn transvection(&self, u: &[u8]) -> Option<GfMat> {
        let f = self.field();
        let inv = f.inv(self.eval(u))?;
        let cols: Vec<Vec<u8>> = (0..self.dim())
            .map(|i| {
                let e: Vec<u8> = (0..self.dim()).map(|k| u8::from(k == i)).collect();
                let c = f.mul(self.polar_eval(&e, u), inv);
                e.iter().zip(u).map(|(&x, &y)| f.add(x, f.mul(c, y))).collect()
            })
            .collect();
        Some(GfMat::from_columns(f, &cols))
    }

    /// A product of `steps` random transvections.
    pub fn random_isometry<R: Rng>(&self, rng: &mut R, steps: usize) -> GfMat {
        let f = self.field();
        let mut g = GfMat::identity(f, self.dim());
        let mut done = 0;
        while done < steps {
            let u: Vec<u8> = (0..self.dim()).map(|_| rng.gen_range(0..f.size())).collect();
            if let Some(t) = self.transvection(&u) {
                g = t.mul(&g);
                done += 1;
            }
        }
        g
    }
}

pub fn all_vectors(field: Gf, d: usize) -> Option<Vec<Vec<u8>>> {
    let q = field.size() as usize;
    let total = q.checked_pow(d as u32)?;
    if total > 1 << 16 {
        return None;
    }
    Some(
        (0..total)
            .map(|mut n| {
                (0..d)
                    .map(|_| {
                        let x = (n % q) as u8;
                        n /= q;
                        x
                    })
                    .collect()
            })
            .collect(),
    )
}

/// Dickson invariant `rank(g − 1) mod 2` of an isometry of an
/// even-dimensional form with nondegenerate polar form. In odd dimension
/// `O = SO` in characteristic 2 and the invariant is `0`.
pub fn dickson_invariant(form: &QuadForm, g: &GfMat) -> Result<u8> {
    if !form.is_isometry(g) {
        return Err(Error::NotIsometry(format!("{:?}", g.to_rows())));
    }
    if form.dim() % 2 == 1 {
        return Ok(0);
    }
    if form.polar_radical_dim() != 0 {
        return Err(Error::Unsupported("Dickson invariant needs a nondegenerate polar form".into()));
    }
    let id = GfMat::identity(form.field(), form.dim());
    Ok((g.add(&id).rank() % 2) as u8)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_forms() {
        let f = Gf::f2();
        let q3 = QuadForm::standard(3, f);
        assert_eq!(q3.eval(&[1, 1, 0]), 1);
        assert_eq!(q3.eval(&[0, 0, 1]), 1);
        assert_eq!(q3.polar_radical_dim(), 1);
        let q4 = QuadForm::standard(4, f);
        assert!(q4.polar_is_alternating());
        assert_eq!(q4.polar_radical_dim(), 0);
        let q2 = QuadForm::standard(2, f);
        assert_eq!(q2.polar().to_rows(), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn orthogonal_group_orders() {
        let f = Gf::f2();
        assert_eq!(QuadForm::standard(2, f).orthogonal_group().unwrap().len(), 2);
        assert_eq!(QuadForm::standard(3, f).orthogonal_group().unwrap().len(), 6);
        assert_eq!(QuadForm::standard(4, f).orthogonal_group().unwrap().len(), 72);
    }

    #[test]
    fn dickson_of_swap_and_additivity() {
        let f = Gf::f2();
        let q = QuadForm::standard(2, f);
        let swap = GfMat::from_rows(f, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(dickson_invariant(&q, &swap).unwrap(), 1);
        assert_eq!(dickson_invariant(&q, &GfMat::identity(f, 2)).unwrap(), 0);
        let q4 = QuadForm::standard(4, f);
        let group = q4.orthogonal_group().unwrap();
        for g in &group {
            for h in &group {
                let d = dickson_invariant(&q4, &g.mul(h)).unwrap();
                assert_eq!(d, dickson_invariant(&q4, g).unwrap() ^ dickson_invariant(&q4, h).unwrap());
            }
        }
        let not_iso = GfMat::from_rows(f, &[vec![1, 1], vec![0, 1]]).unwrap();
        assert!(dickson_invariant(&q, &not_iso).is_err());
    }

    #[test]
    fn transvections_are_isometries() {
        let q = QuadForm::standard(5, Gf::f4());
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(1);
        for _ in 0..20 {
            let g = q.random_isometry(&mut rng, 6);
            assert!(q.is_isometry(&g));
            assert_eq!(q.preserves_everywhere(&g), Some(true));
        }
    }
}
