//! Small exact linear algebra: dense matrices over `F_p` and integer
//! invariant factors.

use std::fmt;

/// Dense row-major matrix over the prime field `F_p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}[", self.p)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        Self { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from integer rows, reducing every entry mod `p`.
    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(p, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix rows");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, x.rem_euclid(p as i64) as u32);
            }
        }
        m
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c) as i64).collect())
            .collect()
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p;
    }

    #[inline]
    pub fn add_at(&mut self, r: usize, c: usize, v: u32) {
        let cur = self.get(r, c);
        self.set(r, c, cur + v % self.p);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p);
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let p = self.p as u64;
        let mut out = Self::zeros(self.p, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k) as u64;
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * out.cols + c;
                    out.data[idx] = ((out.data[idx] as u64 + a * other.get(k, c) as u64) % p) as u32;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x = (*x + y) % self.p;
        }
        out
    }

    pub fn scale(&self, s: i64) -> Self {
        let s = s.rem_euclid(self.p as i64) as u64;
        let mut out = self.clone();
        for x in &mut out.data {
            *x = ((*x as u64 * s) % self.p as u64) as u32;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut base = self.clone();
        let mut acc = Self::identity(self.p, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Kronecker product `self ⊗ other`; the basis of the result is ordered
    /// lexicographically as `(i, j) -> i * other.dim + j`.
    pub fn kron(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p);
        let mut out = Self::zeros(self.p, self.rows * other.rows, self.cols * other.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.get(r1, c1);
                if a == 0 {
                    continue;
                }
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        let v = (a as u64 * other.get(r2, c2) as u64 % self.p as u64) as u32;
                        out.set(r1 * other.rows + r2, c1 * other.cols + c2, v);
                    }
                }
            }
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn put_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c));
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut out = Self::zeros(self.p, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out.set(r, c, self.get(r0 + r, c0 + c));
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let p = self.p as u64;
        let mut m = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..cols {
            let Some(pivot) = (rank..rows).find(|&r| m[r * cols + col] != 0) else {
                continue;
            };
            for c in 0..cols {
                m.swap(rank * cols + c, pivot * cols + c);
            }
            let inv = inverse_mod(m[rank * cols + col] as u64, p);
            for c in 0..cols {
                m[rank * cols + c] = (m[rank * cols + c] as u64 * inv % p) as u32;
            }
            for r in 0..rows {
                if r == rank || m[r * cols + col] == 0 {
                    continue;
                }
                let factor = m[r * cols + col] as u64;
                for c in 0..cols {
                    let sub = factor * m[rank * cols + c] as u64 % p;
                    m[r * cols + c] = ((m[r * cols + c] as u64 + p - sub) % p) as u32;
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }
}

/// Inverse of `a` modulo the prime `p` by Fermat.
pub fn inverse_mod(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "zero has no inverse");
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Nonzero invariant factors `d_1 | d_2 | ...` of an integer matrix
/// (its Smith normal form diagonal, all positive).
pub fn invariant_factors(matrix: &[Vec<i64>]) -> Vec<i64> {
    let mut m: Vec<Vec<i128>> = matrix.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pick the nonzero entry of least absolute value in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                if m[r][c] != 0 && best.is_none_or(|(br, bc)| m[r][c].abs() < m[br][bc].abs()) {
                    best = Some((r, c));
                }
            }
        }
        let Some((br, bc)) = best else { break };
        m.swap(t, br);
        for row in m.iter_mut() {
            row.swap(t, bc);
        }
        let mut dirty = false;
        for r in t + 1..rows {
            let q = m[r][t].div_euclid(m[t][t]);
            if q != 0 {
                for c in t..cols {
                    m[r][c] -= q * m[t][c];
                }
            }
            dirty |= m[r][t] != 0;
        }
        for c in t + 1..cols {
            let q = m[t][c].div_euclid(m[t][t]);
            if q != 0 {
                for r in t..rows {
                    m[r][c] -= q * m[r][t];
                }
            }
            dirty |= m[t][c] != 0;
        }
        if dirty {
            continue;
        }
        // enforce divisibility of the rest of the block by the pivot
        let pivot = m[t][t];
        if let Some(r) = (t + 1..rows).find(|&r| (t + 1..cols).any(|c| m[r][c] % pivot != 0)) {
            for c in t..cols {
                m[t][c] += m[r][c];
            }
            continue;
        }
        diag.push(pivot.abs() as i64);
        t += 1;
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_over_f2_and_f3() {
        let m = FpMatrix::from_rows(2, &[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let m = FpMatrix::from_rows(3, &[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn kron_and_pow() {
        let g = FpMatrix::from_rows(3, &[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]);
        assert_eq!(g.pow(3), FpMatrix::identity(3, 3));
        let k = g.kron(&FpMatrix::identity(3, 2));
        assert_eq!(k.rows(), 6);
        assert_eq!(k.pow(3), FpMatrix::identity(3, 6));
    }

    #[test]
    fn invariant_factors_of_cartan_matrices() {
        // A_2: det 3, cyclic
        assert_eq!(invariant_factors(&[vec![2, -1], vec![-1, 2]]), vec![1, 3]);
        // D_4: center Z/2 x Z/2
        let d4 = vec![
            vec![2, -1, 0, 0],
            vec![-1, 2, -1, -1],
            vec![0, -1, 2, 0],
            vec![0, -1, 0, 2],
        ];
        assert_eq!(invariant_factors(&d4), vec![1, 1, 2, 2]);
        assert_eq!(invariant_factors(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
    }
}
