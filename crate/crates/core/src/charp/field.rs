use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// `F_2` or `F_4 = F_2[ω]/(ω² + ω + 1)`; elements are `0..q` with bit 1
/// standing for `ω`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Gf {
    q: u8,
}

const MUL4: [[u8; 4]; 4] = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]];

impl Gf {
    pub fn new(q: u32) -> Result<Self> {
        match q {
            2 | 4 => Ok(Self { q: q as u8 }),
            _ => Err(Error::Unsupported(format!("field F_{q}; only F_2 and F_4 are modelled"))),
        }
    }

    pub fn f2() -> Self {
        Self { q: 2 }
    }

    pub fn f4() -> Self {
        Self { q: 4 }
    }

    pub fn size(self) -> u8 {
        self.q
    }

    pub fn elements(self) -> impl Iterator<Item = u8> {
        0..self.q
    }

    pub fn add(self, a: u8, b: u8) -> u8 {
        a ^ b
    }

    pub fn mul(self, a: u8, b: u8) -> u8 {
        MUL4[a as usize][b as usize]
    }

    pub fn inv(self, a: u8) -> Option<u8> {
        (1..self.q).find(|&b| self.mul(a, b) == 1)
    }
}

impl fmt::Display for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.q)
    }
}

/// Dense matrix over [`Gf`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GfMat {
    field: Gf,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl GfMat {
    pub fn zeros(field: Gf, rows: usize, cols: usize) -> Self {
        Self { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Gf, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: Gf, rows: &[Vec<u8>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Malformed("ragged matrix".into()));
        }
        if rows.iter().flatten().any(|&x| x >= field.size()) {
            return Err(Error::Malformed(format!("entry outside {field}")));
        }
        Ok(Self { field, rows: r, cols: c, data: rows.concat() })
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[u8]>::to_vec).collect()
    }

    pub fn field(&self) -> Gf {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<u8> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn from_columns(field: Gf, cols: &[Vec<u8>]) -> Self {
        let rows = cols.first().map_or(0, Vec::len);
        let mut m = Self::zeros(field, rows, cols.len());
        for (c, col) in cols.iter().enumerate() {
            for (r, &v) in col.iter().enumerate() {
                m.set(r, c, v);
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = f.add(out.get(r, c), f.mul(a, other.get(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[u8]) -> Vec<u8> {
        let f = self.field;
        (0..self.rows).map(|r| (0..self.cols).fold(0, |acc, c| f.add(acc, f.mul(self.get(r, c), v[c])))).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a ^ b).collect();
        Self { data, ..self.clone() }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.field, self.rows)
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut m = Self::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c));
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                m.set(self.rows + r, self.cols + c, other.get(r, c));
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        let f = self.field;
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..m.cols {
            let Some(p) = (rank..m.rows).find(|&r| m.get(r, c) != 0) else { continue };
            for k in 0..m.cols {
                let (a, b) = (m.get(p, k), m.get(rank, k));
                m.set(p, k, b);
                m.set(rank, k, a);
            }
            let inv = f.inv(m.get(rank, c)).expect("nonzero");
            for r in 0..m.rows {
                if r != rank && m.get(r, c) != 0 {
                    let factor = f.mul(m.get(r, c), inv);
                    for k in 0..m.cols {
                        let v = f.add(m.get(r, k), f.mul(factor, m.get(rank, k)));
                        m.set(r, k, v);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

impl Serialize for GfMat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_is_a_field() {
        let f = Gf::f4();
        for a in 1..4 {
            let inv = f.inv(a).unwrap();
            assert_eq!(f.mul(a, inv), 1);
        }
        // ω² = ω + 1
        assert_eq!(f.mul(2, 2), f.add(2, 1));
        assert!(Gf::new(3).is_err());
    }

    #[test]
    fn rank_over_f4() {
        let f = Gf::f4();
        let m = GfMat::from_rows(f, &[vec![1, 2], vec![2, 3]]).unwrap();
        // second row is ω times the first
        assert_eq!(m.rank(), 1);
        assert!(GfMat::identity(f, 3).is_invertible());
    }
}
