use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

use super::cartan::{components, type_label, CartanType};

/// Roots of a finite root system of rank ≤ 8 never exceed this count
/// (E8 has 240); the reflection closure aborts beyond it.
const MAX_ROOTS: usize = 2 * 240 + 2;

pub type Rat = Ratio<i128>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Isogeny {
    SimplyConnected,
    Adjoint,
    /// Any other lattice, e.g. a centralizer sitting in an ambient lattice.
    Intermediate,
}

impl Isogeny {
    pub fn dual(self) -> Self {
        match self {
            Isogeny::SimplyConnected => Isogeny::Adjoint,
            Isogeny::Adjoint => Isogeny::SimplyConnected,
            Isogeny::Intermediate => Isogeny::Intermediate,
        }
    }
}

impl fmt::Display for Isogeny {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Isogeny::SimplyConnected => "sc",
            Isogeny::Adjoint => "adj",
            Isogeny::Intermediate => "int",
        })
    }
}

impl FromStr for Isogeny {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sc" | "simply_connected" => Ok(Isogeny::SimplyConnected),
            "adj" | "adjoint" => Ok(Isogeny::Adjoint),
            "int" | "intermediate" => Ok(Isogeny::Intermediate),
            _ => Err(Error::Malformed(format!("unknown isogeny {s:?} (expected sc or adj)"))),
        }
    }
}

/// A semisimple root datum on `X^* = X_* = Z^r` with the standard pairing.
///
/// Roots are stored positive first (by height, then coefficients), followed
/// by their negatives in the same order; `coroots[k]` is the coroot of
/// `roots[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    rank: usize,
    cartan: Vec<Vec<i64>>,
    simple_roots: Vec<Vec<i64>>,
    simple_coroots: Vec<Vec<i64>>,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    coefficients: Vec<Vec<i64>>,
    isogeny: Isogeny,
    label: String,
}

pub fn pair(x: &[i64], y: &[i64]) -> i64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

fn axpy(a: i64, x: &[i64], y: &mut [i64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

/// Solves `m · x = b` over the rationals for square invertible `m`.
pub fn solve_rational(m: &[Vec<i64>], b: &[i64]) -> Option<Vec<Rat>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .zip(b)
        .map(|(row, &bi)| row.iter().map(|&x| Rat::from_integer(x as i128)).chain([Rat::from_integer(bi as i128)]).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = Rat::one() / a[col][col];
        for c in col..=n {
            a[col][c] *= inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for c in col..=n {
                    let v = a[col][c];
                    a[r][c] -= f * v;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n]).collect())
}

pub fn determinant(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m.iter().map(|r| r.iter().map(|&x| Rat::from_integer(x as i128)).collect()).collect();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else { return 0 };
        if piv != col {
            a.swap(col, piv);
            det = -det;
        }
        det *= a[col][col];
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for c in col..n {
                let v = a[col][c];
                a[r][c] -= f * v;
            }
        }
    }
    *det.numer() as i64
}

impl RootDatum {
    /// The simply connected or adjoint datum of a simple type.
    pub fn of_type(t: CartanType, isogeny: Isogeny) -> Result<Self> {
        let a = t.cartan_matrix();
        let n = t.rank;
        let unit = |i: usize| -> Vec<i64> { (0..n).map(|k| i64::from(k == i)).collect() };
        let (roots, coroots): (Vec<Vec<i64>>, Vec<Vec<i64>>) = match isogeny {
            // X^* = weight lattice in the basis of fundamental weights
            Isogeny::SimplyConnected => ((0..n).map(|i| (0..n).map(|k| a[k][i]).collect()).collect(), (0..n).map(unit).collect()),
            // X^* = root lattice
            Isogeny::Adjoint => ((0..n).map(unit).collect(), a.clone()),
            Isogeny::Intermediate => return Err(Error::InvalidRootDatum("a simple type needs isogeny sc or adj".into())),
        };
        let rd = Self::from_simple(roots, coroots, isogeny)?;
        debug_assert_eq!(rd.cartan, a);
        Ok(rd)
    }

    pub fn parse(family: &str, rank: usize, isogeny: &str) -> Result<Self> {
        let mut chars = family.trim().chars();
        let (Some(f), None) = (chars.next(), chars.next()) else {
            return Err(Error::Malformed(format!("type {family:?} must be a single letter A..G")));
        };
        Self::of_type(CartanType::new(f, rank)?, isogeny.parse()?)
    }

    /// Builds the datum generated by the given simple roots and coroots, all
    /// living in `Z^r`. The Cartan matrix is read off from the pairing.
    pub fn from_simple(simple_roots: Vec<Vec<i64>>, simple_coroots: Vec<Vec<i64>>, isogeny: Isogeny) -> Result<Self> {
        let n = simple_roots.len();
        if simple_coroots.len() != n {
            return Err(Error::InvalidRootDatum("as many simple roots as simple coroots are required".into()));
        }
        let rank = simple_roots.first().map_or(0, Vec::len);
        if simple_roots.iter().chain(&simple_coroots).any(|v| v.len() != rank) {
            return Err(Error::InvalidRootDatum("all vectors must have the lattice rank".into()));
        }
        if n > rank {
            return Err(Error::InvalidRootDatum("more simple roots than the lattice rank".into()));
        }
        let cartan: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| pair(&simple_roots[j], &simple_coroots[i])).collect()).collect();
        for i in 0..n {
            if cartan[i][i] != 2 {
                return Err(Error::InvalidRootDatum(format!("⟨α_{i}, α_{i}^∨⟩ = {} ≠ 2", cartan[i][i])));
            }
            for j in 0..n {
                if i != j && (cartan[i][j] > 0 || (cartan[i][j] == 0) != (cartan[j][i] == 0)) {
                    return Err(Error::InvalidRootDatum(format!("pairing of simple roots {i},{j} is not a Cartan matrix")));
                }
            }
        }

        // reflection closure on coefficient vectors (root, coroot)
        let mut seen: BTreeMap<Vec<i64>, Vec<i64>> = BTreeMap::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let e: Vec<i64> = (0..n).map(|k| i64::from(k == i)).collect();
            seen.insert(e.clone(), e.clone());
            queue.push_back(e);
        }
        while let Some(c) = queue.pop_front() {
            let d = seen[&c].clone();
            for i in 0..n {
                let a: i64 = (0..n).map(|j| c[j] * cartan[i][j]).sum();
                let b: i64 = (0..n).map(|j| d[j] * cartan[j][i]).sum();
                let mut c2 = c.clone();
                c2[i] -= a;
                let mut d2 = d.clone();
                d2[i] -= b;
                if let Some(old) = seen.get(&c2) {
                    if *old != d2 {
                        return Err(Error::InvalidRootDatum("coroot assignment is not well defined".into()));
                    }
                    continue;
                }
                if seen.len() >= MAX_ROOTS {
                    return Err(Error::InvalidRootDatum("root system is not finite".into()));
                }
                seen.insert(c2.clone(), d2);
                queue.push_back(c2);
            }
        }
        let mut positive: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
        for (c, d) in &seen {
            let pos = c.iter().all(|&x| x >= 0);
            let neg = c.iter().all(|&x| x <= 0);
            if !pos && !neg {
                return Err(Error::InvalidRootDatum("root with mixed-sign coefficients; simple roots are not a base".into()));
            }
            if pos {
                positive.push((c.clone(), d.clone()));
            }
        }
        positive.sort_by(|x, y| (x.0.iter().sum::<i64>(), &x.0).cmp(&(y.0.iter().sum::<i64>(), &y.0)));
        let negate = |v: &Vec<i64>| v.iter().map(|x| -x).collect::<Vec<i64>>();
        let mut coefficients: Vec<Vec<i64>> = positive.iter().map(|p| p.0.clone()).collect();
        let mut coroot_coefficients: Vec<Vec<i64>> = positive.iter().map(|p| p.1.clone()).collect();
        coefficients.extend(positive.iter().map(|p| negate(&p.0)));
        coroot_coefficients.extend(positive.iter().map(|p| negate(&p.1)));
        let combine = |coeffs: &[i64], basis: &[Vec<i64>]| {
            let mut v = vec![0; rank];
            for (c, b) in coeffs.iter().zip(basis) {
                axpy(*c, b, &mut v);
            }
            v
        };
        let roots: Vec<Vec<i64>> = coefficients.iter().map(|c| combine(c, &simple_roots)).collect();
        let coroots: Vec<Vec<i64>> = coroot_coefficients.iter().map(|d| combine(d, &simple_coroots)).collect();
        for (a, ac) in roots.iter().zip(&coroots) {
            if pair(a, ac) != 2 {
                return Err(Error::InvalidRootDatum("a root does not pair to 2 with its coroot".into()));
            }
        }
        let distinct: BTreeSet<&Vec<i64>> = roots.iter().collect();
        if distinct.len() != roots.len() {
            return Err(Error::InvalidRootDatum("simple roots are linearly dependent".into()));
        }
        let label = type_label(&cartan);
        Ok(Self { rank, cartan, simple_roots, simple_coroots, roots, coroots, coefficients, isogeny, label })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of simple roots (the semisimple rank).
    pub fn semisimple_rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Vec<i64>] {
        &self.simple_coroots
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn coroots(&self) -> &[Vec<i64>] {
        &self.coroots
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.roots[..self.roots.len() / 2]
    }

    pub fn positive_coroots(&self) -> &[Vec<i64>] {
        &self.coroots[..self.coroots.len() / 2]
    }

    /// Coefficients of each root in the simple-root basis.
    pub fn root_coefficients(&self) -> &[Vec<i64>] {
        &self.coefficients
    }

    pub fn isogeny(&self) -> Isogeny {
        self.isogeny
    }

    /// Product type, e.g. `A1xC3`.
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn is_irreducible(&self) -> bool {
        components(&self.cartan).len() == 1
    }

    pub fn root_index(&self, alpha: &[i64]) -> Option<usize> {
        self.roots.iter().position(|r| r == alpha)
    }

    /// Langlands dual: characters and cocharacters exchanged.
    pub fn dual(&self) -> Self {
        Self::from_simple(self.simple_coroots.clone(), self.simple_roots.clone(), self.isogeny.dual())
            .expect("dual of a valid root datum is valid")
    }

    pub fn with_isogeny(mut self, isogeny: Isogeny) -> Self {
        self.isogeny = isogeny;
        self
    }

    /// `s_i(x) = x − ⟨x, α_i^∨⟩ α_i` on `X^*`.
    pub fn reflect(&self, i: usize, x: &[i64]) -> Vec<i64> {
        self.reflect_by(&self.simple_roots[i], &self.simple_coroots[i], x)
    }

    pub fn reflect_by(&self, alpha: &[i64], coroot: &[i64], x: &[i64]) -> Vec<i64> {
        let mut y = x.to_vec();
        axpy(-pair(x, coroot), alpha, &mut y);
        y
    }

    /// Matrix (columns = images of basis vectors) of the reflection in root `k` on `X^*`.
    pub fn reflection_matrix(&self, k: usize) -> Vec<Vec<i64>> {
        let r = self.rank;
        let cols: Vec<Vec<i64>> = (0..r)
            .map(|c| {
                let e: Vec<i64> = (0..r).map(|t| i64::from(t == c)).collect();
                self.reflect_by(&self.roots[k], &self.coroots[k], &e)
            })
            .collect();
        (0..r).map(|row| (0..r).map(|c| cols[c][row]).collect()).collect()
    }

    pub fn is_dominant(&self, x: &[i64]) -> bool {
        self.simple_coroots.iter().all(|c| pair(x, c) >= 0)
    }

    /// The dominant element of the Weyl orbit of `x`.
    pub fn to_dominant(&self, x: &[i64]) -> Vec<i64> {
        let mut y = x.to_vec();
        while let Some(i) = (0..self.semisimple_rank()).find(|&i| pair(&y, &self.simple_coroots[i]) < 0) {
            y = self.reflect(i, &y);
        }
        y
    }

    /// Weyl orbit of `x`, generated by simple reflections.
    pub fn orbit(&self, x: &[i64]) -> Vec<Vec<i64>> {
        let mut seen = BTreeSet::new();
        seen.insert(x.to_vec());
        let mut queue = vec![x.to_vec()];
        while let Some(y) = queue.pop() {
            for i in 0..self.semisimple_rank() {
                let z = self.reflect(i, &y);
                if seen.insert(z.clone()) {
                    queue.push(z);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Coefficient vector of the highest root.
    pub fn highest_root_coeffs(&self) -> Result<Vec<i64>> {
        Ok(self.coefficients[self.highest_root_index()?].clone())
    }

    pub fn highest_root_index(&self) -> Result<usize> {
        if !self.is_irreducible() {
            return Err(Error::InvalidRootDatum(format!("{} is reducible; no highest root", self.label)));
        }
        let npos = self.roots.len() / 2;
        // positive roots are sorted by height
        let top = npos - 1;
        let height = |k: usize| self.coefficients[k].iter().sum::<i64>();
        if npos >= 2 && height(npos - 2) == height(top) {
            return Err(Error::Internal("two positive roots of maximal height".into()));
        }
        Ok(top)
    }

    /// The fundamental coweight `β_i ∈ X_* ⊗ Q`, dual to the simple roots.
    pub fn fundamental_coweight(&self, i: usize) -> Result<Vec<Rat>> {
        let n = self.semisimple_rank();
        if n != self.rank {
            return Err(Error::InvalidRootDatum("fundamental coweights need a semisimple datum".into()));
        }
        // rows of the system: ⟨α_j, β⟩ = δ_ij
        let e: Vec<i64> = (0..n).map(|j| i64::from(j == i)).collect();
        solve_rational(&self.simple_roots, &e).ok_or_else(|| Error::Internal("simple roots are not a basis".into()))
    }

    /// Nonzero invariant factors of `X^* / ZΦ` (trivial factors dropped).
    pub fn root_lattice_quotient(&self) -> Vec<i64> {
        let mut m = self.simple_roots.clone();
        if m.is_empty() {
            m = vec![vec![0; self.rank]];
        }
        let mut f: Vec<i64> = invariant_factors_padded(&m, self.rank);
        f.retain(|&d| d != 1);
        f
    }
}

/// Invariant factors of the lattice spanned by `rows` inside `Z^rank`,
/// with `0` standing for free summands of the quotient.
fn invariant_factors_padded(rows: &[Vec<i64>], rank: usize) -> Vec<i64> {
    let f = crate::linalg::invariant_factors(rows);
    let mut out = f.clone();
    out.extend(std::iter::repeat_n(0, rank - f.len()));
    out
}

impl fmt::Display for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.label, self.isogeny)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(t: &str) -> usize {
        let ty: CartanType = t.parse().unwrap();
        RootDatum::of_type(ty, Isogeny::SimplyConnected).unwrap().roots().len()
    }

    #[test]
    fn classical_root_counts() {
        for n in 1..=8 {
            assert_eq!(count(&format!("A{n}")), n * (n + 1));
        }
        for n in 2..=8 {
            assert_eq!(count(&format!("B{n}")), 2 * n * n);
            assert_eq!(count(&format!("C{n}")), 2 * n * n);
        }
        for n in 4..=8 {
            assert_eq!(count(&format!("D{n}")), 2 * n * (n - 1));
        }
        assert_eq!(count("E6"), 72);
        assert_eq!(count("E7"), 126);
        assert_eq!(count("E8"), 240);
        assert_eq!(count("F4"), 48);
        assert_eq!(count("G2"), 12);
    }

    #[test]
    fn highest_roots_of_exceptional_types() {
        let top = |t: &str| RootDatum::of_type(t.parse().unwrap(), Isogeny::SimplyConnected).unwrap().highest_root_coeffs().unwrap();
        assert_eq!(top("G2"), vec![2, 3]);
        assert_eq!(top("F4"), vec![2, 3, 4, 2]);
        assert_eq!(top("E6"), vec![1, 2, 2, 3, 2, 1]);
        assert_eq!(top("E7"), vec![2, 2, 3, 4, 3, 2, 1]);
        assert_eq!(top("E8"), vec![2, 3, 4, 6, 5, 4, 3, 2]);
    }

    #[test]
    fn dual_of_b_sc_is_c_adjoint() {
        let b = RootDatum::parse("B", 3, "sc").unwrap();
        let d = b.dual();
        assert_eq!(d.label(), "C3");
        assert_eq!(d.isogeny(), Isogeny::Adjoint);
        assert_eq!(d.dual(), b);
        let c_adj = RootDatum::parse("C", 3, "adj").unwrap();
        assert_eq!(d.cartan(), c_adj.cartan());
    }

    #[test]
    fn centre_orders() {
        let z = |t: &str, iso: &str| {
            let ty: CartanType = t.parse().unwrap();
            RootDatum::parse(&ty.family.to_string(), ty.rank, iso).unwrap().root_lattice_quotient()
        };
        assert_eq!(z("E8", "sc"), Vec::<i64>::new());
        assert_eq!(z("A3", "sc"), vec![4]);
        assert_eq!(z("D4", "sc"), vec![2, 2]);
        assert_eq!(z("D4", "adj"), Vec::<i64>::new());
    }

    #[test]
    fn rejects_bad_pairs() {
        assert!(RootDatum::parse("D", 3, "sc").is_err());
        assert!(RootDatum::parse("G", 3, "sc").is_err());
        assert!(RootDatum::parse("C", 3, "xx").is_err());
    }
}
