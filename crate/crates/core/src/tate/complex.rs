use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::FpMatrix;
use crate::scalar::is_prime;

/// A finite-dimensional `F_p[Z/p]`-module: a vector space with the matrix
/// of the generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Module {
    pub action: FpMatrix,
}

impl Module {
    pub fn dim(&self) -> usize {
        self.action.rows()
    }

    pub fn trivial(p: u32, dim: usize) -> Self {
        Self { action: FpMatrix::identity(p, dim) }
    }

    /// The regular module `K[ϖ]` with basis `e_{g^i}`, `g e_{g^i} = e_{g^{i+1}}`.
    pub fn regular(p: u32) -> Self {
        let n = p as usize;
        let mut a = FpMatrix::zeros(p, n, n);
        for i in 0..n {
            a.set((i + 1) % n, i, 1);
        }
        Self { action: a }
    }

    pub fn direct_sum(&self, other: &Module) -> Module {
        let (m, n) = (self.dim(), other.dim());
        let mut a = FpMatrix::zeros(self.action.p(), m + n, m + n);
        a.put_block(0, 0, &self.action);
        a.put_block(m, m, &other.action);
        Module { action: a }
    }
}

/// A bounded cochain complex of `F_p[Z/p]`-modules. Degrees missing from
/// the map are zero; `differential(n)` maps degree `n` to `n + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TateComplex {
    p: u32,
    modules: BTreeMap<i64, Module>,
    differentials: BTreeMap<i64, FpMatrix>,
}

impl TateComplex {
    /// Validates shapes, `g^p = 1`, equivariance of `d`, and `d² = 0`.
    pub fn new(p: u32, modules: BTreeMap<i64, Module>, differentials: BTreeMap<i64, FpMatrix>) -> Result<Self> {
        if !is_prime(u64::from(p)) {
            return Err(Error::Malformed(format!("{p} is not prime")));
        }
        let modules: BTreeMap<i64, Module> = modules.into_iter().filter(|(_, m)| m.dim() > 0).collect();
        for (n, m) in &modules {
            if m.action.p() != p || m.action.rows() != m.action.cols() {
                return Err(Error::Malformed(format!("degree {n}: action must be a square matrix over F{p}")));
            }
            if m.action.pow(u64::from(p)) != FpMatrix::identity(p, m.dim()) {
                return Err(Error::InvalidAction(format!("degree {n}: generator does not have order dividing {p}")));
            }
        }
        let c = Self { p, modules, differentials: BTreeMap::new() };
        let mut diffs = BTreeMap::new();
        for (n, d) in differentials {
            let (src, tgt) = (c.dim(n), c.dim(n + 1));
            if d.p() != p || d.rows() != tgt || d.cols() != src {
                return Err(Error::Malformed(format!("differential {n} must be a {tgt}×{src} matrix over F{p}")));
            }
            if src > 0 && tgt > 0 && !d.is_zero() {
                diffs.insert(n, d);
            }
        }
        let c = Self { differentials: diffs, ..c };
        for (&n, d) in &c.differentials {
            if d.mul(&c.action(n)) != c.action(n + 1).mul(d) {
                return Err(Error::InvalidAction(format!("differential {n} is not equivariant")));
            }
            if !c.differential(n + 1).mul(d).is_zero() {
                return Err(Error::Malformed(format!("d ∘ d ≠ 0 at degree {n}")));
            }
        }
        Ok(c)
    }

    pub fn zero(p: u32) -> Self {
        Self { p, modules: BTreeMap::new(), differentials: BTreeMap::new() }
    }

    /// A single module in degree `n`.
    pub fn concentrated(module: Module, n: i64) -> Self {
        let p = module.action.p();
        Self::new(p, BTreeMap::from([(n, module)]), BTreeMap::new()).expect("a module is a complex")
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self, n: i64) -> usize {
        self.modules.get(&n).map_or(0, Module::dim)
    }

    pub fn action(&self, n: i64) -> FpMatrix {
        self.modules.get(&n).map_or_else(|| FpMatrix::identity(self.p, 0), |m| m.action.clone())
    }

    pub fn differential(&self, n: i64) -> FpMatrix {
        self.differentials.get(&n).cloned().unwrap_or_else(|| FpMatrix::zeros(self.p, self.dim(n + 1), self.dim(n)))
    }

    pub fn modules(&self) -> &BTreeMap<i64, Module> {
        &self.modules
    }

    /// Lowest and highest nonzero degree.
    pub fn support(&self) -> Option<(i64, i64)> {
        Some((*self.modules.keys().next()?, *self.modules.keys().next_back()?))
    }

    /// `Σ (−1)^n dim M^n mod p`.
    pub fn chi_mod_p(&self) -> i64 {
        let p = i64::from(self.p);
        self.modules.iter().map(|(n, m)| if n.rem_euclid(2) == 0 { m.dim() as i64 } else { -(m.dim() as i64) }).sum::<i64>().rem_euclid(p)
    }

    /// Ordinary cohomology dimensions over `F_p`.
    pub fn cohomology(&self) -> BTreeMap<i64, usize> {
        self.modules
            .keys()
            .map(|&n| {
                let out = self.differential(n).rank();
                let inc = self.differential(n - 1).rank();
                (n, self.dim(n) - out - inc)
            })
            .collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.cohomology().values().all(|&h| h == 0)
    }

    /// `M[k]^n = M^{n+k}` with differential `(−1)^k d`.
    pub fn shift(&self, k: i64) -> Self {
        let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        Self {
            p: self.p,
            modules: self.modules.iter().map(|(n, m)| (n - k, m.clone())).collect(),
            differentials: self.differentials.iter().map(|(n, d)| (n - k, d.scale(sign))).collect(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        let mut modules = BTreeMap::new();
        let degrees: std::collections::BTreeSet<i64> = self.modules.keys().chain(other.modules.keys()).copied().collect();
        for &n in &degrees {
            let a = self.modules.get(&n).cloned().unwrap_or_else(|| Module::trivial(self.p, 0));
            let b = other.modules.get(&n).cloned().unwrap_or_else(|| Module::trivial(self.p, 0));
            modules.insert(n, a.direct_sum(&b));
        }
        let mut diffs = BTreeMap::new();
        for &n in &degrees {
            let (d1, d2) = (self.differential(n), other.differential(n));
            let mut d = FpMatrix::zeros(self.p, d1.rows() + d2.rows(), d1.cols() + d2.cols());
            d.put_block(0, 0, &d1);
            d.put_block(d1.rows(), d1.cols(), &d2);
            diffs.insert(n, d);
        }
        Self::new(self.p, modules, diffs)
    }

    fn same_prime(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::RingMismatch(format!("complexes over F{} and F{}", self.p, other.p)));
        }
        Ok(())
    }

    /// Tensor product over `F_p` with the diagonal action.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        let p = self.p;
        let (Some((a0, a1)), Some((b0, b1))) = (self.support(), other.support()) else {
            return Ok(Self::zero(p));
        };
        // offsets of the summand M^a ⊗ N^b inside degree a + b
        let offsets = |n: i64| -> Vec<(i64, usize)> {
            let mut off = 0;
            let mut out = Vec::new();
            for a in a0..=a1 {
                let b = n - a;
                if b < b0 || b > b1 {
                    continue;
                }
                out.push((a, off));
                off += self.dim(a) * other.dim(b);
            }
            out
        };
        let total = |n: i64| -> usize { (a0..=a1).map(|a| self.dim(a) * other.dim(n - a)).sum() };
        let mut modules = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for n in a0 + b0..=a1 + b1 {
            let dim = total(n);
            let mut act = FpMatrix::zeros(p, dim, dim);
            for (a, off) in offsets(n) {
                act.put_block(off, off, &self.action(a).kron(&other.action(n - a)));
            }
            modules.insert(n, Module { action: act });
        }
        for n in a0 + b0..a1 + b1 {
            let mut d = FpMatrix::zeros(p, total(n + 1), total(n));
            let tgt: BTreeMap<i64, usize> = offsets(n + 1).into_iter().collect();
            for (a, off) in offsets(n) {
                let b = n - a;
                let id_m = FpMatrix::identity(p, self.dim(a));
                let id_n = FpMatrix::identity(p, other.dim(b));
                if let Some(&t) = tgt.get(&(a + 1)) {
                    d.put_block(t, off, &self.differential(a).kron(&id_n));
                }
                if let Some(&t) = tgt.get(&a) {
                    let sign = if a.rem_euclid(2) == 0 { 1 } else { -1 };
                    d.put_block(t, off, &id_m.kron(&other.differential(b)).scale(sign));
                }
            }
            diffs.insert(n, d);
        }
        Self::new(p, modules, diffs)
    }

    /// `(M^*)^n = (M^{−n})^*` with the contragredient action `(g^{−1})ᵀ`.
    pub fn dual(&self) -> Self {
        let p = self.p;
        let modules = self
            .modules
            .iter()
            .map(|(n, m)| (-n, Module { action: m.action.pow(u64::from(p) - 1).transpose() }))
            .collect();
        // d^n of the dual is the transpose of d^{−n−1}
        let differentials = self.differentials.iter().map(|(n, d)| (-n - 1, d.transpose())).collect();
        Self::new(p, modules, differentials).expect("dual of a complex is a complex")
    }
}

/// An equivariant chain map `f: M → N`, one matrix per degree.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub source: TateComplex,
    pub target: TateComplex,
    pub maps: BTreeMap<i64, FpMatrix>,
}

impl ChainMap {
    pub fn new(source: TateComplex, target: TateComplex, maps: BTreeMap<i64, FpMatrix>) -> Result<Self> {
        source.same_prime(&target)?;
        let f = Self { source, target, maps };
        let lo = f.source.support().map_or(0, |s| s.0).min(f.target.support().map_or(0, |s| s.0)) - 1;
        let hi = f.source.support().map_or(0, |s| s.1).max(f.target.support().map_or(0, |s| s.1)) + 1;
        for n in lo..=hi {
            let fn_ = f.component(n);
            if fn_.rows() != f.target.dim(n) || fn_.cols() != f.source.dim(n) {
                return Err(Error::Malformed(format!("chain map component {n} has the wrong shape")));
            }
            if fn_.mul(&f.source.action(n)) != f.target.action(n).mul(&fn_) {
                return Err(Error::InvalidAction(format!("chain map component {n} is not equivariant")));
            }
            if f.component(n + 1).mul(&f.source.differential(n)) != f.target.differential(n).mul(&fn_) {
                return Err(Error::Malformed(format!("chain map does not commute with d at degree {n}")));
            }
        }
        Ok(f)
    }

    pub fn component(&self, n: i64) -> FpMatrix {
        self.maps.get(&n).cloned().unwrap_or_else(|| FpMatrix::zeros(self.source.p, self.target.dim(n), self.source.dim(n)))
    }

    /// `Cone(f)^n = M^{n+1} ⊕ N^n`, `d(m, x) = (−d m, f m + d x)`.
    pub fn cone(&self) -> TateComplex {
        let (m, n) = (&self.source, &self.target);
        let p = m.p;
        let lo = m.support().map_or(i64::MAX, |s| s.0 - 1).min(n.support().map_or(i64::MAX, |s| s.0));
        let hi = m.support().map_or(i64::MIN, |s| s.1 - 1).max(n.support().map_or(i64::MIN, |s| s.1));
        if lo > hi {
            return TateComplex::zero(p);
        }
        let mut modules = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for k in lo..=hi {
            let (a, b) = (m.dim(k + 1), n.dim(k));
            let mut act = FpMatrix::zeros(p, a + b, a + b);
            act.put_block(0, 0, &m.action(k + 1));
            act.put_block(a, a, &n.action(k));
            modules.insert(k, Module { action: act });
            let (a2, b2) = (m.dim(k + 2), n.dim(k + 1));
            let mut d = FpMatrix::zeros(p, a2 + b2, a + b);
            d.put_block(0, 0, &m.differential(k + 1).scale(-1));
            d.put_block(a2, 0, &self.component(k + 1));
            d.put_block(a2, a, &n.differential(k));
            diffs.insert(k, d);
        }
        TateComplex::new(p, modules, diffs).expect("cone of a chain map is a complex")
    }
}
