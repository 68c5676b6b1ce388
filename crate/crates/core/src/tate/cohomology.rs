use std::collections::BTreeMap;

use crate::linalg::FpMatrix;

use super::complex::{Module, TateComplex};

/// Tate hypercohomology dimensions over a window of degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TateTable {
    pub p: u32,
    pub dims: BTreeMap<i64, usize>,
}

impl TateTable {
    pub fn is_zero(&self) -> bool {
        self.dims.values().all(|&d| d == 0)
    }

    /// `Ĥ^n = Ĥ^{n+2}` wherever both are in the window.
    pub fn is_two_periodic(&self) -> bool {
        self.dims.iter().all(|(n, d)| self.dims.get(&(n + 2)).is_none_or(|e| e == d))
    }
}

/// The norm element `N = 1 + g + ... + g^{p−1}` acting on a module.
pub fn norm(action: &FpMatrix) -> FpMatrix {
    let p = action.p();
    let n = action.rows();
    let mut acc = FpMatrix::zeros(p, n, n);
    let mut power = FpMatrix::identity(p, n);
    for _ in 0..p {
        acc = acc.add(&power);
        power = power.mul(action);
    }
    acc
}

/// Differential `δ^b` of the complete resolution, applied on `M`:
/// `g − 1` for even `b`, `N` for odd `b`.
fn periodic_differential(action: &FpMatrix, b: i64) -> FpMatrix {
    if b.rem_euclid(2) == 0 {
        action.sub(&FpMatrix::identity(action.p(), action.rows()))
    } else {
        norm(action)
    }
}

/// Window used by [`tate_cohomology`]: the support widened by two on each
/// side (amplitude + 4).
pub fn default_window(m: &TateComplex) -> Option<(i64, i64)> {
    m.support().map(|(lo, hi)| (lo - 2, hi + 2))
}

/// Cohomology of `Tot^n = ⊕_a Hom(P̂_{n−a}, M^a)` with
/// `D = d_M + (−1)^a δ`, where `P̂` is the complete periodic resolution.
pub fn tate_cohomology_in(m: &TateComplex, lo: i64, hi: i64) -> TateTable {
    let p = m.p();
    let Some((a0, a1)) = m.support() else {
        return TateTable { p, dims: (lo..=hi).map(|n| (n, 0)).collect() };
    };
    // every total degree contains one copy of each M^a
    let mut offsets = BTreeMap::new();
    let mut total = 0;
    for a in a0..=a1 {
        offsets.insert(a, total);
        total += m.dim(a);
    }
    let total_d = |n: i64| -> FpMatrix {
        let mut d = FpMatrix::zeros(p, total, total);
        for (&a, &off) in &offsets {
            let b = n - a;
            if let Some(&t) = offsets.get(&(a + 1)) {
                d.put_block(t, off, &m.differential(a));
            }
            let sign = if a.rem_euclid(2) == 0 { 1 } else { -1 };
            d.put_block(off, off, &periodic_differential(&m.action(a), b).scale(sign));
        }
        d
    };
    let mut dims = BTreeMap::new();
    for n in lo..=hi {
        let h = total - total_d(n).rank() - total_d(n - 1).rank();
        dims.insert(n, h);
    }
    TateTable { p, dims }
}

pub fn tate_cohomology(m: &TateComplex) -> TateTable {
    match default_window(m) {
        Some((lo, hi)) => tate_cohomology_in(m, lo, hi),
        None => TateTable { p: m.p(), dims: BTreeMap::new() },
    }
}

/// Perfect = Tate-acyclic over the window.
pub fn is_perfect(m: &TateComplex) -> bool {
    tate_cohomology(m).is_zero()
}

/// Whether each module of `m` is free over `F_p[Z/p]` (`rank N = dim / p`).
pub fn is_free_termwise(m: &TateComplex) -> bool {
    m.modules().values().all(|md| md.dim() % m.p() as usize == 0 && norm(&md.action).rank() * m.p() as usize == md.dim())
}

/// The Yoneda splice realizing `M → M[2]` (or `M → M[1]` for `p = 2`).
#[derive(Clone, Debug)]
pub struct PeriodicityWitness {
    /// 2 for the four-term sequence, 1 for the three-term one.
    pub shift: i64,
    /// The exact sequence `M → M⊗K[ϖ] → (M⊗K[ϖ] →) M`, totalized; it is
    /// the cone of the witness map.
    pub cone: TateComplex,
    /// The free middle terms alone.
    pub free_part: TateComplex,
    pub sequence_exact: bool,
    pub middle_free: bool,
    pub cone_perfect: bool,
}

impl PeriodicityWitness {
    pub fn passed(&self) -> bool {
        self.sequence_exact && self.middle_free && self.cone_perfect && is_perfect(&self.free_part)
    }
}

/// `M ⊗ K[ϖ]` with the diagonal action, basis `m_i ⊗ e_{g^j}` at `i·p + j`,
/// and the three structure maps: `m ↦ m ⊗ N`, `1 ⊗ (g − 1)` acting on the
/// right factor, and the augmentation `m ⊗ e_h ↦ m`.
fn splice_pieces(action: &FpMatrix) -> (Module, FpMatrix, FpMatrix, FpMatrix) {
    let p = action.p();
    let n = action.rows();
    let reg = Module::regular(p).action;
    let free = Module { action: action.kron(&reg) };
    let ones = FpMatrix::from_rows(p, &vec![vec![1]; p as usize]);
    let include = FpMatrix::identity(p, n).kron(&ones);
    let middle = FpMatrix::identity(p, n).kron(&reg.sub(&FpMatrix::identity(p, p as usize)));
    let augment = FpMatrix::identity(p, n).kron(&ones.transpose());
    (free, include, middle, augment)
}

/// Totalizes the double complex whose row `a` is `rows[a]` (placed in
/// column degrees `−len+1..=0`) with horizontal maps `maps[a]`; the vertical
/// maps are `d_M`, tensored with `1_{K[ϖ]}` on free columns.
fn totalize_rows(m: &TateComplex, rows: &[Vec<Module>], maps: &[Vec<FpMatrix>], col_free: &[bool]) -> TateComplex {
    let p = m.p();
    let (a0, a1) = m.support().expect("nonempty");
    let len = col_free.len() as i64;
    let piece = |a: i64, c: i64| -> &Module { &rows[(a - a0) as usize][(c + len - 1) as usize] };
    let layout = |n: i64| -> Vec<(i64, i64, usize)> {
        let mut off = 0;
        let mut out = Vec::new();
        for a in a0..=a1 {
            let c = n - a;
            if (-len + 1..=0).contains(&c) {
                out.push((a, c, off));
                off += piece(a, c).dim();
            }
        }
        out
    };
    let size = |n: i64| -> usize { layout(n).iter().map(|&(a, c, _)| piece(a, c).dim()).sum() };
    let vertical = |a: i64, c: i64| -> FpMatrix {
        let d = m.differential(a);
        if col_free[(c + len - 1) as usize] {
            d.kron(&FpMatrix::identity(p, p as usize))
        } else {
            d
        }
    };
    let mut modules = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for n in a0 - len + 1..=a1 {
        let src = layout(n);
        let ds = size(n);
        let mut act = FpMatrix::zeros(p, ds, ds);
        for &(a, c, off) in &src {
            act.put_block(off, off, &piece(a, c).action);
        }
        modules.insert(n, Module { action: act });
        let tgt = layout(n + 1);
        let find = |a: i64, c: i64| tgt.iter().find(|t| t.0 == a && t.1 == c).map(|t| t.2);
        let mut d = FpMatrix::zeros(p, size(n + 1), ds);
        for &(a, c, off) in &src {
            if let Some(t) = find(a + 1, c) {
                d.put_block(t, off, &vertical(a, c));
            }
            if let Some(t) = find(a, c + 1) {
                let sign = if a.rem_euclid(2) == 0 { 1 } else { -1 };
                d.put_block(t, off, &maps[(a - a0) as usize][(c + len - 1) as usize].scale(sign));
            }
        }
        diffs.insert(n, d);
    }
    TateComplex::new(p, modules, diffs).expect("totalization of a double complex is a complex")
}

/// Periodicity witness from `0 → M → M⊗K[ϖ] → M⊗K[ϖ] → M → 0`, or for
/// `p = 2` and `short`, from `0 → M → M⊗K[ϖ] → M → 0`.
pub fn periodicity_witness(m: &TateComplex, short: bool) -> Option<PeriodicityWitness> {
    let p = m.p();
    if short && p != 2 {
        return None;
    }
    let Some((a0, a1)) = m.support() else {
        let z = TateComplex::zero(p);
        return Some(PeriodicityWitness {
            shift: if short { 1 } else { 2 },
            cone: z.clone(),
            free_part: z,
            sequence_exact: true,
            middle_free: true,
            cone_perfect: true,
        });
    };
    let mut rows_full = Vec::new();
    let mut maps_full = Vec::new();
    let mut rows_free = Vec::new();
    let mut maps_free = Vec::new();
    for a in a0..=a1 {
        let act = m.action(a);
        let base = Module { action: act.clone() };
        let (free, include, middle, augment) = splice_pieces(&act);
        if short {
            rows_full.push(vec![base.clone(), free.clone(), base]);
            maps_full.push(vec![include, augment, FpMatrix::zeros(p, 0, 0)]);
            rows_free.push(vec![free]);
            maps_free.push(vec![FpMatrix::zeros(p, 0, 0)]);
        } else {
            rows_full.push(vec![base.clone(), free.clone(), free.clone(), base]);
            maps_full.push(vec![include, middle.clone(), augment, FpMatrix::zeros(p, 0, 0)]);
            rows_free.push(vec![free.clone(), free]);
            maps_free.push(vec![middle, FpMatrix::zeros(p, 0, 0)]);
        }
    }
    let (full_cols, free_cols): (&[bool], &[bool]) =
        if short { (&[false, true, false], &[true]) } else { (&[false, true, true, false], &[true, true]) };
    let cone = totalize_rows(m, &rows_full, &maps_full, full_cols);
    let free_part = totalize_rows(m, &rows_free, &maps_free, free_cols);
    let sequence_exact = (a0..=a1).all(|a| {
        let i = (a - a0) as usize;
        let maps = &maps_full[i];
        let dims: Vec<usize> = rows_full[i].iter().map(Module::dim).collect();
        // rank condition for exactness at each spot
        let ranks: Vec<usize> = maps[..maps.len() - 1].iter().map(FpMatrix::rank).collect();
        ranks[0] == dims[0]
            && (1..dims.len() - 1).all(|k| ranks[k - 1] + ranks[k] == dims[k])
            && ranks[ranks.len() - 1] == dims[dims.len() - 1]
    });
    Some(PeriodicityWitness {
        shift: if short { 1 } else { 2 },
        middle_free: is_free_termwise(&free_part),
        cone_perfect: is_perfect(&cone),
        cone,
        free_part,
        sequence_exact,
    })
}
