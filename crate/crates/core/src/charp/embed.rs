use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

use super::field::{Gf, GfMat};
use super::form::{all_vectors, dickson_invariant, QuadForm};

/// How many failures a report keeps (with matrices) before it only counts.
const MAX_FAILURES: usize = 5;

/// How a group is exercised: every element, or random products of
/// transvections drawn from a seeded generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coverage {
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub check: String,
    pub matrices: Vec<GfMat>,
}

fn record(failures: &mut Vec<Failure>, count: &mut usize, check: &str, matrices: Vec<GfMat>) {
    *count += 1;
    if failures.len() < MAX_FAILURES {
        failures.push(Failure { check: check.into(), matrices });
    }
}

/// The inclusion `O(2a) ⊆ Sp(2a)` in characteristic 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SoSpReport {
    pub a: usize,
    pub field: Gf,
    pub exhaustive: bool,
    pub polar_alternating: bool,
    pub polar_nondegenerate: bool,
    pub elements_checked: usize,
    /// Elements with Dickson invariant 0.
    pub special_elements: usize,
    /// `|Sp(2a)|` by brute force over all matrices, when small enough.
    pub symplectic_order: Option<usize>,
    pub failure_count: usize,
    pub failures: Vec<Failure>,
}

impl SoSpReport {
    pub fn passed(&self) -> bool {
        self.polar_alternating && self.polar_nondegenerate && self.failure_count == 0
    }
}

fn preserves_bilinear(b: &GfMat, g: &GfMat) -> bool {
    g.transpose().mul(b).mul(g) == *b
}

pub fn so_to_sp(a: usize, field: Gf, coverage: Coverage) -> Result<SoSpReport> {
    if a == 0 {
        return Err(Error::Malformed("a must be at least 1".into()));
    }
    let form = QuadForm::standard(2 * a, field);
    let b = form.polar();
    let (elements, exhaustive) = match coverage {
        Coverage::Exhaustive => (form.orthogonal_group()?, true),
        Coverage::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            ((0..samples).map(|_| form.random_isometry(&mut rng, 4 * a + 2)).collect(), false)
        }
    };
    let mut failures = Vec::new();
    let mut failure_count = 0;
    let mut special = 0;
    for g in &elements {
        if !form.is_isometry(g) {
            record(&mut failures, &mut failure_count, "not an isometry of q", vec![g.clone()]);
            continue;
        }
        if !preserves_bilinear(&b, g) {
            record(&mut failures, &mut failure_count, "does not preserve the polar form", vec![g.clone()]);
        }
        if dickson_invariant(&form, g)? == 0 {
            special += 1;
        }
    }
    let symplectic_order = brute_force_symplectic_order(&b);
    Ok(SoSpReport {
        a,
        field,
        exhaustive,
        polar_alternating: form.polar_is_alternating(),
        polar_nondegenerate: form.polar_radical_dim() == 0,
        elements_checked: elements.len(),
        special_elements: special,
        symplectic_order,
        failure_count,
        failures,
    })
}

fn brute_force_symplectic_order(b: &GfMat) -> Option<usize> {
    let d = b.rows();
    let field = b.field();
    let entries = all_vectors(field, d * d)?;
    Some(
        entries
            .iter()
            .filter(|e| {
                let rows: Vec<Vec<u8>> = e.chunks(d).map(<[u8]>::to_vec).collect();
                let g = GfMat::from_rows(field, &rows).expect("square");
                g.is_invertible() && preserves_bilinear(b, &g)
            })
            .count(),
    )
}

/// `O(2a+1) × O(2b+1) → O(2a+2b+1)` through the quotient of the orthogonal
/// sum by the line spanned by `e_{2a+1} + f_{2b+1}`.
#[derive(Clone, Debug)]
pub struct OddSumEmbedding {
    a: usize,
    b: usize,
    left: QuadForm,
    right: QuadForm,
    sum: QuadForm,
    target: QuadForm,
    line: Vec<u8>,
    projection: GfMat,
    lift: GfMat,
    iso: GfMat,
    iso_inv: GfMat,
}

impl OddSumEmbedding {
    pub fn new(a: usize, b: usize, field: Gf) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::Malformed("a and b must be at least 1".into()));
        }
        let (m, n) = (2 * a + 1, 2 * b + 1);
        let d = m + n;
        if d > 12 {
            return Err(Error::Unsupported(format!("total dimension {d} exceeds 12")));
        }
        let left = QuadForm::standard(m, field);
        let right = QuadForm::standard(n, field);
        let sum = QuadForm::new(left.coefficients().direct_sum(right.coefficients()))?;
        let target = QuadForm::standard(d - 1, field);
        let (i0, j0) = (m - 1, d - 1);
        let mut line = vec![0; d];
        line[i0] = 1;
        line[j0] = 1;

        // quotient coordinates: drop f_{2b+1}, which is ≡ e_{2a+1} mod the line
        let mut projection = GfMat::zeros(field, d - 1, d);
        for k in 0..j0 {
            projection.set(k, k, 1);
        }
        projection.set(i0, j0, 1);
        let mut lift = GfMat::zeros(field, d, d - 1);
        for k in 0..d - 1 {
            lift.set(k, k, 1);
        }
        // move x_{2a+1} to the last standard coordinate
        let order: Vec<usize> = (0..i0).chain(i0 + 1..d - 1).chain([i0]).collect();
        let mut iso = GfMat::zeros(field, d - 1, d - 1);
        for (std_k, &quot_k) in order.iter().enumerate() {
            iso.set(std_k, quot_k, 1);
        }
        let iso_inv = iso.transpose();

        let e = Self { a, b, left, right, sum, target, line, projection, lift, iso, iso_inv };
        e.check_line()?;
        e.check_quotient_form()?;
        Ok(e)
    }

    fn check_line(&self) -> Result<()> {
        if self.sum.eval(&self.line) != 0 {
            return Err(Error::Internal("the sum form does not vanish on the line".into()));
        }
        let d = self.sum.dim();
        for k in 0..d {
            let e: Vec<u8> = (0..d).map(|t| u8::from(t == k)).collect();
            if self.sum.polar_eval(&self.line, &e) != 0 {
                return Err(Error::Internal("the line is not in the radical of the polar form".into()));
            }
        }
        Ok(())
    }

    /// `q_std(S P v) = q_sum(v)` on basis vectors and pairwise sums, and on
    /// every vector when the space is small.
    fn check_quotient_form(&self) -> Result<()> {
        let d = self.sum.dim();
        let sp = self.iso.mul(&self.projection);
        let basis: Vec<Vec<u8>> = (0..d).map(|k| (0..d).map(|t| u8::from(t == k)).collect()).collect();
        let mut tests = basis.clone();
        for i in 0..d {
            for j in i + 1..d {
                tests.push(basis[i].iter().zip(&basis[j]).map(|(x, y)| x ^ y).collect());
            }
        }
        if let Some(all) = all_vectors(self.sum.field(), d) {
            tests = all;
        }
        for v in &tests {
            if self.target.eval(&sp.apply(v)) != self.sum.eval(v) {
                return Err(Error::Internal(format!("quotient form differs from the standard form at {v:?}")));
            }
        }
        Ok(())
    }

    pub fn line(&self) -> &[u8] {
        &self.line
    }

    pub fn left_form(&self) -> &QuadForm {
        &self.left
    }

    pub fn right_form(&self) -> &QuadForm {
        &self.right
    }

    pub fn target_form(&self) -> &QuadForm {
        &self.target
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.a, self.b)
    }

    /// Whether `g₁ ⊕ g₂` fixes the line (needed for the quotient map).
    pub fn fixes_line(&self, g1: &GfMat, g2: &GfMat) -> bool {
        g1.direct_sum(g2).apply(&self.line) == self.line
    }

    pub fn map(&self, g1: &GfMat, g2: &GfMat) -> Result<GfMat> {
        if !self.left.is_isometry(g1) {
            return Err(Error::NotIsometry(format!("left factor {:?}", g1.to_rows())));
        }
        if !self.right.is_isometry(g2) {
            return Err(Error::NotIsometry(format!("right factor {:?}", g2.to_rows())));
        }
        if !self.fixes_line(g1, g2) {
            return Err(Error::Internal("isometry moves the line".into()));
        }
        Ok(self.iso.mul(&self.projection).mul(&g1.direct_sum(g2)).mul(&self.lift).mul(&self.iso_inv))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OddSumReport {
    pub a: usize,
    pub b: usize,
    pub field: Gf,
    pub exhaustive: bool,
    pub left_order: Option<usize>,
    pub right_order: Option<usize>,
    pub pairs_checked: usize,
    pub products_checked: usize,
    pub form_preserved: bool,
    pub line_fixed: bool,
    pub homomorphism: bool,
    pub injective: bool,
    pub failure_count: usize,
    pub failures: Vec<Failure>,
}

impl OddSumReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0 && self.form_preserved && self.line_fixed && self.homomorphism && self.injective
    }
}

pub fn odd_orthogonal_sum_embedding(a: usize, b: usize, field: Gf, coverage: Coverage) -> Result<OddSumReport> {
    let emb = OddSumEmbedding::new(a, b, field)?;
    let mut failures = Vec::new();
    let mut failure_count = 0;
    let mut report = OddSumReport {
        a,
        b,
        field,
        exhaustive: coverage == Coverage::Exhaustive,
        left_order: None,
        right_order: None,
        pairs_checked: 0,
        products_checked: 0,
        form_preserved: true,
        line_fixed: true,
        homomorphism: true,
        injective: true,
        failure_count: 0,
        failures: Vec::new(),
    };

    // (source pair, image) for everything exercised
    let mut images: Vec<((GfMat, GfMat), GfMat)> = Vec::new();
    let image_of = |g1: &GfMat, g2: &GfMat, report: &mut OddSumReport, failures: &mut Vec<Failure>, count: &mut usize| {
        report.pairs_checked += 1;
        if !emb.fixes_line(g1, g2) {
            report.line_fixed = false;
            record(failures, count, "source element moves the line", vec![g1.clone(), g2.clone()]);
            return None;
        }
        let img = emb.map(g1, g2).ok()?;
        if !emb.target_form().is_isometry(&img) || emb.target_form().preserves_everywhere(&img) == Some(false) {
            report.form_preserved = false;
            record(failures, count, "image does not preserve the target form", vec![g1.clone(), g2.clone(), img.clone()]);
        }
        let id1 = GfMat::identity(field, g1.rows());
        let id2 = GfMat::identity(field, g2.rows());
        if img.is_identity() && (*g1 != id1 || *g2 != id2) {
            report.injective = false;
            record(failures, count, "nontrivial element maps to the identity", vec![g1.clone(), g2.clone()]);
        }
        Some(img)
    };

    match coverage {
        Coverage::Exhaustive => {
            let left = emb.left_form().orthogonal_group()?;
            let right = emb.right_form().orthogonal_group()?;
            report.left_order = Some(left.len());
            report.right_order = Some(right.len());
            for g1 in &left {
                for g2 in &right {
                    if let Some(img) = image_of(g1, g2, &mut report, &mut failures, &mut failure_count) {
                        images.push(((g1.clone(), g2.clone()), img));
                    }
                }
            }
            let mut distinct: Vec<&GfMat> = images.iter().map(|(_, i)| i).collect();
            distinct.sort_by_key(|m| m.to_rows());
            distinct.dedup();
            if distinct.len() != images.len() {
                report.injective = false;
                record(&mut failures, &mut failure_count, "two source pairs share an image", vec![]);
            }
            for (x, ix) in &images {
                for (y, iy) in &images {
                    report.products_checked += 1;
                    let prod = emb.map(&x.0.mul(&y.0), &x.1.mul(&y.1))?;
                    if prod != ix.mul(iy) {
                        report.homomorphism = false;
                        record(&mut failures, &mut failure_count, "ι(gh) ≠ ι(g)ι(h)", vec![x.0.clone(), x.1.clone(), y.0.clone(), y.1.clone()]);
                    }
                }
            }
        }
        Coverage::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let steps = 2 * (a + b) + 3;
            for _ in 0..samples {
                let x = (emb.left_form().random_isometry(&mut rng, steps), emb.right_form().random_isometry(&mut rng, steps));
                let y = (emb.left_form().random_isometry(&mut rng, steps), emb.right_form().random_isometry(&mut rng, steps));
                let (Some(ix), Some(iy)) = (
                    image_of(&x.0, &x.1, &mut report, &mut failures, &mut failure_count),
                    image_of(&y.0, &y.1, &mut report, &mut failures, &mut failure_count),
                ) else {
                    continue;
                };
                report.products_checked += 1;
                let prod = emb.map(&x.0.mul(&y.0), &x.1.mul(&y.1))?;
                if prod != ix.mul(&iy) {
                    report.homomorphism = false;
                    record(&mut failures, &mut failure_count, "ι(gh) ≠ ι(g)ι(h)", vec![x.0, x.1, y.0, y.1]);
                }
            }
        }
    }
    report.failure_count = failure_count;
    report.failures = failures;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_maps_to_identity() {
        let f = Gf::f2();
        let emb = OddSumEmbedding::new(1, 2, f).unwrap();
        let img = emb.map(&GfMat::identity(f, 3), &GfMat::identity(f, 5)).unwrap();
        assert!(img.is_identity());
    }

    #[test]
    fn exhaustive_one_one_over_f2() {
        let r = odd_orthogonal_sum_embedding(1, 1, Gf::f2(), Coverage::Exhaustive).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.pairs_checked, 36);
        assert_eq!(r.left_order, Some(6));
    }

    #[test]
    fn so_to_sp_small() {
        let r = so_to_sp(1, Gf::f2(), Coverage::Exhaustive).unwrap();
        assert!(r.passed());
        assert_eq!(r.elements_checked, 2);
        assert_eq!(r.symplectic_order, Some(6));
        let r = so_to_sp(2, Gf::f2(), Coverage::Exhaustive).unwrap();
        assert!(r.passed());
        assert_eq!(r.elements_checked, 72);
        assert_eq!(r.special_elements, 36);
        assert_eq!(r.symplectic_order, Some(720));
    }
}
