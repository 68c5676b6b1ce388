use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{oracle, Tally};
use crate::error::{Error, Result};
use crate::roots::{
    affine_deletion, center_check, centralizer_datum, check_weyl_subgroup, congruence_subsystem, decompose,
    kac_order_p_nodes, level, pair, restrict_invariants, verify_coroot_compatibility, weyl_character, CartanType,
    InvariantElement, Isogeny, KacNode, RootDatum, ShaModel,
};
use crate::scalar::Ring;

const Z: Ring = Ring::Integers;
const PRIMES: [u32; 3] = [2, 3, 5];

const HIGHEST_ROOTS: &str = include_str!("../../golden/highest_roots.json");
const KAC_LISTS: &str = include_str!("../../golden/kac_lists.json");

fn sc(t: CartanType) -> RootDatum {
    RootDatum::of_type(t, Isogeny::SimplyConnected).expect("simple type")
}

fn small(rank: usize) -> Vec<CartanType> {
    CartanType::all().into_iter().filter(|t| t.rank <= rank).collect()
}

/// Every simply connected type with a node of prime coefficient.
fn nodes() -> Vec<(RootDatum, KacNode, u32)> {
    let mut out = Vec::new();
    for t in CartanType::all() {
        let rd = sc(t);
        for p in PRIMES {
            for node in kac_order_p_nodes(&rd, p).expect("prime") {
                out.push((rd.clone(), node, p));
            }
        }
    }
    out
}

fn expected_count(t: CartanType) -> usize {
    let n = t.rank;
    match t.family {
        'A' => n * (n + 1),
        'B' | 'C' => 2 * n * n,
        'D' => 2 * n * (n - 1),
        'E' => [72, 126, 240][n - 6],
        'F' => 48,
        _ => 12,
    }
}

pub fn counts(_rng: &mut ChaCha8Rng, t: &mut Tally) {
    for ty in CartanType::all() {
        for iso in [Isogeny::SimplyConnected, Isogeny::Adjoint] {
            let outcome = RootDatum::of_type(ty, iso).map(|rd| rd.roots().len() == expected_count(ty));
            t.record_result(outcome, || format!("{ty} {iso}"));
        }
    }
}

pub fn highest_root(_rng: &mut ChaCha8Rng, t: &mut Tally) {
    for ty in CartanType::all() {
        let rd = sc(ty);
        let outcome = (|| -> Result<bool> {
            let top = rd.highest_root_index()?;
            let theta = &rd.root_coefficients()[top];
            let dominant = rd.is_dominant(&rd.roots()[top]);
            let maximal = rd.positive_roots().iter().enumerate().all(|(k, _)| {
                rd.root_coefficients()[k].iter().zip(theta).all(|(a, b)| a <= b)
            });
            Ok(dominant && maximal)
        })();
        t.record_result(outcome, || ty.to_string());
    }
}

pub fn golden(_rng: &mut ChaCha8Rng, t: &mut Tally) {
    let table: BTreeMap<String, Vec<i64>> = serde_json::from_str(HIGHEST_ROOTS).expect("golden table");
    for ty in CartanType::all() {
        let want = table.get(&ty.to_string()).cloned();
        let got = sc(ty).highest_root_coeffs().ok();
        t.record(want.is_some() && want == got, || format!("{ty}: table {want:?}, computed {got:?}"));
    }
}

/// Multiplicative order of `β_i(ζ_p)` acting on the roots.
fn element_order(rd: &RootDatum, node: &KacNode, p: i64) -> Result<i64> {
    let mut order = 1;
    for alpha in rd.roots() {
        let v = alpha.iter().zip(&node.coweight).map(|(&a, b)| b * a as i128).sum::<crate::roots::Rat>();
        if !v.is_integer() {
            return Err(Error::Internal("root pairs non-integrally with a fundamental coweight".into()));
        }
        let k = v.numer().rem_euclid(p as i128) as i64;
        order = num_integer::lcm(order, p / num_integer::gcd(p, k));
    }
    Ok(order)
}

pub fn kac_lists(_rng: &mut ChaCha8Rng, t: &mut Tally) {
    let table: BTreeMap<String, BTreeMap<String, Vec<usize>>> = serde_json::from_str(KAC_LISTS).expect("golden table");
    for ty in CartanType::all() {
        let rd = sc(ty);
        for p in PRIMES {
            let outcome = (|| -> Result<bool> {
                let want = table.get(&ty.to_string()).and_then(|m| m.get(&p.to_string())).cloned();
                let found = kac_order_p_nodes(&rd, p)?;
                let got: Vec<usize> = found.iter().map(|n| n.index + 1).collect();
                let mut ok = want == Some(got);
                for node in &found {
                    ok &= element_order(&rd, node, i64::from(p))? == i64::from(p);
                }
                Ok(ok)
            })();
            t.record_result(outcome, || format!("{ty} at p = {p}"));
        }
    }
}

fn c_factor(k: usize) -> String {
    if k == 1 {
        "A1".into()
    } else {
        format!("C{k}")
    }
}

pub fn c_series(_rng: &mut ChaCha8Rng, t: &mut Tally) {
    for n in 2..=8 {
        let rd = sc(CartanType::new('C', n).expect("type"));
        let outcome = (|| -> Result<bool> {
            let found = kac_order_p_nodes(&rd, 2)?;
            let mut ok = found.len() == n - 1;
            for node in &found {
                let (a, b) = (node.index + 1, n - 1 - node.index);
                let mut parts = [(a, c_factor(a)), (b, c_factor(b))];
                parts.sort_by_key(|(k, s)| (s.as_bytes()[0], *k));
                let want = format!("{}x{}", parts[0].1, parts[1].1);
                ok &= centralizer_datum(&rd, node)?.label() == want;
            }
            Ok(ok)
        })();
        t.record_result(outcome, || format!("C{n}"));
    }
}

pub fn centralizer_double(_rng: &mut ChaCha8Rng, t: &mut Tally) {
    for (rd, node, p) in nodes() {
        let outcome = (|| -> Result<bool> {
            let deletion: BTreeSet<Vec<i64>> = affine_deletion(&rd, &node)?.roots().iter().cloned().collect();
            let congruence: BTreeSet<Vec<i64>> = congruence_subsystem(&rd, &node)?.into_iter().collect();
            Ok(deletion == congruence)
        })();
        t.record_result(outcome, || format!("{rd} node {} at p = {p}", node.index + 1));
    }
}

pub fn centralizer_rank(_rng: &mut ChaCha8Rng, t: &mut Tally) {
    for (rd, node, p) in nodes() {
        let outcome = centralizer_datum(&rd, &node).map(|h| h.rank() == rd.rank() && h.semisimple_rank() == rd.rank());
        t.record_result(outcome, || format!("{rd} node {} at p = {p}", node.index + 1));
    }
}

pub fn center(_rng: &mut ChaCha8Rng, t: &mut Tally) {
    for (rd, node, p) in nodes() {
        let outcome = center_check(&rd, &node).map(|r| r.extension);
        t.record_result(outcome, || format!("{rd} node {} at p = {p}", node.index + 1));
    }
}

pub fn dual_involution(_rng: &mut ChaCha8Rng, t: &mut Tally) {
    for ty in CartanType::all() {
        for iso in [Isogeny::SimplyConnected, Isogeny::Adjoint] {
            let outcome = RootDatum::of_type(ty, iso).map(|rd| {
                let d = rd.dual();
                d.dual() == rd && d.isogeny() == iso.dual() && d.roots().len() == rd.roots().len()
            });
            t.record_result(outcome, || format!("{ty} {iso}"));
        }
    }
}

pub fn centralizer_dual(_rng: &mut ChaCha8Rng, t: &mut Tally) {
    for (rd, node, p) in nodes() {
        let outcome = centralizer_datum(&rd, &node).map(|h| {
            let d = h.dual();
            let set = |v: &[Vec<i64>]| v.iter().cloned().collect::<BTreeSet<_>>();
            set(d.roots()) == set(h.coroots()) && set(d.coroots()) == set(h.roots())
        });
        t.record_result(outcome, || format!("{rd} node {} at p = {p}", node.index + 1));
    }
}

pub fn coroot_compatibility(_rng: &mut ChaCha8Rng, t: &mut Tally) {
    for (rd, node, p) in nodes() {
        let mut detail = String::new();
        let outcome = verify_coroot_compatibility(&rd, &node).map(|r| {
            detail = r.violations.join("; ");
            r.passed()
        });
        t.record_result(outcome, || format!("{rd} node {} at p = {p}: {detail}", node.index + 1));
    }
}

pub fn weyl_subgroup(_rng: &mut ChaCha8Rng, t: &mut Tally) {
    for (rd, node, p) in nodes() {
        let outcome = (|| -> Result<bool> {
            let h = centralizer_datum(&rd, &node)?;
            check_weyl_subgroup(&rd, &h)?;
            check_weyl_subgroup(&rd.dual(), &h.dual())?;
            Ok(true)
        })();
        t.record_result(outcome, || format!("{rd} node {} at p = {p}", node.index + 1));
    }
}

/// A dominant weight with coordinates at most `max` and total at most `total`.
fn dominant_weight(rng: &mut ChaCha8Rng, rank: usize, max: i64, total: i64) -> Vec<i64> {
    let mut w = vec![0; rank];
    let mut left = total;
    let mut order: Vec<usize> = (0..rank).collect();
    order.shuffle(rng);
    for i in order {
        let v = rng.gen_range(0..=max.min(left));
        w[i] = v;
        left -= v;
    }
    w
}

pub fn weyl_dimension(rng: &mut ChaCha8Rng, t: &mut Tally) {
    let types = small(4);
    for _ in 0..40 {
        let ty = *types.choose(rng).expect("types");
        let rd = Arc::new(sc(ty));
        let total = if ty.rank == 4 { 4 } else { 3 * ty.rank as i64 };
        let lambda = dominant_weight(rng, ty.rank, 3, total);
        let outcome = weyl_character(&rd, &lambda, Z).map(|chi| chi.dimension() as i128 == oracle::weyl_dimension(&rd, &lambda));
        t.record_result(outcome, || format!("{ty} highest weight {lambda:?}"));
    }
}

pub fn decompose_characters(rng: &mut ChaCha8Rng, t: &mut Tally) {
    let types = small(3);
    for _ in 0..30 {
        let ty = *types.choose(rng).expect("types");
        let rd = Arc::new(sc(ty));
        let lambda = dominant_weight(rng, ty.rank, 2, 3);
        let mu = dominant_weight(rng, ty.rank, 2, 3);
        let outcome = (|| -> Result<bool> {
            let a = weyl_character(&rd, &lambda, Z)?;
            let b = weyl_character(&rd, &mu, Z)?;
            let single = decompose(&a)? == vec![(lambda.clone(), 1)];
            let product = decompose(&a.mul(&b)?)?;
            let top: Vec<i64> = lambda.iter().zip(&mu).map(|(x, y)| x + y).collect();
            let top_once = product.iter().any(|(w, m)| *w == top && *m == 1);
            let dims: i128 = product.iter().map(|(w, m)| *m as i128 * oracle::weyl_dimension(&rd, w)).sum();
            Ok(single && top_once && dims == oracle::weyl_dimension(&rd, &lambda) * oracle::weyl_dimension(&rd, &mu))
        })();
        t.record_result(outcome, || format!("{ty}: {lambda:?} and {mu:?}"));
    }
}

/// Types with an order-p node whose Weyl orbits stay small.
fn sha_cases() -> Vec<(RootDatum, KacNode, u32)> {
    nodes().into_iter().filter(|(rd, _, _)| rd.rank() <= 3 || rd.label() == "C4").collect()
}

fn random_element(rng: &mut ChaCha8Rng, model: &ShaModel) -> Result<InvariantElement> {
    let rank = model.dual().rank();
    let mut e = InvariantElement::zero(model.dual().clone(), model.ring());
    for _ in 0..rng.gen_range(1..=2) {
        let x: Vec<i64> = (0..rank).map(|_| rng.gen_range(-1..=1)).collect();
        let c = rng.gen_range(1..=4);
        e = e.add(&model.orbit_element(&x).scale(c))?;
    }
    Ok(e)
}

pub fn restrict_homomorphism(rng: &mut ChaCha8Rng, t: &mut Tally) {
    let cases = sha_cases();
    for _ in 0..30 {
        let (rd, node, p) = cases.choose(rng).expect("cases").clone();
        let model = ShaModel::new(&rd, Z);
        let outcome = (|| -> Result<bool> {
            let h = model.centralizer(&node)?;
            let (e1, e2) = (random_element(rng, &model)?, random_element(rng, &model)?);
            let r = |e: &InvariantElement| restrict_invariants(model.dual(), h.dual(), e);
            Ok(r(&e1.mul(&e2)?)? == r(&e1)?.mul(&r(&e2)?)? && r(&e1.add(&e2)?)? == r(&e1)?.add(&r(&e2)?)?)
        })();
        t.record_result(outcome, || format!("{rd} node {} at p = {p}", node.index + 1));
    }
}

pub fn smith_sha(rng: &mut ChaCha8Rng, t: &mut Tally) {
    let cases = sha_cases();
    for _ in 0..30 {
        let (rd, node, p) = cases.choose(rng).expect("cases").clone();
        let model = ShaModel::new(&rd, Ring::Prime(p));
        let outcome = (|| -> Result<bool> {
            let (e1, e2) = (random_element(rng, &model)?, random_element(rng, &model)?);
            let s = |e: &InvariantElement| model.smith_sha(e, &node, p);
            let unit = s(&model.unit())? == model.centralizer(&node)?.unit();
            Ok(unit && s(&e1.mul(&e2)?)? == s(&e1)?.mul(&s(&e2)?)? && s(&e1.add(&e2)?)? == s(&e1)?.add(&s(&e2)?)?)
        })();
        t.record_result(outcome, || format!("{rd} node {} at p = {p}", node.index + 1));
    }
}

/// The first `count` nonzero dominant weights, ordered by level then
/// coordinates.
pub fn first_dominant(rd: &RootDatum, count: usize) -> Vec<Vec<i64>> {
    let n = rd.rank() as u32;
    let mut found: Vec<Vec<i64>> = Vec::new();
    let span = 9i64;
    for k in 0..span.pow(n) {
        let w: Vec<i64> = (0..n).map(|i| (k / span.pow(i)) % span - 4).collect();
        if rd.is_dominant(&w) && w.iter().any(|&x| x != 0) {
            found.push(w);
        }
    }
    found.sort_by(|a, b| level(rd, a).cmp(&level(rd, b)).then_with(|| a.cmp(b)));
    found.truncate(count);
    found
}

/// Branching of a character of `C2` to its centralizer `A1×A1`, by peeling
/// off products of `A1` strings. Roots of a product of two `A1` are
/// orthogonal, so each irreducible character is a rectangle of weights.
pub fn branch_by_strings(h: &RootDatum, weights: &BTreeMap<Vec<i64>, i64>) -> Result<Vec<(Vec<i64>, i64)>> {
    if h.semisimple_rank() != 2 || h.cartan()[0][1] != 0 {
        return Err(Error::Unsupported("string branching needs A1xA1".into()));
    }
    let mut rest = weights.clone();
    rest.retain(|_, m| *m != 0);
    let mut out = Vec::new();
    while !rest.is_empty() {
        let top = rest
            .keys()
            .filter(|w| h.is_dominant(w))
            .max_by(|a, b| level(h, a).cmp(&level(h, b)).then_with(|| a.cmp(b)))
            .cloned()
            .ok_or_else(|| Error::Internal("no dominant weight left".into()))?;
        let m = rest[&top];
        let (s1, s2) = (pair(&top, &h.simple_coroots()[0]), pair(&top, &h.simple_coroots()[1]));
        for a in 0..=s1 {
            for b in 0..=s2 {
                let w: Vec<i64> = (0..h.rank())
                    .map(|i| top[i] - a * h.simple_roots()[0][i] - b * h.simple_roots()[1][i])
                    .collect();
                let e = rest.entry(w.clone()).or_insert(0);
                *e -= m;
                if *e == 0 {
                    rest.remove(&w);
                }
            }
        }
        out.push((top, m));
    }
    out.sort();
    Ok(out)
}

/// Branching `C2 → A1×A1` of the first five characters of the dual group.
pub fn branching_table() -> Result<Vec<(Vec<i64>, Vec<(Vec<i64>, i64)>)>> {
    let rd = sc(CartanType::new('C', 2)?);
    let model = ShaModel::new(&rd, Z);
    let node = kac_order_p_nodes(&rd, 2)?.into_iter().next().ok_or_else(|| Error::Internal("no node".into()))?;
    let h = model.centralizer(&node)?;
    first_dominant(model.dual(), 5)
        .into_iter()
        .map(|lambda| {
            let chi = model.character(&lambda)?;
            Ok((lambda, decompose(&restrict_invariants(model.dual(), h.dual(), &chi)?)?))
        })
        .collect()
}

pub fn branching(_rng: &mut ChaCha8Rng, t: &mut Tally) {
    let outcome = (|| -> Result<Vec<bool>> {
        let rd = sc(CartanType::new('C', 2)?);
        let model = ShaModel::new(&rd, Z);
        let node = &kac_order_p_nodes(&rd, 2)?[0];
        let h = model.centralizer(node)?;
        let table = branching_table()?;
        let mut oks = vec![table.len() == 5];
        for (lambda, parts) in table {
            let chi = model.character(&lambda)?;
            oks.push(branch_by_strings(h.dual(), chi.weights())? == parts);
        }
        Ok(oks)
    })();
    match outcome {
        Ok(oks) => {
            for (i, ok) in oks.into_iter().enumerate() {
                t.record(ok, || format!("C2 to A1xA1, character {i}"));
            }
        }
        Err(e) => t.record(false, || format!("C2 to A1xA1: {e}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::kac_nodes;

    #[test]
    fn node_table_covers_exceptional_types() {
        let labels: BTreeSet<String> = nodes().iter().map(|(rd, _, _)| rd.label().to_string()).collect();
        for l in ["E6", "E7", "E8", "F4", "G2"] {
            assert!(labels.contains(l), "{l}");
        }
    }

    #[test]
    fn e8_order_five_is_a4_squared() {
        let rd = sc(CartanType::new('E', 8).unwrap());
        let all = kac_nodes(&rd).unwrap();
        assert_eq!(all.iter().filter(|n| n.coefficient == 5).count(), 1);
    }
}
