use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::Tally;
use crate::error::Result;
use crate::gen;
use crate::linalg::FpMatrix;
use crate::simplicial::{Complex, GComplex};
use crate::tate::{
    default_window, equivariant_cochains, is_perfect, link_cone_perfection, periodicity_witness, tate_cohomology, tate_cohomology_in, ChainMap, LinkVerdict,
    Module, TateComplex,
};

const PRIMES: [u32; 3] = [2, 3, 5];

fn k(p: u32) -> TateComplex {
    TateComplex::concentrated(Module::trivial(p, 1), 0)
}

fn free(p: u32) -> TateComplex {
    TateComplex::concentrated(Module::regular(p), 0)
}

fn show(m: &TateComplex) -> String {
    let degrees: BTreeMap<i64, Vec<Vec<i64>>> = m.modules().iter().map(|(n, md)| (*n, md.action.to_rows())).collect();
    let diffs: BTreeMap<i64, Vec<Vec<i64>>> = m
        .modules()
        .keys()
        .map(|&n| (n, m.differential(n).to_rows()))
        .filter(|(_, d)| d.iter().flatten().any(|&x| x != 0))
        .collect();
    serde_json::json!({"p": m.p(), "actions": degrees, "differentials": diffs}).to_string()
}

fn prime(rng: &mut ChaCha8Rng) -> u32 {
    *PRIMES.choose(rng).expect("primes")
}

fn action(faces: &[&[&str]], generator: &[(&str, &str)], order: u64) -> Result<GComplex> {
    let faces: Vec<Vec<&str>> = faces.iter().map(|f| f.to_vec()).collect();
    let base = Arc::new(Complex::from_maximal(&faces)?);
    let generator: BTreeMap<String, String> = generator.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    GComplex::from_labels(base, &generator, order)
}

/// The cone over a complex with an action, the apex fixed.
fn cone_over(g: &GComplex, apex: &str) -> Result<GComplex> {
    let base = g.base();
    let faces: Vec<Vec<String>> = base
        .maximal_label_lists()
        .into_iter()
        .map(|mut f| {
            f.push(apex.to_string());
            f
        })
        .collect();
    let mut generator = g.generator_labels();
    generator.insert(apex.to_string(), apex.to_string());
    GComplex::from_labels(Arc::new(Complex::from_maximal(&faces)?), &generator, g.order())
}

pub fn chi_values(_rng: &mut ChaCha8Rng, t: &mut Tally) {
    for p in PRIMES {
        t.record(k(p).chi_mod_p() == 1, || format!("chi(K) at p = {p}"));
        t.record(free(p).chi_mod_p() == 0, || format!("chi(K[Z/p]) at p = {p}"));
        let m = k(p).direct_sum(&free(p).shift(1)).expect("same prime");
        t.record(m.shift(1).chi_mod_p() == (-m.chi_mod_p()).rem_euclid(i64::from(p)), || show(&m));
        for n in 0..2 * p as usize {
            let sum = TateComplex::concentrated(Module::trivial(p, n), 0);
            t.record(sum.chi_mod_p() == (n as i64).rem_euclid(i64::from(p)), || show(&sum));
        }
    }
}

/// A chain map `M → M ⊕ N` acting on `M` by a polynomial in the generator.
fn polynomial_map(rng: &mut ChaCha8Rng, m: &TateComplex, n: &TateComplex) -> Result<ChainMap> {
    let p = m.p();
    let coeffs: Vec<i64> = (0..p).map(|_| rng.gen_range(0..i64::from(p))).collect();
    let target = m.direct_sum(n)?;
    let mut maps = BTreeMap::new();
    for (&deg, md) in m.modules() {
        let mut poly = FpMatrix::zeros(p, md.dim(), md.dim());
        let mut power = FpMatrix::identity(p, md.dim());
        for &c in &coeffs {
            poly = poly.add(&power.scale(c));
            power = power.mul(&md.action);
        }
        let mut block = FpMatrix::zeros(p, target.dim(deg), md.dim());
        block.put_block(0, 0, &poly);
        maps.insert(deg, block);
    }
    ChainMap::new(m.clone(), target, maps)
}

pub fn chi_additivity(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for _ in 0..100 {
        let p = prime(rng);
        let m = gen::tate_complex(rng, p);
        let n = gen::tate_complex(rng, p);
        let outcome = polynomial_map(rng, &m, &n).map(|f| {
            let want = (f.target.chi_mod_p() - f.source.chi_mod_p()).rem_euclid(i64::from(p));
            f.cone().chi_mod_p() == want
        });
        t.record_result(outcome, || format!("{} -> {}", show(&m), show(&n)));
    }
}

pub fn perfect_chi(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for _ in 0..100 {
        let p = prime(rng);
        let m = if rng.gen_bool(0.5) { gen::free_complex(rng, p) } else { gen::tate_complex(rng, p) };
        t.record(!is_perfect(&m) || m.chi_mod_p() == 0, || show(&m));
    }
}

pub fn periodicity(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for _ in 0..100 {
        let p = prime(rng);
        let m = gen::tate_complex(rng, p);
        t.record(tate_cohomology(&m).is_two_periodic(), || show(&m));
    }
}

/// A random complex of total dimension at most `max`.
fn small_complex(rng: &mut ChaCha8Rng, p: u32, max: usize) -> TateComplex {
    loop {
        let m = gen::tate_complex(rng, p);
        if m.modules().values().map(Module::dim).sum::<usize>() <= max {
            return m;
        }
    }
}

pub fn tensor(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for _ in 0..60 {
        let p = prime(rng);
        let m = small_complex(rng, p, 12);
        let f = gen::free_complex(rng, p);
        let outcome = (|| -> Result<bool> {
            let unit = k(p).tensor(&m)? == m;
            Ok(unit && is_perfect(&f) && is_perfect(&m.tensor(&f)?) && is_perfect(&f.tensor(&m)?))
        })();
        t.record_result(outcome, || format!("{} tensor {}", show(&m), show(&f)));
    }
}

pub fn dual(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for _ in 0..100 {
        let p = prime(rng);
        let m = if rng.gen_bool(0.5) { gen::free_complex(rng, p) } else { gen::tate_complex(rng, p) };
        let d = m.dual();
        let total = |c: &TateComplex| tate_cohomology(c).dims.values().sum::<usize>();
        t.record(d.dual() == m && is_perfect(&d) == is_perfect(&m) && total(&d) == total(&m), || show(&m));
    }
}

pub fn free_cochains(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for _ in 0..100 {
        let order = gen::small_order(rng);
        let g = gen::regular_gcomplex(rng, order, true, 200);
        let outcome = equivariant_cochains(&g).map(|c| g.is_free() && is_perfect(&c));
        t.record_result(outcome, || crate::io::to_json(&crate::io::ActionFile::from_action(&g)));
    }
}

pub fn witnesses(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for p in PRIMES {
        let w = periodicity_witness(&k(p), false);
        t.record(w.is_some_and(|w| w.passed() && w.shift == 2), || format!("K at p = {p}"));
    }
    let short = periodicity_witness(&k(2), true);
    t.record(short.is_some_and(|w| w.passed() && w.shift == 1), || "K at p = 2, short sequence".into());
    for _ in 0..40 {
        let p = prime(rng);
        let m = small_complex(rng, p, 12);
        let long = periodicity_witness(&m, false).is_some_and(|w| w.passed());
        let short = p != 2 || periodicity_witness(&m, true).is_some_and(|w| w.passed());
        t.record(long && short, || show(&m));
    }
}

pub fn links(rng: &mut ChaCha8Rng, t: &mut Tally) {
    let square = [&["1", "2"][..], &["2", "3"], &["3", "4"], &["1", "4"]];
    let reflection = action(&square, &[("1", "1"), ("3", "3"), ("2", "4"), ("4", "2")], 2);
    t.record_result(
        reflection.and_then(|g| link_cone_perfection(&g, "1")).map(|v| v == LinkVerdict::Perfect),
        || "square boundary with a reflection, vertex 1".into(),
    );
    let hexagon: Vec<Vec<String>> = (0..6).map(|i| vec!["c".to_string(), format!("{i}"), format!("{}", (i + 1) % 6)]).collect();
    let hexagon_cone = Complex::from_maximal(&hexagon).and_then(|c| {
        let mut gen: BTreeMap<String, String> = (0..6).map(|i| (format!("{i}"), format!("{}", (i + 3) % 6))).collect();
        gen.insert("c".into(), "c".into());
        GComplex::from_labels(Arc::new(c), &gen, 2)
    });
    t.record_result(
        hexagon_cone.and_then(|g| link_cone_perfection(&g, "c")).map(|v| v == LinkVerdict::Perfect),
        || "cone over a hexagon with the half-turn, apex".into(),
    );
    let trivial = action(&[&["1", "2"]], &[("1", "1"), ("2", "2")], 2);
    t.record_result(
        trivial.and_then(|g| link_cone_perfection(&g, "1")).map(|v| v == LinkVerdict::NotApplicable),
        || "trivial action on an edge".into(),
    );
    for _ in 0..30 {
        let order = gen::small_order(rng);
        let g = gen::regular_gcomplex(rng, order, true, 60);
        let outcome = (|| -> Result<bool> {
            let cone = cone_over(&g, "apex")?;
            let cochains_perfect = is_perfect(&equivariant_cochains(&cone)?);
            Ok(link_cone_perfection(&cone, "apex")? == LinkVerdict::Perfect && !cochains_perfect)
        })();
        t.record_result(outcome, || crate::io::to_json(&crate::io::ActionFile::from_action(&g)));
    }
}

/// Adding the acyclic cone of the identity on a free complex changes
/// neither χ nor Tate cohomology.
pub fn grothendieck(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for _ in 0..60 {
        let p = prime(rng);
        let m = gen::tate_complex(rng, p);
        let f = if rng.gen_bool(0.5) { gen::free_complex(rng, p) } else { gen::tate_complex(rng, p) };
        let outcome = (|| -> Result<bool> {
            let maps: BTreeMap<i64, FpMatrix> =
                f.modules().iter().map(|(&n, md)| (n, FpMatrix::identity(p, md.dim()))).collect();
            let acyclic = ChainMap::new(f.clone(), f.clone(), maps)?.cone();
            let bigger = m.direct_sum(&acyclic)?;
            // compare on one window wide enough for both
            let (lo, hi) = default_window(&bigger).unwrap_or((0, 0));
            Ok(acyclic.is_acyclic()
                && bigger.chi_mod_p() == m.chi_mod_p()
                && tate_cohomology_in(&bigger, lo, hi) == tate_cohomology_in(&m, lo, hi))
        })();
        t.record_result(outcome, || format!("{} plus cone(id) of {}", show(&m), show(&f)));
    }
}

/// Small complexes with known invariants.
pub fn examples(_rng: &mut ChaCha8Rng, t: &mut Tally) {
    for p in PRIMES {
        let table = tate_cohomology(&k(p));
        t.record(!table.dims.is_empty() && table.dims.values().all(|&d| d == 1), || format!("Tate table of K at p = {p}"));
        t.record(tate_cohomology(&free(p)).is_zero(), || format!("Tate table of K[Z/p] at p = {p}"));
        let sum = k(p).direct_sum(&free(p)).expect("same prime");
        t.record(tate_cohomology(&sum) == table, || format!("K plus K[Z/p] at p = {p}"));
        t.record(!is_perfect(&k(p)) && is_perfect(&free(p)), || format!("perfection at p = {p}"));
        t.record(k(p).tensor(&free(p)).is_ok_and(|m| m == free(p)), || format!("K tensor K[Z/p] at p = {p}"));
    }
    let triangle = action(&[&["1", "2"], &["2", "3"], &["1", "3"]], &[("1", "2"), ("2", "3"), ("3", "1")], 3);
    t.record_result(triangle.and_then(|g| equivariant_cochains(&g)).map(|c| is_perfect(&c)), || "hollow triangle".into());
    let square = [&["1", "2"][..], &["2", "3"], &["3", "4"], &["1", "4"]];
    let antipode = action(&square, &[("1", "3"), ("3", "1"), ("2", "4"), ("4", "2")], 2);
    t.record_result(antipode.and_then(|g| equivariant_cochains(&g)).map(|c| is_perfect(&c)), || "square antipode".into());
    let cone = action(
        &[&["c", "1", "2"], &["c", "2", "3"], &["c", "3", "4"], &["c", "1", "4"]],
        &[("c", "c"), ("1", "3"), ("3", "1"), ("2", "4"), ("4", "2")],
        2,
    );
    t.record_result(cone.and_then(|g| equivariant_cochains(&g)).map(|c| !is_perfect(&c)), || "cone on a free circle".into());
}
