use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::Tally;
use crate::error::Result;
use crate::gen::{self, MapKind};
use crate::io::{self, ActionFile, ComplexFile, FunctionFile};
use crate::scalar::Ring;
use crate::simplicial::{
    dualize, euler_integral, fixed_map, pullback, pullback_shriek, pushforward, pushforward_star, restrict,
    smith_restrict, specialize, standard_costandard, CFun, Complex, GComplex, Sign, SimplicialMap,
};

const Z: Ring = Ring::Integers;

fn show_complex(c: &Complex) -> serde_json::Value {
    json!(ComplexFile::from_complex(c))
}

fn show_action(g: &GComplex) -> serde_json::Value {
    json!({"complex": show_complex(g.base()), "action": ActionFile::from_action(g)})
}

fn show_fun(f: &CFun) -> serde_json::Value {
    json!(FunctionFile::from_function(f))
}

fn show_map(u: &SimplicialMap) -> serde_json::Value {
    json!({"source": show_complex(u.source()), "target": show_complex(u.target()), "vertices": u.assignment()})
}

fn ring_of(g: &GComplex) -> Ring {
    Ring::Prime(g.prime())
}

fn random_action(rng: &mut ChaCha8Rng, max: usize) -> GComplex {
    let order = gen::small_order(rng);
    gen::regular_gcomplex(rng, order, false, max)
}

pub fn smith_congruence(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for _ in 0..300 {
        let g = random_action(rng, 150);
        let f = gen::invariant_cfun(rng, &g, ring_of(&g));
        let outcome = smith_restrict(&g, &f).map(|s| euler_integral(&s) == euler_integral(&f));
        t.record_result(outcome, || io::to_json(&json!({"g": show_action(&g), "f": show_fun(&f)})));
    }
}

pub fn dual_involution(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for _ in 0..300 {
        let c = gen::complex(rng, 200);
        let f = gen::cfun(rng, c, Z);
        t.record(dualize(&dualize(&f)) == f, || io::to_json(&show_fun(&f)));
    }
}

pub fn dual_exchange(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for _ in 0..20 {
        let (name, m) = gen::closed_manifold(rng);
        for v in m.labels() {
            let outcome = standard_costandard(&m, v, Z).map(|(i_u, j_u)| dualize(&j_u) == i_u);
            t.record_result(outcome, || format!("{name}, vertex {v}: {}", io::to_json(&show_complex(&m))));
        }
    }
}

pub fn dual_triangular(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for _ in 0..50 {
        let c = gen::complex(rng, 120);
        let mut ok = true;
        for tau in 0..c.len() {
            let col = dualize(&CFun::indicator(c.clone(), Z, &[tau]));
            let faces = c.faces(tau);
            for sigma in 0..c.len() {
                let v = col.get(sigma);
                if sigma == tau {
                    ok &= v == Z.sign(c.dim_of(tau));
                } else if v != 0 {
                    ok &= sigma < tau && faces.contains(&sigma);
                }
            }
        }
        t.record(ok, || io::to_json(&show_complex(&c)));
    }
}

/// A random equivariant map into `g` that is not the map to a point.
fn map_into(rng: &mut ChaCha8Rng, g: &GComplex) -> (GComplex, SimplicialMap) {
    loop {
        let (kind, src, _, u) = gen::equivariant_map(rng, g);
        if kind != MapKind::ToPoint {
            return (src, u);
        }
    }
}

/// `X1 -u-> X2 -v-> X3`.
fn composable(rng: &mut ChaCha8Rng) -> (SimplicialMap, SimplicialMap) {
    let g3 = random_action(rng, 40);
    let (g2, v) = map_into(rng, &g3);
    let (_, u) = if rng.gen_bool(0.2) {
        let (g1, u) = map_into(rng, &g2);
        (g1, u)
    } else {
        let inc = gen::invariant_subcomplex(rng, &g2);
        let u = SimplicialMap::inclusion(inc.base().clone(), g2.base().clone()).expect("subcomplex");
        (inc, u)
    };
    (u, v)
}

pub fn push_functorial(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for _ in 0..100 {
        let (u, v) = composable(rng);
        let f = gen::cfun(rng, u.source().clone(), Z);
        let outcome = (|| -> Result<bool> {
            let vu = u.then(&v)?;
            Ok(pushforward(&vu, &f)? == pushforward(&v, &pushforward(&u, &f)?)?)
        })();
        t.record_result(outcome, || io::to_json(&json!({"u": show_map(&u), "v": show_map(&v), "f": show_fun(&f)})));
    }
}

pub fn pull_functorial(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for _ in 0..100 {
        let (u, v) = composable(rng);
        let h = gen::cfun(rng, v.target().clone(), Z);
        let outcome = (|| -> Result<bool> {
            let vu = u.then(&v)?;
            Ok(pullback(&vu, &h)? == pullback(&u, &pullback(&v, &h)?)?)
        })();
        t.record_result(outcome, || io::to_json(&json!({"u": show_map(&u), "v": show_map(&v), "h": show_fun(&h)})));
    }
}

/// A random map between random complexes (group actions are incidental).
fn random_map(rng: &mut ChaCha8Rng) -> SimplicialMap {
    let g = random_action(rng, 60);
    gen::equivariant_map(rng, &g).3
}

/// `u^{-1}(W)` and the restricted map `u^{-1}(W) -> W`.
fn preimage(u: &SimplicialMap, w: &Arc<Complex>) -> Result<(Arc<Complex>, SimplicialMap)> {
    let tgt = u.target();
    let src = u.source();
    let inside: Vec<bool> = (0..src.len()).map(|i| w.find_labels(&tgt.simplex_labels(u.image(i))).is_some()).collect();
    let z = Arc::new(src.subcomplex(|i| inside[i])?);
    let assignment = u.assignment();
    let restricted: BTreeMap<String, String> =
        z.labels().iter().map(|l| (l.clone(), assignment[l].clone())).collect();
    let uz = SimplicialMap::new(z.clone(), w.clone(), &restricted)?;
    Ok((z, uz))
}

pub fn base_change(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for _ in 0..100 {
        let u = random_map(rng);
        let w = gen::subcomplex(rng, u.target());
        let f = gen::cfun(rng, u.source().clone(), Z);
        let outcome = (|| -> Result<bool> {
            let (z, uz) = preimage(&u, &w)?;
            Ok(restrict(&pushforward(&u, &f)?, &w)? == pushforward(&uz, &restrict(&f, &z)?)?)
        })();
        t.record_result(outcome, || {
            io::to_json(&json!({"u": show_map(&u), "w": show_complex(&w), "f": show_fun(&f)}))
        });
    }
}

pub fn integral_invariance(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for _ in 0..100 {
        let u = random_map(rng);
        let f = gen::cfun(rng, u.source().clone(), Z);
        let outcome = pushforward(&u, &f).map(|g| euler_integral(&g) == euler_integral(&f));
        t.record_result(outcome, || io::to_json(&json!({"u": show_map(&u), "f": show_fun(&f)})));
    }
}

pub fn proper_push(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for _ in 0..100 {
        let u = random_map(rng);
        let f = gen::cfun(rng, u.source().clone(), Z);
        let outcome = (|| Ok(pushforward_star(&u, &f)? == pushforward(&u, &f)?))();
        t.record_result(outcome, || io::to_json(&json!({"u": show_map(&u), "f": show_fun(&f)})));
    }
}

pub fn closed_immersion_dual(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for _ in 0..100 {
        let c = gen::complex(rng, 120);
        let w = gen::subcomplex(rng, &c);
        let f = gen::cfun(rng, w.clone(), Z);
        let outcome = (|| -> Result<bool> {
            let i = SimplicialMap::inclusion(w.clone(), c.clone())?;
            Ok(dualize(&pushforward(&i, &f)?) == pushforward(&i, &dualize(&f))?)
        })();
        t.record_result(outcome, || io::to_json(&json!({"x": show_complex(&c), "f": show_fun(&f)})));
    }
}

pub fn smith_dual(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for _ in 0..100 {
        let g = random_action(rng, 100);
        let f = gen::invariant_cfun(rng, &g, ring_of(&g));
        let outcome = (|| Ok(smith_restrict(&g, &dualize(&f))? == dualize(&smith_restrict(&g, &f)?)))();
        t.record_result(outcome, || io::to_json(&json!({"g": show_action(&g), "f": show_fun(&f)})));
    }
}

type Push = fn(&SimplicialMap, &CFun) -> Result<CFun>;

fn smith_vs_push(rng: &mut ChaCha8Rng, t: &mut Tally, push: Push) {
    for _ in 0..100 {
        let g = random_action(rng, 60);
        let (kind, gx, gy, u) = gen::equivariant_map(rng, &g);
        let f = gen::invariant_cfun(rng, &gx, ring_of(&g));
        let outcome = (|| -> Result<bool> {
            let lhs = smith_restrict(&gy, &push(&u, &f)?)?;
            let rhs = push(&fixed_map(&gx, &gy, &u)?, &smith_restrict(&gx, &f)?)?;
            Ok(lhs == rhs)
        })();
        t.record_result(outcome, || {
            io::to_json(&json!({"kind": format!("{kind:?}"), "x": show_action(&gx), "u": show_map(&u), "f": show_fun(&f)}))
        });
    }
}

fn smith_vs_pull(rng: &mut ChaCha8Rng, t: &mut Tally, pull: Push) {
    for _ in 0..100 {
        let g = random_action(rng, 60);
        let (kind, gx, gy, u) = gen::equivariant_map(rng, &g);
        let h = gen::invariant_cfun(rng, &gy, ring_of(&g));
        let outcome = (|| -> Result<bool> {
            let lhs = smith_restrict(&gx, &pull(&u, &h)?)?;
            let rhs = pull(&fixed_map(&gx, &gy, &u)?, &smith_restrict(&gy, &h)?)?;
            Ok(lhs == rhs)
        })();
        t.record_result(outcome, || {
            io::to_json(&json!({"kind": format!("{kind:?}"), "y": show_action(&gy), "u": show_map(&u), "h": show_fun(&h)}))
        });
    }
}

pub fn smith_push(rng: &mut ChaCha8Rng, t: &mut Tally) {
    smith_vs_push(rng, t, pushforward);
}

pub fn smith_push_star(rng: &mut ChaCha8Rng, t: &mut Tally) {
    smith_vs_push(rng, t, pushforward_star);
}

pub fn smith_pull(rng: &mut ChaCha8Rng, t: &mut Tally) {
    smith_vs_pull(rng, t, pullback);
}

pub fn smith_pull_shriek(rng: &mut ChaCha8Rng, t: &mut Tally) {
    smith_vs_pull(rng, t, pullback_shriek);
}

pub fn smith_specialize(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for _ in 0..100 {
        let g = random_action(rng, 100);
        let signs = gen::invariant_signs(rng, &g);
        let f = gen::invariant_cfun(rng, &g, ring_of(&g));
        let outcome = (|| -> Result<bool> {
            let psi = specialize(&f, &signs)?;
            let on_zero = g.restrict_to(psi.carrier().clone())?;
            let lhs = smith_restrict(&on_zero, &psi)?;
            let fixed = g.fixed_subcomplex()?;
            let fixed_signs: Vec<Sign> =
                fixed.labels().iter().map(|l| signs[g.base().vertex(l).expect("fixed vertex")]).collect();
            let rhs = specialize(&smith_restrict(&g, &f)?, &fixed_signs)?;
            Ok(lhs == rhs)
        })();
        t.record_result(outcome, || {
            let s: BTreeMap<&str, String> =
                g.base().labels().iter().zip(&signs).map(|(l, s)| (l.as_str(), format!("{s:?}"))).collect();
            io::to_json(&json!({"g": show_action(&g), "signs": s, "f": show_fun(&f)}))
        });
    }
}

pub fn round_trip(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for _ in 0..50 {
        let g = random_action(rng, 80);
        let f = gen::invariant_cfun(rng, &g, ring_of(&g));
        let outcome = (|| -> Result<bool> {
            let cj = io::to_json(&ComplexFile::from_complex(g.base()));
            let aj = io::to_json(&ActionFile::from_action(&g));
            let fj = io::to_json(&FunctionFile::from_function(&f));
            let c = Arc::new(io::parse::<ComplexFile>(&cj, "complex")?.build()?);
            let g2 = io::parse::<ActionFile>(&aj, "action")?.build(c.clone())?;
            let f2 = io::parse::<FunctionFile>(&fj, "function")?.build(c)?;
            let again = io::to_json(&ComplexFile::from_complex(g2.base()));
            Ok(g2 == g && f2 == f && again == cj)
        })();
        t.record_result(outcome, || io::to_json(&json!({"g": show_action(&g), "f": show_fun(&f)})));
    }
}
