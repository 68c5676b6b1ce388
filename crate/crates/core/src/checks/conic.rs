use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{oracle, Tally};
use crate::conic::{avg_lift, ft, ft_value, integer_covector, line_fan, smith_ft_square as ft_square, ConicCFun, Fan};
use crate::error::Result;
use crate::gen;
use crate::io::{self, ConicFunctionFile, FanFile};
use crate::scalar::Ring;

const Z: Ring = Ring::Integers;

fn show(f: &ConicCFun, xi: &[i64]) -> String {
    io::to_json(&json!({"fan": FanFile::from_fan(f.fan()), "function": ConicFunctionFile::from_function(f), "xi": xi}))
}

pub fn conicity(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for _ in 0..100 {
        let dim = rng.gen_range(1..=3);
        let fan = Arc::new(gen::fan(rng, dim));
        let f = gen::conic_cfun(rng, fan, Z);
        let xi = gen::covector(rng, dim);
        let s: i64 = rng.gen_range(2..=5);
        let scaled: Vec<i64> = xi.iter().map(|x| s * x).collect();
        let outcome = (|| Ok(ft_value(&f, &xi)? == ft_value(&f, &scaled)?))();
        t.record_result(outcome, || show(&f, &xi));
    }
}

pub fn linearity(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for _ in 0..100 {
        let dim = rng.gen_range(1..=3);
        let fan = Arc::new(gen::fan(rng, dim));
        let f = gen::conic_cfun(rng, fan.clone(), Z);
        let g = gen::conic_cfun(rng, fan, Z);
        let (a, b) = (rng.gen_range(-3..=3i64), rng.gen_range(-3..=3i64));
        let xi = gen::covector(rng, dim);
        let outcome = (|| -> Result<bool> {
            let lhs = ft_value(&f.scale(a).add(&g.scale(b))?, &xi)?.value;
            let rhs = a * ft_value(&f, &xi)?.value + b * ft_value(&g, &xi)?.value;
            Ok(lhs == rhs)
        })();
        t.record_result(outcome, || show(&f, &xi));
    }
}

pub fn oracle_agreement(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for _ in 0..60 {
        let dim = rng.gen_range(1..=2);
        let fan = Arc::new(gen::fan(rng, dim));
        let f = gen::conic_cfun(rng, fan, Z);
        let xi = gen::covector(rng, dim);
        let outcome = (|| Ok(ft_value(&f, &xi)? == oracle::ft_value_by_triangulation(&f, &xi)?))();
        t.record_result(outcome, || show(&f, &xi));
    }
}

pub fn transform_sampling(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for _ in 0..30 {
        let dim = rng.gen_range(1..=3);
        let fan = Arc::new(gen::fan(rng, dim));
        let f = gen::conic_cfun(rng, fan, Z);
        let dual = Arc::new(gen::fan(rng, dim));
        let outcome = (|| -> Result<bool> {
            let g = ft(&f, dual.clone())?;
            for i in 0..dual.len() {
                if g.get(i) != ft_value(&f, &dual.interior_point(i))?.value {
                    return Ok(false);
                }
            }
            Ok(true)
        })();
        t.record_result(outcome, || show(&f, &[]));
    }
}

/// A random function constant on the orbits of a coordinate permutation.
fn invariant_conic(rng: &mut ChaCha8Rng, fan: &Arc<Fan>, perm: &[usize], ring: Ring) -> ConicCFun {
    let moved = fan.permuted_cones(perm).expect("invariant fan");
    let mut values: Vec<Option<i64>> = vec![None; fan.len()];
    for i in 0..fan.len() {
        if values[i].is_none() {
            let v = gen::scalar(rng, ring);
            let mut j = i;
            loop {
                values[j] = Some(v);
                j = moved[j];
                if j == i {
                    break;
                }
            }
        }
    }
    ConicCFun::from_values(fan.clone(), ring, values.into_iter().map(|v| v.expect("assigned")).collect())
}

fn invariant_fans(dim: usize) -> Vec<Fan> {
    let diag = vec![1; dim];
    let anti: Vec<i64> = vec![-1; dim];
    let mut out = vec![Fan::orthants(dim)];
    let one = Fan::orthants(dim).stellar(&diag).expect("subdivision");
    out.push(one.stellar(&anti).expect("subdivision"));
    out.push(one);
    if dim == 2 {
        let mixed = Fan::orthants(2).stellar(&[1, -1]).and_then(|f| f.stellar(&[-1, 1])).expect("subdivision");
        out.push(mixed);
    }
    out
}

pub fn smith_ft_square(rng: &mut ChaCha8Rng, t: &mut Tally) {
    let cases: [(Vec<usize>, u32); 2] = [(vec![1, 0], 2), (vec![1, 2, 0], 3)];
    for (perm, p) in cases {
        let ring = Ring::Prime(p);
        for fan in invariant_fans(perm.len()) {
            let fan = Arc::new(fan);
            let mut functions = vec![ConicCFun::constant(fan.clone(), ring, 1), ConicCFun::closed_cone(fan.clone(), ring, 0)];
            functions.extend((0..15).map(|_| invariant_conic(rng, &fan, &perm, ring)));
            for f in functions {
                let eta = vec![rng.gen_range(-3..=3)];
                let outcome = ft_square(&f, &perm, &eta).map(|(a, b)| a == b);
                t.record_result(outcome, || format!("permutation {perm:?}, eta {eta:?}: {}", show(&f, &eta)));
            }
        }
    }
}

/// Over `Z` the two paths around the square differ for the swap on `Q²`
/// (`+1` against `-1`) and only agree after reduction mod 2.
pub fn mod_p_necessity(_rng: &mut ChaCha8Rng, t: &mut Tally) {
    let outcome = (|| -> Result<bool> {
        let perm = [1usize, 0];
        let mut ok = true;
        for eta in [-2i64, -1, 0, 1, 2] {
            let lift = integer_covector(&avg_lift(&perm, &[eta])?);
            let upper = ft_value(&ConicCFun::constant(Arc::new(Fan::orthants(2)), Z, 1), &lift)?.value;
            let lower = ft_value(&ConicCFun::constant(Arc::new(line_fan()), Z, 1), &[eta])?.value;
            ok &= upper == 1 && lower == -1 && (upper - lower) % 2 == 0;
        }
        Ok(ok)
    })();
    t.record_result(outcome, || "swap on Q^2, f = 1".into());
}
