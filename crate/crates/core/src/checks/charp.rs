use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::Tally;
use crate::charp::{
    all_vectors, dickson_invariant, f4_primitivity_check, odd_orthogonal_sum_embedding, Coverage, Gf, GfMat,
    OddSumEmbedding, QuadForm,
};
use crate::error::Result;
use crate::io;

fn field_name(f: Gf) -> String {
    format!("F{}", f.size())
}

pub fn odd_sum_exhaustive(_rng: &mut ChaCha8Rng, t: &mut Tally) {
    let outcome = odd_orthogonal_sum_embedding(1, 1, Gf::f2(), Coverage::Exhaustive);
    let detail = outcome.as_ref().map(io::to_json).unwrap_or_default();
    t.record_result(outcome.map(|r| r.passed() && r.pairs_checked == 36), || format!("(1, 1) over F2: {detail}"));
}

pub fn odd_sum_sampled(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for (field, samples) in [(Gf::f2(), 1000), (Gf::f4(), 1000)] {
        for (a, b) in [(1, 1), (1, 2), (2, 2)] {
            let seed = rng.gen();
            let outcome = odd_orthogonal_sum_embedding(a, b, field, Coverage::Sampled { samples, seed });
            let detail = outcome.as_ref().map(io::to_json).unwrap_or_default();
            t.record_result(outcome.map(|r| r.passed()), || format!("({a}, {b}) over {} seed {seed}: {detail}", field_name(field)));
        }
    }
}

pub fn so_to_sp(rng: &mut ChaCha8Rng, t: &mut Tally) {
    let f2 = Gf::f2();
    let cases = [
        (1, f2, Coverage::Exhaustive, Some(2), Some(6)),
        (2, f2, Coverage::Exhaustive, Some(72), Some(720)),
        (3, f2, Coverage::Sampled { samples: 300, seed: rng.gen() }, None, None),
        (2, Gf::f4(), Coverage::Sampled { samples: 300, seed: rng.gen() }, None, None),
    ];
    for (a, field, coverage, group, symplectic) in cases {
        let outcome = self::so_to_sp_case(a, field, coverage, group, symplectic);
        t.record_result(outcome, || format!("a = {a} over {} ({coverage:?})", field_name(field)));
    }
}

fn so_to_sp_case(a: usize, field: Gf, coverage: Coverage, group: Option<usize>, symplectic: Option<usize>) -> Result<bool> {
    let r = crate::charp::so_to_sp(a, field, coverage)?;
    let mut ok = r.passed();
    if let Some(n) = group {
        // SO has index 2 in O
        ok &= r.elements_checked == n && 2 * r.special_elements == n;
    }
    if symplectic.is_some() {
        ok &= r.symplectic_order == symplectic;
    }
    Ok(ok)
}

pub fn alternating(_rng: &mut ChaCha8Rng, t: &mut Tally) {
    let cases = (1..=8).map(|k| (Gf::f2(), 2 * k)).chain((1..=4).map(|k| (Gf::f4(), 2 * k)));
    for (field, d) in cases {
        let form = QuadForm::standard(d, field);
        let ok = all_vectors(field, d).is_some_and(|vs| vs.iter().all(|v| form.polar_eval(v, v) == 0))
            && form.polar_is_alternating()
            && form.polar_radical_dim() == 0;
        t.record(ok, || format!("d = {d} over {}", field_name(field)));
    }
}

/// Nonzero vectors of the radical of the polar form on which the form
/// vanishes, up to scalars.
fn singular_radical_lines(form: &QuadForm) -> Option<Vec<Vec<u8>>> {
    let field = form.field();
    let d = form.dim();
    let basis: Vec<Vec<u8>> = (0..d).map(|k| (0..d).map(|j| u8::from(j == k)).collect()).collect();
    let mut lines: Vec<Vec<u8>> = Vec::new();
    for v in all_vectors(field, d)? {
        if v.iter().all(|&x| x == 0) || form.eval(&v) != 0 || basis.iter().any(|e| form.polar_eval(&v, e) != 0) {
            continue;
        }
        // normalize so the first nonzero coordinate is 1
        let lead = *v.iter().find(|&&x| x != 0).expect("nonzero");
        let inv = field.inv(lead).expect("unit");
        let n: Vec<u8> = v.iter().map(|&x| field.mul(inv, x)).collect();
        if !lines.contains(&n) {
            lines.push(n);
        }
    }
    Some(lines)
}

pub fn line(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for (field, a, b) in [(Gf::f2(), 1, 1), (Gf::f2(), 1, 2), (Gf::f2(), 2, 2), (Gf::f4(), 1, 1), (Gf::f4(), 1, 2)] {
        let outcome = (|| -> Result<bool> {
            let emb = OddSumEmbedding::new(a, b, field)?;
            let sum = QuadForm::new(emb.left_form().coefficients().direct_sum(emb.right_form().coefficients()))?;
            let unique = match singular_radical_lines(&sum) {
                Some(lines) => lines == vec![emb.line().to_vec()],
                None => true,
            };
            let steps = 2 * (a + b) + 3;
            let stable = (0..100).all(|_| {
                let g1 = emb.left_form().random_isometry(rng, steps);
                let g2 = emb.right_form().random_isometry(rng, steps);
                emb.fixes_line(&g1, &g2)
            });
            Ok(unique && stable)
        })();
        t.record_result(outcome, || format!("({a}, {b}) over {}", field_name(field)));
    }
}

pub fn dickson(_rng: &mut ChaCha8Rng, t: &mut Tally) {
    let f2 = Gf::f2();
    let plane = QuadForm::standard(2, f2);
    let outcome = (|| -> Result<bool> {
        let id = dickson_invariant(&plane, &GfMat::identity(f2, 2))?;
        let swap = dickson_invariant(&plane, &GfMat::from_rows(f2, &[vec![0, 1], vec![1, 0]])?)?;
        Ok(id == 0 && swap == 1)
    })();
    t.record_result(outcome, || "hyperbolic plane over F2".into());
    let q4 = QuadForm::standard(4, f2);
    let outcome = (|| -> Result<Option<String>> {
        let group = q4.orthogonal_group()?;
        let inv: Vec<u8> = group.iter().map(|g| dickson_invariant(&q4, g)).collect::<Result<_>>()?;
        for (g, &dg) in group.iter().zip(&inv) {
            for (h, &dh) in group.iter().zip(&inv) {
                if dickson_invariant(&q4, &g.mul(h))? != dg ^ dh {
                    return Ok(Some(io::to_json(&[g, h])));
                }
            }
        }
        Ok(None)
    })();
    let bad = outcome.as_ref().ok().cloned().flatten();
    t.record_result(outcome.map(|o| o.is_none()), || format!("additivity on O(4, F2): {}", bad.unwrap_or_default()));
}

pub fn f4(_rng: &mut ChaCha8Rng, t: &mut Tally) {
    let r = f4_primitivity_check();
    let golden: Vec<Vec<i64>> = serde_json::from_str(include_str!("../../golden/f4_cartan.json")).expect("golden matrix");
    t.record(r.passed() && r.cartan == golden, || io::to_json(&r));
}
