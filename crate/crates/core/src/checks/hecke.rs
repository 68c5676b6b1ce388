use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::Tally;
use crate::error::Result;
use crate::gen;
use crate::hecke::{
    check_invariance, convolve, group_ring_bridge, induced_on_fixed, orbit_sum, smith_hecke, FiniteGroup,
    FiniteGroupAction, HeckeElement,
};
use crate::io::{self, ComplexFile, KernelFile};
use crate::scalar::Ring;
use crate::simplicial::SimplicialMap;

const Z: Ring = Ring::Integers;

fn show_kernel(f: &HeckeElement) -> serde_json::Value {
    json!({"carrier": ComplexFile::from_complex(f.carrier()), "kernel": KernelFile::from_kernel(f)})
}

fn show_group(act: &FiniteGroupAction) -> serde_json::Value {
    json!({"carrier": ComplexFile::from_complex(act.carrier()), "elements": act.elements(), "varpi": act.varpi()})
}

pub fn associativity(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for _ in 0..100 {
        let c = gen::complex(rng, 30);
        let [f1, f2, f3] = [0; 3].map(|_| gen::kernel(rng, c.clone(), Z, 0.3));
        let outcome = (|| Ok(convolve(&convolve(&f1, &f2)?, &f3)? == convolve(&f1, &convolve(&f2, &f3)?)?))();
        t.record_result(outcome, || {
            io::to_json(&json!({"f1": show_kernel(&f1), "f2": show_kernel(&f2), "f3": show_kernel(&f3)}))
        });
    }
}

fn invariant_pair(rng: &mut ChaCha8Rng, act: &FiniteGroupAction, ring: Ring) -> Result<(HeckeElement, HeckeElement)> {
    let c = act.carrier().clone();
    let f1 = orbit_sum(&gen::kernel(rng, c.clone(), Z, 0.2), act);
    let f2 = orbit_sum(&gen::kernel(rng, c, Z, 0.2), act);
    match ring {
        Ring::Prime(p) => Ok((f1.reduce(p)?, f2.reduce(p)?)),
        Ring::Integers => Ok((f1, f2)),
    }
}

pub fn invariance_closure(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for _ in 0..100 {
        let act = gen::group_action(rng, 30);
        let outcome = (|| -> Result<bool> {
            let (f1, f2) = invariant_pair(rng, &act, Z)?;
            Ok(check_invariance(&convolve(&f1, &f2)?, &act))
        })();
        t.record_result(outcome, || io::to_json(&show_group(&act)));
    }
}

pub fn smith_homomorphism(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for _ in 0..100 {
        let act = gen::group_action(rng, 30);
        let ring = Ring::Prime(act.prime());
        let pair = invariant_pair(rng, &act, ring);
        let outcome = (|| -> Result<bool> {
            let (f1, f2) = pair.clone()?;
            let lhs = smith_hecke(&convolve(&f1, &f2)?, &act)?;
            let rhs = convolve(&smith_hecke(&f1, &act)?, &smith_hecke(&f2, &act)?)?;
            Ok(lhs == rhs)
        })();
        t.record_result(outcome, || {
            let mut v = json!({"group": show_group(&act)});
            if let Ok((f1, f2)) = &pair {
                v["f1"] = show_kernel(f1);
                v["f2"] = show_kernel(f2);
            }
            io::to_json(&v)
        });
    }
}

pub fn normalizer_invariance(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for _ in 0..100 {
        let act = gen::group_action(rng, 30);
        let ring = Ring::Prime(act.prime());
        let outcome = (|| -> Result<bool> {
            let (f, _) = invariant_pair(rng, &act, ring)?;
            let s = smith_hecke(&f, &act)?;
            let fixed = act.varpi_action()?.fixed_subcomplex()?;
            let inc = SimplicialMap::inclusion(fixed.clone(), act.carrier().clone())?;
            let perms = induced_on_fixed(&act, &fixed, &inc, &act.normalizer())?;
            Ok(perms.iter().all(|perm| {
                (0..s.size()).all(|a| (0..s.size()).all(|b| s.get(perm[a], perm[b]) == s.get(a, b)))
            }))
        })();
        t.record_result(outcome, || io::to_json(&show_group(&act)));
    }
}

pub fn group_ring(_rng: &mut ChaCha8Rng, t: &mut Tally) {
    for (name, g) in FiniteGroup::small_groups() {
        for ring in [Z, Ring::Prime(2), Ring::Prime(3)] {
            let outcome = group_ring_bridge(&g, ring).and_then(|b| b.verify()).map(|r| r.passed());
            t.record_result(outcome, || format!("{name} over {ring}"));
        }
    }
}
