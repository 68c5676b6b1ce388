//! The property suite behind `check all`: every invariant of every module,
//! run on seeded random instances and on the fixed tables.
//!
//! Each check draws from its own stream (derived from the seed and its
//! name), so reports are reproducible check by check.

mod charp;
mod conic;
mod hecke;
pub mod oracle;
mod roots;
mod simplicial;
mod tate;

pub use roots::{branch_by_strings, first_dominant};

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::gen;

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub instances: usize,
    pub failures: usize,
    /// The first failing instance, serialized.
    pub counterexample: Option<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.instances > 0
    }
}

/// Accumulates instances of a check.
#[derive(Debug, Default)]
pub struct Tally {
    instances: usize,
    failures: usize,
    counterexample: Option<String>,
}

impl Tally {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records one instance; `describe` is only called for the first failure.
    pub fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(describe());
            }
        }
    }

    /// Records an instance whose evaluation may fail; an error is a failure.
    pub fn record_result(&mut self, outcome: Result<bool>, describe: impl FnOnce() -> String) {
        match outcome {
            Ok(ok) => self.record(ok, describe),
            Err(e) => self.record(false, || format!("{}\nerror: {e}", describe())),
        }
    }

    pub fn instances(&self) -> usize {
        self.instances
    }

    fn finish(self, name: &str) -> CheckReport {
        CheckReport {
            name: name.to_string(),
            instances: self.instances,
            failures: self.failures,
            counterexample: self.counterexample,
        }
    }
}

type CheckFn = fn(&mut ChaCha8Rng, &mut Tally);

/// Every check, in report order.
const CHECKS: &[(&str, CheckFn)] = &[
    ("euler.smith-congruence", simplicial::smith_congruence),
    ("euler.dual-involution", simplicial::dual_involution),
    ("euler.dual-exchange", simplicial::dual_exchange),
    ("euler.dual-triangular", simplicial::dual_triangular),
    ("euler.push-functorial", simplicial::push_functorial),
    ("euler.pull-functorial", simplicial::pull_functorial),
    ("euler.base-change", simplicial::base_change),
    ("euler.integral-invariance", simplicial::integral_invariance),
    ("euler.proper-push", simplicial::proper_push),
    ("euler.closed-immersion-dual", simplicial::closed_immersion_dual),
    ("euler.smith-dual", simplicial::smith_dual),
    ("euler.smith-push", simplicial::smith_push),
    ("euler.smith-push-star", simplicial::smith_push_star),
    ("euler.smith-pull", simplicial::smith_pull),
    ("euler.smith-pull-shriek", simplicial::smith_pull_shriek),
    ("euler.smith-specialize", simplicial::smith_specialize),
    ("hecke.associativity", hecke::associativity),
    ("hecke.invariance-closure", hecke::invariance_closure),
    ("hecke.smith-homomorphism", hecke::smith_homomorphism),
    ("hecke.normalizer-invariance", hecke::normalizer_invariance),
    ("hecke.group-ring", hecke::group_ring),
    ("fan.conicity", conic::conicity),
    ("fan.linearity", conic::linearity),
    ("fan.oracle", conic::oracle_agreement),
    ("fan.transform-sampling", conic::transform_sampling),
    ("fan.smith-ft-square", conic::smith_ft_square),
    ("fan.mod-p-necessity", conic::mod_p_necessity),
    ("root.counts", roots::counts),
    ("root.highest-root", roots::highest_root),
    ("root.golden", roots::golden),
    ("root.kac-lists", roots::kac_lists),
    ("root.c-series", roots::c_series),
    ("root.centralizer-double", roots::centralizer_double),
    ("root.centralizer-rank", roots::centralizer_rank),
    ("root.center", roots::center),
    ("root.dual-involution", roots::dual_involution),
    ("root.centralizer-dual", roots::centralizer_dual),
    ("root.coroot-compatibility", roots::coroot_compatibility),
    ("root.weyl-subgroup", roots::weyl_subgroup),
    ("root.weyl-dimension", roots::weyl_dimension),
    ("root.decompose", roots::decompose_characters),
    ("root.restrict-homomorphism", roots::restrict_homomorphism),
    ("root.smith-sha", roots::smith_sha),
    ("root.branching", roots::branching),
    ("charp.odd-sum-exhaustive", charp::odd_sum_exhaustive),
    ("charp.odd-sum-sampled", charp::odd_sum_sampled),
    ("charp.so-to-sp", charp::so_to_sp),
    ("charp.alternating", charp::alternating),
    ("charp.line", charp::line),
    ("charp.dickson", charp::dickson),
    ("charp.f4", charp::f4),
    ("tate.chi-values", tate::chi_values),
    ("tate.chi-additivity", tate::chi_additivity),
    ("tate.perfect-chi", tate::perfect_chi),
    ("tate.periodicity", tate::periodicity),
    ("tate.tensor", tate::tensor),
    ("tate.dual", tate::dual),
    ("tate.free-cochains", tate::free_cochains),
    ("tate.witnesses", tate::witnesses),
    ("tate.links", tate::links),
    ("tate.grothendieck", tate::grothendieck),
    ("tate.examples", tate::examples),
    ("io.round-trip", simplicial::round_trip),
];

/// Names of all checks.
pub fn names() -> Vec<&'static str> {
    CHECKS.iter().map(|(n, _)| *n).collect()
}

/// Runs the checks whose name starts with `prefix` (all of them for ""),
/// spread over the available cores. Every check draws from its own stream,
/// so the reports do not depend on scheduling.
pub fn run(seed: u64, prefix: &str) -> Vec<CheckReport> {
    run_selected(seed, CHECKS.iter().filter(|(name, _)| name.starts_with(prefix)).collect())
}

/// Runs exactly the named checks, in table order; unknown names are skipped.
pub fn run_named(seed: u64, names: &[&str]) -> Vec<CheckReport> {
    run_selected(seed, CHECKS.iter().filter(|(name, _)| names.contains(name)).collect())
}

fn run_selected(seed: u64, selected: Vec<&(&str, CheckFn)>) -> Vec<CheckReport> {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(selected.len().max(1));
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<CheckReport>>> = selected.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some((name, f)) = selected.get(i) else { break };
                let report = run_one(seed, name, *f);
                *slots[i].lock().expect("no poisoned slot") = Some(report);
            });
        }
    });
    slots.into_iter().map(|m| m.into_inner().expect("no poisoned slot").expect("every check ran")).collect()
}

fn run_one(seed: u64, name: &str, f: CheckFn) -> CheckReport {
    let mut rng = gen::stream(seed, name);
    let mut tally = Tally::new();
    f(&mut rng, &mut tally);
    tally.finish(name)
}

pub fn run_all(seed: u64) -> Vec<CheckReport> {
    run(seed, "")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique() {
        let mut n = names();
        n.sort_unstable();
        n.dedup();
        assert_eq!(n.len(), CHECKS.len());
    }

    #[test]
    fn tally_keeps_first_counterexample() {
        let mut t = Tally::new();
        t.record(true, || unreachable!());
        t.record(false, || "first".into());
        t.record(false, || "second".into());
        let r = t.finish("x");
        assert_eq!((r.instances, r.failures), (3, 2));
        assert_eq!(r.counterexample.as_deref(), Some("first"));
        assert!(!r.passed());
    }
}
