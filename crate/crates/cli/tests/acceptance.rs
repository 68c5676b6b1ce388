//! One line per acceptance criterion, then a single assertion over all of
//! them. Run with `--nocapture` to see the table.

use std::collections::BTreeSet;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use smith_core::charp::{f4_primitivity_check, odd_orthogonal_sum_embedding, so_to_sp, Coverage, Gf};
use smith_core::checks::{self, CheckReport};
use smith_core::conic::{avg_lift, ft_value, integer_covector, line_fan, ConicCFun, Fan};
use smith_core::hecke::FiniteGroup;
use smith_core::roots::RootDatum;
use smith_core::tate::{Module, TateComplex};
use smith_core::Ring;

const SEED: u64 = 42;

struct Criterion {
    title: &'static str,
    /// Check name and the least number of instances it must cover.
    checks: &'static [(&'static str, usize)],
    time_limit: Option<Duration>,
    /// Fixed values verified directly against the library.
    direct: fn() -> Result<(), String>,
}

fn none() -> Result<(), String> {
    Ok(())
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn group_ring_orders() -> Result<(), String> {
    let orders: BTreeSet<usize> = FiniteGroup::small_groups().iter().map(|(_, g)| g.order()).collect();
    ensure(orders == BTreeSet::from([2, 3, 4, 6, 8]), || format!("group orders covered: {orders:?}"))
}

fn swap_square_over_z() -> Result<(), String> {
    let perm = [1usize, 0];
    let lift = integer_covector(&avg_lift(&perm, &[1]).map_err(|e| e.to_string())?);
    let upper = ft_value(&ConicCFun::constant(Arc::new(Fan::orthants(2)), Ring::Integers, 1), &lift).map_err(|e| e.to_string())?;
    let lower = ft_value(&ConicCFun::constant(Arc::new(line_fan()), Ring::Integers, 1), &[1]).map_err(|e| e.to_string())?;
    ensure(upper.value == 1 && lower.value == -1, || format!("paths over Z: {} and {}", upper.value, lower.value))
}

fn highest_roots() -> Result<(), String> {
    let expected: [(&str, usize, &[i64]); 3] =
        [("G", 2, &[2, 3]), ("F", 4, &[2, 3, 4, 2]), ("E", 8, &[2, 3, 4, 6, 5, 4, 3, 2])];
    for (family, rank, coeffs) in expected {
        let rd = RootDatum::parse(family, rank, "sc").map_err(|e| e.to_string())?;
        let got = rd.highest_root_coeffs().map_err(|e| e.to_string())?;
        ensure(got == coeffs, || format!("{family}{rank}: {got:?}"))?;
    }
    Ok(())
}

fn charp_counts() -> Result<(), String> {
    let r = odd_orthogonal_sum_embedding(1, 1, Gf::f2(), Coverage::Exhaustive).map_err(|e| e.to_string())?;
    ensure(r.passed() && r.pairs_checked == 36, || format!("(1,1) over F2: {} pairs", r.pairs_checked))?;
    for a in [1, 2] {
        let r = so_to_sp(a, Gf::f2(), Coverage::Exhaustive).map_err(|e| e.to_string())?;
        ensure(r.passed() && r.exhaustive, || format!("so_to_sp a = {a}"))?;
    }
    let f4 = f4_primitivity_check();
    ensure(f4.passed() && f4.roots_checked == 48 && f4.imprimitive.is_empty(), || format!("{f4:?}"))
}

fn tate_values() -> Result<(), String> {
    for p in [2, 3, 5] {
        let k = TateComplex::concentrated(Module::trivial(p, 1), 0).chi_mod_p();
        let free = TateComplex::concentrated(Module::regular(p), 0).chi_mod_p();
        ensure(k == 1 && free == 0, || format!("p = {p}: chi(K) = {k}, chi(free) = {free}"))?;
    }
    Ok(())
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        title: "Smith congruence on random regular actions",
        checks: &[("euler.smith-congruence", 300)],
        time_limit: Some(Duration::from_secs(30)),
        direct: none,
    },
    Criterion {
        title: "duality is an involution and exchanges j_U and i_U",
        checks: &[("euler.dual-involution", 300), ("euler.dual-exchange", 20)],
        time_limit: None,
        direct: none,
    },
    Criterion {
        title: "Smith commutes with D, u_!, u_*, u^*, u^! and specialization",
        checks: &[
            ("euler.smith-dual", 100),
            ("euler.smith-push", 100),
            ("euler.smith-push-star", 100),
            ("euler.smith-pull", 100),
            ("euler.smith-pull-shriek", 100),
            ("euler.smith-specialize", 100),
        ],
        time_limit: None,
        direct: none,
    },
    Criterion {
        title: "Hecke associativity, Smith homomorphism, group rings",
        checks: &[("hecke.associativity", 100), ("hecke.smith-homomorphism", 100), ("hecke.group-ring", 11)],
        time_limit: None,
        direct: group_ring_orders,
    },
    Criterion {
        title: "Fourier-Sato oracle and the Smith square mod p",
        checks: &[("fan.oracle", 50), ("fan.smith-ft-square", 2), ("fan.mod-p-necessity", 1)],
        time_limit: None,
        direct: swap_square_over_z,
    },
    Criterion {
        title: "highest roots, Kac node lists, C_n centralizers",
        checks: &[("root.golden", 1), ("root.highest-root", 1), ("root.kac-lists", 1), ("root.c-series", 1)],
        time_limit: None,
        direct: highest_roots,
    },
    Criterion {
        title: "centralizer by deletion equals centralizer by congruence",
        checks: &[("root.centralizer-double", 1)],
        time_limit: Some(Duration::from_secs(60)),
        direct: none,
    },
    Criterion {
        title: "coroot compatibility and Weyl subgroup generators",
        checks: &[("root.coroot-compatibility", 1), ("root.weyl-subgroup", 1)],
        time_limit: None,
        direct: none,
    },
    Criterion {
        title: "C2 to A1xA1 branching against weight peeling",
        checks: &[("root.branching", 1)],
        time_limit: None,
        direct: none,
    },
    Criterion {
        title: "characteristic-2 embeddings and F4 primitivity",
        checks: &[
            ("charp.odd-sum-exhaustive", 1),
            ("charp.odd-sum-sampled", 6),
            ("charp.so-to-sp", 2),
            ("charp.f4", 1),
        ],
        time_limit: None,
        direct: charp_counts,
    },
    Criterion {
        title: "Tate invariants, periodicity witnesses, free cochains, links",
        checks: &[
            ("tate.chi-values", 1),
            ("tate.examples", 1),
            ("tate.witnesses", 3),
            ("tate.free-cochains", 100),
            ("tate.links", 2),
        ],
        time_limit: Some(Duration::from_secs(30)),
        direct: tate_values,
    },
];

fn evaluate(c: &Criterion) -> (bool, String) {
    let names: Vec<&str> = c.checks.iter().map(|(n, _)| *n).collect();
    let start = Instant::now();
    let reports: Vec<CheckReport> = checks::run_named(SEED, &names);
    let elapsed = start.elapsed();
    let mut problems = Vec::new();
    for (name, min) in c.checks {
        match reports.iter().find(|r| r.name == *name) {
            None => problems.push(format!("{name} missing")),
            Some(r) if !r.passed() => problems.push(format!(
                "{name}: {} of {} failed: {}",
                r.failures,
                r.instances,
                r.counterexample.as_deref().unwrap_or("")
            )),
            Some(r) if r.instances < *min => problems.push(format!("{name}: {} instances, need {min}", r.instances)),
            Some(_) => {}
        }
    }
    if let Some(limit) = c.time_limit {
        if elapsed > limit {
            problems.push(format!("took {elapsed:.1?}, limit {limit:?}"));
        }
    }
    if let Err(e) = (c.direct)() {
        problems.push(e);
    }
    let instances: usize = reports.iter().map(|r| r.instances).sum();
    let detail = if problems.is_empty() {
        format!("{instances} instances, {:.1} s", elapsed.as_secs_f64())
    } else {
        problems.join("; ")
    };
    (problems.is_empty(), detail)
}

#[test]
fn acceptance() {
    let mut all = true;
    for (i, c) in CRITERIA.iter().enumerate() {
        let (ok, detail) = evaluate(c);
        all &= ok;
        println!("{} {:>2} {} ({detail})", if ok { "PASS" } else { "FAIL" }, i + 1, c.title);
    }

    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_smith"))
        .args(["check", "all", "--seed", &SEED.to_string()])
        .output()
        .expect("the binary runs");
    let elapsed = start.elapsed();
    let ok = out.status.success() && elapsed < Duration::from_secs(300);
    all &= ok;
    println!(
        "{} 12 `smith check all --seed {SEED}` exits 0 within 5 minutes (exit {:?}, {:.1} s)",
        if ok { "PASS" } else { "FAIL" },
        out.status.code(),
        elapsed.as_secs_f64()
    );
    if !ok {
        println!("{}", String::from_utf8_lossy(&out.stderr));
    }
    assert!(all, "some acceptance criteria failed");
}
