//! Randomized properties. Each case draws a seed and builds its inputs with
//! the crate's generators, so a failing case is reproducible from the seed
//! proptest reports.

mod support;

use std::sync::Arc;

use proptest::prelude::*;
use rand::Rng;
use smith_core::charp::{dickson_invariant, Gf, GfMat, QuadForm};
use smith_core::checks::oracle::ft_value_by_triangulation;
use smith_core::conic::{ft_value, Fan};
use smith_core::gen;
use smith_core::hecke::{convolve, orbit_sum, smith_hecke};
use smith_core::io::{self, ComplexFile, FunctionFile, TateFile};
use smith_core::roots::{weyl_character, RootDatum};
use smith_core::simplicial::{dualize, pushforward, smith_restrict, CFun};
use smith_core::tate::TateComplex;
use smith_core::Ring;

const Z: Ring = Ring::Integers;

fn cases(n: u32) -> ProptestConfig {
    ProptestConfig { cases: n, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(cases(48))]

    #[test]
    fn dual_is_an_involution_given_by_local_balls(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let c = gen::complex(&mut rng, 60);
        let f = gen::cfun(&mut rng, c, Z);
        let d = dualize(&f);
        prop_assert_eq!(d.values(), support::dual_by_local_ball(&f));
        prop_assert_eq!(dualize(&d), f);
    }

    #[test]
    fn smith_congruence(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let order = gen::small_order(&mut rng);
        let free = rng.gen_bool(0.3);
        let g = gen::regular_gcomplex(&mut rng, order, free, 60);
        let f = gen::invariant_cfun(&mut rng, &g, Ring::Prime(g.prime()));
        let s = smith_restrict(&g, &f).unwrap();
        prop_assert_eq!(support::integral(&s), support::integral(&f));
    }

    #[test]
    fn smith_commutes_with_duality(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let order = gen::small_order(&mut rng);
        let g = gen::regular_gcomplex(&mut rng, order, false, 60);
        let f = gen::invariant_cfun(&mut rng, &g, Ring::Prime(g.prime()));
        let lhs = smith_restrict(&g, &dualize(&f)).unwrap();
        let rhs = dualize(&smith_restrict(&g, &f).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pushforward_by_fibers_preserves_the_integral(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let order = gen::small_order(&mut rng);
        let g = gen::regular_gcomplex(&mut rng, order, false, 40);
        let (_, src, _, u) = gen::equivariant_map(&mut rng, &g);
        let f = gen::cfun(&mut rng, src.base().clone(), Z);
        let pushed = pushforward(&u, &f).unwrap();
        prop_assert_eq!(pushed.values(), support::push_by_fibers(&u, &f));
        prop_assert_eq!(support::integral(&pushed), support::integral(&f));
    }

    #[test]
    fn hecke_associativity(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let c = gen::complex(&mut rng, 25);
        let [f1, f2, f3] = [0; 3].map(|_| gen::kernel(&mut rng, c.clone(), Z, 0.3));
        let lhs = convolve(&convolve(&f1, &f2).unwrap(), &f3).unwrap();
        let rhs = convolve(&f1, &convolve(&f2, &f3).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn smith_is_multiplicative_on_hecke_algebras(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let act = gen::group_action(&mut rng, 25);
        let p = act.prime();
        let [f1, f2] = [0; 2].map(|_| {
            orbit_sum(&gen::kernel(&mut rng, act.carrier().clone(), Z, 0.2), &act).reduce(p).unwrap()
        });
        let lhs = smith_hecke(&convolve(&f1, &f2).unwrap(), &act).unwrap();
        let rhs = convolve(&smith_hecke(&f1, &act).unwrap(), &smith_hecke(&f2, &act).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn tate_euler_characteristic(seed in any::<u64>(), k in -3i64..3) {
        let mut rng = gen::rng(seed);
        let p = [2u32, 3, 5][rng.gen_range(0..3)];
        let a = gen::tate_complex(&mut rng, p);
        let b = gen::tate_complex(&mut rng, p);
        let modp = |x: i64| x.rem_euclid(i64::from(p));
        prop_assert_eq!(a.direct_sum(&b).unwrap().chi_mod_p(), modp(a.chi_mod_p() + b.chi_mod_p()));
        prop_assert_eq!(a.tensor(&b).unwrap().chi_mod_p(), modp(a.chi_mod_p() * b.chi_mod_p()));
        let sign = if k % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(a.shift(k).chi_mod_p(), modp(sign * a.chi_mod_p()));
        prop_assert_eq!(gen::free_complex(&mut rng, p).chi_mod_p(), 0);
    }

    #[test]
    fn fourier_transform_matches_triangulation(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let dim = rng.gen_range(1..=2);
        let fan = Arc::new(gen::fan(&mut rng, dim));
        let f = gen::conic_cfun(&mut rng, fan, Z);
        let xi = gen::covector(&mut rng, dim);
        prop_assert_eq!(ft_value(&f, &xi).unwrap(), ft_value_by_triangulation(&f, &xi).unwrap());
    }

    #[test]
    fn dickson_is_additive(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let q = QuadForm::standard(4, Gf::f2());
        let g1 = q.random_isometry(&mut rng, 6);
        let g2 = q.random_isometry(&mut rng, 6);
        let product = g1.mul(&g2);
        let d = |g: &GfMat| dickson_invariant(&q, g).unwrap();
        prop_assert_eq!(d(&product), (d(&g1) + d(&g2)) % 2);
    }

    #[test]
    fn json_round_trips(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let c = gen::complex(&mut rng, 40);
        let text = io::to_json(&ComplexFile::from_complex(&c));
        let back = Arc::new(io::parse::<ComplexFile>(&text, "complex").unwrap().build().unwrap());
        prop_assert_eq!(&back, &c);

        let f = gen::cfun(&mut rng, c.clone(), Ring::Prime(3));
        let text = io::to_json(&FunctionFile::from_function(&f));
        let g: CFun = io::parse::<FunctionFile>(&text, "function").unwrap().build(back).unwrap();
        prop_assert_eq!(g, f);

        let t = gen::tate_complex(&mut rng, 3);
        let text = io::to_json(&TateFile::from_complex(&t));
        let u: TateComplex = io::parse::<TateFile>(&text, "tate complex").unwrap().build().unwrap();
        prop_assert_eq!(u, t);
    }
}

fn dominant_weight(rng: &mut impl Rng, rank: usize) -> Vec<i64> {
    (0..rank).map(|_| rng.gen_range(0..3)).collect()
}

proptest! {
    #![proptest_config(cases(24))]

    #[test]
    fn weyl_dimension_formula(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let (family, rank) = [("A", 2), ("A", 3), ("B", 2), ("C", 3), ("G", 2), ("B", 3)][rng.gen_range(0..6)];
        let rd = Arc::new(RootDatum::parse(family, rank, "sc").unwrap());
        let lambda = dominant_weight(&mut rng, rank);
        let chi = weyl_character(&rd, &lambda, Z).unwrap();
        prop_assert_eq!(i128::from(chi.dimension()), support::weyl_dimension(&rd, &lambda));
    }

    #[test]
    fn transform_of_the_constant_function(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let dim = rng.gen_range(1..=3);
        let fan = Arc::new(Fan::orthants(dim));
        let one = smith_core::conic::ConicCFun::constant(fan, Z, 1);
        let xi = gen::covector(&mut rng, dim);
        // {ξ < 1} is an open half-space, or all of V when ξ = 0
        let expected = if dim % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(ft_value(&one, &xi).unwrap().value, expected);
    }
}
