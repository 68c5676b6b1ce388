//! Worked values, each compared with a hand computation or with an oracle
//! from `support` that does not share code with the operation under test.

mod support;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use smith_core::charp::{dickson_invariant, odd_orthogonal_sum_embedding, so_to_sp, Coverage, Gf, GfMat, QuadForm};
use smith_core::hecke::{convolve, group_ring_bridge, FiniteGroup, HeckeElement};
use smith_core::roots::{centralizer_datum, decompose, kac_nodes, kac_order_p_nodes, weyl_character, RootDatum};
use smith_core::simplicial::{
    dualize, euler_integral, pushforward, pushforward_star, smith_restrict, specialize, standard_costandard, CFun,
    Complex, GComplex, Sign, SimplicialMap,
};
use smith_core::tate::{is_perfect, periodicity_witness, tate_cohomology, Module, TateComplex};
use smith_core::Ring;
use support::complex;

const Z: Ring = Ring::Integers;

fn find(c: &Complex, labels: &[&str]) -> usize {
    c.find_labels(labels).unwrap()
}

#[test]
fn collapse_of_a_face_onto_an_edge() {
    let tri = complex(&[&["a", "b", "c"]]);
    let edge = complex(&[&["x", "y"]]);
    let vm = ["a", "b", "c"].map(|l| edge.vertex(if l == "c" { "y" } else { "x" }).unwrap());
    let mut map = vec![0; 3];
    for (l, t) in ["a", "b", "c"].iter().zip(vm) {
        map[tri.vertex(l).unwrap()] = t;
    }
    let u = SimplicialMap::from_vertex_map(tri.clone(), edge.clone(), map).unwrap();
    let f = CFun::indicator(tri.clone(), Z, &[find(&tri, &["a", "b", "c"])]);
    let pushed = pushforward(&u, &f).unwrap();
    assert_eq!(pushed.values(), support::push_by_fibers(&u, &f));
    assert_eq!(pushed.get(find(&edge, &["x", "y"])), -1);
}

#[test]
fn dual_of_an_open_edge_is_its_closure() {
    let e = complex(&[&["a", "b"]]);
    let f = CFun::indicator(e.clone(), Z, &[find(&e, &["a", "b"])]).scale(-1);
    let d = dualize(&f);
    assert_eq!(d.values(), support::dual_by_local_ball(&f));
    assert_eq!(d.values(), &[1, 1, 1]);
}

#[test]
fn push_star_through_the_point_is_the_matrix_composite() {
    let tri = complex(&[&["a", "b", "c"]]);
    let u = SimplicialMap::to_point(tri.clone());
    let point = u.target().clone();
    let d_src = support::matrix_of(&tri, Z, dualize);
    let push = support::matrix_of(&tri, Z, |g| pushforward(&u, g).unwrap());
    let d_tgt = support::matrix_of(&point, Z, dualize);
    let composite = support::mat_mul(&d_tgt, &support::mat_mul(&push, &d_src));
    let f = CFun::indicator(tri.clone(), Z, &[find(&tri, &["a", "b", "c"])]);
    assert_eq!(pushforward_star(&u, &f).unwrap().values(), support::apply(&composite, f.values()));
}

#[test]
fn duality_exchanges_costandard_and_standard() {
    let seg = complex(&[&["m", "v"], &["v", "w"]]);
    let (i_u, j_u) = standard_costandard(&seg, "v", Z).unwrap();
    assert!(i_u.values().iter().all(|&x| x == 1));
    assert_eq!(j_u.values().iter().filter(|&&x| x == -1).count(), 3);
    assert_eq!(support::dual_by_local_ball(&j_u), i_u.values());

    let iso = complex(&[&["a", "b"], &["v"]]);
    let (i_u, j_u) = standard_costandard(&iso, "v", Z).unwrap();
    assert_eq!(i_u.values(), j_u.values());
    assert_eq!(dualize(&j_u).values(), i_u.values());
}

#[test]
fn smith_on_the_square_and_the_triangle() {
    let square = complex(&[&["1", "2"], &["2", "3"], &["3", "4"], &["1", "4"]]);
    let f2 = Ring::Prime(2);
    let one = CFun::constant(square.clone(), f2, 1);
    let v = |l: &str| square.vertex(l).unwrap();
    let mut reflection: Vec<usize> = (0..4).collect();
    reflection.swap(v("2"), v("4"));
    let refl = GComplex::new(square.clone(), reflection, 2).unwrap();
    let fixed = smith_restrict(&refl, &one).unwrap();
    assert_eq!(fixed.carrier().len(), 2);
    assert!(fixed.values().iter().all(|&x| x == 1));
    assert_eq!(support::integral(&one), 0);
    assert_eq!(euler_integral(&fixed).value, support::integral(&fixed));

    let mut antipode: Vec<usize> = (0..4).collect();
    antipode.swap(v("1"), v("3"));
    antipode.swap(v("2"), v("4"));
    let anti = GComplex::new(square.clone(), antipode, 2).unwrap();
    assert!(smith_restrict(&anti, &one).unwrap().carrier().is_empty());

    let hollow = complex(&[&["a", "b"], &["b", "c"], &["a", "c"]]);
    let rotation = ["b", "c", "a"].map(|l| hollow.vertex(l).unwrap()).to_vec();
    let rot = GComplex::new(hollow.clone(), rotation, 3).unwrap();
    let f3 = CFun::constant(hollow, Ring::Prime(3), 1);
    assert!(smith_restrict(&rot, &f3).unwrap().carrier().is_empty());
    assert_eq!(support::integral(&f3), 0);
}

#[test]
fn specialization_from_the_positive_side() {
    let seg = complex(&[&["m", "z"], &["p", "z"]]);
    let signs: Vec<Sign> = seg.labels().iter().map(|l| match l.as_str() {
        "m" => Sign::Neg,
        "z" => Sign::Zero,
        _ => Sign::Pos,
    }).collect();
    let whole = specialize(&CFun::constant(seg.clone(), Z, 1), &signs).unwrap();
    assert_eq!(whole.values(), &[1]);

    let negative = [find(&seg, &["m"]), find(&seg, &["m", "z"]), find(&seg, &["z"])];
    let half = specialize(&CFun::indicator(seg.clone(), Z, &negative), &signs).unwrap();
    assert_eq!(half.values(), &[0]);

    let zeros = vec![Sign::Zero; 3];
    assert!(specialize(&CFun::constant(seg, Z, 1), &zeros).unwrap().is_zero());
}

#[test]
fn convolution_over_the_hollow_triangle_vanishes() {
    let hollow = complex(&[&["a", "b"], &["b", "c"], &["a", "c"]]);
    let one = HeckeElement::constant(hollow.clone(), Z, 1);
    let expected = support::integral(&CFun::constant(hollow, Z, 1));
    assert_eq!(expected, 0);
    assert!(convolve(&one, &one).unwrap().is_zero());
}

#[test]
fn convolution_of_two_points_is_the_matrix_product() {
    let pts = complex(&[&["p"], &["q"]]);
    let f1 = HeckeElement::from_rows(pts.clone(), Z, &[vec![1, 2], vec![0, 1]]).unwrap();
    let f2 = HeckeElement::from_rows(pts, Z, &[vec![1, 0], vec![3, 1]]).unwrap();
    assert_eq!(convolve(&f1, &f2).unwrap().to_rows(), support::mat_mul(&f1.to_rows(), &f2.to_rows()));
    assert_eq!(convolve(&f1, &f2).unwrap().to_rows(), vec![vec![7, 2], vec![3, 1]]);
}

/// S3 as permutations of three letters, with the multiplication table
/// written out by composing them here.
fn s3_table() -> Vec<Vec<usize>> {
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
    let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
    perms.iter().map(|a| perms.iter().map(|b| index([a[b[0]], a[b[1]], a[b[2]]])).collect()).collect()
}

#[test]
fn s3_structure_constants() {
    let table = s3_table();
    let bridge = group_ring_bridge(&FiniteGroup::from_table(table.clone()).unwrap(), Z).unwrap();
    let basis = |i: usize| -> Vec<i64> { (0..6).map(|k| i64::from(k == i)).collect() };
    for i in 0..6 {
        for j in 0..6 {
            let product = convolve(&bridge.from_group_ring(&basis(i)), &bridge.from_group_ring(&basis(j))).unwrap();
            assert_eq!(bridge.to_group_ring(&product), basis(table[i][j]), "e{i} * e{j}");
        }
    }
}

#[test]
fn z2_group_ring_by_expansion() {
    let bridge = group_ring_bridge(&FiniteGroup::cyclic(2), Z).unwrap();
    let (a, b, c, d) = (2, -3, 5, 7);
    let lhs = convolve(&bridge.from_group_ring(&[a, b]), &bridge.from_group_ring(&[c, d])).unwrap();
    assert_eq!(bridge.to_group_ring(&lhs), vec![a * c + b * d, a * d + b * c]);
}

#[test]
fn root_counts_by_reflection_closure() {
    for (family, rank, count) in [("E", 8, 240), ("F", 4, 48), ("G", 2, 12), ("C", 3, 18)] {
        let rd = RootDatum::parse(family, rank, "sc").unwrap();
        let closure = support::roots_by_reflection(rd.cartan());
        assert_eq!(closure.len(), count, "{family}{rank}");
        let computed: BTreeSet<Vec<i64>> = rd.root_coefficients().iter().cloned().collect();
        assert_eq!(computed, closure, "{family}{rank}");
    }
}

#[test]
fn f4_cartan_matrix_as_displayed() {
    let rd = RootDatum::parse("F", 4, "sc").unwrap();
    let displayed = vec![vec![2, -1, 0, 0], vec![-1, 2, -1, 0], vec![0, -2, 2, -1], vec![0, 0, -1, 2]];
    assert_eq!(rd.cartan(), displayed.as_slice());
}

#[test]
fn highest_root_coefficients() {
    for (family, rank, coeffs) in
        [("G", 2, vec![2, 3]), ("F", 4, vec![2, 3, 4, 2]), ("E", 8, vec![2, 3, 4, 6, 5, 4, 3, 2])]
    {
        let rd = RootDatum::parse(family, rank, "sc").unwrap();
        assert_eq!(rd.highest_root_coeffs().unwrap(), coeffs);
        let top = support::roots_by_reflection(rd.cartan()).into_iter().max_by_key(|r| r.iter().sum::<i64>()).unwrap();
        assert_eq!(top, coeffs);
    }
}

#[test]
fn kac_nodes_of_order_p() {
    let e8 = RootDatum::parse("E", 8, "sc").unwrap();
    let five = kac_order_p_nodes(&e8, 5).unwrap();
    assert_eq!(five.iter().map(|n| n.index + 1).collect::<Vec<_>>(), vec![5]);
    for n in 2..=6 {
        let c = RootDatum::parse("C", n, "sc").unwrap();
        let nodes = kac_order_p_nodes(&c, 2).unwrap();
        assert_eq!(nodes.iter().map(|n| n.index + 1).collect::<Vec<_>>(), (1..n).collect::<Vec<_>>());
    }
    for n in 1..=6 {
        let a = RootDatum::parse("A", n, "sc").unwrap();
        for p in [2, 3, 5] {
            assert!(kac_order_p_nodes(&a, p).unwrap().is_empty());
        }
    }
}

/// Roots whose coefficient at the node is divisible by its label.
fn congruence_count(rd: &RootDatum, index: usize, c: i64) -> usize {
    support::roots_by_reflection(rd.cartan()).iter().filter(|r| r[index] % c == 0).count()
}

#[test]
fn centralizers_of_coefficient_nodes() {
    let cases = [("C", 3, 2, "C1xC2"), ("B", 3, 2, "A1xA1xA1"), ("F", 4, 1, "A1xC3"), ("E", 8, 5, "A4xA4")];
    for (family, rank, node, label) in cases {
        let rd = RootDatum::parse(family, rank, "sc").unwrap();
        let k = kac_nodes(&rd).unwrap().into_iter().find(|k| k.index + 1 == node).unwrap();
        let h = centralizer_datum(&rd, &k).unwrap();
        assert_eq!(h.roots().len(), congruence_count(&rd, k.index, k.coefficient), "{family}{rank} node {node}");
        let normalized = if label == "C1xC2" { "A1xC2" } else { label };
        assert_eq!(h.label(), normalized, "{family}{rank} node {node}");
    }
}

#[test]
fn langlands_dual_of_b_is_c() {
    let b = RootDatum::parse("B", 4, "sc").unwrap();
    let c = RootDatum::parse("C", 4, "adj").unwrap();
    assert_eq!(b.dual().cartan(), c.cartan());
    assert_eq!(b.dual().label(), "C4");
    assert_eq!(b.dual().isogeny(), c.isogeny());
}

#[test]
fn a1_character_square() {
    let rd = Arc::new(RootDatum::parse("A", 1, "sc").unwrap());
    let chi = weyl_character(&rd, &[1], Z).unwrap();
    let square = chi.mul(&chi).unwrap();
    let by_hand = support::lattice_convolution(chi.weights(), chi.weights());
    assert_eq!(square.weights(), &by_hand);
    assert_eq!(by_hand, BTreeMap::from([(vec![-2], 1), (vec![0], 2), (vec![2], 1)]));
    assert_eq!(decompose(&square).unwrap(), vec![(vec![0], 1), (vec![2], 1)]);
}

#[test]
fn weyl_dimensions_against_the_product_formula() {
    let g2 = Arc::new(RootDatum::parse("G", 2, "sc").unwrap());
    for lambda in [[1, 0], [0, 1], [1, 1], [2, 0]] {
        let chi = weyl_character(&g2, &lambda, Z).unwrap();
        assert_eq!(i128::from(chi.dimension()), support::weyl_dimension(&g2, &lambda), "{lambda:?}");
    }
    let a2 = Arc::new(RootDatum::parse("A", 2, "sc").unwrap());
    assert_eq!(support::weyl_dimension(&a2, &[1, 1]), 8);
}

#[test]
fn standard_quadratic_forms() {
    let f2 = Gf::f2();
    for (d, radical) in [(2, 0), (3, 1), (5, 1)] {
        let q = QuadForm::standard(d, f2);
        assert_eq!(q.polar_radical_dim(), radical, "d = {d}");
        let rows: Vec<Vec<i64>> = q.polar().to_rows().iter().map(|r| r.iter().map(|&x| i64::from(x)).collect()).collect();
        assert_eq!(support::rank_mod_p(&rows, 2), d - radical);
    }
    let q3 = QuadForm::standard(3, f2);
    assert_eq!(q3.eval(&[1, 1, 0]), 1);
    assert_eq!(q3.eval(&[0, 0, 1]), 1);
    assert_eq!(q3.eval(&[1, 0, 0]), 0);
}

#[test]
fn orthogonal_groups_over_f2() {
    let r = so_to_sp(1, Gf::f2(), Coverage::Exhaustive).unwrap();
    assert!(r.passed());
    assert_eq!(r.elements_checked, 2);
    let r = odd_orthogonal_sum_embedding(1, 1, Gf::f2(), Coverage::Exhaustive).unwrap();
    assert!(r.passed());
    assert_eq!((r.left_order, r.right_order, r.pairs_checked), (Some(6), Some(6), 36));
}

#[test]
fn dickson_of_the_swap() {
    let q = QuadForm::standard(2, Gf::f2());
    let swap = GfMat::from_rows(Gf::f2(), &[vec![0, 1], vec![1, 0]]).unwrap();
    assert_eq!(dickson_invariant(&q, &swap).unwrap(), 1);
}

#[test]
fn tate_values() {
    let k = TateComplex::concentrated(Module::trivial(3, 1), 0);
    assert_eq!(k.chi_mod_p(), 1);
    assert!(!is_perfect(&k));
    let table = tate_cohomology(&k);
    assert!(!table.dims.is_empty());
    assert!(table.dims.values().all(|&d| d == 1));

    let free = TateComplex::concentrated(Module::regular(3), 0);
    assert_eq!(free.chi_mod_p(), 0);
    assert!(is_perfect(&free));
    assert!(is_perfect(&free.tensor(&k).unwrap()));

    let w = periodicity_witness(&k, false).unwrap();
    assert_eq!(w.shift, 2);
    assert!(w.passed());
    let w2 = periodicity_witness(&TateComplex::concentrated(Module::trivial(2, 1), 0), true).unwrap();
    assert_eq!(w2.shift, 1);
    assert!(w2.passed());
}
