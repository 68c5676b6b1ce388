//! Bounded complexes of `F_p[Z/p]`-modules and their invariants in the
//! Tate category: the Euler characteristic mod p, Tate hypercohomology
//! (whose vanishing is the perfection criterion), the periodicity
//! witnesses, and equivariant simplicial cochains.

mod cochains;
mod cohomology;
mod complex;

pub use cochains::{equivariant_cochains, link_cone_perfection, LinkVerdict};
pub use cohomology::{
    default_window, is_free_termwise, is_perfect, norm, periodicity_witness, tate_cohomology, tate_cohomology_in,
    PeriodicityWitness, TateTable,
};
pub use complex::{ChainMap, Module, TateComplex};

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;
    use std::sync::Arc;

    use super::*;
    use crate::simplicial::{Complex, GComplex};

    fn k(p: u32) -> TateComplex {
        TateComplex::concentrated(Module::trivial(p, 1), 0)
    }

    fn free(p: u32) -> TateComplex {
        TateComplex::concentrated(Module::regular(p), 0)
    }

    fn action(faces: &[&[&str]], gen: &[(&str, &str)], order: u64) -> GComplex {
        let faces: Vec<Vec<&str>> = faces.iter().map(|f| f.to_vec()).collect();
        let base = Arc::new(Complex::from_maximal(&faces).unwrap());
        let gen: BTreeMap<String, String> = gen.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        GComplex::from_labels(base, &gen, order).unwrap()
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(k(3).chi_mod_p(), 1);
        assert_eq!(free(3).chi_mod_p(), 0);
        assert_eq!(k(3).shift(1).chi_mod_p(), 2);
    }

    #[test]
    fn tate_tables() {
        let t = tate_cohomology(&k(3));
        assert!(t.dims.values().all(|&d| d == 1));
        assert!(tate_cohomology(&free(3)).is_zero());
        let sum = k(3).direct_sum(&free(3)).unwrap();
        assert_eq!(tate_cohomology(&sum), t);
        assert!(!is_perfect(&k(2)));
        assert!(is_perfect(&free(5)));
    }

    #[test]
    fn tensor_and_dual() {
        let p = 3;
        assert_eq!(k(p).tensor(&free(p)).unwrap(), free(p));
        let m = k(p).direct_sum(&free(p).shift(1)).unwrap();
        assert_eq!(k(p).tensor(&m).unwrap(), m);
        assert!(is_perfect(&k(p).tensor(&free(p)).unwrap()));
        let dd = m.dual().dual();
        assert_eq!(dd, m);
        assert_eq!(tate_cohomology(&m.dual()).dims.values().sum::<usize>(), tate_cohomology(&m).dims.values().sum::<usize>());
    }

    #[test]
    fn witnesses() {
        for p in [2, 3, 5] {
            let w = periodicity_witness(&k(p), false).unwrap();
            assert!(w.passed(), "p = {p}");
            assert!(!is_perfect(&k(p)));
        }
        assert!(periodicity_witness(&k(2), true).unwrap().passed());
        assert!(periodicity_witness(&k(3), true).is_none());
    }

    #[test]
    fn cochains_of_free_and_fixed_actions() {
        let tri = action(&[&["1", "2"], &["2", "3"], &["1", "3"]], &[("1", "2"), ("2", "3"), ("3", "1")], 3);
        let c = equivariant_cochains(&tri).unwrap();
        assert!(is_perfect(&c));
        let sq = action(
            &[&["1", "2"], &["2", "3"], &["3", "4"], &["1", "4"]],
            &[("1", "3"), ("3", "1"), ("2", "4"), ("4", "2")],
            2,
        );
        assert!(is_perfect(&equivariant_cochains(&sq).unwrap()));
        let cone = action(
            &[&["c", "1", "2"], &["c", "2", "3"], &["c", "3", "4"], &["c", "1", "4"]],
            &[("c", "c"), ("1", "3"), ("3", "1"), ("2", "4"), ("4", "2")],
            2,
        );
        assert!(!is_perfect(&equivariant_cochains(&cone).unwrap()));
        assert_eq!(link_cone_perfection(&cone, "c").unwrap(), LinkVerdict::Perfect);
    }

    #[test]
    fn reflection_link_and_trivial_guard() {
        let sq = action(
            &[&["1", "2"], &["2", "3"], &["3", "4"], &["1", "4"]],
            &[("1", "1"), ("3", "3"), ("2", "4"), ("4", "2")],
            2,
        );
        assert_eq!(link_cone_perfection(&sq, "1").unwrap(), LinkVerdict::Perfect);
        let triv = action(&[&["1", "2"]], &[("1", "1"), ("2", "2")], 2);
        assert_eq!(link_cone_perfection(&triv, "1").unwrap(), LinkVerdict::NotApplicable);
    }
}
