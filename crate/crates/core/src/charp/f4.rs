use num_integer::Integer;
use serde::Serialize;

use crate::roots::{CartanType, Isogeny, RootDatum};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct F4Report {
    pub cartan: Vec<Vec<i64>>,
    /// gcd of each column (the simple roots in the weight basis).
    pub column_gcds: Vec<i64>,
    pub roots_checked: usize,
    pub coroots_checked: usize,
    pub imprimitive: Vec<Vec<i64>>,
}

impl F4Report {
    pub fn passed(&self) -> bool {
        self.column_gcds.iter().all(|&g| g == 1) && self.roots_checked == 48 && self.coroots_checked == 48 && self.imprimitive.is_empty()
    }
}

fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |acc, &x| acc.gcd(&x))
}

/// Every root of `F4` is primitive in the weight lattice, and every coroot
/// in the coweight lattice.
pub fn f4_primitivity_check() -> F4Report {
    let t = CartanType::new('F', 4).expect("F4 exists");
    let cartan = t.cartan_matrix();
    let column_gcds = (0..4).map(|c| gcd_all(&cartan.iter().map(|row| row[c]).collect::<Vec<_>>())).collect();
    // in the simply connected datum X^* is the weight lattice; in the
    // adjoint one X_* is the coweight lattice
    let sc = RootDatum::of_type(t, Isogeny::SimplyConnected).expect("valid");
    let adj = RootDatum::of_type(t, Isogeny::Adjoint).expect("valid");
    let mut imprimitive: Vec<Vec<i64>> = Vec::new();
    imprimitive.extend(sc.roots().iter().filter(|r| gcd_all(r) != 1).cloned());
    imprimitive.extend(adj.coroots().iter().filter(|r| gcd_all(r) != 1).cloned());
    F4Report { cartan, column_gcds, roots_checked: sc.roots().len(), coroots_checked: adj.coroots().len(), imprimitive }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_roots_primitive() {
        let r = f4_primitivity_check();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.column_gcds, vec![1, 1, 1, 1]);
    }
}
