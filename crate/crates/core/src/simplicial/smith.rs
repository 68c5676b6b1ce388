use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Ring;

use super::{cfun::same_complex, restrict, CFun, GComplex, SimplicialMap};

/// The Smith operator: restriction of an invariant `F_p`-valued function to
/// the fixed subcomplex.
pub fn smith_restrict(g: &GComplex, f: &CFun) -> Result<CFun> {
    if !same_complex(g.base(), f.carrier()) {
        return Err(Error::Malformed("function does not live on the acted-on complex".into()));
    }
    match f.ring() {
        Ring::Prime(q) if q == g.prime() => {}
        other => {
            return Err(Error::RingMismatch(format!(
                "Smith restriction needs F{} coefficients, got {other}; reduce first",
                g.prime()
            )))
        }
    }
    g.require_regular()?;
    if let Some(i) = g.first_noninvariant(f) {
        return Err(Error::NonInvariant(format!("value on {} differs from its translate", g.base().simplex_key(i))));
    }
    restrict(f, &g.fixed_subcomplex()?)
}

/// The map `X^ϖ -> Y^ϖ` induced by an equivariant map.
pub fn fixed_map(gx: &GComplex, gy: &GComplex, u: &SimplicialMap) -> Result<SimplicialMap> {
    if !same_complex(gx.base(), u.source()) || !same_complex(gy.base(), u.target()) {
        return Err(Error::Malformed("map does not connect the two acted-on complexes".into()));
    }
    if gx.order() != gy.order() || !gx.is_equivariant(gy, u) {
        return Err(Error::InvalidAction("map is not equivariant".into()));
    }
    let fx = gx.fixed_subcomplex()?;
    let fy = gy.fixed_subcomplex()?;
    let vm: Result<Vec<usize>> = fx
        .labels()
        .iter()
        .map(|l| {
            let v = u.source().vertex(l).expect("fixed vertex of the source");
            let w = u.vertex_map()[v];
            fy.vertex(u.target().label(w))
                .ok_or_else(|| Error::Internal("equivariant map sends a fixed vertex off the fixed locus".into()))
        })
        .collect();
    SimplicialMap::from_vertex_map(Arc::clone(&fx), fy, vm?)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::simplicial::{euler_integral, Complex};

    fn gc(faces: &[&[&str]], pairs: &[(&str, &str)], order: u64) -> GComplex {
        let v: Vec<Vec<&str>> = faces.iter().map(|f| f.to_vec()).collect();
        let c = Arc::new(Complex::from_maximal(&v).unwrap());
        let g: BTreeMap<String, String> = pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        GComplex::from_labels(c, &g, order).unwrap()
    }

    const SQUARE: &[&[&str]] = &[&["1", "2"], &["2", "3"], &["3", "4"], &["4", "1"]];

    #[test]
    fn reflection_of_square() {
        let g = gc(SQUARE, &[("1", "1"), ("2", "4"), ("3", "3"), ("4", "2")], 2);
        let f = CFun::constant(g.base().clone(), Ring::Prime(2), 1);
        let s = smith_restrict(&g, &f).unwrap();
        assert_eq!(s.values(), &[1, 1]);
        assert_eq!(euler_integral(&s), euler_integral(&f));
    }

    #[test]
    fn free_actions_give_zero() {
        let g = gc(SQUARE, &[("1", "3"), ("2", "4"), ("3", "1"), ("4", "2")], 2);
        let f = CFun::constant(g.base().clone(), Ring::Prime(2), 1);
        assert!(smith_restrict(&g, &f).unwrap().carrier().is_empty());
        let t = gc(&[&["a", "b"], &["b", "c"], &["c", "a"]], &[("a", "b"), ("b", "c"), ("c", "a")], 3);
        let f = CFun::constant(t.base().clone(), Ring::Prime(3), 1);
        let s = smith_restrict(&t, &f).unwrap();
        assert!(s.is_zero());
        assert_eq!(euler_integral(&f).value, 0);
    }

    #[test]
    fn refuses_integers_and_noninvariant_functions() {
        let g = gc(SQUARE, &[("1", "1"), ("2", "4"), ("3", "3"), ("4", "2")], 2);
        let f = CFun::constant(g.base().clone(), Ring::Integers, 1);
        assert!(matches!(smith_restrict(&g, &f), Err(Error::RingMismatch(_))));
        assert!(smith_restrict(&g, &f.reduce(2).unwrap()).is_ok());
        let two = g.base().vertex("2").unwrap();
        let h = CFun::indicator(g.base().clone(), Ring::Prime(2), &[two]);
        assert!(matches!(smith_restrict(&g, &h), Err(Error::NonInvariant(_))));
    }
}
