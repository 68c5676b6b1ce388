use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::is_prime;

use super::datum::{pair, Isogeny, Rat, RootDatum};

/// A node of the Dynkin diagram together with its highest-root coefficient.
/// For `order > 1` the element `β_i(ζ_order)` has semisimple centralizer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KacNode {
    pub index: usize,
    pub coefficient: i64,
    pub order: i64,
    /// Fundamental coweight, as rational coordinates in `X_*`.
    #[serde(serialize_with = "serialize_rats")]
    pub coweight: Vec<Rat>,
}

fn serialize_rats<S: serde::Serializer>(v: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|q| if q.is_integer() { q.numer().to_string() } else { format!("{}/{}", q.numer(), q.denom()) }))
}

fn require_simple_sc(rd: &RootDatum) -> Result<()> {
    if rd.isogeny() != Isogeny::SimplyConnected || !rd.is_irreducible() || rd.semisimple_rank() != rd.rank() {
        return Err(Error::InvalidRootDatum(format!("{rd} must be simple and simply connected")));
    }
    Ok(())
}

/// Every node of the diagram with its coefficient in the highest root.
pub fn kac_nodes(rd: &RootDatum) -> Result<Vec<KacNode>> {
    require_simple_sc(rd)?;
    let top = rd.highest_root_coeffs()?;
    top.iter()
        .enumerate()
        .map(|(index, &c)| Ok(KacNode { index, coefficient: c, order: c, coweight: rd.fundamental_coweight(index)? }))
        .collect()
}

/// Nodes whose highest-root coefficient equals `p`.
pub fn kac_order_p_nodes(rd: &RootDatum, p: u32) -> Result<Vec<KacNode>> {
    if !is_prime(u64::from(p)) {
        return Err(Error::Malformed(format!("{p} is not prime")));
    }
    Ok(kac_nodes(rd)?.into_iter().filter(|n| n.coefficient == i64::from(p)).collect())
}

/// The centralizer of `β_i(ζ_{c_i})`, obtained by deleting node `i` from the
/// extended Dynkin diagram, on the same lattices as `rd`.
///
/// The result is cross-validated against the subsystem
/// `{α : ⟨α, β_i⟩ ≡ 0 mod c_i}`; a mismatch is an internal error.
pub fn centralizer_datum(rd: &RootDatum, node: &KacNode) -> Result<RootDatum> {
    let h = affine_deletion(rd, node)?;
    let by_deletion: BTreeSet<Vec<i64>> = h.roots().iter().cloned().collect();
    let by_congruence: BTreeSet<Vec<i64>> = congruence_subsystem(rd, node)?.into_iter().collect();
    if by_deletion != by_congruence {
        return Err(Error::Internal(format!(
            "centralizer of node {} in {}: deletion gives {} roots, congruence gives {}",
            node.index + 1,
            rd,
            by_deletion.len(),
            by_congruence.len()
        )));
    }
    Ok(h)
}

/// Simple roots `{−θ} ∪ {α_j : j ≠ i}`.
pub fn affine_deletion(rd: &RootDatum, node: &KacNode) -> Result<RootDatum> {
    require_simple_sc(rd)?;
    if node.index >= rd.semisimple_rank() {
        return Err(Error::Malformed(format!("node {} out of range", node.index + 1)));
    }
    if node.coefficient <= 1 {
        return Err(Error::InvalidRootDatum("central node: the centralizer is the whole group".into()));
    }
    let top = rd.highest_root_index()?;
    let neg = |v: &Vec<i64>| v.iter().map(|x| -x).collect::<Vec<i64>>();
    let mut roots = vec![neg(&rd.roots()[top])];
    let mut coroots = vec![neg(&rd.coroots()[top])];
    for j in (0..rd.semisimple_rank()).filter(|&j| j != node.index) {
        roots.push(rd.simple_roots()[j].clone());
        coroots.push(rd.simple_coroots()[j].clone());
    }
    RootDatum::from_simple(roots, coroots, Isogeny::Intermediate)
}

/// Roots `α` with `⟨α, β_i⟩ ≡ 0 mod c_i`, computed by pairing lattice
/// vectors with the rational coweight.
pub fn congruence_subsystem(rd: &RootDatum, node: &KacNode) -> Result<Vec<Vec<i64>>> {
    let c = node.coefficient as i128;
    let mut out = Vec::new();
    for alpha in rd.roots() {
        let v: Rat = alpha.iter().zip(&node.coweight).map(|(&a, b)| Rat::from_integer(a as i128) * b).sum();
        if !v.is_integer() {
            return Err(Error::Internal("root pairs non-integrally with a fundamental coweight".into()));
        }
        if v.numer().rem_euclid(c) == 0 {
            out.push(alpha.clone());
        }
    }
    Ok(out)
}

/// Lattice form of "the center of the centralizer is a split extension of
/// `Z/c_i` by the center": compares `X^*/ZΦ` for both data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CenterReport {
    pub ambient: Vec<i64>,
    pub centralizer: Vec<i64>,
    /// `|Z(H)| = c_i · |Z(G)|`.
    pub extension: bool,
    /// `Z(H) ≅ Z/c_i × Z(G)` as abstract groups.
    pub split_extension: bool,
}

pub fn center_check(rd: &RootDatum, node: &KacNode) -> Result<CenterReport> {
    let h = centralizer_datum(rd, node)?;
    let ambient = rd.root_lattice_quotient();
    let centralizer = h.root_lattice_quotient();
    let mut expected = elementary_divisors(&ambient);
    expected.extend(elementary_divisors(&[node.coefficient]));
    expected.sort_unstable();
    let split_extension = elementary_divisors(&centralizer) == expected;
    let order = |f: &[i64]| f.iter().product::<i64>();
    let extension = order(&centralizer) == node.coefficient * order(&ambient);
    Ok(CenterReport { ambient, centralizer, extension, split_extension })
}

fn elementary_divisors(factors: &[i64]) -> Vec<i64> {
    let mut out = Vec::new();
    for &d in factors {
        let mut d = d;
        let mut q = 2;
        while d > 1 {
            let mut pk = 1;
            while d % q == 0 {
                d /= q;
                pk *= q;
            }
            if pk > 1 {
                out.push(pk);
            }
            q += 1;
        }
    }
    out.sort_unstable();
    out
}

/// Outcome of comparing roots and coroots of the centralizer with those of
/// the ambient datum, and the reflections they induce on both lattices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CorootReport {
    pub roots_checked: usize,
    pub reflections_checked: usize,
    pub violations: Vec<String>,
}

impl CorootReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that the dual of the centralizer sits in the dual of `rd` with
/// the roots/coroots bijections commuting with the inclusions, and that the
/// simple reflections of the centralizer act on `X_*` as the transposes of
/// their action on `X^*`, each being a reflection of the dual datum.
pub fn verify_coroot_compatibility(rd: &RootDatum, node: &KacNode) -> Result<CorootReport> {
    let h = centralizer_datum(rd, node)?;
    let dual_g = rd.dual();
    let dual_h = h.dual();
    let mut report = CorootReport::default();
    for (k, alpha) in h.roots().iter().enumerate() {
        report.roots_checked += 1;
        match rd.root_index(alpha) {
            None => report.violations.push(format!("root {alpha:?} of the centralizer is not a root")),
            Some(g) if rd.coroots()[g] != h.coroots()[k] => {
                report.violations.push(format!("root {alpha:?} has different coroots in the two data"))
            }
            Some(_) => {}
        }
        // in the dual data the coroot of h must be a root of G^∨ with the same partner
        let beta = &h.coroots()[k];
        match (dual_h.root_index(beta), dual_g.root_index(beta)) {
            (Some(a), Some(b)) if dual_h.coroots()[a] == dual_g.coroots()[b] && dual_h.coroots()[a] == *alpha => {}
            _ => report.violations.push(format!("coroot {beta:?} does not match in the dual data")),
        }
    }
    for i in 0..h.semisimple_rank() {
        report.reflections_checked += 1;
        let k = h.root_index(&h.simple_roots()[i]).expect("simple root is a root");
        let on_chars = h.reflection_matrix(k);
        let kd = dual_h.root_index(&h.simple_coroots()[i]).expect("simple coroot is a dual root");
        let on_cochars = dual_h.reflection_matrix(kd);
        if on_cochars != transpose(&on_chars) {
            report.violations.push(format!("simple reflection {i} is not adjoint on the two lattices"));
        }
        let in_dual_g = dual_g.root_index(&h.simple_coroots()[i]).map(|g| dual_g.reflection_matrix(g));
        if in_dual_g.as_ref() != Some(&on_cochars) {
            report.violations.push(format!("simple reflection {i} is not a reflection of the dual group"));
        }
        let g = rd.root_index(&h.simple_roots()[i]).map(|g| rd.reflection_matrix(g));
        if g.as_ref() != Some(&on_chars) {
            report.violations.push(format!("simple reflection {i} is not a reflection of the group"));
        }
    }
    // pairing sanity: ⟨α, β^∨⟩ agrees whichever datum computes it
    for (a, ac) in h.roots().iter().zip(h.coroots()) {
        if pair(a, ac) != 2 {
            report.violations.push(format!("root {a:?} pairs to {} with its coroot", pair(a, ac)));
        }
    }
    Ok(report)
}

fn transpose(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = m.len();
    (0..n).map(|i| (0..n).map(|j| m[j][i]).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(f: &str, n: usize) -> RootDatum {
        RootDatum::parse(f, n, "sc").unwrap()
    }

    #[test]
    fn type_a_has_no_nodes() {
        for p in [2, 3, 5] {
            assert!(kac_order_p_nodes(&sc("A", 5), p).unwrap().is_empty());
        }
    }

    #[test]
    fn c_n_nodes_give_symplectic_pairs() {
        let rd = sc("C", 4);
        let nodes = kac_order_p_nodes(&rd, 2).unwrap();
        assert_eq!(nodes.iter().map(|n| n.index).collect::<Vec<_>>(), vec![0, 1, 2]);
        let labels: Vec<String> = nodes.iter().map(|n| centralizer_datum(&rd, n).unwrap().label().to_string()).collect();
        assert_eq!(labels, vec!["A1xC3", "C2xC2", "A1xC3"]);
    }

    #[test]
    fn c3_middle_node() {
        let rd = sc("C", 3);
        let node = &kac_order_p_nodes(&rd, 2).unwrap()[0];
        assert_eq!(centralizer_datum(&rd, node).unwrap().label(), "A1xC2");
    }

    #[test]
    fn b3_and_f4_centralizers() {
        let rd = sc("B", 3);
        let nodes = kac_order_p_nodes(&rd, 2).unwrap();
        let a2 = nodes.iter().find(|n| n.index == 1).unwrap();
        assert_eq!(centralizer_datum(&rd, a2).unwrap().label(), "A1xA1xA1");
        let f4 = sc("F", 4);
        let left = &kac_order_p_nodes(&f4, 2).unwrap()[0];
        assert_eq!(left.index, 0);
        assert_eq!(centralizer_datum(&f4, left).unwrap().label(), "A1xC3");
    }

    #[test]
    fn e8_has_one_node_of_order_five() {
        let rd = sc("E", 8);
        let nodes = kac_order_p_nodes(&rd, 5).unwrap();
        assert_eq!(nodes.len(), 1);
        assert_eq!(nodes[0].index, 4);
        assert_eq!(centralizer_datum(&rd, &nodes[0]).unwrap().label(), "A4xA4");
    }

    #[test]
    fn coroot_compatibility_examples() {
        for (f, n, p) in [("C", 2, 2), ("G", 2, 2), ("G", 2, 3), ("F", 4, 3)] {
            let rd = sc(f, n);
            for node in kac_order_p_nodes(&rd, p).unwrap() {
                let r = verify_coroot_compatibility(&rd, &node).unwrap();
                assert!(r.passed(), "{f}{n}: {:?}", r.violations);
                assert!(center_check(&rd, &node).unwrap().split_extension);
            }
        }
    }

    #[test]
    fn spin7_centralizer_center_is_cyclic() {
        // Spin(6) = SL(4) inside Spin(7): center Z/4, not Z/2 × Z/2
        let rd = sc("B", 3);
        let node = kac_order_p_nodes(&rd, 2).unwrap().into_iter().find(|n| n.index == 2).unwrap();
        let r = center_check(&rd, &node).unwrap();
        assert_eq!(r.centralizer, vec![4]);
        assert!(r.extension && !r.split_extension);
    }
}
