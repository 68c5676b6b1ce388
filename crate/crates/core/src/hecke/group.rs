use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::is_prime;
use crate::simplicial::{Complex, GComplex};

/// Composes vertex permutations: `(a ∘ b)(v) = a(b(v))`.
pub fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&v| a[v]).collect()
}

pub fn invert(a: &[usize]) -> Vec<usize> {
    let mut out = vec![0; a.len()];
    for (i, &v) in a.iter().enumerate() {
        out[v] = i;
    }
    out
}

/// Closes a set of permutations of `0..n` under composition; the identity
/// comes first and the rest follow in breadth-first order.
pub fn closure(n: usize, generators: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let id: Vec<usize> = (0..n).collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = compose(g, &x);
            if seen.insert(y.clone()) {
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    out
}

/// A finite group acting on a complex by simplicial automorphisms, with a
/// distinguished element `ϖ` of prime order.
#[derive(Clone, Debug)]
pub struct FiniteGroupAction {
    carrier: Arc<Complex>,
    elements: Vec<Vec<usize>>,
    simplex_perms: Vec<Vec<usize>>,
    varpi: usize,
    p: u32,
}

impl FiniteGroupAction {
    pub fn new(carrier: Arc<Complex>, generators: &[Vec<usize>], varpi: Vec<usize>) -> Result<Self> {
        let n = carrier.num_vertices();
        for g in generators.iter().chain(std::iter::once(&varpi)) {
            let mut sorted = g.clone();
            sorted.sort_unstable();
            if sorted != (0..n).collect::<Vec<_>>() {
                return Err(Error::InvalidAction("group elements must be vertex permutations".into()));
            }
        }
        let elements = closure(n, generators);
        let varpi_index = elements
            .iter()
            .position(|g| *g == varpi)
            .ok_or_else(|| Error::InvalidAction("distinguished element is not in the group".into()))?;
        let mut order = 1;
        let mut x = varpi.clone();
        while x.iter().enumerate().any(|(i, &v)| i != v) {
            x = compose(&varpi, &x);
            order += 1;
        }
        if order != 1 && !is_prime(order) {
            return Err(Error::InvalidAction(format!("distinguished element has non-prime order {order}")));
        }
        let mut simplex_perms = Vec::with_capacity(elements.len());
        for g in &elements {
            let mut perm = Vec::with_capacity(carrier.len());
            for (i, s) in carrier.simplices().enumerate() {
                let img: Vec<usize> = s.iter().map(|&v| g[v]).collect();
                perm.push(carrier.find(&img).ok_or_else(|| {
                    Error::InvalidAction(format!("group element sends {} to a non-simplex", carrier.simplex_key(i)))
                })?);
            }
            simplex_perms.push(perm);
        }
        // a trivial ϖ is allowed and recorded as p = 0
        let p = if order == 1 { 0 } else { order as u32 };
        Ok(Self { carrier, elements, simplex_perms, varpi: varpi_index, p })
    }

    /// Builds an action from label maps.
    pub fn from_labels(
        carrier: Arc<Complex>,
        generators: &[BTreeMap<String, String>],
        varpi: &BTreeMap<String, String>,
    ) -> Result<Self> {
        let to_perm = |m: &BTreeMap<String, String>| -> Result<Vec<usize>> {
            carrier
                .labels()
                .iter()
                .map(|l| {
                    let img = m.get(l).ok_or_else(|| Error::InvalidAction(format!("permutation misses {l:?}")))?;
                    carrier.vertex(img).ok_or_else(|| Error::InvalidAction(format!("{img:?} is not a vertex")))
                })
                .collect()
        };
        let gens: Result<Vec<Vec<usize>>> = generators.iter().map(to_perm).collect();
        let v = to_perm(varpi)?;
        Self::new(carrier.clone(), &gens?, v)
    }

    pub fn carrier(&self) -> &Arc<Complex> {
        &self.carrier
    }

    pub fn elements(&self) -> &[Vec<usize>] {
        &self.elements
    }

    pub fn simplex_perm(&self, k: usize) -> &[usize] {
        &self.simplex_perms[k]
    }

    pub fn varpi(&self) -> &[usize] {
        &self.elements[self.varpi]
    }

    /// Order of `ϖ`; 0 when `ϖ` is trivial.
    pub fn prime(&self) -> u32 {
        self.p
    }

    /// Indices of the elements commuting with `ϖ`.
    pub fn centralizer(&self) -> Vec<usize> {
        let w = self.varpi();
        (0..self.elements.len())
            .filter(|&k| compose(&self.elements[k], w) == compose(w, &self.elements[k]))
            .collect()
    }

    /// Indices of the elements normalizing `⟨ϖ⟩`.
    pub fn normalizer(&self) -> Vec<usize> {
        let w = self.varpi();
        let cyclic = closure(w.len(), &[w.to_vec()]);
        (0..self.elements.len())
            .filter(|&k| {
                let g = &self.elements[k];
                let conj = compose(&compose(g, w), &invert(g));
                cyclic.contains(&conj)
            })
            .collect()
    }

    /// The cyclic action of `ϖ` alone.
    pub fn varpi_action(&self) -> Result<GComplex> {
        let order = if self.p == 0 { 2 } else { self.p as u64 };
        GComplex::new(self.carrier.clone(), self.varpi().to_vec(), order)
    }
}

/// An abstract finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a multiplication table `table[a][b] = a·b`.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::Malformed("multiplication table must be square with entries in range".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::Malformed("no identity element".into()))?;
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::Malformed(format!("element {a} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Malformed(format!("associativity fails on ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(Self { table, identity, inverse })
    }

    /// The group generated by permutations of `0..n`.
    pub fn from_permutations(n: usize, generators: &[Vec<usize>]) -> Self {
        let elements = closure(n, generators);
        let index: BTreeMap<&Vec<usize>, usize> = elements.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let table = elements
            .iter()
            .map(|a| elements.iter().map(|b| index[&compose(a, b)]).collect())
            .collect();
        Self::from_table(table).expect("permutation groups are groups")
    }

    pub fn cyclic(n: usize) -> Self {
        let gen: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        Self::from_permutations(n, &[gen])
    }

    /// Dihedral group of order `2n`.
    pub fn dihedral(n: usize) -> Self {
        let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        Self::from_permutations(n, &[rot, refl])
    }

    pub fn symmetric3() -> Self {
        Self::from_permutations(3, &[vec![1, 0, 2], vec![1, 2, 0]])
    }

    /// Quaternion group, via its regular representation on `±1, ±i, ±j, ±k`.
    pub fn quaternion() -> Self {
        // encode ±u as 2u + s with u ∈ {1,i,j,k} = 0..4, s = 1 for minus
        let unit = [[0usize, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]];
        let sign = [[0usize, 0, 0, 0], [0, 1, 0, 1], [0, 1, 1, 0], [0, 0, 1, 1]];
        let mul = |a: usize, b: usize| {
            let (ua, sa) = (a / 2, a % 2);
            let (ub, sb) = (b / 2, b % 2);
            2 * unit[ua][ub] + (sa + sb + sign[ua][ub]) % 2
        };
        Self::from_table((0..8).map(|a| (0..8).map(|b| mul(a, b)).collect()).collect()).expect("Q8 is a group")
    }

    pub fn product(&self, other: &FiniteGroup) -> Self {
        let m = other.order();
        let n = self.order() * m;
        let table = (0..n)
            .map(|a| (0..n).map(|b| self.mul(a / m, b / m) * m + other.mul(a % m, b % m)).collect())
            .collect();
        Self::from_table(table).expect("products of groups are groups")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Left translations, as permutations of the elements.
    pub fn left_regular(&self) -> Vec<Vec<usize>> {
        (0..self.order()).map(|g| (0..self.order()).map(|x| self.mul(g, x)).collect()).collect()
    }

    /// All groups of order 2, 3, 4, 6 and 8 up to isomorphism, with names.
    pub fn small_groups() -> Vec<(&'static str, FiniteGroup)> {
        let z2 = Self::cyclic(2);
        vec![
            ("Z2", z2.clone()),
            ("Z3", Self::cyclic(3)),
            ("Z4", Self::cyclic(4)),
            ("Z2xZ2", z2.product(&z2)),
            ("Z6", Self::cyclic(6)),
            ("S3", Self::symmetric3()),
            ("Z8", Self::cyclic(8)),
            ("Z4xZ2", Self::cyclic(4).product(&z2)),
            ("Z2xZ2xZ2", z2.product(&z2).product(&z2)),
            ("D4", Self::dihedral(4)),
            ("Q8", Self::quaternion()),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_groups_have_the_right_orders() {
        let orders: Vec<usize> = FiniteGroup::small_groups().iter().map(|(_, g)| g.order()).collect();
        assert_eq!(orders, vec![2, 3, 4, 4, 6, 6, 8, 8, 8, 8, 8]);
        assert!(!FiniteGroup::symmetric3().is_abelian());
        assert!(!FiniteGroup::quaternion().is_abelian());
        assert!(!FiniteGroup::dihedral(4).is_abelian());
        // Q8 has a single element of order 2, D4 has five
        let involutions = |g: &FiniteGroup| {
            (0..g.order()).filter(|&a| a != g.identity() && g.mul(a, a) == g.identity()).count()
        };
        assert_eq!(involutions(&FiniteGroup::quaternion()), 1);
        assert_eq!(involutions(&FiniteGroup::dihedral(4)), 5);
    }

    #[test]
    fn rejects_non_groups() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
        // a quasigroup without associativity
        let t = vec![vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]];
        assert!(FiniteGroup::from_table(t).is_err());
    }

    #[test]
    fn centralizer_and_normalizer_in_s3() {
        let c = Arc::new(Complex::from_maximal(&[vec!["0"], vec!["1"], vec!["2"]]).unwrap());
        let act = FiniteGroupAction::new(c, &[vec![1, 0, 2], vec![1, 2, 0]], vec![1, 2, 0]).unwrap();
        assert_eq!(act.elements().len(), 6);
        assert_eq!(act.prime(), 3);
        assert_eq!(act.centralizer().len(), 3);
        assert_eq!(act.normalizer().len(), 6);
    }
}
