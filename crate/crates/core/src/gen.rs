//! Seeded generators of random instances for the property suite.
//!
//! Every generator is a pure function of the `rng` state, so a seed
//! reproduces the whole run.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conic::{ConicCFun, Fan};
use crate::hecke::{FiniteGroupAction, HeckeElement};
use crate::linalg::FpMatrix;
use crate::scalar::Ring;
use crate::simplicial::{CFun, Complex, GComplex, Sign, SimplicialMap};
use crate::tate::{Module, TateComplex};

/// The generator used throughout the suite.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// An independent stream for a named check, so that adding a check does not
/// perturb the others.
pub fn stream(seed: u64, name: &str) -> ChaCha8Rng {
    // FNV-1a
    let h = name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x100_0000_01b3));
    rng(seed ^ h)
}

/// A random value of the ring, small when the ring is `Z`.
pub fn scalar<R: Rng>(rng: &mut R, ring: Ring) -> i64 {
    match ring {
        Ring::Integers => rng.gen_range(-3..=3),
        Ring::Prime(p) => rng.gen_range(0..i64::from(p)),
    }
}

fn vertex_label(t: usize, k: u64) -> String {
    format!("w{t}.{k}")
}

/// A random regular action of the cyclic group of the given prime-power
/// order with at most `max_simplices` simplices. Vertices are either fixed
/// (`f*`) or lie in free orbits (`w<t>.<k>`, moved `k -> k+1`); a seed
/// simplex uses at most one vertex of each free orbit, which makes every
/// stabilizer act trivially on the simplex. With `free` there are no fixed
/// vertices.
pub fn regular_gcomplex<R: Rng>(rng: &mut R, order: u64, free: bool, max_simplices: usize) -> GComplex {
    let types = rng.gen_range(1..=4usize);
    let fixed = if free { 0 } else { rng.gen_range(0..=3usize) };
    let max_dim = rng.gen_range(1..=3usize);
    let mut faces: BTreeSet<Vec<String>> = BTreeSet::new();
    let mut seeds: Vec<Vec<String>> = Vec::new();
    let attempts = rng.gen_range(2..=10usize);
    for _ in 0..attempts {
        let size = rng.gen_range(1..=max_dim + 1);
        let mut pool: Vec<Option<usize>> = (0..types).map(Some).chain((0..fixed).map(|_| None)).collect();
        pool.shuffle(rng);
        let mut fixed_pool: Vec<usize> = (0..fixed).collect();
        fixed_pool.shuffle(rng);
        let mut chosen: Vec<(Option<usize>, u64)> = Vec::new();
        for slot in pool.into_iter().take(size) {
            match slot {
                Some(t) => chosen.push((Some(t), rng.gen_range(0..order))),
                None => {
                    if let Some(f) = fixed_pool.pop() {
                        chosen.push((None, f as u64));
                    }
                }
            }
        }
        let mut fresh = faces.clone();
        let mut orbit = Vec::new();
        for j in 0..order {
            let s: Vec<String> = chosen
                .iter()
                .map(|&(t, k)| match t {
                    Some(t) => vertex_label(t, (k + j) % order),
                    None => format!("f{k}"),
                })
                .collect();
            add_faces(&mut fresh, &s);
            orbit.push(s);
        }
        if fresh.len() <= max_simplices {
            faces = fresh;
            seeds.extend(orbit);
        }
    }
    if seeds.is_empty() {
        // one free orbit of points always fits
        seeds = (0..order).map(|k| vec![vertex_label(0, k)]).collect();
    }
    let base = Arc::new(Complex::from_maximal(&seeds).expect("seed simplices are valid"));
    let generator: BTreeMap<String, String> = base
        .labels()
        .iter()
        .map(|l| {
            let image = match l.strip_prefix('w').and_then(|rest| rest.split_once('.')) {
                Some((t, k)) => vertex_label(t.parse().expect("type index"), (k.parse::<u64>().expect("offset") + 1) % order),
                None => l.clone(),
            };
            (l.clone(), image)
        })
        .collect();
    let g = GComplex::from_labels(base, &generator, order).expect("orbit construction is an action");
    debug_assert!(g.is_regular());
    g
}

fn add_faces(faces: &mut BTreeSet<Vec<String>>, s: &[String]) {
    let n = s.len();
    for mask in 1u32..(1 << n) {
        let mut f: Vec<String> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| s[i].clone()).collect();
        f.sort();
        faces.insert(f);
    }
}

/// A prime power `p` or `p^2` with `p ∈ {2, 3, 5}` (orders stay at most 9).
pub fn small_order<R: Rng>(rng: &mut R) -> u64 {
    let p = [2u64, 3, 5][rng.gen_range(0..3)];
    if p < 5 && rng.gen_bool(0.25) {
        p * p
    } else {
        p
    }
}

/// A random complex without group action: random vertex sets on up to 8
/// vertices, dimension at most 3.
pub fn complex<R: Rng>(rng: &mut R, max_simplices: usize) -> Arc<Complex> {
    let n = rng.gen_range(1..=8usize);
    let mut faces = BTreeSet::new();
    let mut lists: Vec<Vec<String>> = Vec::new();
    for _ in 0..rng.gen_range(1..=8usize) {
        let size = rng.gen_range(1..=4usize.min(n));
        let mut vs: Vec<usize> = (0..n).collect();
        vs.shuffle(rng);
        let s: Vec<String> = vs[..size].iter().map(|v| format!("v{v}")).collect();
        let mut fresh = faces.clone();
        add_faces(&mut fresh, &s);
        if fresh.len() <= max_simplices {
            faces = fresh;
            lists.push(s);
        }
    }
    if lists.is_empty() {
        lists.push(vec!["v0".to_string()]);
    }
    Arc::new(Complex::from_maximal(&lists).expect("valid vertex sets"))
}

pub fn cfun<R: Rng>(rng: &mut R, carrier: Arc<Complex>, ring: Ring) -> CFun {
    let values = (0..carrier.len()).map(|_| scalar(rng, ring)).collect();
    CFun::from_values(carrier, ring, values)
}

/// A random function constant on orbits.
pub fn invariant_cfun<R: Rng>(rng: &mut R, g: &GComplex, ring: Ring) -> CFun {
    let n = g.base().len();
    let mut values: Vec<Option<i64>> = vec![None; n];
    for i in 0..n {
        if values[i].is_none() {
            let v = scalar(rng, ring);
            for j in g.orbit(i) {
                values[j] = Some(v);
            }
        }
    }
    CFun::from_values(g.base().clone(), ring, values.into_iter().map(|v| v.expect("assigned")).collect())
}

fn boundary_of_simplex(n: usize) -> Vec<Vec<String>> {
    (0..=n).map(|skip| (0..=n).filter(|&i| i != skip).map(|i| format!("m{i}")).collect()).collect()
}

fn named(lists: &[&[usize]]) -> Vec<Vec<String>> {
    lists.iter().map(|s| s.iter().map(|i| format!("m{i}")).collect()).collect()
}

/// Closed PL manifolds: polygons, sphere boundaries, the octahedron, the
/// seven-vertex torus and the six-vertex projective plane.
pub fn closed_manifold_seeds() -> Vec<(&'static str, Vec<Vec<String>>)> {
    let polygon = |n: usize| -> Vec<Vec<String>> { (0..n).map(|i| vec![format!("m{i}"), format!("m{}", (i + 1) % n)]).collect() };
    let torus: Vec<Vec<String>> = (0..7)
        .flat_map(|i| {
            [[i, (i + 1) % 7, (i + 3) % 7], [i, (i + 2) % 7, (i + 3) % 7]]
                .into_iter()
                .map(|t| t.iter().map(|v| format!("m{v}")).collect::<Vec<_>>())
        })
        .collect();
    vec![
        ("triangle", polygon(3)),
        ("hexagon", polygon(6)),
        ("tetrahedron", boundary_of_simplex(3)),
        ("octahedron", named(&[&[0, 2, 4], &[0, 2, 5], &[0, 3, 4], &[0, 3, 5], &[1, 2, 4], &[1, 2, 5], &[1, 3, 4], &[1, 3, 5]])),
        ("3-sphere", boundary_of_simplex(4)),
        ("torus", torus),
        (
            "projective plane",
            named(&[
                &[0, 1, 2],
                &[0, 2, 3],
                &[0, 3, 4],
                &[0, 4, 5],
                &[0, 1, 5],
                &[1, 2, 4],
                &[2, 3, 5],
                &[1, 3, 4],
                &[2, 4, 5],
                &[1, 3, 5],
            ]),
        ),
    ]
}

/// Stellar subdivision of a pure complex at a simplex, with a new cone
/// vertex.
pub fn stellar(c: &Complex, sigma: usize, label: &str) -> Complex {
    let s: Vec<&str> = c.simplex_labels(sigma);
    let mut lists: Vec<Vec<String>> = Vec::new();
    for m in c.maximal_simplices() {
        let t = c.simplex_labels(m);
        if s.iter().all(|v| t.contains(v)) {
            for drop in &s {
                let mut f: Vec<String> = t.iter().filter(|v| *v != drop).map(|v| v.to_string()).collect();
                f.push(label.to_string());
                lists.push(f);
            }
        } else {
            lists.push(t.iter().map(|v| v.to_string()).collect());
        }
    }
    Complex::from_maximal(&lists).expect("stellar subdivision is a complex")
}

/// A random closed manifold, stellarly subdivided a few times, plus some
/// isolated points.
pub fn closed_manifold<R: Rng>(rng: &mut R) -> (String, Arc<Complex>) {
    let seeds = closed_manifold_seeds();
    let (name, lists) = seeds[rng.gen_range(0..seeds.len())].clone();
    let mut c = Complex::from_maximal(&lists).expect("seed manifold");
    let subdivisions = rng.gen_range(0..=3usize);
    for k in 0..subdivisions {
        let candidates: Vec<usize> = (0..c.len()).filter(|&i| c.dim_of(i) > 0).collect();
        let sigma = candidates[rng.gen_range(0..candidates.len())];
        c = stellar(&c, sigma, &format!("s{k}"));
    }
    let isolated = rng.gen_range(0..=2usize);
    if isolated > 0 {
        let mut lists = c.maximal_label_lists();
        lists.extend((0..isolated).map(|k| vec![format!("pt{k}")]));
        c = Complex::from_maximal(&lists).expect("disjoint union");
    }
    let name = format!("{name} with {subdivisions} subdivisions and {isolated} isolated points");
    (name, Arc::new(c))
}

/// A random invariant subcomplex: the closure of a random nonempty set of
/// orbits of maximal simplices.
pub fn invariant_subcomplex<R: Rng>(rng: &mut R, g: &GComplex) -> GComplex {
    let base = g.base();
    let maximal = base.maximal_simplices();
    let mut keep = vec![false; base.len()];
    let mut any = false;
    for &m in &maximal {
        if rng.gen_bool(0.5) || (!any && m == *maximal.last().expect("nonempty")) {
            any = true;
            for o in g.orbit(m) {
                for f in base.faces(o) {
                    keep[f] = true;
                }
            }
        }
    }
    let sub = Arc::new(base.subcomplex(|i| keep[i]).expect("face closure"));
    g.restrict_to(sub).expect("union of orbits is invariant")
}

/// A random subcomplex, not necessarily invariant.
pub fn subcomplex<R: Rng>(rng: &mut R, c: &Complex) -> Arc<Complex> {
    let mut keep = vec![false; c.len()];
    for m in c.maximal_simplices() {
        if rng.gen_bool(0.5) {
            // a random face of each chosen maximal simplex
            let faces = c.faces(m);
            let f = faces[rng.gen_range(0..faces.len())];
            for x in c.faces(f) {
                keep[x] = true;
            }
        }
    }
    Arc::new(c.subcomplex(|i| keep[i]).expect("face closure"))
}

/// An equivariant "last vertex" map `sd(X) -> X`: the barycenter of `σ`
/// goes to a vertex of `σ`, chosen at random on one simplex per orbit and
/// transported along the orbit.
pub fn last_vertex_map<R: Rng>(rng: &mut R, g: &GComplex) -> (GComplex, SimplicialMap) {
    let (sd_action, sd) = g.barycentric();
    let base = g.base();
    let mut choice: Vec<Option<usize>> = vec![None; base.len()];
    for i in 0..base.len() {
        if choice[i].is_some() {
            continue;
        }
        let s = base.simplex(i);
        let v = s[rng.gen_range(0..s.len())];
        for k in 0..g.order() {
            let j = g.act(k, i);
            if choice[j].is_none() {
                choice[j] = Some(g.act_vertex(k, v));
            }
        }
    }
    let mut vm = vec![0; sd.complex().num_vertices()];
    for (b, c) in choice.into_iter().enumerate() {
        vm[sd.barycenter(b)] = c.expect("every simplex is assigned");
    }
    let u = SimplicialMap::from_vertex_map(sd.complex().clone(), base.clone(), vm).expect("flags map into simplices");
    (sd_action, u)
}

/// The kinds of equivariant maps the suite draws from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Inclusion,
    LastVertex,
    ToPoint,
    /// `sd(Y) -> Y ⊆ X`
    Composite,
}

/// A random equivariant map between regular complexes with the same group.
pub fn equivariant_map<R: Rng>(rng: &mut R, g: &GComplex) -> (MapKind, GComplex, GComplex, SimplicialMap) {
    let kind = [MapKind::Inclusion, MapKind::LastVertex, MapKind::ToPoint, MapKind::Composite][rng.gen_range(0..4)];
    match kind {
        MapKind::Inclusion => {
            let sub = invariant_subcomplex(rng, g);
            let u = SimplicialMap::inclusion(sub.base().clone(), g.base().clone()).expect("subcomplex");
            (kind, sub, g.clone(), u)
        }
        MapKind::LastVertex => {
            let (sd, u) = last_vertex_map(rng, g);
            (kind, sd, g.clone(), u)
        }
        MapKind::ToPoint => {
            let u = SimplicialMap::to_point(g.base().clone());
            let pt = GComplex::trivial(u.target().clone(), g.order()).expect("trivial action");
            (kind, g.clone(), pt, u)
        }
        MapKind::Composite => {
            let sub = invariant_subcomplex(rng, g);
            let (sd, lv) = last_vertex_map(rng, &sub);
            let inc = SimplicialMap::inclusion(sub.base().clone(), g.base().clone()).expect("subcomplex");
            let u = lv.then(&inc).expect("composable");
            (kind, sd, g.clone(), u)
        }
    }
}

/// Invariant sign labels with no simplex carrying both `+` and `-`: signs
/// are drawn per vertex orbit, then `-` orbits meeting a `+` are zeroed.
pub fn invariant_signs<R: Rng>(rng: &mut R, g: &GComplex) -> Vec<Sign> {
    let n = g.base().num_vertices();
    let mut signs: Vec<Option<Sign>> = vec![None; n];
    for v in 0..n {
        if signs[v].is_none() {
            let s = [Sign::Neg, Sign::Zero, Sign::Pos][rng.gen_range(0..3)];
            for k in 0..g.order() {
                signs[g.act_vertex(k, v)] = Some(s);
            }
        }
    }
    let mut signs: Vec<Sign> = signs.into_iter().map(|s| s.expect("assigned")).collect();
    let base = g.base();
    loop {
        let mixed = base.simplices().find(|s| s.iter().any(|&v| signs[v] == Sign::Pos) && s.iter().any(|&v| signs[v] == Sign::Neg));
        match mixed {
            None => return signs,
            Some(s) => {
                let v = *s.iter().find(|&&v| signs[v] == Sign::Neg).expect("mixed");
                for k in 0..g.order() {
                    signs[g.act_vertex(k, v)] = Sign::Zero;
                }
            }
        }
    }
}

/// A random kernel on `carrier × carrier`.
pub fn kernel<R: Rng>(rng: &mut R, carrier: Arc<Complex>, ring: Ring, density: f64) -> HeckeElement {
    let n = carrier.len();
    let mut f = HeckeElement::zero(carrier, ring);
    for s in 0..n {
        for t in 0..n {
            if rng.gen_bool(density) {
                f.set(s, t, scalar(rng, ring));
            }
        }
    }
    f
}

/// A random finite group action with a distinguished element of prime order:
/// either a random cyclic action (with `ϖ` of order `p` inside) or a
/// dihedral action on a polygon (even when ϖ is a reflection, so that it
/// flips no edge).
pub fn group_action<R: Rng>(rng: &mut R, max_simplices: usize) -> FiniteGroupAction {
    if rng.gen_bool(0.5) {
        let order = small_order(rng);
        let g = regular_gcomplex(rng, order, false, max_simplices);
        if g.generator().iter().enumerate().all(|(v, &w)| v == w) {
            // every vertex fixed: the group acting is trivial
            return group_action(rng, max_simplices);
        }
        let varpi = g.prime_subgroup().generator().to_vec();
        FiniteGroupAction::new(g.base().clone(), &[g.generator().to_vec()], varpi).expect("cyclic group")
    } else {
        let (n, p) = [(4usize, 2u32), (6, 2), (6, 3), (3, 3), (8, 2), (5, 5)][rng.gen_range(0..6)];
        let lists: Vec<Vec<String>> = (0..n).map(|i| vec![format!("{i}"), format!("{}", (i + 1) % n)]).collect();
        let c = Arc::new(Complex::from_maximal(&lists).expect("polygon"));
        let idx = |i: usize| c.vertex(&format!("{}", i % n)).expect("vertex");
        let mut rot = vec![0; n];
        let mut refl = vec![0; n];
        for i in 0..n {
            rot[idx(i)] = idx(i + 1);
            refl[idx(i)] = idx(n - i);
        }
        let varpi = if p == 2 {
            refl.clone()
        } else {
            let step = n / p as usize;
            let mut w = vec![0; n];
            for i in 0..n {
                w[idx(i)] = idx(i + step);
            }
            w
        };
        FiniteGroupAction::new(c, &[rot, refl], varpi).expect("dihedral group")
    }
}

/// A random complete simplicial fan: the orthant fan of `Q^dim` stellarly
/// subdivided at a few random integer vectors.
pub fn fan<R: Rng>(rng: &mut R, dim: usize) -> Fan {
    let mut f = Fan::orthants(dim);
    for _ in 0..rng.gen_range(0..=3usize) {
        let v: Vec<i64> = (0..dim).map(|_| rng.gen_range(-3..=3)).collect();
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        if let Ok(g) = f.stellar(&v) {
            f = g;
        }
    }
    f
}

pub fn conic_cfun<R: Rng>(rng: &mut R, fan: Arc<Fan>, ring: Ring) -> ConicCFun {
    let values = (0..fan.len()).map(|_| scalar(rng, ring)).collect();
    ConicCFun::from_values(fan, ring, values)
}

pub fn covector<R: Rng>(rng: &mut R, dim: usize) -> Vec<i64> {
    (0..dim).map(|_| rng.gen_range(-3..=3)).collect()
}

/// Summand kinds of a module built from trivial and regular pieces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Piece {
    Trivial,
    Regular,
}

fn piece_dim(p: u32, x: Piece) -> usize {
    match x {
        Piece::Trivial => 1,
        Piece::Regular => p as usize,
    }
}

pub fn module_of(p: u32, pieces: &[Piece]) -> Module {
    pieces.iter().fold(Module::trivial(p, 0), |m, &x| {
        m.direct_sum(&match x {
            Piece::Trivial => Module::trivial(p, 1),
            Piece::Regular => Module::regular(p),
        })
    })
}

/// A random equivariant map between modules given by their pieces: scalars
/// between trivial pieces, the augmentation and the norm between trivial and
/// regular ones, polynomials in `g` between regular pieces.
pub fn equivariant_matrix<R: Rng>(rng: &mut R, p: u32, from: &[Piece], to: &[Piece]) -> FpMatrix {
    let rows: usize = to.iter().map(|&x| piece_dim(p, x)).sum();
    let cols: usize = from.iter().map(|&x| piece_dim(p, x)).sum();
    let mut m = FpMatrix::zeros(p, rows, cols);
    let g = Module::regular(p).action;
    let mut r0 = 0;
    for &t in to {
        let mut c0 = 0;
        for &s in from {
            let c = rng.gen_range(0..p);
            let block = match (s, t) {
                (Piece::Trivial, Piece::Trivial) => FpMatrix::from_rows(p, &[vec![i64::from(c)]]),
                (Piece::Regular, Piece::Trivial) => FpMatrix::from_rows(p, &[vec![i64::from(c); p as usize]]),
                (Piece::Trivial, Piece::Regular) => {
                    FpMatrix::from_rows(p, &vec![vec![i64::from(c)]; p as usize])
                }
                (Piece::Regular, Piece::Regular) => {
                    let mut acc = FpMatrix::zeros(p, p as usize, p as usize);
                    let mut power = FpMatrix::identity(p, p as usize);
                    for _ in 0..p {
                        acc = acc.add(&power.scale(rng.gen_range(0..i64::from(p))));
                        power = power.mul(&g);
                    }
                    acc
                }
            };
            m.put_block(r0, c0, &block);
            c0 += piece_dim(p, s);
        }
        r0 += piece_dim(p, t);
    }
    m
}

fn pieces<R: Rng>(rng: &mut R, max: usize) -> Vec<Piece> {
    (0..rng.gen_range(0..=max)).map(|_| if rng.gen_bool(0.5) { Piece::Trivial } else { Piece::Regular }).collect()
}

/// A random bounded complex: either a two-term complex with an equivariant
/// differential or the cochains of a random regular action, shifted.
pub fn tate_complex<R: Rng>(rng: &mut R, p: u32) -> TateComplex {
    let shift = rng.gen_range(-2..=2i64);
    if rng.gen_bool(0.5) {
        let a = pieces(rng, 3);
        let b = pieces(rng, 3);
        let d = equivariant_matrix(rng, p, &a, &b);
        let modules = BTreeMap::from([(0, module_of(p, &a)), (1, module_of(p, &b))]);
        let diffs = BTreeMap::from([(0, d)]);
        TateComplex::new(p, modules, diffs).expect("two-term complexes have d² = 0").shift(shift)
    } else {
        let free = rng.gen_bool(0.5);
        let g = regular_gcomplex(rng, u64::from(p), free, 40);
        crate::tate::equivariant_cochains(&g).expect("regular action").shift(shift)
    }
}

/// A random perfect complex: a two-term complex of regular pieces.
pub fn free_complex<R: Rng>(rng: &mut R, p: u32) -> TateComplex {
    let a: Vec<Piece> = (0..rng.gen_range(1..=2)).map(|_| Piece::Regular).collect();
    let b: Vec<Piece> = (0..rng.gen_range(0..=2)).map(|_| Piece::Regular).collect();
    let d = equivariant_matrix(rng, p, &a, &b);
    let modules = BTreeMap::from([(0, module_of(p, &a)), (1, module_of(p, &b))]);
    TateComplex::new(p, modules, BTreeMap::from([(0, d)])).expect("two-term complex").shift(rng.gen_range(-1..=1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_actions_are_regular_and_bounded() {
        let mut r = rng(7);
        for _ in 0..50 {
            let order = small_order(&mut r);
            let free = r.gen_bool(0.3);
            let g = regular_gcomplex(&mut r, order, free, 150);
            assert!(g.is_regular());
            assert!(g.base().len() <= 150);
            if free {
                assert!(g.is_free());
            }
        }
    }

    #[test]
    fn generators_are_deterministic() {
        let a = regular_gcomplex(&mut rng(3), 3, false, 100);
        let b = regular_gcomplex(&mut rng(3), 3, false, 100);
        assert_eq!(a, b);
    }

    #[test]
    fn maps_are_equivariant() {
        let mut r = rng(11);
        for _ in 0..30 {
            let g = regular_gcomplex(&mut r, 2, false, 60);
            let (_, src, tgt, u) = equivariant_map(&mut r, &g);
            assert!(src.is_equivariant(&tgt, &u));
            assert!(src.is_regular() && tgt.is_regular());
        }
    }

    #[test]
    fn signs_never_mix() {
        let mut r = rng(5);
        for _ in 0..30 {
            let g = regular_gcomplex(&mut r, 3, false, 80);
            let s = invariant_signs(&mut r, &g);
            let f = invariant_cfun(&mut r, &g, Ring::Prime(3));
            assert!(crate::simplicial::specialize(&f, &s).is_ok());
        }
    }

    #[test]
    fn manifolds_have_the_expected_euler_characteristic() {
        for (name, lists) in closed_manifold_seeds() {
            let c = Complex::from_maximal(&lists).unwrap();
            let want = match name {
                "triangle" | "hexagon" | "torus" => 0,
                "3-sphere" => 0,
                "projective plane" => 1,
                _ => 2,
            };
            assert_eq!(c.euler_characteristic(), want, "{name}");
        }
    }

    #[test]
    fn random_equivariant_matrices_commute_with_the_action() {
        let mut r = rng(9);
        for p in [2u32, 3, 5] {
            for _ in 0..10 {
                let a = pieces(&mut r, 3);
                let b = pieces(&mut r, 3);
                let m = equivariant_matrix(&mut r, p, &a, &b);
                let (ga, gb) = (module_of(p, &a).action, module_of(p, &b).action);
                assert_eq!(m.mul(&ga), gb.mul(&m));
            }
        }
    }
}
