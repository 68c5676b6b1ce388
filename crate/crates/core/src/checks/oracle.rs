//! Independent recomputations used by the suite and the tests.

use std::sync::Arc;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::conic::{ConicCFun, Fan, Q};
use crate::error::{Error, Result};
use crate::roots::RootDatum;
use crate::scalar::{Ring, Scalar};
use crate::simplicial::{euler_integral, CFun, Complex};

fn q(x: i64) -> Q {
    Q::from_integer(x as i128)
}

fn dotq(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

/// Bounding-box radius `1 + (max |ξ_i| · max |ray coordinate|)²`.
pub fn box_radius(fan: &Fan, xi: &[i64]) -> i64 {
    let a = xi.iter().map(|x| x.abs()).max().unwrap_or(0);
    let b = fan.rays().iter().flatten().map(|x| x.abs()).max().unwrap_or(1);
    1 + (a * b) * (a * b)
}

/// Clips a convex polygon (in order) by the half-plane `n · x ≥ c`.
fn clip(poly: &[Vec<Q>], n: &[Q], c: &Q) -> Vec<Vec<Q>> {
    let mut out: Vec<Vec<Q>> = Vec::new();
    let k = poly.len();
    for i in 0..k {
        let a = &poly[i];
        let b = &poly[(i + 1) % k];
        let fa = dotq(n, a) - c;
        let fb = dotq(n, b) - c;
        if !fa.is_negative() {
            out.push(a.clone());
        }
        if (fa.is_negative() && fb.is_positive()) || (fa.is_positive() && fb.is_negative()) {
            let t = fa / (fa - fb);
            out.push(a.iter().zip(b).map(|(x, y)| x + (y - x) * t).collect());
        }
    }
    out.dedup();
    if out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    out
}

/// `χ_c(relint C ∩ {ξ < 1} ∩ open box)` for a cone of a fan in dimension at
/// most 2, computed as the Euler integral of an indicator on an explicit
/// triangulation of the closed region.
pub fn cone_chi_by_triangulation(fan: &Fan, i: usize, xi: &[i64]) -> Result<i64> {
    let n = fan.dim();
    if n > 2 {
        return Err(Error::Unsupported("the triangulation oracle handles dimension at most 2".into()));
    }
    let r = q(box_radius(fan, xi));
    let xiq: Vec<Q> = xi.iter().map(|&x| q(x)).collect();
    let int_rays = fan.cone_rays(i);
    let rays: Vec<Vec<Q>> = fan.cone_rays(i).iter().map(|ray| ray.iter().map(|&x| q(x)).collect()).collect();
    let in_region = |x: &[Q]| -> bool {
        let inside_box = x.iter().all(|c| c.abs() < r);
        let below = dotq(&xiq, x) < Q::one();
        let relint = match rays.len() {
            0 => x.iter().all(Zero::is_zero),
            _ => crate::conic::coordinates(&int_rays, x).is_some_and(|lam| lam.iter().all(Signed::is_positive)),
        };
        inside_box && below && relint
    };
    // vertices of the closed region and its maximal simplices
    let (points, simplices): (Vec<Vec<Q>>, Vec<Vec<usize>>) = match rays.len() {
        0 => (vec![vec![Q::zero(); n]], vec![vec![0]]),
        1 => {
            let ray = &rays[0];
            let m = ray.iter().map(|x| x.abs()).max().expect("nonzero ray");
            let mut t = r.clone() / m;
            let s = dotq(&xiq, ray);
            if s.is_positive() && Q::one() / s.clone() < t {
                t = Q::one() / s;
            }
            let end: Vec<Q> = ray.iter().map(|x| x * t).collect();
            (vec![vec![Q::zero(); n], end], vec![vec![0, 1]])
        }
        2 => {
            let (r1, r2) = (&rays[0], &rays[1]);
            // inward normals of the two walls
            let mut n1 = vec![-r1[1], r1[0]];
            if dotq(&n1, r2).is_negative() {
                n1 = n1.iter().map(|x| -x).collect();
            }
            let mut n2 = vec![-r2[1], r2[0]];
            if dotq(&n2, r1).is_negative() {
                n2 = n2.iter().map(|x| -x).collect();
            }
            let mut poly = vec![vec![-r, -r], vec![r, -r], vec![r, r], vec![-r, r]];
            poly = clip(&poly, &n1, &Q::zero());
            poly = clip(&poly, &n2, &Q::zero());
            let minus_xi: Vec<Q> = xiq.iter().map(|x| -x).collect();
            poly = clip(&poly, &minus_xi, &-Q::one());
            let k = poly.len();
            let centre: Vec<Q> = (0..2)
                .map(|c| poly.iter().fold(Q::zero(), |acc, p| acc + &p[c]) / Q::from_integer(k as i128))
                .collect();
            let mut points = poly;
            points.push(centre);
            let simplices = (0..k).map(|j| vec![k, j, (j + 1) % k]).collect();
            (points, simplices)
        }
        _ => unreachable!("cones in dimension at most 2"),
    };
    let lists: Vec<Vec<String>> = simplices.iter().map(|s| s.iter().map(|v| format!("p{v}")).collect()).collect();
    let complex = Arc::new(Complex::from_maximal(&lists)?);
    let chosen: Vec<usize> = (0..complex.len())
        .filter(|&s| {
            let verts = complex.simplex(s);
            let bary: Vec<Q> = (0..n)
                .map(|c| {
                    let sum = verts.iter().fold(Q::zero(), |acc, &v| {
                        let idx: usize = complex.label(v)[1..].parse().expect("point label");
                        acc + &points[idx][c]
                    });
                    sum / Q::from_integer(verts.len() as i128)
                })
                .collect();
            in_region(&bary)
        })
        .collect();
    Ok(euler_integral(&CFun::indicator(complex, Ring::Integers, &chosen)).value)
}

/// `∫_{ξ < 1} f` through the triangulation oracle.
pub fn ft_value_by_triangulation(f: &ConicCFun, xi: &[i64]) -> Result<Scalar> {
    let ring = f.ring();
    let mut total = 0;
    for i in 0..f.fan().len() {
        if f.get(i) != 0 {
            total = ring.add(total, ring.mul(f.get(i), ring.reduce(cone_chi_by_triangulation(f.fan(), i, xi)?)));
        }
    }
    Ok(Scalar::new(ring, total))
}

/// The Weyl dimension formula `Π_{α>0} ⟨λ+ρ, α^∨⟩ / ⟨ρ, α^∨⟩` for a
/// simply connected datum (weights in fundamental-weight coordinates).
pub fn weyl_dimension(rd: &RootDatum, lambda: &[i64]) -> i128 {
    let mut num = Ratio::<i128>::one();
    for co in rd.positive_coroots() {
        let rho: i128 = co.iter().map(|&c| c as i128).sum();
        let shifted: i128 = lambda.iter().zip(co).map(|(&l, &c)| (l as i128 + 1) * c as i128).sum();
        num *= Ratio::new(shifted, rho);
    }
    assert!(num.is_integer(), "the dimension formula is integral");
    num.to_integer()
}
