//! Lattice-point enumeration by recursive coordinate slicing.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::hull::{max_bits, Exact};
use super::{projection_onto_affine_hull, RationalPolytope};
use crate::linalg::{kernel_basis, solve_integer, IntMatrix, RatVector};

pub(super) fn enumerate(p: &RationalPolytope) -> Vec<Vec<BigInt>> {
    if p.is_full_dimensional() {
        return enumerate_full(p);
    }
    let n = p.dim();
    let eq_rows: Vec<Vec<BigInt>> = p.equations().iter().map(|e| e.normal.clone()).collect();
    let eq = IntMatrix::from_rows(&eq_rows, n).expect("rectangular");
    // the affine hull must contain an integer point
    let mut rhs = Vec::with_capacity(eq_rows.len());
    for e in p.equations() {
        if !e.offset.is_integer() {
            return Vec::new();
        }
        rhs.push(e.offset.to_integer());
    }
    let Some(x0) = solve_integer(&eq, &rhs) else {
        return Vec::new();
    };
    let k = p.affine_dim();
    if k == 0 {
        return vec![x0];
    }
    let r = projection_onto_affine_hull(&eq).expect("saturated basis");
    let b = kernel_basis(&eq);
    let local: Vec<RatVector> = p
        .vertices()
        .iter()
        .map(|v| {
            let d: Vec<BigRational> = v
                .0
                .iter()
                .zip(&x0)
                .map(|(a, b)| a - BigRational::from_integer(b.clone()))
                .collect();
            RatVector(
                r.row_iter()
                    .map(|row| {
                        row.iter()
                            .zip(&d)
                            .fold(BigRational::zero(), |acc, (c, x)| {
                                acc + BigRational::from_integer(c.clone()) * x
                            })
                    })
                    .collect(),
            )
        })
        .collect();
    let q = RationalPolytope::hull(&local).expect("nonempty");
    let mut out: Vec<Vec<BigInt>> = enumerate_full(&q)
        .into_iter()
        .map(|t| {
            let mut x = x0.clone();
            for (ti, brow) in t.iter().zip(b.row_iter()) {
                for (xj, bj) in x.iter_mut().zip(brow) {
                    *xj += ti * bj;
                }
            }
            x
        })
        .collect();
    out.sort();
    out
}

/// Integer constraints `a · x ≥ b` on the first `level + 1` coordinates.
type Level = Vec<(Vec<BigInt>, BigInt)>;

fn enumerate_full(p: &RationalPolytope) -> Vec<Vec<BigInt>> {
    let n = p.dim();
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut levels: Vec<Level> = Vec::with_capacity(n);
    for j in 1..=n {
        let facets = if j == n {
            p.facets().to_vec()
        } else {
            let proj: Vec<RatVector> = p
                .vertices()
                .iter()
                .map(|v| RatVector(v.0[..j].to_vec()))
                .collect();
            RationalPolytope::hull(&proj)
                .expect("projection of a nonempty polytope")
                .facets()
                .to_vec()
        };
        levels.push(
            facets
                .iter()
                .map(|f| {
                    let den = f.offset.denom().clone();
                    let a: Vec<BigInt> = f.normal.iter().map(|c| c * &den).collect();
                    (a, f.offset.numer().clone())
                })
                .collect(),
        );
    }
    let coord_bits = p
        .vertices()
        .iter()
        .flat_map(|v| v.0.iter().map(|x| x.abs().ceil().to_integer()))
        .map(|x| x.bits())
        .max()
        .unwrap_or(0);
    let constraint_bits = max_bits(levels.iter().flatten().flat_map(|(a, b)| a.iter().chain([b])));
    if coord_bits + constraint_bits + 8 < 120 {
        let lv: Vec<Vec<(Vec<i128>, i128)>> = levels
            .iter()
            .map(|l| {
                l.iter()
                    .map(|(a, b)| (a.iter().map(i128::from_big).collect(), i128::from_big(b)))
                    .collect()
            })
            .collect();
        slice(&lv, n)
    } else {
        slice(&levels, n)
    }
}

fn slice<T: Exact>(levels: &[Vec<(Vec<T>, T)>], n: usize) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    let mut prefix: Vec<T> = Vec::with_capacity(n);
    walk(levels, &mut prefix, &mut out);
    out
}

fn walk<T: Exact>(levels: &[Vec<(Vec<T>, T)>], prefix: &mut Vec<T>, out: &mut Vec<Vec<BigInt>>) {
    let j = prefix.len();
    if j == levels.len() {
        out.push(prefix.iter().map(Exact::to_big).collect());
        return;
    }
    let mut lo: Option<T> = None;
    let mut hi: Option<T> = None;
    for (a, b) in &levels[j] {
        let s = a[..j]
            .iter()
            .zip(prefix.iter())
            .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone());
        let rest = b.clone() - s;
        let c = &a[j];
        if c.is_zero() {
            if rest.is_positive() {
                return;
            }
            continue;
        }
        if c.is_positive() {
            let bound = div_ceil(&rest, c);
            if lo.as_ref().is_none_or(|l| &bound > l) {
                lo = Some(bound);
            }
        } else {
            let bound = rest.div_floor(c);
            if hi.as_ref().is_none_or(|h| &bound < h) {
                hi = Some(bound);
            }
        }
    }
    let (Some(lo), Some(hi)) = (lo, hi) else {
        unreachable!("bounded polytope has both bounds in every coordinate");
    };
    let mut x = lo;
    while x <= hi {
        prefix.push(x.clone());
        walk(levels, prefix, out);
        prefix.pop();
        x = x + T::one();
    }
}

fn div_ceil<T: Exact>(a: &T, b: &T) -> T {
    -((-a.clone()).div_floor(b))
}

/// Lattice points by scanning the integer bounding box and testing every facet.
///
/// Slow; kept as an independent check of the slicing enumerator.
pub fn lattice_points_by_box(p: &RationalPolytope) -> Vec<Vec<BigInt>> {
    let n = p.dim();
    let lo: Vec<BigInt> = (0..n)
        .map(|i| {
            p.vertices()
                .iter()
                .map(|v| v.0[i].ceil().to_integer())
                .min()
                .expect("vertex")
        })
        .collect();
    let hi: Vec<BigInt> = (0..n)
        .map(|i| {
            p.vertices()
                .iter()
                .map(|v| v.0[i].floor().to_integer())
                .max()
                .expect("vertex")
        })
        .collect();
    let mut out = Vec::new();
    if lo.iter().zip(&hi).any(|(l, h)| l > h) {
        return out;
    }
    let mut x = lo.clone();
    loop {
        if p.contains_integer(&x) {
            out.push(x.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if x[i] < hi[i] {
                x[i] += 1;
                for j in i + 1..n {
                    x[j] = lo[j].clone();
                }
                break;
            }
        }
    }
}
