//! Seeded generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use toricy::bhk::{BhkDatum, DEFAULT_INDEX_CAP};
use toricy::goodpair::good_pair;
use toricy::linalg::{IntMatrix, RatVector};
use toricy::polytope::RationalPolytope;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let rows: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect();
    IntMatrix::from_rows(&rows, cols).unwrap()
}

/// Determinant by cofactor expansion.
pub fn det(m: &[Vec<BigInt>]) -> BigInt {
    match m.len() {
        0 => BigInt::from(1),
        1 => m[0][0].clone(),
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<BigInt>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let t = &m[0][j] * det(&minor);
                if j % 2 == 0 { t } else { -t }
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors from gcds of k×k minors: `d_k / d_{k-1}`, zero once all minors vanish.
pub fn invariant_factors_by_minors(m: &IntMatrix) -> Vec<BigInt> {
    let rows = m.to_rows();
    let kmax = m.rows().min(m.cols());
    let mut out = Vec::with_capacity(kmax);
    let mut prev = BigInt::from(1);
    for k in 1..=kmax {
        let mut g = BigInt::zero();
        for ri in subsets(m.rows(), k) {
            for ci in subsets(m.cols(), k) {
                let sub: Vec<Vec<BigInt>> =
                    ri.iter().map(|&i| ci.iter().map(|&j| rows[i][j].clone()).collect()).collect();
                g = g.gcd(&det(&sub));
            }
        }
        if g.is_zero() {
            out.extend(std::iter::repeat(BigInt::zero()).take(kmax - out.len()));
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

fn floor(x: &BigRational) -> BigInt {
    x.floor().to_integer()
}

fn ceil(x: &BigRational) -> BigInt {
    x.ceil().to_integer()
}

/// Lattice points of `p` by scanning the bounding box of its vertices against its inequalities.
pub fn box_lattice_points(p: &RationalPolytope) -> Vec<Vec<BigInt>> {
    let n = p.dim();
    let lo: Vec<BigInt> = (0..n).map(|k| ceil(p.vertices().iter().map(|v| &v.0[k]).min().unwrap())).collect();
    let hi: Vec<BigInt> = (0..n).map(|k| floor(p.vertices().iter().map(|v| &v.0[k]).max().unwrap())).collect();
    let mut out = Vec::new();
    let mut x = lo.clone();
    if lo.iter().zip(&hi).any(|(l, h)| l > h) {
        return out;
    }
    loop {
        if p.facets().iter().all(|f| !f.slack_int(&x).is_negative())
            && p.equations().iter().all(|f| f.slack_int(&x).is_zero())
        {
            out.push(x.clone());
        }
        let mut k = 0;
        loop {
            if k == n {
                out.sort();
                return out;
            }
            if x[k] < hi[k] {
                x[k] += 1;
                break;
            }
            x[k] = lo[k].clone();
            k += 1;
        }
    }
}

/// Nonzero lattice points strictly inside `p`, by the box scan.
pub fn box_extra_interior_points(p: &RationalPolytope) -> Vec<Vec<BigInt>> {
    box_lattice_points(p)
        .into_iter()
        .filter(|x| !x.iter().all(Zero::is_zero))
        .filter(|x| p.facets().iter().all(|f| f.slack_int(x).is_positive()))
        .collect()
}

fn random_points(rng: &mut ChaCha8Rng, dim: usize, count: usize, bound: i64) -> Vec<Vec<BigInt>> {
    (0..count)
        .map(|_| (0..dim).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect())
        .collect()
}

/// A lattice polytope with the origin in its interior, spanned by random points of `[-bound, bound]^dim`.
pub fn random_polytope_with_origin(rng: &mut ChaCha8Rng, dim: usize, bound: i64) -> RationalPolytope {
    loop {
        let count = rng.gen_range(dim + 1..=dim + 5);
        let pts = random_points(rng, dim, count, bound);
        if let Ok(p) = RationalPolytope::hull_of_integers(&pts) {
            if p.is_full_dimensional() && p.has_origin_interior() {
                return p;
            }
        }
    }
}

/// A canonical polytope: inside `[-1,1]^dim` every nonzero lattice point is on the cube's boundary,
/// hence never interior; larger boxes are filtered by the box scan.
pub fn random_canonical_polytope(rng: &mut ChaCha8Rng, dim: usize) -> RationalPolytope {
    loop {
        let bound = if rng.gen_bool(0.7) { 1 } else { 2 };
        let p = random_polytope_with_origin(rng, dim, bound);
        if bound == 1 || box_extra_interior_points(&p).is_empty() {
            return p;
        }
    }
}

/// Random transposition data of rank 2..=4 with at most 8 monomials and 8 rays, and a random
/// group lattice between the monomial lattice and `M`.
pub fn random_bhk_datum(rng: &mut ChaCha8Rng) -> BhkDatum {
    loop {
        let dim = rng.gen_range(2..=4);
        let mut rays: Vec<Vec<BigInt>> = (0..dim)
            .map(|i| (0..dim).map(|k| BigInt::from(i64::from(i == k))).collect())
            .collect();
        let extra = rng.gen_range(1..=8 - dim);
        rays.extend(random_points(rng, dim, extra, 1));
        let Ok(fan) = RationalPolytope::hull_of_integers(&rays) else { continue };
        if !fan.is_full_dimensional() || !fan.has_origin_interior() || fan.vertices().len() > 8 {
            continue;
        }
        let Ok(theta) = fan.polar() else { continue };
        let mut candidates = theta.boundary_lattice_points();
        if candidates.len() < dim + 1 {
            continue;
        }
        candidates.shuffle(rng);
        let take = rng.gen_range(dim + 1..=candidates.len().min(8));
        let Ok(d1) = RationalPolytope::hull_of_integers(&candidates[..take]) else { continue };
        if !d1.is_full_dimensional() || !d1.has_origin_interior() || d1.vertices().len() > 8 {
            continue;
        }
        let Ok(gp) = good_pair(d1, theta) else { continue };
        let Ok(bd) = BhkDatum::from_good_pair(&gp) else { continue };
        let Ok(lattices) = bd.intermediate_lattices(DEFAULT_INDEX_CAP) else { continue };
        let m_g = lattices.choose(rng).unwrap().clone();
        if let Ok(g) = bd.with_group(m_g) {
            return g;
        }
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn ratvec(v: &[i64]) -> RatVector {
    RatVector::from_ints(v)
}

/// Cases run and failure descriptions of a randomized suite.
pub struct SuiteResult {
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Smith diagonal against the gcd-of-minors invariant factors.
pub fn snf_suite(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = rng(seed);
    let mut failures = Vec::new();
    for _ in 0..cases {
        let r = rng.gen_range(1..=4);
        let c = rng.gen_range(1..=4);
        let m = random_matrix(&mut rng, r, c, 6);
        let got = toricy::linalg::smith_diagonal(&m);
        let want = invariant_factors_by_minors(&m);
        if got != want {
            failures.push(format!("{m:?}: snf {got:?}, minors {want:?}"));
        }
    }
    SuiteResult { cases, failures }
}

/// Enumerated lattice points against the bounding-box scan, on random rational polytopes.
pub fn lattice_points_suite(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = rng(seed);
    let mut failures = Vec::new();
    let mut done = 0;
    while done < cases {
        let dim = rng.gen_range(1..=4);
        let count = rng.gen_range(1..=dim + 4);
        let pts: Vec<RatVector> = (0..count)
            .map(|_| {
                let d = rng.gen_range(1..=3);
                RatVector(
                    (0..dim)
                        .map(|_| BigRational::new(rng.gen_range(-7..=7).into(), BigInt::from(d)))
                        .collect(),
                )
            })
            .collect();
        let Ok(p) = RationalPolytope::hull(&pts) else { continue };
        done += 1;
        let mut got = p.lattice_points().to_vec();
        got.sort();
        let want = box_lattice_points(&p);
        if got != want {
            failures.push(format!("{pts:?}: {} points, box scan {}", got.len(), want.len()));
        }
    }
    SuiteResult { cases, failures }
}

/// Polar of the polar is the polytope itself, and the polar of a lattice polytope with the origin
/// inside has no nonzero interior lattice point.
pub fn polar_suite(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = rng(seed);
    let mut failures = Vec::new();
    for _ in 0..cases {
        let dim = rng.gen_range(1..=4);
        let p = random_canonical_polytope(&mut rng, dim);
        let polar = p.polar().unwrap();
        if polar.polar().unwrap() != p {
            failures.push(format!("double polar differs for {p:?}"));
        }
        let extra = box_extra_interior_points(&polar);
        if !extra.is_empty() {
            failures.push(format!("polar of {p:?} has interior point {:?}", extra[0]));
        }
        if polar.classify().is_canonical != polar.is_lattice_polytope() {
            failures.push(format!("canonical flag of the polar of {p:?}"));
        }
    }
    SuiteResult { cases, failures }
}

fn counts(p: &RationalPolytope) -> (usize, usize) {
    (p.vertices().len(), box_lattice_points(p).len())
}

/// Transposing twice is the identity, the transposed matrix is `A^T`, and the transposed pair is
/// the polar pair: exactly in ambient coordinates, and by vertex and lattice point counts.
pub fn transpose_suite(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = rng(seed);
    let mut failures = Vec::new();
    for case in 0..cases {
        let bd = random_bhk_datum(&mut rng);
        let mut fail = |msg: &str| failures.push(format!("case {case}: {msg}\n{}", bd.a_matrix()));
        let Ok(t) = bd.transpose() else {
            fail("transpose failed");
            continue;
        };
        if t.a_matrix() != &bd.a_matrix().transpose() {
            fail("matrix is not transposed");
        }
        match t.transpose() {
            Ok(tt) if tt == bd => {}
            _ => fail("transposing twice changes the data"),
        }
        match toricy::bhk::check_transpose(&bd) {
            Ok(c) if c.holds() => {}
            _ => fail("transposed pair is not the polar pair"),
        }
        let (Ok(lhs), Ok(pair)) = (t.bhk_pair(), bd.bhk_pair()) else {
            fail("no pair");
            continue;
        };
        let rhs = pair.polar_pair();
        if counts(lhs.delta1()) != counts(rhs.delta1()) || counts(lhs.delta2()) != counts(rhs.delta2()) {
            fail("vertex or lattice point counts differ");
        }
    }
    SuiteResult { cases, failures }
}
