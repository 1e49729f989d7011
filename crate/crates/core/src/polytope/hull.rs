//! Exact beneath-beyond convex hull of integer points in general position or not.
//!
//! Every facet keeps the complete set of input points lying on it, which makes
//! ridge detection and vertex extraction purely combinatorial apart from one
//! affine-rank test per candidate ridge.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

/// Integer arithmetic the hull and slicing code are generic over.
pub(crate) trait Exact: Clone + Ord + Signed + Integer + Debug + Send + Sync + 'static {
    fn from_big(x: &BigInt) -> Self;
    fn to_big(&self) -> BigInt;
}

impl Exact for i128 {
    fn from_big(x: &BigInt) -> Self {
        x.to_i128().expect("magnitude checked by caller")
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Exact for BigInt {
    fn from_big(x: &BigInt) -> Self {
        x.clone()
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// log2 of the largest magnitude among the given integers.
pub(crate) fn max_bits<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> u64 {
    xs.into_iter().map(|x| x.bits()).max().unwrap_or(0)
}

/// Whether hull computations on points with `bits`-bit coordinates in dimension `k` stay inside i128.
fn hull_fits_i128(bits: u64, k: usize) -> bool {
    let k = k as f64;
    // k-minors of coordinate differences, by Hadamard
    let minor = k * (bits as f64 + 1.0 + 0.5 * k.log2());
    // rank elimination multiplies two minors; new normals multiply a value and a normal
    2.0 * minor + k.log2() + 4.0 < 120.0
}

#[derive(Clone, Debug)]
pub(crate) struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Self(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
    fn or_assign(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            (0..64)
                .filter(move |b| word >> b & 1 == 1)
                .map(move |b| w * 64 + b)
        })
    }
}

/// Incremental echelon basis used for rank tests.
struct Echelon<T> {
    rows: Vec<(usize, Vec<T>)>,
}

impl<T: Exact> Echelon<T> {
    fn new() -> Self {
        Self { rows: Vec::new() }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` if it is independent of the current rows; reports whether it was.
    fn insert(&mut self, mut v: Vec<T>) -> bool {
        for (pc, b) in &self.rows {
            if v[*pc].is_zero() {
                continue;
            }
            let bp = b[*pc].clone();
            let vp = v[*pc].clone();
            for (x, y) in v.iter_mut().zip(b) {
                *x = x.clone() * bp.clone() - vp.clone() * y.clone();
            }
            let g = v.iter().fold(T::zero(), |g, x| g.gcd(x));
            if !g.is_zero() && !g.is_one() {
                for x in v.iter_mut() {
                    *x = x.clone() / g.clone();
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(pc) => {
                self.rows.push((pc, v));
                true
            }
            None => false,
        }
    }
}

fn diff<T: Exact>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

fn dot<T: Exact>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

fn determinant<T: Exact>(mut a: Vec<Vec<T>>) -> T {
    let n = a.len();
    if n == 0 {
        return T::one();
    }
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone())
                    / prev.clone();
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Normal to the hyperplane spanned by `k - 1` difference vectors in dimension `k`.
fn cross<T: Exact>(diffs: &[Vec<T>], k: usize) -> Vec<T> {
    (0..k)
        .map(|j| {
            let minor: Vec<Vec<T>> = diffs
                .iter()
                .map(|d| {
                    d.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let det = determinant(minor);
            if j % 2 == 0 {
                det
            } else {
                -det
            }
        })
        .collect()
}

fn make_primitive<T: Exact>(n: &mut [T]) -> T {
    let g = n.iter().fold(T::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in n.iter_mut() {
            *x = x.clone() / g.clone();
        }
    }
    g
}

struct Facet<T> {
    normal: Vec<T>,
    offset: T,
    points: Bits,
}

/// Hull of distinct, affinely spanning integer points in `Z^k`.
pub(crate) struct HullOutput {
    pub vertices: Vec<usize>,
    /// (primitive inward normal, offset, indices of input points on the facet)
    pub facets: Vec<(Vec<BigInt>, BigInt, Vec<usize>)>,
}

pub(crate) fn full_dimensional_hull(points: &[Vec<BigInt>], k: usize) -> HullOutput {
    let bits = max_bits(points.iter().flatten());
    if hull_fits_i128(bits, k) {
        let pts: Vec<Vec<i128>> = points
            .iter()
            .map(|p| p.iter().map(i128::from_big).collect())
            .collect();
        run(&pts, k)
    } else {
        run(points, k)
    }
}

fn run<T: Exact>(pts: &[Vec<T>], k: usize) -> HullOutput {
    let m = pts.len();
    let to_out = |f: &Facet<T>| {
        (
            f.normal.iter().map(Exact::to_big).collect::<Vec<_>>(),
            f.offset.to_big(),
            f.points.iter().collect::<Vec<_>>(),
        )
    };
    if k == 1 {
        let lo = (0..m).min_by(|&a, &b| pts[a][0].cmp(&pts[b][0])).unwrap();
        let hi = (0..m).max_by(|&a, &b| pts[a][0].cmp(&pts[b][0])).unwrap();
        let mut vertices = vec![lo, hi];
        vertices.sort_unstable();
        let f_lo = Facet {
            normal: vec![T::one()],
            offset: pts[lo][0].clone(),
            points: single(m, lo),
        };
        let f_hi = Facet {
            normal: vec![-T::one()],
            offset: -pts[hi][0].clone(),
            points: single(m, hi),
        };
        return HullOutput {
            vertices,
            facets: vec![to_out(&f_lo), to_out(&f_hi)],
        };
    }

    // initial simplex
    let mut simplex = vec![0];
    let mut ech: Echelon<T> = Echelon::new();
    for i in 1..m {
        if simplex.len() == k + 1 {
            break;
        }
        if ech.insert(diff(&pts[i], &pts[0])) {
            simplex.push(i);
        }
    }
    assert_eq!(simplex.len(), k + 1, "points must affinely span Z^k");
    // (k+1) times an interior point
    let center: Vec<T> = (0..k)
        .map(|c| simplex.iter().fold(T::zero(), |acc, &i| acc + pts[i][c].clone()))
        .collect();
    let kp1 = T::from_big(&BigInt::from(k + 1));

    let mut facets: Vec<Facet<T>> = Vec::new();
    for omit in 0..=k {
        let on: Vec<usize> = simplex
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != omit)
            .map(|(_, &i)| i)
            .collect();
        let diffs: Vec<Vec<T>> = on[1..].iter().map(|&i| diff(&pts[i], &pts[on[0]])).collect();
        let mut normal = cross(&diffs, k);
        make_primitive(&mut normal);
        let mut offset = dot(&normal, &pts[on[0]]);
        if dot(&normal, &center) < offset.clone() * kp1.clone() {
            normal = normal.into_iter().map(|x| -x).collect();
            offset = -offset;
        }
        let mut points = Bits::new(m);
        for &i in &on {
            points.set(i);
        }
        facets.push(Facet {
            normal,
            offset,
            points,
        });
    }

    let in_simplex = {
        let mut b = Bits::new(m);
        for &i in &simplex {
            b.set(i);
        }
        b
    };
    for p in 0..m {
        if in_simplex.get(p) {
            continue;
        }
        let vals: Vec<T> = facets
            .iter()
            .map(|f| dot(&f.normal, &pts[p]) - f.offset.clone())
            .collect();
        if vals.iter().all(|v| !v.is_negative()) {
            for (f, v) in facets.iter_mut().zip(&vals) {
                if v.is_zero() {
                    f.points.set(p);
                }
            }
            continue;
        }
        let mut created: Vec<Facet<T>> = Vec::new();
        for (fi, f) in facets.iter().enumerate() {
            if !vals[fi].is_negative() {
                continue;
            }
            for (gi, g) in facets.iter().enumerate() {
                if !vals[gi].is_positive() {
                    continue;
                }
                let ridge = f.points.and(&g.points);
                if ridge.count() < k - 1 {
                    continue;
                }
                let idx: Vec<usize> = ridge.iter().collect();
                if !spans_at_least(pts, &idx, k - 2) {
                    continue;
                }
                let (vf, vg) = (vals[fi].clone(), vals[gi].clone());
                let mut normal: Vec<T> = f
                    .normal
                    .iter()
                    .zip(&g.normal)
                    .map(|(a, b)| vg.clone() * a.clone() - vf.clone() * b.clone())
                    .collect();
                make_primitive(&mut normal);
                let offset = dot(&normal, &pts[p]);
                let mut points = ridge;
                points.set(p);
                match created.iter_mut().find(|c| c.normal == normal) {
                    Some(c) => c.points.or_assign(&points),
                    None => created.push(Facet {
                        normal,
                        offset,
                        points,
                    }),
                }
            }
        }
        let mut kept: Vec<Facet<T>> = Vec::with_capacity(facets.len() + created.len());
        for (f, v) in facets.into_iter().zip(&vals) {
            if v.is_negative() {
                continue;
            }
            let mut f = f;
            if v.is_zero() {
                f.points.set(p);
            }
            kept.push(f);
        }
        kept.extend(created);
        facets = kept;
    }

    // a point is a vertex iff the facets through it meet only in that point
    let mut vertices = Vec::new();
    let mut meet: Vec<Option<Bits>> = vec![None; m];
    for f in &facets {
        for i in f.points.iter() {
            meet[i] = Some(match meet[i].take() {
                None => f.points.clone(),
                Some(b) => b.and(&f.points),
            });
        }
    }
    for (i, b) in meet.iter().enumerate() {
        if let Some(b) = b {
            if b.count() == 1 {
                vertices.push(i);
            }
        }
    }
    HullOutput {
        vertices,
        facets: facets.iter().map(to_out).collect(),
    }
}

fn single(m: usize, i: usize) -> Bits {
    let mut b = Bits::new(m);
    b.set(i);
    b
}

fn spans_at_least<T: Exact>(pts: &[Vec<T>], idx: &[usize], target: usize) -> bool {
    if target == 0 {
        return !idx.is_empty();
    }
    let mut e: Echelon<T> = Echelon::new();
    for &i in &idx[1..] {
        if e.insert(diff(&pts[i], &pts[idx[0]])) && e.rank() >= target {
            return true;
        }
    }
    false
}
