//! Classification of weighted projective spaces by the polytope of their anticanonical system.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypersurface::{monomials_of_degree, quasismooth_general_wps};
use crate::linalg::{hnf, IntMatrix};
use crate::polytope::RationalPolytope;
use crate::toric::{is_normalized, wps, ToricVarietyData, WeightSystem};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum Bucket {
    /// The anticanonical polytope itself is reflexive.
    F,
    /// The hull of its lattice points is reflexive (and the polytope is not).
    R,
    /// Quasismooth, hull not reflexive.
    Q,
    /// Hull canonical, neither reflexive nor quasismooth.
    C,
    Other,
}

impl fmt::Display for Bucket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Bucket::F => "F",
            Bucket::R => "R",
            Bucket::Q => "Q",
            Bucket::C => "C",
            Bucket::Other => "other",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SurveyRecord {
    pub weights: WeightSystem,
    /// Anticanonical polytope reflexive.
    pub f: bool,
    /// Hull of its lattice points reflexive.
    pub r: bool,
    /// Hull of its lattice points canonical.
    pub c: bool,
    /// General anticanonical hypersurface quasismooth.
    pub q: bool,
    pub bucket: Bucket,
    pub theta_points: usize,
    pub hull_vertices: usize,
    /// Weights of a variable set violating quasismoothness.
    pub quasismooth_witness: Option<Vec<u64>>,
}

/// Non-decreasing `(dim + 1)`-tuples with entries in `1..=max_w` that are normalized, in lexicographic order.
pub fn enumerate_normalized_weights(dim: usize, max_w: u64) -> Vec<WeightSystem> {
    fn go(n: usize, lo: u64, max_w: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == n {
            if is_normalized(cur) {
                out.push(cur.clone());
            }
            return;
        }
        for w in lo..=max_w {
            cur.push(w);
            go(n, w, max_w, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if dim == 0 || max_w == 0 {
        return Vec::new();
    }
    go(dim + 1, 1, max_w, &mut Vec::new(), &mut out);
    out.iter()
        .map(|w| WeightSystem::new(w).expect("normalized by construction"))
        .collect()
}

/// Integer left inverse `L` of the ray matrix (`L · P = I`), which exists when the class group is free.
fn left_inverse(x: &ToricVarietyData) -> Result<IntMatrix> {
    let p = x.p_matrix();
    let (h, u) = hnf(p);
    let n = p.cols();
    let top = h.select_rows(&(0..n).collect::<Vec<_>>());
    if top != IntMatrix::identity(n) {
        return Err(Error::TorsionClassGroup(x.class_group().to_string()));
    }
    Ok(u.select_rows(&(0..n).collect::<Vec<_>>()))
}

/// A monomial cannot be a vertex of the hull when it is the midpoint of two other monomials of
/// the same degree obtained by trading `x_i` against `x_j`.
fn possibly_vertex(a: &[u64], w: &[u64]) -> bool {
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            let g = w[i].gcd(&w[j]);
            if a[i] >= w[j] / g && a[j] >= w[i] / g {
                return false;
            }
        }
    }
    true
}

/// The anticanonical monomials of `P(w)` as lattice points, with their exponent vectors.
pub fn anticanonical_points(w: &WeightSystem) -> Result<(ToricVarietyData, Vec<Vec<u64>>, Vec<Vec<BigInt>>)> {
    let x = wps(w)?;
    let l = left_inverse(&x)?;
    let exps = monomials_of_degree(w, w.degree());
    let points = exps
        .iter()
        .map(|a| {
            let shifted: Vec<BigInt> = a.iter().map(|&e| BigInt::from(e) - 1).collect();
            l.mul_vec(&shifted)
        })
        .collect();
    Ok((x, exps, points))
}

/// Hull of the lattice points of the anticanonical polytope, with its lattice points pre-seeded.
pub fn lattice_hull_of_theta(w: &WeightSystem) -> Result<RationalPolytope> {
    let (_, exps, points) = anticanonical_points(w)?;
    theta_bar(w, &exps, &points)
}

fn theta_bar(w: &WeightSystem, exps: &[Vec<u64>], points: &[Vec<BigInt>]) -> Result<RationalPolytope> {
    let candidates: Vec<Vec<BigInt>> = exps
        .iter()
        .zip(points)
        .filter(|(a, _)| possibly_vertex(a, w.weights()))
        .map(|(_, p)| p.clone())
        .collect();
    let hull = RationalPolytope::hull_of_integers(&candidates)?;
    let mut sorted = points.to_vec();
    sorted.sort();
    hull.seed_lattice_points(sorted);
    Ok(hull)
}

/// Canonical and reflexive flags of a lattice polytope, using machine integers when they fit.
fn canonical_and_reflexive(p: &RationalPolytope) -> (bool, bool) {
    if !p.has_origin_interior() {
        return (false, false);
    }
    let reflexive = p.facets().iter().all(|f| f.offset == -num_rational::BigRational::from_integer(1.into()));
    let facets: Option<Vec<(Vec<i64>, i64)>> = p
        .facets()
        .iter()
        .map(|f| {
            let n: Option<Vec<i64>> = f.normal.iter().map(ToPrimitive::to_i64).collect();
            Some((n?, f.offset.to_integer().to_i64()?))
        })
        .collect();
    let points: Option<Vec<Vec<i64>>> = p
        .lattice_points()
        .iter()
        .map(|x| x.iter().map(ToPrimitive::to_i64).collect())
        .collect();
    let canonical = match (facets, points) {
        (Some(fs), Some(ps)) => !ps.iter().any(|x| {
            x.iter().any(|c| *c != 0)
                && fs
                    .iter()
                    .all(|(n, off)| n.iter().zip(x).map(|(a, b)| a * b).sum::<i64>() > *off)
        }),
        _ => p.classify().is_canonical,
    };
    (canonical, reflexive)
}

pub fn classify_weight_system(w: &WeightSystem) -> Result<SurveyRecord> {
    let (_, exps, points) = anticanonical_points(w)?;
    let f = w.is_gorenstein();
    let hull = theta_bar(w, &exps, &points)?;
    let (c, r) = if hull.is_full_dimensional() {
        canonical_and_reflexive(&hull)
    } else {
        (false, false)
    };
    let qs = quasismooth_general_wps(w, &exps)?;
    let q = qs.quasismooth;
    let bucket = if f {
        Bucket::F
    } else if r {
        Bucket::R
    } else if q {
        Bucket::Q
    } else if c {
        Bucket::C
    } else {
        Bucket::Other
    };
    let record = SurveyRecord {
        weights: w.clone(),
        f,
        r,
        c,
        q,
        bucket,
        theta_points: points.len(),
        hull_vertices: hull.vertices().len(),
        quasismooth_witness: qs
            .witness
            .map(|idx| idx.iter().map(|&i| w.weights()[i]).collect()),
    };
    check_record(&record)?;
    Ok(record)
}

fn check_record(r: &SurveyRecord) -> Result<()> {
    let fail = |what: &str| Err(Error::Internal(format!("{}: {what}", r.weights)));
    if r.f && !r.r {
        return fail("reflexive anticanonical polytope but non-reflexive lattice hull");
    }
    if r.r && !r.c {
        return fail("reflexive but not canonical");
    }
    if r.q && !r.c {
        return fail("quasismooth but the lattice hull is not canonical");
    }
    Ok(())
}

/// Classifies every normalized weight system; `jobs = Some(1)` runs serially.
pub fn survey(dim: usize, max_w: u64, jobs: Option<usize>) -> Result<Vec<SurveyRecord>> {
    let systems = enumerate_normalized_weights(dim, max_w);
    match jobs {
        Some(1) => systems.iter().map(classify_weight_system).collect(),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Internal(e.to_string()))?;
            pool.install(|| systems.par_iter().map(classify_weight_system).collect())
        }
        None => systems.par_iter().map(classify_weight_system).collect(),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Table1Row {
    pub bound: u64,
    pub f: usize,
    pub r: usize,
    pub q_not_r: usize,
    pub c_not_r_not_q: usize,
}

impl Table1Row {
    pub fn counts(&self) -> (usize, usize, usize, usize) {
        (self.f, self.r, self.q_not_r, self.c_not_r_not_q)
    }
}

/// Cumulative counts for each bound `1..=max_w` from records covering entries up to `max_w`.
pub fn table1_from_records(records: &[SurveyRecord], max_w: u64) -> Vec<Table1Row> {
    (1..=max_w)
        .map(|bound| {
            let within: Vec<&SurveyRecord> = records
                .iter()
                .filter(|r| r.weights.weights().iter().all(|&x| x <= bound))
                .collect();
            Table1Row {
                bound,
                f: within.iter().filter(|r| r.f).count(),
                r: within.iter().filter(|r| r.r).count(),
                q_not_r: within.iter().filter(|r| r.q && !r.r).count(),
                c_not_r_not_q: within.iter().filter(|r| r.c && !r.r && !r.q).count(),
            }
        })
        .collect()
}

/// Counts over five-dimensional weighted projective spaces with weights at most `max_w`.
pub fn table1(max_w: u64) -> Result<Vec<Table1Row>> {
    Ok(table1_from_records(&survey(5, max_w, None)?, max_w))
}

/// Five-dimensional weight systems with entries at most 4 whose lattice hull is canonical but
/// not reflexive, split into quasismooth and not quasismooth.
pub fn table2() -> Result<(Vec<WeightSystem>, Vec<WeightSystem>)> {
    let records = survey(5, 4, None)?;
    let pick = |q: bool| {
        records
            .iter()
            .filter(|r| r.c && !r.r && r.q == q)
            .map(|r| r.weights.clone())
            .collect()
    };
    Ok((pick(true), pick(false)))
}

pub const DEFAULT_CENSUS_BOUND: u64 = 50;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Census {
    pub bound: u64,
    /// `P(w)` has canonical singularities.
    pub canonical: usize,
    /// ... and the lattice hull is reflexive, canonical, and the general member quasismooth.
    pub reflexive_canonical_quasismooth: usize,
    /// ... and the anticanonical polytope is reflexive.
    pub fano: usize,
}

/// Whether `conv(rays)` of `P(w)` has the origin as its only interior lattice point.
///
/// Lattice points of `N = Z^n / Z·w` interior to the simplex correspond to `j ∈ 1..h` (with
/// `h = Σw`) such that no `j·w_i` is divisible by `h` and `Σ_i {j·w_i / h} = 1`; `j = 1` is the origin.
pub fn wps_is_canonical(w: &WeightSystem) -> bool {
    let h = w.degree();
    (2..h).all(|j| {
        let mut sum = 0u64;
        for &wi in w.weights() {
            let r = (j * wi) % h;
            if r == 0 {
                return true;
            }
            sum += r;
        }
        sum != h
    })
}

/// Census of three-dimensional weighted projective spaces with canonical singularities.
pub fn dim3_census(bound: u64) -> Result<Census> {
    let canonical: Vec<WeightSystem> = enumerate_normalized_weights(3, bound)
        .into_par_iter()
        .filter(wps_is_canonical)
        .collect();
    let records: Vec<SurveyRecord> = canonical
        .par_iter()
        .map(classify_weight_system)
        .collect::<Result<_>>()?;
    Ok(Census {
        bound,
        canonical: records.len(),
        reflexive_canonical_quasismooth: records.iter().filter(|r| r.r && r.c && r.q).count(),
        fano: records.iter().filter(|r| r.f).count(),
    })
}

/// CSV with columns `weights,F,R,C,Q,bucket,theta_points,hull_vertices`.
pub fn to_csv(records: &[SurveyRecord]) -> Result<String> {
    let mut wtr = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Internal(e.to_string());
    wtr.write_record(["weights", "F", "R", "C", "Q", "bucket", "theta_points", "hull_vertices"])
        .map_err(io)?;
    let b = |x: bool| if x { "1" } else { "0" };
    for r in records {
        let weights: Vec<String> = r.weights.ascending().iter().map(ToString::to_string).collect();
        wtr.write_record([
            weights.join(" "),
            b(r.f).into(),
            b(r.r).into(),
            b(r.c).into(),
            b(r.q).into(),
            r.bucket.to_string(),
            r.theta_points.to_string(),
            r.hull_vertices.to_string(),
        ])
        .map_err(io)?;
    }
    let bytes = wtr.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
}

/// Table rendered like the printed layout: bound, F, R, Q∧¬R, C∧¬R∧¬Q.
pub fn format_table1(rows: &[Table1Row]) -> String {
    let mut s = format!("{:>4} {:>6} {:>6} {:>6} {:>6}\n", "w≤", "F", "R", "Q", "C");
    for r in rows {
        s += &format!(
            "{:>4} {:>6} {:>6} {:>6} {:>6}\n",
            r.bound, r.f, r.r, r.q_not_r, r.c_not_r_not_q
        );
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ws(w: &[u64]) -> WeightSystem {
        WeightSystem::new(w).unwrap()
    }

    #[test]
    fn enumeration_small_cases() {
        let e = enumerate_normalized_weights(5, 1);
        assert_eq!(e, vec![ws(&[1, 1, 1, 1, 1, 1])]);
        let e = enumerate_normalized_weights(5, 2);
        assert_eq!(e.len(), 5);
        assert_eq!(enumerate_normalized_weights(2, 2), vec![ws(&[1, 1, 1]), ws(&[1, 1, 2])]);
    }

    #[test]
    fn worked_examples() {
        let r = classify_weight_system(&ws(&[1, 1, 1, 3, 4])).unwrap();
        assert!(r.r && !r.q);
        let q = classify_weight_system(&ws(&[1, 1, 1, 1, 1, 2])).unwrap();
        assert!(q.c && !q.r && q.q);
        let c = classify_weight_system(&ws(&[1, 1, 2, 3, 3, 3])).unwrap();
        assert!(c.c && !c.r && !c.q);
    }

    #[test]
    fn canonical_closed_form_matches_polytope() {
        for w in enumerate_normalized_weights(3, 7) {
            let x = wps(&w).unwrap();
            assert_eq!(
                wps_is_canonical(&w),
                x.fan_polytope().classify().is_canonical,
                "{w}"
            );
        }
    }

    #[test]
    fn first_table_rows() {
        let rows = table1(2).unwrap();
        assert_eq!(rows[0].counts(), (1, 1, 0, 0));
        assert_eq!(rows[1].counts(), (3, 4, 1, 0));
    }

    #[test]
    fn second_table() {
        let (q, not_q) = table2().unwrap();
        let mut expected_q: Vec<WeightSystem> = [
            [1, 1, 1, 1, 1, 2],
            [1, 2, 2, 2, 3, 4],
            [1, 1, 1, 1, 2, 3],
            [1, 1, 2, 2, 2, 3],
            [1, 2, 3, 3, 3, 3],
            [1, 1, 1, 3, 3, 4],
            [1, 2, 2, 3, 3, 4],
            [1, 1, 2, 2, 3, 4],
            [1, 1, 3, 3, 3, 4],
            [1, 2, 2, 3, 4, 4],
            [1, 1, 1, 2, 2, 3],
        ]
        .iter()
        .map(|w| ws(w))
        .collect();
        expected_q.sort_by_key(WeightSystem::ascending);
        assert_eq!(q, expected_q);
        let mut expected_not: Vec<WeightSystem> =
            [[1, 1, 2, 3, 3, 3], [1, 1, 2, 3, 3, 4], [1, 1, 1, 2, 3, 3]]
                .iter()
                .map(|w| ws(w))
                .collect();
        expected_not.sort_by_key(WeightSystem::ascending);
        assert_eq!(not_q, expected_not);
    }

    #[test]
    fn census_small_bound() {
        let c = dim3_census(1).unwrap();
        assert_eq!((c.canonical, c.reflexive_canonical_quasismooth, c.fano), (1, 1, 1));
    }
}
