//! Regularity of the general member of a linear system of anticanonical hypersurfaces.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{gcd_all, RatVector};
use crate::polytope::RationalPolytope;
use crate::toric::{ToricVarietyData, WeightSystem};

/// A family of hypersurfaces in `ambient` spanned by the monomials of `support`.
#[derive(Clone, Debug)]
pub struct FamilyDatum {
    ambient: ToricVarietyData,
    newton: RationalPolytope,
    support: Vec<Vec<BigInt>>,
}

impl FamilyDatum {
    /// Family with full support `newton ∩ M`.
    pub fn new(ambient: ToricVarietyData, newton: RationalPolytope) -> Result<Self> {
        let support = newton.lattice_points().to_vec();
        Self::with_support(ambient, newton, support)
    }

    /// Family with the given support, whose hull must be `newton`.
    pub fn with_support(
        ambient: ToricVarietyData,
        newton: RationalPolytope,
        support: Vec<Vec<BigInt>>,
    ) -> Result<Self> {
        if newton.dim() != ambient.rank() {
            return Err(Error::MixedDimension(ambient.rank(), newton.dim()));
        }
        if let Some(v) = newton.vertices().iter().find(|v| !v.is_integral()) {
            return Err(Error::InvalidFamily(format!("newton polytope has non-lattice vertex {v}")));
        }
        if !newton.has_origin_interior() {
            return Err(Error::InvalidFamily(
                "origin is not interior to the newton polytope".into(),
            ));
        }
        let theta = ambient.anticanonical_polytope()?;
        if let Some(v) = theta.first_vertex_outside(&newton) {
            return Err(Error::NotContained(v));
        }
        if RationalPolytope::hull_of_integers(&support)? != newton {
            return Err(Error::InvalidFamily(
                "support does not span the newton polytope".into(),
            ));
        }
        Ok(Self {
            ambient,
            newton,
            support,
        })
    }

    /// Family spanned by `support`, with the newton polytope taken as its hull.
    pub fn from_support(ambient: ToricVarietyData, support: Vec<Vec<BigInt>>) -> Result<Self> {
        let newton = RationalPolytope::hull_of_integers(&support)?;
        Self::with_support(ambient, newton, support)
    }

    pub fn ambient(&self) -> &ToricVarietyData {
        &self.ambient
    }

    pub fn newton(&self) -> &RationalPolytope {
        &self.newton
    }

    pub fn support(&self) -> &[Vec<BigInt>] {
        &self.support
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Normality {
    Yes,
    Unknown,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Clause {
    /// The open segment between the two rays contains a lattice point.
    LatticePointOnSegment,
    /// The sum of the two rays is interior to the polar of the newton polytope.
    SumInterior,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct OffendingPair {
    pub i: usize,
    pub j: usize,
    pub clause: Clause,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct RegularityReport {
    pub irreducible: bool,
    pub well_formed: bool,
    pub normal_sufficient: Normality,
    pub canonical_newton: bool,
    /// Nonzero interior lattice points of the polar of the newton polytope.
    pub conjectural_witnesses: Vec<RatVector>,
    pub offending_pairs: Vec<OffendingPair>,
    /// Rays in the interior of the polar of the newton polytope.
    pub interior_rays: Vec<usize>,
}

impl RegularityReport {
    /// Irreducible, well-formed and normal by the sufficient criterion.
    pub fn all_positive(&self) -> bool {
        self.irreducible && self.well_formed && self.normal_sufficient == Normality::Yes
    }
}

pub fn regularity_report(fd: &FamilyDatum) -> Result<RegularityReport> {
    let rays = fd.ambient.rays();
    let newton = &fd.newton;
    let newton_polar = newton.polar()?;
    let fan = fd.ambient.fan_polytope();
    let minus_one = -BigRational::one();

    let interior_rays: Vec<usize> = (0..rays.len())
        .filter(|&i| newton.support_value(&rays[i]) > minus_one)
        .collect();

    let share_facet = |q: &RationalPolytope, a: &[BigInt], b: &[BigInt]| {
        q.facets()
            .iter()
            .any(|f| f.slack_int(a).is_zero() && f.slack_int(b).is_zero())
    };
    let mut offending_pairs = Vec::new();
    let mut well_formed = true;
    let mut normal = Normality::Yes;
    for i in 0..rays.len() {
        for j in i + 1..rays.len() {
            if !share_facet(fan, &rays[i], &rays[j]) || share_facet(&newton_polar, &rays[i], &rays[j])
            {
                continue;
            }
            let diff: Vec<BigInt> = rays[i].iter().zip(&rays[j]).map(|(a, b)| a - b).collect();
            if !gcd_all(&diff).is_one() {
                well_formed = false;
                offending_pairs.push(OffendingPair {
                    i,
                    j,
                    clause: Clause::LatticePointOnSegment,
                });
            }
            let sum: Vec<BigInt> = rays[i].iter().zip(&rays[j]).map(|(a, b)| a + b).collect();
            if newton.support_value(&sum) > minus_one {
                normal = Normality::Unknown;
                offending_pairs.push(OffendingPair {
                    i,
                    j,
                    clause: Clause::SumInterior,
                });
            }
        }
    }
    let conjectural_witnesses = newton_polar
        .interior_lattice_points()
        .into_iter()
        .filter(|x| !x.iter().all(Zero::is_zero))
        .map(RatVector::from)
        .collect();
    Ok(RegularityReport {
        irreducible: interior_rays.is_empty(),
        well_formed,
        normal_sufficient: normal,
        canonical_newton: newton.classify().is_canonical,
        conjectural_witnesses,
        offending_pairs,
        interior_rays,
    })
}

/// Discrepancy `-1 - min_{u ∈ Δ} ⟨u, n⟩` of the divisor with ray `n`.
pub fn discrepancy(fd: &FamilyDatum, n: &[BigInt]) -> Result<BigRational> {
    if n.iter().all(Zero::is_zero) {
        return Err(Error::ZeroVector);
    }
    Ok(-BigRational::one() - fd.newton.support_value(n))
}

/// Nonzero lattice points of the polar of the newton polytope.
pub fn crepant_rays(fd: &FamilyDatum) -> Result<Vec<Vec<BigInt>>> {
    let polar = fd.newton.polar()?;
    Ok(polar
        .lattice_points()
        .iter()
        .filter(|x| !x.iter().all(Zero::is_zero))
        .cloned()
        .collect())
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Quasismoothness {
    pub quasismooth: bool,
    /// Variable indices (in the weight system's stored order) of a violating subset.
    pub witness: Option<Vec<usize>>,
}

/// General-member quasismoothness in `P(w)` for the family spanned by `support` (exponent vectors
/// in the stored weight order).
///
/// For every nonempty set `I` of variables, either a support monomial lives on `I` alone, or at least
/// `|I|` distinct variables `e ∉ I` each appear linearly in a monomial `x_I^m · x_e` of the support.
pub fn quasismooth_general_wps(w: &WeightSystem, support: &[Vec<u64>]) -> Result<Quasismoothness> {
    let n = w.len();
    if n > 63 {
        return Err(Error::Unsupported("more than 63 variables".into()));
    }
    let first = support.first().ok_or(Error::EmptyInput)?;
    let degree = |a: &[u64]| -> u64 { a.iter().zip(w.weights()).map(|(x, y)| x * y).sum() };
    let d = degree(first);
    for a in support {
        if a.len() != n {
            return Err(Error::MixedDimension(n, a.len()));
        }
        let da = degree(a);
        if da != d {
            return Err(Error::MixedDegree(d, da));
        }
    }
    let masks: Vec<u64> = support
        .iter()
        .map(|a| {
            a.iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .fold(0u64, |m, (i, _)| m | 1 << i)
        })
        .collect();
    // for each variable e: supports (without e) of monomials linear in x_e
    let linear: Vec<Vec<u64>> = (0..n)
        .map(|e| {
            support
                .iter()
                .zip(&masks)
                .filter(|(a, _)| a[e] == 1)
                .map(|(_, &m)| m & !(1 << e))
                .collect()
        })
        .collect();
    for set in 1u64..(1 << n) {
        if masks.iter().any(|&m| m & !set == 0) {
            continue;
        }
        let size = set.count_ones() as usize;
        let escapes = (0..n)
            .filter(|&e| set >> e & 1 == 0)
            .filter(|&e| linear[e].iter().any(|&m| m & !set == 0))
            .count();
        if escapes < size {
            return Ok(Quasismoothness {
                quasismooth: false,
                witness: Some((0..n).filter(|&i| set >> i & 1 == 1).collect()),
            });
        }
    }
    Ok(Quasismoothness {
        quasismooth: true,
        witness: None,
    })
}

/// All exponent vectors of weighted degree `d` (in the stored weight order), lexicographically.
pub fn monomials_of_degree(w: &WeightSystem, d: u64) -> Vec<Vec<u64>> {
    fn go(ws: &[u64], d: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        let i = cur.len();
        if i == ws.len() {
            if d == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if i + 1 == ws.len() {
            if d % ws[i] == 0 {
                cur.push(d / ws[i]);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        for k in 0..=d / ws[i] {
            cur.push(k);
            go(ws, d - k * ws[i], cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(w.weights(), d, &mut Vec::new(), &mut out);
    out
}

/// Well-formedness of a general degree-`Σw` hypersurface: the gcd of the weights omitting any two divides `Σw`.
pub fn wellformed_wps_gcd(w: &WeightSystem) -> bool {
    let ws = w.weights();
    let d = w.degree();
    let n = ws.len();
    for i in 0..n {
        for j in i + 1..n {
            let g = ws
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i && k != j)
                .fold(0u64, |g, (_, &x)| g.gcd(&x));
            if g != 0 && d % g != 0 {
                return false;
            }
        }
    }
    true
}

/// Exponent vector of a lattice point of the anticanonical polytope as machine integers.
pub fn exponents_u64(x: &ToricVarietyData, u: &[BigInt]) -> Result<Vec<u64>> {
    x.monomial_exponents(u)?
        .iter()
        .map(|e| {
            u64::try_from(e).map_err(|_| Error::Internal(format!("exponent {e} out of range")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ints;
    use crate::toric::wps;

    fn ws(w: &[u64]) -> WeightSystem {
        WeightSystem::new(w).unwrap()
    }

    fn full_support(w: &WeightSystem) -> Vec<Vec<u64>> {
        monomials_of_degree(w, w.degree())
    }

    #[test]
    fn quasismooth_examples() {
        let r = ws(&[1, 1, 1, 3, 4]);
        let q = quasismooth_general_wps(&r, &full_support(&r)).unwrap();
        assert!(!q.quasismooth);
        // the weight-4 variable sits first in stored order
        assert_eq!(q.witness, Some(vec![0]));
        let q2 = ws(&[1, 1, 1, 1, 1, 2]);
        assert!(quasismooth_general_wps(&q2, &full_support(&q2)).unwrap().quasismooth);
        let p2 = ws(&[1, 1, 1]);
        assert!(quasismooth_general_wps(&p2, &full_support(&p2)).unwrap().quasismooth);
        assert!(matches!(
            quasismooth_general_wps(&p2, &[vec![3, 0, 0], vec![1, 0, 0]]),
            Err(Error::MixedDegree(3, 1))
        ));
    }

    #[test]
    fn wellformed_examples() {
        assert!(wellformed_wps_gcd(&ws(&[1, 1, 1, 1, 1, 2])));
        assert!(wellformed_wps_gcd(&ws(&[1, 1, 2, 2])));
        assert!(wellformed_wps_gcd(&ws(&[1, 1, 1])));
        assert!(!wellformed_wps_gcd(&ws(&[1, 1, 3, 3, 3])));
    }

    #[test]
    fn monomial_counts() {
        let w = ws(&[1, 1, 1, 1, 1, 2]);
        let m = monomials_of_degree(&w, 7);
        let x = wps(&w).unwrap();
        assert_eq!(m.len(), x.anticanonical_polytope().unwrap().lattice_points().len());
    }

    #[test]
    fn plane_with_cross_newton() {
        let x = ToricVarietyData::from_rays(&[ints(&[1, 0]), ints(&[0, 1]), ints(&[-1, -1])]).unwrap();
        let cross = RationalPolytope::from_int_vertices(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]])
            .unwrap();
        let fd = FamilyDatum::new(x.clone(), cross).unwrap();
        assert_eq!(crepant_rays(&fd).unwrap().len(), 8);
        let rep = regularity_report(&fd).unwrap();
        assert!(rep.canonical_newton && rep.all_positive());

        let theta = x.anticanonical_polytope().unwrap();
        let fd = FamilyDatum::new(x, theta).unwrap();
        let rep = regularity_report(&fd).unwrap();
        assert!(rep.all_positive() && rep.conjectural_witnesses.is_empty());
        assert!(rep.offending_pairs.is_empty());
    }

    #[test]
    fn quintic_discrepancies() {
        let simplex = RationalPolytope::from_int_vertices(&[
            &[1, 0, 0, 0],
            &[0, 1, 0, 0],
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
            &[-1, -1, -1, -1],
        ])
        .unwrap();
        let newton = simplex.polar().unwrap();
        let x = ToricVarietyData::from_rays(&simplex.integer_vertices().unwrap()).unwrap();
        let fd = FamilyDatum::new(x, newton.clone()).unwrap();
        assert_eq!(
            discrepancy(&fd, &ints(&[1, 1, 1, 1])).unwrap(),
            BigRational::from_integer(3.into())
        );
        assert_eq!(crepant_rays(&fd).unwrap().len(), 5);
        assert!(discrepancy(&fd, &ints(&[0, 0, 0, 0])).is_err());

        let big = newton.polar().unwrap();
        assert_eq!(big, simplex);
    }
}
