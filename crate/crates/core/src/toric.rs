//! Toric varieties given by the face fan of a canonical polytope, and weighted projective spaces.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{
    dot, gcd_all, hnf, is_primitive, snf, solve_rational, AbelianGroupStructure, IntMatrix,
    RatLattice, RatVector,
};
use crate::polytope::RationalPolytope;

/// Positive integer weights, stored in descending order, with every `(n-1)`-subset coprime.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct WeightSystem {
    weights: Vec<u64>,
}

impl WeightSystem {
    pub fn new(weights: &[u64]) -> Result<Self> {
        let invalid = |reason: &str| Error::InvalidWeights {
            weights: weights.to_vec(),
            reason: reason.into(),
        };
        if weights.len() < 2 {
            return Err(invalid("need at least two weights"));
        }
        if weights.contains(&0) {
            return Err(invalid("weights must be positive"));
        }
        if !is_normalized(weights) {
            return Err(invalid("some weights-minus-one subset has a common factor"));
        }
        let mut w = weights.to_vec();
        w.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { weights: w })
    }

    /// Weights in stored (descending) order.
    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn ascending(&self) -> Vec<u64> {
        self.weights.iter().rev().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `Σ w_i`, the degree of the anticanonical class.
    pub fn degree(&self) -> u64 {
        self.weights.iter().sum()
    }

    /// `w_i | Σw` for all `i`: the anticanonical polytope is a lattice polytope.
    pub fn is_gorenstein(&self) -> bool {
        let d = self.degree();
        self.weights.iter().all(|w| d % w == 0)
    }
}

/// Overall gcd 1 and every subset omitting one weight coprime.
pub fn is_normalized(w: &[u64]) -> bool {
    (0..w.len()).all(|skip| {
        w.iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .fold(0u64, |g, (_, &x)| g.gcd(&x))
            == 1
    })
}

/// Shown in ascending order, e.g. `(1,1,1,3,4)`.
impl fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.ascending().iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl std::str::FromStr for WeightSystem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let w = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|e| Error::Parse(format!("weight {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&w)
    }
}

impl Serialize for WeightSystem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.ascending().serialize(s)
    }
}

/// A complete toric variety whose fan is the face fan of `conv(rays)`.
#[derive(Clone, Debug)]
pub struct ToricVarietyData {
    rank: usize,
    rays: Vec<Vec<BigInt>>,
    p_matrix: IntMatrix,
    grading: IntMatrix,
    torsion_grading: Vec<(BigInt, Vec<BigInt>)>,
    class_group: AbelianGroupStructure,
    fan_polytope: RationalPolytope,
    unchecked: bool,
}

impl PartialEq for ToricVarietyData {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.rays == other.rays
    }
}

impl ToricVarietyData {
    /// Builds the variety from primitive rays whose convex hull contains the origin in its interior.
    pub fn from_rays(rays: &[Vec<BigInt>]) -> Result<Self> {
        let first = rays.first().ok_or(Error::EmptyInput)?;
        let rank = first.len();
        for (i, r) in rays.iter().enumerate() {
            if r.len() != rank {
                return Err(Error::MixedDimension(rank, r.len()));
            }
            if r.iter().all(Zero::is_zero) {
                return Err(Error::ZeroVector);
            }
            if !is_primitive(r) {
                return Err(Error::ImprimitiveRay {
                    index: i,
                    reason: format!("gcd of {r:?} exceeds 1"),
                });
            }
        }
        let fan_polytope = RationalPolytope::hull_of_integers(rays)?;
        if !fan_polytope.has_origin_interior() {
            return Err(Error::Unbounded);
        }
        let p_matrix = IntMatrix::from_rows(rays, rank)?;
        let (grading, torsion_grading, class_group) = grading_of(&p_matrix);
        Ok(Self {
            rank,
            rays: rays.to_vec(),
            p_matrix,
            grading,
            torsion_grading,
            class_group,
            fan_polytope,
            unchecked: false,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    /// Rows are the rays.
    pub fn p_matrix(&self) -> &IntMatrix {
        &self.p_matrix
    }

    /// Free part of the Cox grading: one row per free generator of the class group, one column per ray.
    pub fn grading(&self) -> &IntMatrix {
        &self.grading
    }

    /// Torsion part of the grading as `(modulus, row)` pairs.
    pub fn torsion_grading(&self) -> &[(BigInt, Vec<BigInt>)] {
        &self.torsion_grading
    }

    pub fn class_group(&self) -> &AbelianGroupStructure {
        &self.class_group
    }

    /// `conv(rays)`.
    pub fn fan_polytope(&self) -> &RationalPolytope {
        &self.fan_polytope
    }

    /// True when built through the unchecked escape hatch (fan polytope not verified canonical).
    pub fn is_unchecked(&self) -> bool {
        self.unchecked
    }

    /// Canonical singularities: the fan polytope is canonical.
    pub fn has_canonical_singularities(&self) -> bool {
        self.fan_polytope.classify().is_canonical
    }

    /// `{u : ⟨u, n_i⟩ ≥ -1 for all rays}`.
    pub fn anticanonical_polytope(&self) -> Result<RationalPolytope> {
        self.fan_polytope.polar()
    }

    /// Exponent vector `(⟨u, n_i⟩ + 1)_i` of the monomial attached to `u`.
    pub fn monomial_exponents(&self, u: &[BigInt]) -> Result<Vec<BigInt>> {
        if u.len() != self.rank {
            return Err(Error::MixedDimension(self.rank, u.len()));
        }
        let e: Vec<BigInt> = self.rays.iter().map(|n| dot(u, n) + 1).collect();
        if e.iter().any(Signed::is_negative) {
            return Err(Error::OutsideTheta(RatVector::from(u.to_vec())));
        }
        Ok(e)
    }

    /// Inverse of [`Self::monomial_exponents`]: the lattice point with the given exponents, if any.
    pub fn point_from_exponents(&self, exponents: &[BigInt]) -> Option<Vec<BigInt>> {
        if exponents.len() != self.rays.len() {
            return None;
        }
        let b = RatVector::from(exponents.iter().map(|e| e - 1).collect::<Vec<_>>());
        solve_rational(&self.p_matrix, &b)?.to_integers()
    }

    /// Degree of a monomial under the free grading.
    pub fn degree_of(&self, exponents: &[BigInt]) -> Vec<BigInt> {
        self.grading.mul_vec(exponents)
    }

    /// Quotient by `N'/N` for a superlattice `N' ⊇ N` in which every ray stays primitive.
    ///
    /// Returns the variety with rays in coordinates of the Hermite basis of `N'`, and the group `N'/N`.
    pub fn finite_quotient(&self, n_prime: &RatLattice) -> Result<(Self, AbelianGroupStructure)> {
        let standard = RatLattice::standard(self.rank);
        if n_prime.dim() != self.rank || !standard.is_sublattice_of(n_prime) {
            return Err(Error::InvalidFamily(
                "superlattice must contain the ray lattice".into(),
            ));
        }
        let group = n_prime.quotient_structure(&standard)?;
        let mut rays = Vec::with_capacity(self.rays.len());
        for (i, n) in self.rays.iter().enumerate() {
            let c = n_prime
                .coordinates(&RatVector::from(n.clone()))
                .and_then(|c| c.to_integers())
                .ok_or_else(|| Error::Internal("ray outside superlattice".into()))?;
            if !is_primitive(&c) {
                return Err(Error::ImprimitiveRay {
                    index: i,
                    reason: format!("divisible by {} in the superlattice", gcd_all(&c)),
                });
            }
            rays.push(c);
        }
        Ok((Self::from_rays(&rays)?, group))
    }

    /// Where the torus-invariant stratum `D_I` sits relative to the general member with Newton polytope `delta`.
    pub fn stratum_status(&self, delta: &RationalPolytope, i_set: &[usize]) -> Result<StratumStatus> {
        if i_set.is_empty() || i_set.iter().any(|&i| i >= self.rays.len()) {
            return Err(Error::InvalidFamily(format!("bad ray index set {i_set:?}")));
        }
        let theta = self.anticanonical_polytope()?;
        if let Some(v) = theta.first_vertex_outside(delta) {
            return Err(Error::NotContained(v));
        }
        let selected: Vec<&Vec<BigInt>> = i_set.iter().map(|&i| &self.rays[i]).collect();
        let in_common_facet = |q: &RationalPolytope| {
            q.facets()
                .iter()
                .any(|f| selected.iter().all(|n| f.slack_int(n).is_zero()))
        };
        let mut sorted = i_set.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let status = if !in_common_facet(&self.fan_polytope) {
            Stratum::Empty
        } else if !in_common_facet(&delta.polar()?) {
            Stratum::ContainedInGeneralMember
        } else {
            Stratum::MeetsGeneralMember
        };
        Ok(StratumStatus {
            index_set: sorted,
            status,
        })
    }
}

impl Serialize for ToricVarietyData {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ToricVarietyData", 5)?;
        st.serialize_field("rank", &self.rank)?;
        let rays: Vec<Vec<String>> = self
            .rays
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        st.serialize_field("rays", &rays)?;
        st.serialize_field("grading", &self.grading)?;
        let torsion: Vec<(String, Vec<String>)> = self
            .torsion_grading
            .iter()
            .map(|(m, r)| (m.to_string(), r.iter().map(ToString::to_string).collect()))
            .collect();
        st.serialize_field("torsion_grading", &torsion)?;
        st.serialize_field("class_group", &self.class_group)?;
        st.end()
    }
}

/// Grading from the Smith form of `P`: rows of `U` for zero and missing diagonal entries give the free
/// part, rows for entries `d > 1` the torsion part modulo `d`.
fn grading_of(p: &IntMatrix) -> (IntMatrix, Vec<(BigInt, Vec<BigInt>)>, AbelianGroupStructure) {
    let (s, u, _) = snf(p);
    let r = p.rows();
    let n = p.cols();
    let mut free_rows = Vec::new();
    let mut torsion = Vec::new();
    for i in 0..r {
        let d = if i < n { s[(i, i)].clone() } else { BigInt::zero() };
        if d.is_zero() {
            free_rows.push(u.row(i).to_vec());
        } else if !d.is_one() {
            let row = u.row(i).iter().map(|x| x.mod_floor(&d)).collect();
            torsion.push((d, row));
        }
    }
    let free = IntMatrix::from_rows(&free_rows, r).expect("rectangular");
    let grading = hnf(&free).0;
    let structure = AbelianGroupStructure::from_orders(
        free_rows.len(),
        &torsion.iter().map(|(d, _)| d.clone()).collect::<Vec<_>>(),
    );
    (grading, torsion, structure)
}

/// Weighted projective space `P(w)`: `N = Z^n / Z·w`, rays the images of the standard basis.
pub fn wps(w: &WeightSystem) -> Result<ToricVarietyData> {
    let n = w.len();
    let column = IntMatrix::from_rows(
        &w.weights().iter().map(|&x| vec![BigInt::from(x)]).collect::<Vec<_>>(),
        1,
    )?;
    let (_, u, _) = snf(&column);
    // rows 1.. of u annihilate w and give coordinates on Z^n / Z·w
    let proj = u.select_rows(&(1..n).collect::<Vec<_>>());
    let rays: Vec<Vec<BigInt>> = (0..n).map(|j| proj.column(j)).collect();
    ToricVarietyData::from_rays(&rays)
}

/// Variety whose anticanonical polytope is `delta2`; the polar must be canonical.
pub fn variety_from_polytope(delta2: &RationalPolytope) -> Result<ToricVarietyData> {
    let polar = delta2.polar()?;
    let flags = polar.classify();
    if !flags.is_canonical {
        let reason = match (&flags.non_lattice_vertex, &flags.extra_interior_point) {
            (Some(v), _) => format!("polar has non-lattice vertex {v}"),
            (_, Some(x)) => format!("polar has interior lattice point {x}"),
            _ => "polar is not canonical".into(),
        };
        return Err(Error::NotCanonical(reason));
    }
    let rays = polar.integer_vertices().expect("lattice polytope");
    ToricVarietyData::from_rays(&rays)
}

/// Escape hatch: builds the face fan of the polar even when it is not canonical.
///
/// The polar still has to be a lattice polytope with primitive vertices. The result is flagged
/// by [`ToricVarietyData::is_unchecked`].
pub fn variety_from_polytope_unchecked(delta2: &RationalPolytope) -> Result<ToricVarietyData> {
    let polar = delta2.polar()?;
    let rays = polar
        .integer_vertices()
        .ok_or_else(|| Error::NotCanonical("polar is not a lattice polytope".into()))?;
    let mut x = ToricVarietyData::from_rays(&rays)?;
    x.unchecked = true;
    Ok(x)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stratum {
    Empty,
    ContainedInGeneralMember,
    MeetsGeneralMember,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct StratumStatus {
    pub index_set: Vec<usize>,
    pub status: Stratum,
}

/// Index of the ray equal to `v`, if present.
pub fn ray_index(x: &ToricVarietyData, v: &[BigInt]) -> Option<usize> {
    x.rays.iter().position(|r| r.as_slice() == v)
}
