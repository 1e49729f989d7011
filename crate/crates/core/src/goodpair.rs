//! Nested pairs of polytopes whose polar pairs define dual families of Calabi-Yau hypersurfaces.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, GoodPairFailure, Result};
use crate::linalg::{RatLattice, RatVector};
use crate::polytope::RationalPolytope;
use crate::toric::{variety_from_polytope, ToricVarietyData};

/// `delta1 ⊆ delta2` with `delta1` and the polar of `delta2` canonical.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct GoodPair {
    delta1: RationalPolytope,
    delta2: RationalPolytope,
}

/// Validates `(d1, d2)`, reporting the first failing clause with a witness.
///
/// A lattice polytope with the origin in its interior and a polar that is again such a
/// polytope is canonical on both sides, so the extra-interior-point check can only fire
/// through a bug; it is kept as a consistency guard.
pub fn good_pair(d1: RationalPolytope, d2: RationalPolytope) -> Result<GoodPair> {
    if d1.dim() != d2.dim() {
        return Err(GoodPairFailure::RankMismatch(d1.dim(), d2.dim()).into());
    }
    if let Some(v) = d1.vertices().iter().find(|v| !v.is_integral()) {
        return Err(GoodPairFailure::NonLatticeVertex(v.clone()).into());
    }
    if !d1.has_origin_interior() {
        return Err(GoodPairFailure::OriginNotInterior.into());
    }
    if !d2.has_origin_interior() {
        return Err(GoodPairFailure::PolarOriginNotInterior.into());
    }
    if let Some(v) = d2.first_vertex_outside(&d1) {
        return Err(GoodPairFailure::NotContained(v).into());
    }
    let polar = d2.polar()?;
    if let Some(v) = polar.vertices().iter().find(|v| !v.is_integral()) {
        return Err(GoodPairFailure::PolarNonLatticeVertex(v.clone()).into());
    }
    if let Some(x) = d1.classify().extra_interior_point {
        return Err(GoodPairFailure::ExtraInteriorPoint(x).into());
    }
    Ok(GoodPair {
        delta1: d1,
        delta2: d2,
    })
}

impl GoodPair {
    pub fn delta1(&self) -> &RationalPolytope {
        &self.delta1
    }

    pub fn delta2(&self) -> &RationalPolytope {
        &self.delta2
    }

    pub fn dim(&self) -> usize {
        self.delta1.dim()
    }

    /// The pair rewritten in coordinates of a full-rank lattice `m_prime` (re-validated there).
    pub fn in_sublattice(&self, m_prime: &RatLattice) -> Result<GoodPair> {
        if !m_prime.is_full_rank() || m_prime.dim() != self.dim() {
            return Err(Error::RankDeficient {
                expected: self.dim(),
                found: m_prime.rank(),
            });
        }
        let coords = |p: &RationalPolytope| -> Result<RationalPolytope> {
            let pts: Vec<RatVector> = p
                .vertices()
                .iter()
                .map(|v| m_prime.coordinates(v).expect("full-rank lattice"))
                .collect();
            RationalPolytope::hull(&pts)
        };
        good_pair(coords(&self.delta1)?, coords(&self.delta2)?)
    }

    /// `(polar(delta2), polar(delta1))`, again a good pair.
    pub fn polar_pair(&self) -> GoodPair {
        GoodPair {
            delta1: self.delta2.polar().expect("origin interior"),
            delta2: self.delta1.polar().expect("origin interior"),
        }
    }

    /// `delta1 = delta2`: both are reflexive and the family is the full anticanonical system.
    pub fn is_batyrev_case(&self) -> bool {
        self.delta1 == self.delta2
    }

    /// The family with Newton polytope `delta1` in the variety of `delta2`, and its dual.
    pub fn families(&self) -> Result<(FamilyDescription, FamilyDescription)> {
        let primal = FamilyDescription::new(&self.delta1, &self.delta2, false)?;
        let dual_pair = self.polar_pair();
        let dual = FamilyDescription::new(&dual_pair.delta1, &dual_pair.delta2, true)?;
        Ok((primal, dual))
    }
}

pub fn polar_pair(gp: &GoodPair) -> GoodPair {
    gp.polar_pair()
}

pub fn families(gp: &GoodPair) -> Result<(FamilyDescription, FamilyDescription)> {
    gp.families()
}

pub fn is_batyrev_case(gp: &GoodPair) -> bool {
    gp.is_batyrev_case()
}

/// Whether the dual families of two pairs sharing `delta2` are spanned by the same monomials on
/// the same torus, which makes them birational.
pub fn shared_ambient_duals_agree(gp1: &GoodPair, gp2: &GoodPair) -> Result<bool> {
    if gp1.delta2 != gp2.delta2 {
        return Err(Error::DifferentAmbient);
    }
    let (_, d1) = gp1.families()?;
    let (_, d2) = gp2.families()?;
    Ok(d1.support == d2.support)
}

/// Hypersurfaces of `ambient` spanned by the monomials `support`.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyDescription {
    pub ambient: ToricVarietyData,
    #[serde(serialize_with = "crate::linalg::serialize_points")]
    pub support: Vec<Vec<BigInt>>,
    /// Family living on the polar side.
    pub dual: bool,
    /// Newton polytope canonical, so the general member is a Calabi-Yau variety.
    pub calabi_yau: bool,
}

impl FamilyDescription {
    fn new(newton: &RationalPolytope, anticanonical: &RationalPolytope, dual: bool) -> Result<Self> {
        let ambient = variety_from_polytope(anticanonical)?;
        Ok(Self {
            ambient,
            support: newton.lattice_points().to_vec(),
            dual,
            calabi_yau: newton.classify().is_canonical,
        })
    }
}
