//! Hodge numbers of Calabi-Yau threefolds in toric varieties of four-dimensional reflexive polytopes.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::goodpair::GoodPair;
use crate::polytope::RationalPolytope;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct HodgePair {
    pub h11: i64,
    pub h21: i64,
}

impl HodgePair {
    pub fn swap(self) -> Self {
        Self {
            h11: self.h21,
            h21: self.h11,
        }
    }
}

impl fmt::Display for HodgePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.h11, self.h21)
    }
}

/// `l(P) − 5 − Σ_facets l*(F) + Σ_{2-faces} l*(F)·l*(F̂)` where `F̂` is the dual edge in the polar.
fn deformation_count(p: &RationalPolytope, polar: &RationalPolytope) -> Result<i64> {
    let lattice = p.face_lattice()?;
    let counts = p.relint_counts()?;
    let polar_lattice = polar.face_lattice()?;
    let polar_counts = polar.relint_counts()?;
    let dim = p.dim() as isize;
    let facet_interior: usize = counts[dim as usize].iter().sum();
    let mut correction = 0usize;
    for (i, &c) in counts[(dim - 1) as usize].iter().enumerate() {
        if c == 0 {
            continue;
        }
        let dual = lattice
            .dual_face(dim - 2, i)
            .ok_or_else(|| Error::Internal("face duality needs the origin inside".into()))?;
        let j = polar_lattice
            .faces(1)
            .iter()
            .position(|f| f.as_slice() == dual)
            .ok_or_else(|| Error::Internal("dual face missing from the polar".into()))?;
        correction += c * polar_counts[2][j];
    }
    let total = p.lattice_points().len();
    Ok(total as i64 - 5 - facet_interior as i64 + correction as i64)
}

/// `(h^{1,1}, h^{2,1})` of a crepant resolution of the general anticanonical hypersurface of the
/// toric variety whose anticanonical polytope is `delta`.
pub fn batyrev_hodge(delta: &RationalPolytope) -> Result<HodgePair> {
    if delta.dim() != 4 {
        return Err(Error::Unsupported(format!(
            "Hodge numbers are implemented in rank 4, got rank {}",
            delta.dim()
        )));
    }
    let flags = delta.classify();
    if !flags.is_reflexive {
        return Err(Error::NotCanonical("polytope is not reflexive".into()));
    }
    let polar = delta.polar()?;
    let h21 = deformation_count(delta, &polar)?;
    let h11 = deformation_count(&polar, delta)?;
    Ok(HodgePair { h11, h21 })
}

/// Hodge numbers of the general member of the pair's family, which match those of the full
/// anticanonical family of `delta1` when both polytopes are reflexive.
pub fn pair_hodge(gp: &GoodPair) -> Result<HodgePair> {
    if !gp.delta2().classify().is_reflexive {
        return Err(Error::NotCanonical("second polytope is not reflexive".into()));
    }
    batyrev_hodge(gp.delta1())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct MirrorTest {
    pub passes: bool,
    pub family: HodgePair,
    pub dual_family: HodgePair,
}

/// Whether the pair's family and the family of the polar pair have mirrored Hodge numbers.
pub fn mirror_test(gp: &GoodPair) -> Result<MirrorTest> {
    let family = pair_hodge(gp)?;
    let dual_family = pair_hodge(&gp.polar_pair())?;
    let passes = family == dual_family.swap();
    let same = batyrev_hodge(gp.delta1())? == batyrev_hodge(gp.delta2())?;
    if passes != same {
        return Err(Error::Internal(
            "mirror verdict disagrees with comparing the two polytopes".into(),
        ));
    }
    Ok(MirrorTest {
        passes,
        family,
        dual_family,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::goodpair::good_pair;

    fn small_simplex() -> RationalPolytope {
        RationalPolytope::from_int_vertices(&[
            &[1, 0, 0, 0],
            &[0, 1, 0, 0],
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
            &[-1, -1, -1, -1],
        ])
        .unwrap()
    }

    #[test]
    fn quintic_and_its_mirror() {
        let small = small_simplex();
        assert_eq!(batyrev_hodge(&small).unwrap(), HodgePair { h11: 101, h21: 1 });
        let big = small.polar().unwrap();
        assert_eq!(big.lattice_points().len(), 126);
        assert_eq!(batyrev_hodge(&big).unwrap(), HodgePair { h11: 1, h21: 101 });
    }

    #[test]
    fn failing_mirror_pair() {
        let d2 = RationalPolytope::from_int_vertices(&[
            &[1, 0, 0, 0],
            &[0, 1, 0, 0],
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
            &[-1, -1, -1, -1],
            &[1, 1, 1, 1],
            &[0, 0, 0, -1],
        ])
        .unwrap();
        let gp = good_pair(small_simplex(), d2.clone()).unwrap();
        let t = mirror_test(&gp).unwrap();
        assert_eq!(t.family, HodgePair { h11: 101, h21: 1 });
        assert_eq!(t.dual_family, HodgePair { h11: 3, h21: 79 });
        assert!(!t.passes);
        assert_eq!(batyrev_hodge(&d2.polar().unwrap()).unwrap(), HodgePair { h11: 3, h21: 79 });
    }

    #[test]
    fn rejects_other_ranks() {
        let tri = RationalPolytope::from_int_vertices(&[&[1, 0], &[0, 1], &[-1, -1]]).unwrap();
        assert!(matches!(batyrev_hodge(&tri), Err(Error::Unsupported(_))));
    }
}
