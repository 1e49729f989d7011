use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::RationalPolytope;
use crate::linalg::{is_primitive, RatVector};

/// Reflexive / canonical / Q-Fano status of a polytope, with a witness for each failure.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ClassificationFlags {
    pub is_lattice: bool,
    pub has_origin_interior: bool,
    pub is_canonical: bool,
    pub is_reflexive: bool,
    pub is_qfano: bool,
    pub non_lattice_vertex: Option<RatVector>,
    /// A nonzero interior lattice point.
    pub extra_interior_point: Option<RatVector>,
    pub non_primitive_vertex: Option<RatVector>,
    pub non_lattice_polar_vertex: Option<RatVector>,
}

pub(super) fn classify(p: &RationalPolytope) -> ClassificationFlags {
    let non_lattice_vertex = p.vertices().iter().find(|v| !v.is_integral()).cloned();
    let is_lattice = non_lattice_vertex.is_none();
    let has_origin_interior = p.has_origin_interior();

    let mut flags = ClassificationFlags {
        is_lattice,
        has_origin_interior,
        is_canonical: false,
        is_reflexive: false,
        is_qfano: false,
        non_lattice_vertex,
        extra_interior_point: None,
        non_primitive_vertex: None,
        non_lattice_polar_vertex: None,
    };
    if !is_lattice || !has_origin_interior {
        return flags;
    }

    flags.non_primitive_vertex = p
        .vertices()
        .iter()
        .find(|v| !is_primitive(&v.to_integers().expect("lattice vertex")))
        .cloned();
    flags.is_qfano = flags.non_primitive_vertex.is_none();

    flags.extra_interior_point = p
        .lattice_points()
        .iter()
        .find(|x| {
            !x.iter().all(BigInt::is_zero)
                && p.facets().iter().all(|f| f.slack_int(x).is_positive())
        })
        .map(|x| RatVector::from(x.clone()));
    flags.is_canonical = flags.extra_interior_point.is_none();

    // the polar's vertices are normal / (-offset); all are integral iff every offset is -1
    flags.non_lattice_polar_vertex = p
        .facets()
        .iter()
        .find(|f| f.offset != -BigRational::from_integer(1.into()))
        .map(|f| {
            let s = -f.offset.recip();
            RatVector(
                f.normal
                    .iter()
                    .map(|c| BigRational::from_integer(c.clone()) * &s)
                    .collect(),
            )
        });
    flags.is_reflexive = flags.non_lattice_polar_vertex.is_none();

    assert!(
        !flags.is_reflexive || flags.is_canonical,
        "reflexive polytope with an extra interior point"
    );
    assert!(
        !flags.is_canonical || flags.is_qfano,
        "canonical polytope with an imprimitive vertex"
    );
    flags
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_is_reflexive() {
        let sq = RationalPolytope::from_int_vertices(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]])
            .unwrap();
        let c = sq.classify();
        assert!(c.is_reflexive && c.is_canonical && c.is_qfano);
    }

    #[test]
    fn witnesses() {
        let wide = RationalPolytope::from_int_vertices(&[&[2, 0], &[-2, 0], &[0, 1], &[0, -1]])
            .unwrap();
        let c = wide.classify();
        assert!(!c.is_canonical && !c.is_reflexive && !c.is_qfano);
        assert!(c.extra_interior_point.is_some());
        assert!(c.non_primitive_vertex.is_some());

        let off = RationalPolytope::from_int_vertices(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        assert!(!off.classify().has_origin_interior);
    }
}
