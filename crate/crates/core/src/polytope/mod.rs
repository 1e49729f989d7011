//! Exact rational polytopes: hulls, polar duality, lattice points, faces and classification.

mod classify;
mod faces;
pub(crate) mod hull;
mod points;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dot, hnf, kernel_basis, parse_rational, primitive, IntMatrix, RatVector};

pub use classify::ClassificationFlags;
pub use faces::FaceLattice;
pub use points::lattice_points_by_box;

/// Half-space `⟨x, normal⟩ ≥ offset` (or hyperplane `=` when used as an equation).
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize)]
pub struct Facet {
    #[serde(serialize_with = "ser_ints")]
    pub normal: Vec<BigInt>,
    #[serde(serialize_with = "ser_rat")]
    pub offset: BigRational,
}

fn ser_ints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().serialize(s)
}

fn ser_rat<S: serde::Serializer>(v: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    v.to_string().serialize(s)
}

impl Facet {
    /// `⟨x, normal⟩ - offset`; nonnegative on the polytope.
    pub fn slack(&self, x: &RatVector) -> BigRational {
        x.dot_int(&self.normal) - &self.offset
    }

    pub fn slack_int(&self, x: &[BigInt]) -> BigRational {
        BigRational::from_integer(dot(&self.normal, x)) - &self.offset
    }
}

/// Convex hull of finitely many rational points, kept in both V- and H-representation.
///
/// Vertices are sorted lexicographically and facets by `(normal, offset)`; facet normals are
/// primitive integer covectors. Lower-dimensional polytopes also carry the equations of their
/// affine hull, and their facets are taken relative to it.
#[derive(Clone, Debug)]
pub struct RationalPolytope {
    dim: usize,
    affine_dim: usize,
    vertices: Vec<RatVector>,
    facets: Vec<Facet>,
    equations: Vec<Facet>,
    incidence: Vec<Vec<usize>>,
    points: OnceLock<Vec<Vec<BigInt>>>,
    faces: OnceLock<FaceLattice>,
}

impl PartialEq for RationalPolytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }
}

impl Eq for RationalPolytope {}

impl std::hash::Hash for RationalPolytope {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.dim.hash(state);
        self.vertices.hash(state);
    }
}

impl RationalPolytope {
    /// Convex hull of `points`.
    pub fn hull(points: &[RatVector]) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyInput)?;
        let n = first.len();
        if let Some(p) = points.iter().find(|p| p.len() != n) {
            return Err(Error::MixedDimension(n, p.len()));
        }
        let scale = points
            .iter()
            .fold(BigInt::one(), |acc, p| acc.lcm(&p.denominator_lcm()));
        let mut scaled: Vec<Vec<BigInt>> = points
            .iter()
            .map(|p| {
                p.0.iter()
                    .map(|x| (x * BigRational::from_integer(scale.clone())).to_integer())
                    .collect()
            })
            .collect();
        scaled.sort();
        scaled.dedup();
        hull_of_scaled(n, &scaled, &scale)
    }

    /// Hull of integer points.
    pub fn hull_of_integers(points: &[Vec<BigInt>]) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyInput)?;
        let n = first.len();
        if let Some(p) = points.iter().find(|p| p.len() != n) {
            return Err(Error::MixedDimension(n, p.len()));
        }
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        hull_of_scaled(n, &pts, &BigInt::one())
    }

    pub fn from_int_vertices(vertices: &[&[i64]]) -> Result<Self> {
        let pts: Vec<RatVector> = vertices.iter().map(|v| RatVector::from_ints(v)).collect();
        Self::hull(&pts)
    }

    /// Assembles a polytope from both representations and cross-checks them.
    fn from_parts(
        dim: usize,
        affine_dim: usize,
        mut vertices: Vec<RatVector>,
        mut facets: Vec<Facet>,
        equations: Vec<Facet>,
    ) -> Result<Self> {
        vertices.sort();
        facets.sort();
        let incidence: Vec<Vec<usize>> = facets
            .iter()
            .map(|f| {
                (0..vertices.len())
                    .filter(|&i| f.slack(&vertices[i]).is_zero())
                    .collect()
            })
            .collect();
        let p = Self {
            dim,
            affine_dim,
            vertices,
            facets,
            equations,
            incidence,
            points: OnceLock::new(),
            faces: OnceLock::new(),
        };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        for (f, inc) in self.facets.iter().zip(&self.incidence) {
            if self.vertices.iter().any(|v| f.slack(v).is_negative()) {
                return Err(Error::Internal(format!("vertex violates facet {:?}", f.normal)));
            }
            if inc.len() < self.affine_dim {
                return Err(Error::Internal(format!(
                    "facet {:?} is tight on only {} vertices",
                    f.normal,
                    inc.len()
                )));
            }
        }
        if self.affine_dim > 0 {
            for i in 0..self.vertices.len() {
                let tight = self.incidence.iter().filter(|inc| inc.contains(&i)).count();
                if tight < self.affine_dim {
                    return Err(Error::Internal(format!(
                        "vertex {} is tight on only {tight} facets",
                        self.vertices[i]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Ambient lattice rank.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the affine hull.
    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim == self.dim
    }

    pub fn vertices(&self) -> &[RatVector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Equations `⟨x, normal⟩ = offset` of the affine hull (empty when full-dimensional).
    pub fn equations(&self) -> &[Facet] {
        &self.equations
    }

    /// Vertex indices on each facet.
    pub fn facet_vertices(&self, facet: usize) -> &[usize] {
        &self.incidence[facet]
    }

    pub fn is_lattice_polytope(&self) -> bool {
        self.vertices.iter().all(RatVector::is_integral)
    }

    /// Integer vertices, if this is a lattice polytope.
    pub fn integer_vertices(&self) -> Option<Vec<Vec<BigInt>>> {
        self.vertices.iter().map(RatVector::to_integers).collect()
    }

    pub fn contains(&self, x: &RatVector) -> bool {
        x.len() == self.dim
            && self.equations.iter().all(|e| e.slack(x).is_zero())
            && self.facets.iter().all(|f| !f.slack(x).is_negative())
    }

    pub fn contains_integer(&self, x: &[BigInt]) -> bool {
        x.len() == self.dim
            && self.equations.iter().all(|e| e.slack_int(x).is_zero())
            && self.facets.iter().all(|f| !f.slack_int(x).is_negative())
    }

    /// Strictly inside every facet (relative interior).
    pub fn contains_in_interior(&self, x: &RatVector) -> bool {
        x.len() == self.dim
            && self.equations.iter().all(|e| e.slack(x).is_zero())
            && self.facets.iter().all(|f| f.slack(x).is_positive())
    }

    /// First vertex of `other` outside `self`, if any.
    pub fn first_vertex_outside(&self, other: &RationalPolytope) -> Option<RatVector> {
        other.vertices.iter().find(|v| !self.contains(v)).cloned()
    }

    pub fn contains_polytope(&self, other: &RationalPolytope) -> bool {
        self.first_vertex_outside(other).is_none()
    }

    /// `min over the polytope of ⟨x, y⟩`.
    pub fn support_value(&self, y: &[BigInt]) -> BigRational {
        self.vertices
            .iter()
            .map(|v| v.dot_int(y))
            .min()
            .expect("polytopes have a vertex")
    }

    /// Whether the origin lies in the interior (full-dimensional polytopes only).
    pub fn has_origin_interior(&self) -> bool {
        self.is_full_dimensional() && self.facets.iter().all(|f| f.offset.is_negative())
    }

    /// `{y : ⟨x, y⟩ ≥ -1 for all x in self}`.
    pub fn polar(&self) -> Result<Self> {
        if !self.is_full_dimensional() {
            return Err(Error::NotFullDimensional {
                affine: self.affine_dim,
                ambient: self.dim,
            });
        }
        if let Some(f) = self.facets.iter().find(|f| !f.offset.is_negative()) {
            return Err(Error::OriginNotInterior {
                normal: f.normal.iter().map(ToString::to_string).collect(),
            });
        }
        let vertices: Vec<RatVector> = self
            .facets
            .iter()
            .map(|f| {
                let s = -f.offset.recip();
                RatVector(
                    f.normal
                        .iter()
                        .map(|c| BigRational::from_integer(c.clone()) * &s)
                        .collect(),
                )
            })
            .collect();
        let facets: Vec<Facet> = self
            .vertices
            .iter()
            .map(|v| {
                let d = v.denominator_lcm();
                let scaled: Vec<BigInt> = v
                    .0
                    .iter()
                    .map(|x| (x * BigRational::from_integer(d.clone())).to_integer())
                    .collect();
                let normal = primitive(&scaled);
                // v = c * normal with c > 0, so ⟨normal, y⟩ ≥ -1/c
                let (i, _) = normal
                    .iter()
                    .enumerate()
                    .find(|(_, x)| !x.is_zero())
                    .expect("nonzero vertex");
                let c = &v.0[i] / BigRational::from_integer(normal[i].clone());
                Facet {
                    normal,
                    offset: -c.recip(),
                }
            })
            .collect();
        Self::from_parts(self.dim, self.dim, vertices, facets, Vec::new())
    }

    /// Lattice points, sorted lexicographically.
    pub fn lattice_points(&self) -> &[Vec<BigInt>] {
        self.points.get_or_init(|| points::enumerate(self))
    }

    pub fn lattice_point_vectors(&self) -> Vec<RatVector> {
        self.lattice_points()
            .iter()
            .map(|p| RatVector::from(p.clone()))
            .collect()
    }

    /// Lattice points in the relative interior.
    pub fn interior_lattice_points(&self) -> Vec<Vec<BigInt>> {
        self.lattice_points()
            .iter()
            .filter(|p| self.facets.iter().all(|f| f.slack_int(p).is_positive()))
            .cloned()
            .collect()
    }

    /// Lattice points on the relative boundary.
    pub fn boundary_lattice_points(&self) -> Vec<Vec<BigInt>> {
        self.lattice_points()
            .iter()
            .filter(|p| self.facets.iter().any(|f| f.slack_int(p).is_zero()))
            .cloned()
            .collect()
    }

    pub(crate) fn seed_lattice_points(&self, pts: Vec<Vec<BigInt>>) {
        let _ = self.points.set(pts);
    }

    pub fn classify(&self) -> ClassificationFlags {
        classify::classify(self)
    }

    /// Face lattice of a full-dimensional polytope (cached).
    pub fn face_lattice(&self) -> Result<&FaceLattice> {
        if !self.is_full_dimensional() {
            return Err(Error::NotFullDimensional {
                affine: self.affine_dim,
                ambient: self.dim,
            });
        }
        Ok(self.faces.get_or_init(|| FaceLattice::build(self)))
    }

    /// Number of lattice points in the relative interior of a face, given by its vertex indices.
    pub fn relint_count(&self, face: &[usize]) -> Result<usize> {
        let lattice = self.face_lattice()?;
        let Some(face_dim) = lattice.dimension_of(face) else {
            return Err(Error::UnknownFace(face.to_vec()));
        };
        if face_dim < 0 {
            return Ok(0);
        }
        let containing: Vec<usize> = (0..self.facets.len())
            .filter(|&f| face.iter().all(|v| self.incidence[f].contains(v)))
            .collect();
        Ok(self
            .lattice_points()
            .iter()
            .filter(|p| {
                let tight: Vec<usize> = (0..self.facets.len())
                    .filter(|&f| self.facets[f].slack_int(p).is_zero())
                    .collect();
                tight == containing
            })
            .count())
    }

    /// Relative-interior lattice point counts of every face, keyed like [`FaceLattice::faces`].
    pub fn relint_counts(&self) -> Result<Vec<Vec<usize>>> {
        let lattice = self.face_lattice()?;
        let mut by_tight: std::collections::HashMap<Vec<usize>, usize> = Default::default();
        for p in self.lattice_points() {
            let tight: Vec<usize> = (0..self.facets.len())
                .filter(|&f| self.facets[f].slack_int(p).is_zero())
                .collect();
            *by_tight.entry(tight).or_default() += 1;
        }
        Ok((0..lattice.levels())
            .map(|level| {
                lattice.faces_at_level(level)
                    .iter()
                    .map(|face| {
                        if face.is_empty() {
                            return 0;
                        }
                        let containing: Vec<usize> = (0..self.facets.len())
                            .filter(|&f| face.iter().all(|v| self.incidence[f].contains(v)))
                            .collect();
                        by_tight.get(&containing).copied().unwrap_or(0)
                    })
                    .collect()
            })
            .collect())
    }

    /// Image of the polytope under `x ↦ f(x)` (a hull of the vertex images).
    pub fn map_vertices(&self, f: impl Fn(&RatVector) -> RatVector) -> Result<Self> {
        let images: Vec<RatVector> = self.vertices.iter().map(f).collect();
        Self::hull(&images)
    }

    /// Image under the linear map `x ↦ x · m` (row vector times matrix).
    pub fn transform(&self, m: &[Vec<BigRational>]) -> Result<Self> {
        self.map_vertices(|v| {
            let cols = m.first().map_or(0, Vec::len);
            RatVector(
                (0..cols)
                    .map(|j| {
                        v.0.iter()
                            .zip(m)
                            .fold(BigRational::zero(), |acc, (x, row)| acc + x * &row[j])
                    })
                    .collect(),
            )
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

fn hull_of_scaled(n: usize, pts: &[Vec<BigInt>], scale: &BigInt) -> Result<RationalPolytope> {
    let unscale = |v: &[BigInt]| {
        RatVector(
            v.iter()
                .map(|x| BigRational::new(x.clone(), scale.clone()))
                .collect(),
        )
    };
    let x0 = &pts[0];
    let diffs: Vec<Vec<BigInt>> = pts[1..]
        .iter()
        .map(|p| p.iter().zip(x0).map(|(a, b)| a - b).collect())
        .collect();
    let eq = kernel_basis(&IntMatrix::from_rows(&diffs, n)?);
    let k = n - eq.rows();
    let equations: Vec<Facet> = eq
        .row_iter()
        .map(|e| Facet {
            normal: e.to_vec(),
            offset: BigRational::new(dot(e, x0), scale.clone()),
        })
        .collect();
    if k == 0 {
        return RationalPolytope::from_parts(n, 0, vec![unscale(x0)], Vec::new(), equations);
    }
    let (coords, lift): (Vec<Vec<BigInt>>, Option<IntMatrix>) = if k == n {
        (pts.to_vec(), None)
    } else {
        let r = projection_onto_affine_hull(&eq)?;
        let ys = pts
            .iter()
            .map(|p| {
                let d: Vec<BigInt> = p.iter().zip(x0).map(|(a, b)| a - b).collect();
                r.mul_vec(&d)
            })
            .collect();
        (ys, Some(r))
    };
    let out = hull::full_dimensional_hull(&coords, k);
    let vertices: Vec<RatVector> = out.vertices.iter().map(|&i| unscale(&pts[i])).collect();
    let facets: Vec<Facet> = out
        .facets
        .into_iter()
        .map(|(c, off, _)| match &lift {
            None => Facet {
                normal: c,
                offset: BigRational::new(off, scale.clone()),
            },
            Some(r) => {
                let normal = r.transpose().mul_vec(&c);
                let off = off + dot(&normal, x0);
                Facet {
                    normal,
                    offset: BigRational::new(off, scale.clone()),
                }
            }
        })
        .collect();
    RationalPolytope::from_parts(n, k, vertices, facets, equations)
}

/// Integer `k × n` matrix `R` mapping the direction lattice of an affine hull isomorphically
/// onto `Z^k`, where the hull's equations are the rows of `eq`.
pub(crate) fn projection_onto_affine_hull(eq: &IntMatrix) -> Result<IntMatrix> {
    let b = kernel_basis(eq);
    let k = b.rows();
    let (_, u) = hnf(&b.transpose());
    let r = u.select_rows(&(0..k).collect::<Vec<_>>());
    debug_assert_eq!(r.mul(&b.transpose())?, IntMatrix::identity(k));
    Ok(r)
}

/// Text format: a line "dim count", then one vertex per line of space-separated rationals.
impl fmt::Display for RationalPolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.dim, self.vertices.len())?;
        for v in &self.vertices {
            let parts: Vec<String> = v.0.iter().map(ToString::to_string).collect();
            writeln!(f, "{}", parts.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for RationalPolytope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?;
        let mut h = header.split_whitespace().map(str::parse::<usize>);
        let (Some(Ok(dim)), Some(Ok(count)), None) = (h.next(), h.next(), h.next()) else {
            return Err(Error::Parse(format!("bad header {header:?}")));
        };
        let mut points = Vec::with_capacity(count);
        for line in lines {
            let coords = line
                .split_whitespace()
                .map(parse_rational)
                .collect::<Result<Vec<_>>>()?;
            if coords.len() != dim {
                return Err(Error::Parse(format!(
                    "expected {dim} coordinates, got {}",
                    coords.len()
                )));
            }
            points.push(RatVector(coords));
        }
        if points.len() != count {
            return Err(Error::Parse(format!(
                "header promises {count} points, found {}",
                points.len()
            )));
        }
        Self::hull(&points)
    }
}

#[derive(Serialize, Deserialize)]
struct PolytopeJson {
    dim: usize,
    vertices: Vec<RatVector>,
}

impl Serialize for RationalPolytope {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolytopeJson {
            dim: self.dim,
            vertices: self.vertices.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalPolytope {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PolytopeJson::deserialize(d)?;
        if let Some(v) = j.vertices.iter().find(|v| v.len() != j.dim) {
            return Err(serde::de::Error::custom(Error::MixedDimension(j.dim, v.len())));
        }
        Self::hull(&j.vertices).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ints;

    fn poly(v: &[&[i64]]) -> RationalPolytope {
        RationalPolytope::from_int_vertices(v).unwrap()
    }

    #[test]
    fn cross_has_four_facets() {
        let p = poly(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]);
        assert_eq!(p.facets().len(), 4);
        for f in p.facets() {
            assert_eq!(f.offset, BigRational::from_integer((-1).into()));
            assert!(f.normal.iter().all(|c| c.abs() == BigInt::one()));
        }
    }

    #[test]
    fn single_point_and_segment() {
        let p = poly(&[&[3, 4]]);
        assert_eq!(p.affine_dim(), 0);
        assert_eq!(p.lattice_points(), &[ints(&[3, 4])]);
        let s = poly(&[&[0, 0], &[2, 4], &[1, 2]]);
        assert_eq!(s.affine_dim(), 1);
        assert_eq!(s.vertices().len(), 2);
        assert_eq!(s.lattice_points().len(), 3);
        assert_eq!(s.interior_lattice_points(), vec![ints(&[1, 2])]);
    }

    #[test]
    fn degree_three_monomials_give_the_triangle() {
        let mut pts = Vec::new();
        for a in 0..=3i64 {
            for b in 0..=3 - a {
                pts.push(RatVector::from_ints(&[a - 1, b - 1]));
            }
        }
        let p = RationalPolytope::hull(&pts).unwrap();
        assert_eq!(
            p.vertices(),
            &[
                RatVector::from_ints(&[-1, -1]),
                RatVector::from_ints(&[-1, 2]),
                RatVector::from_ints(&[2, -1])
            ]
        );
    }

    #[test]
    fn polar_examples() {
        let cross = poly(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]);
        let square = poly(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]]);
        assert_eq!(cross.polar().unwrap(), square);
        assert_eq!(square.polar().unwrap(), cross);
        let tri = poly(&[&[2, -1], &[-1, 2], &[-1, -1]]);
        assert_eq!(
            tri.polar().unwrap(),
            poly(&[&[1, 0], &[0, 1], &[-1, -1]])
        );
        let off = poly(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert!(matches!(off.polar(), Err(Error::OriginNotInterior { .. })));
    }

    #[test]
    fn text_and_json_round_trip() {
        let p = RationalPolytope::hull(&[
            RatVector(vec![BigRational::new(1.into(), 2.into()), BigRational::zero()]),
            RatVector::from_ints(&[-1, 1]),
            RatVector::from_ints(&[-1, -1]),
        ])
        .unwrap();
        let text = p.to_string();
        assert_eq!(text.parse::<RationalPolytope>().unwrap(), p);
        let json = serde_json::to_string(&p).unwrap();
        assert!(json.contains("\"1/2\""));
        let back: RationalPolytope = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        assert!("2 2\n1 2".parse::<RationalPolytope>().is_err());
    }

    #[test]
    fn lower_dimensional_facets_live_in_the_affine_hull() {
        // triangle in the plane x + y + z = 1
        let p = poly(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, -1]]);
        assert_eq!(p.affine_dim(), 2);
        assert_eq!(p.equations().len(), 1);
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p.facets().len(), 4);
        assert!(p.contains(&RatVector::from_ints(&[1, 0, 0])));
        assert!(!p.contains(&RatVector::from_ints(&[0, 0, 0])));
    }

    #[test]
    fn support_values() {
        let tri = poly(&[&[2, -1], &[-1, 2], &[-1, -1]]);
        assert_eq!(tri.support_value(&ints(&[1, 0])), BigRational::from_integer((-1).into()));
        assert_eq!(tri.support_value(&ints(&[0, 0])), BigRational::zero());
    }
}
