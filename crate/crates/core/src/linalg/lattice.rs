use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::matrix::{IntMatrix, RatVector};
use super::normal_form::{cokernel, hnf, solve_integer, solve_rational, AbelianGroupStructure};
use crate::error::{Error, Result};

/// A lattice in `Q^n`, stored canonically as `(1/denominator) * rowspan(basis)` with
/// `basis` in Hermite form and `denominator` the least positive integer clearing it.
///
/// Two lattices are equal iff their canonical forms are equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatLattice {
    basis: IntMatrix,
    denominator: BigInt,
}

impl RatLattice {
    pub fn standard(n: usize) -> Self {
        Self {
            basis: IntMatrix::identity(n),
            denominator: BigInt::one(),
        }
    }

    pub fn from_generators(generators: &[RatVector], dim: usize) -> Result<Self> {
        let mut d = BigInt::one();
        for g in generators {
            if g.len() != dim {
                return Err(Error::MixedDimension(g.len(), dim));
            }
            d = d.lcm(&g.denominator_lcm());
        }
        let rows: Vec<Vec<BigInt>> = generators
            .iter()
            .map(|g| {
                g.0.iter()
                    .map(|x| (x * BigRational::from_integer(d.clone())).to_integer())
                    .collect()
            })
            .collect();
        let m = IntMatrix::from_rows(&rows, dim)?;
        Ok(Self::from_scaled(m, d))
    }

    /// Lattice spanned by integer rows.
    pub fn from_int_rows(rows: &IntMatrix) -> Self {
        Self::from_scaled(rows.clone(), BigInt::one())
    }

    fn from_scaled(m: IntMatrix, d: BigInt) -> Self {
        let basis = hnf(&m).0.nonzero_rows();
        // the least common denominator of the generators is also least for the lattice
        let g = basis
            .row_iter()
            .flatten()
            .fold(d.clone(), |acc, x| acc.gcd(x));
        let (basis, denominator) = if g.is_one() || g.is_zero() {
            (basis, d)
        } else {
            (
                IntMatrix::from_rows(
                    &basis
                        .row_iter()
                        .map(|r| r.iter().map(|x| x / &g).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                    basis.cols(),
                )
                .expect("same shape"),
                &d / &g,
            )
        };
        Self { basis, denominator }
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.dim()
    }

    /// Integer numerator rows of the basis.
    pub fn scaled_basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    pub fn basis(&self) -> Vec<RatVector> {
        self.basis
            .row_iter()
            .map(|r| {
                RatVector(
                    r.iter()
                        .map(|x| BigRational::new(x.clone(), self.denominator.clone()))
                        .collect(),
                )
            })
            .collect()
    }

    /// Integer basis when the lattice lies in `Z^n`.
    pub fn integer_basis(&self) -> Option<IntMatrix> {
        self.denominator.is_one().then(|| self.basis.clone())
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the rational span.
    pub fn coordinates(&self, v: &RatVector) -> Option<RatVector> {
        let scaled = RatVector(
            v.0.iter()
                .map(|x| x * BigRational::from_integer(self.denominator.clone()))
                .collect(),
        );
        solve_rational(&self.basis.transpose(), &scaled)
    }

    pub fn contains(&self, v: &RatVector) -> bool {
        if v.len() != self.dim() {
            return false;
        }
        let dv = RatVector(
            v.0.iter()
                .map(|x| x * BigRational::from_integer(self.denominator.clone()))
                .collect(),
        );
        let Some(target) = dv.to_integers() else {
            return false;
        };
        solve_integer(&self.basis.transpose(), &target).is_some()
    }

    pub fn is_sublattice_of(&self, other: &Self) -> bool {
        self.basis().iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        let mut gens = self.basis();
        gens.extend(other.basis());
        Self::from_generators(&gens, self.dim())
    }

    /// Covolume of a full-rank lattice.
    pub fn covolume(&self) -> Result<BigRational> {
        if !self.is_full_rank() {
            return Err(Error::RankDeficient {
                expected: self.dim(),
                found: self.rank(),
            });
        }
        let det = self.basis.determinant()?.abs();
        let n = u32::try_from(self.dim()).expect("small dimension");
        Ok(BigRational::new(det, self.denominator.pow(n)))
    }

    /// `[self : sub]` for full-rank `sub ⊆ self`.
    pub fn index_of(&self, sub: &Self) -> Result<BigInt> {
        if !sub.is_sublattice_of(self) {
            return Err(Error::Internal("index of a non-sublattice".into()));
        }
        let q = sub.covolume()? / self.covolume()?;
        Ok(q.to_integer())
    }

    /// Structure of `self / sub` for `sub ⊆ self`.
    pub fn quotient_structure(&self, sub: &Self) -> Result<AbelianGroupStructure> {
        if !sub.is_sublattice_of(self) {
            return Err(Error::Internal("quotient by a non-sublattice".into()));
        }
        // columns: coordinates of sub's basis vectors in self's basis
        let coords: Vec<Vec<BigInt>> = sub
            .basis()
            .iter()
            .map(|b| {
                self.coordinates(b)
                    .and_then(|c| c.to_integers())
                    .ok_or_else(|| Error::Internal("sublattice coordinates".into()))
            })
            .collect::<Result<_>>()?;
        let m = IntMatrix::from_rows(&coords, self.rank())?.transpose();
        Ok(cokernel(&m))
    }

    /// Dual lattice `{y : ⟨x, y⟩ ∈ Z for all x}` of a full-rank lattice.
    pub fn dual(&self) -> Result<Self> {
        if !self.is_full_rank() {
            return Err(Error::RankDeficient {
                expected: self.dim(),
                found: self.rank(),
            });
        }
        // rows of (B/d)^{-T} = d * B^{-T}
        let inv = self.basis.inverse_rational()?;
        let n = self.dim();
        let d = BigRational::from_integer(self.denominator.clone());
        let gens: Vec<RatVector> = (0..n)
            .map(|i| RatVector((0..n).map(|j| &inv[j][i] * &d).collect()))
            .collect();
        Self::from_generators(&gens, n)
    }
}

impl fmt::Display for RatLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.basis().iter().map(ToString::to_string).collect();
        write!(f, "<{}>", rows.join(", "))
    }
}

impl Serialize for RatLattice {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.basis().serialize(s)
    }
}
