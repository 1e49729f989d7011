//! Transposition of exponent matrices between families of anticanonical hypersurfaces,
//! together with the diagonal symmetry groups attached to them.
//!
//! A datum lives in a rational coordinate space `Q^n` with the standard pairing: the monomials
//! `u_i` lie in a lattice `M`, the rays `n_j` in its dual `N`, and a group is encoded by a
//! lattice `M_W ⊆ M_G ⊆ M` where `M_W` is spanned by the monomials. Transposition exchanges the
//! roles of the two sides, so it is an exact involution on this representation.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::goodpair::{good_pair, GoodPair};
use crate::linalg::{
    hnf, kernel_basis, snf, solve_rational, AbelianGroupStructure, IntMatrix, RatLattice,
    RatVector,
};
use crate::polytope::RationalPolytope;
use crate::toric::{variety_from_polytope, ToricVarietyData};

/// Default bound on `[M : M_W]` for subgroup enumeration.
pub const DEFAULT_INDEX_CAP: u64 = 10_000;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BhkDatum {
    a: IntMatrix,
    monomials: Vec<RatVector>,
    rays: Vec<RatVector>,
    m: RatLattice,
    m_w: RatLattice,
    m_g: RatLattice,
}

/// Diagonal automorphisms `diag(exp(2πi·phase))`, as phase vectors with entries in `[0, 1)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiagonalGroupPresentation {
    pub generators: Vec<Vec<BigRational>>,
    pub structure: AbelianGroupStructure,
}

impl Serialize for DiagonalGroupPresentation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let gens: Vec<Vec<String>> = self
            .generators
            .iter()
            .map(|g| g.iter().map(ToString::to_string).collect())
            .collect();
        let mut st = s.serialize_struct("DiagonalGroupPresentation", 2)?;
        st.serialize_field("generators", &gens)?;
        st.serialize_field("structure", &self.structure)?;
        st.end()
    }
}

/// Weights making the transposed polynomial of a square exponent matrix homogeneous.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DualWeights {
    /// Smallest positive integer multiple of `q`.
    pub weights: Vec<u64>,
    /// `(A^T)^{-1}·1`, the barycentric coordinates of the origin in the simplex of monomials.
    pub q: Vec<BigRational>,
}

/// Coordinates of `v` in the basis of `l` (integral when `v ∈ l`).
fn coords(l: &RatLattice, v: &RatVector) -> RatVector {
    l.coordinates(v).expect("full-rank lattice")
}

/// Pairings `(⟨b_k, n⟩)_k` of `n` with the basis of `l`: coordinates of `n` in the dual basis.
fn dual_coords(l: &RatLattice, n: &RatVector) -> RatVector {
    RatVector(
        l.basis()
            .iter()
            .map(|b| b.0.iter().zip(&n.0).map(|(x, y)| x * y).sum())
            .collect(),
    )
}

/// Inverse of [`dual_coords`].
fn from_dual_coords(l: &RatLattice, c: &RatVector) -> RatVector {
    let d = BigRational::from_integer(l.denominator().clone());
    let scaled = RatVector(c.0.iter().map(|x| x * &d).collect());
    solve_rational(l.scaled_basis(), &scaled).expect("full-rank lattice")
}

fn from_coords(l: &RatLattice, c: &RatVector) -> RatVector {
    let n = l.dim();
    let mut out = vec![BigRational::zero(); n];
    for (ci, b) in c.0.iter().zip(l.basis()) {
        for (o, x) in out.iter_mut().zip(&b.0) {
            *o += ci * x;
        }
    }
    RatVector(out)
}

fn pair(u: &RatVector, n: &RatVector) -> BigRational {
    u.0.iter().zip(&n.0).map(|(x, y)| x * y).sum()
}

/// Generators of `outer / inner` with their orders, as vectors of the ambient space.
fn quotient_generators(outer: &RatLattice, inner: &RatLattice) -> Result<Vec<(RatVector, BigInt)>> {
    let rows: Vec<Vec<BigInt>> = inner
        .basis()
        .iter()
        .map(|b| {
            coords(outer, b)
                .to_integers()
                .ok_or_else(|| Error::Internal("quotient by a non-sublattice".into()))
        })
        .collect::<Result<_>>()?;
    let n = outer.dim();
    let c = IntMatrix::from_rows(&rows, n)?;
    // u c v = d; x ↦ x v identifies Z^n / rowspace(c) with ⊕ Z/d_i
    let (d, _, v) = snf(&c);
    let v_inv = v.inverse_rational()?;
    let mut out = Vec::new();
    for i in 0..n {
        let di = d[(i, i)].abs();
        if di.is_one() {
            continue;
        }
        if di.is_zero() {
            return Err(Error::InfiniteGroup);
        }
        out.push((from_coords(outer, &RatVector(v_inv[i].clone())), di));
    }
    Ok(out)
}

/// Rational `w` with `Σ w_j n_j = y` and `Σ w_j = 0`, reduced modulo 1.
fn phases_for(rays_frame: &IntMatrix, y: &RatVector) -> Result<Vec<BigRational>> {
    let (n, r) = (rays_frame.rows(), rays_frame.cols());
    let mut chosen: Vec<usize> = Vec::new();
    for j in 0..r {
        let mut cand = chosen.clone();
        cand.push(j);
        if rays_frame.select_cols(&cand).rank() == cand.len() {
            chosen = cand;
        }
        if chosen.len() == n {
            break;
        }
    }
    let sub = rays_frame.select_cols(&chosen);
    let part = solve_rational(&sub, y).ok_or(Error::Singular)?;
    let mut w = vec![BigRational::zero(); r];
    for (k, &j) in chosen.iter().enumerate() {
        w[j] = part.0[k].clone();
    }
    let kernel = kernel_basis(rays_frame);
    let relation = kernel
        .row_iter()
        .find(|k| !k.iter().sum::<BigInt>().is_zero())
        .ok_or_else(|| Error::Internal("rays admit no relation with nonzero sum".into()))?;
    let rel_sum: BigInt = relation.iter().sum();
    let total: BigRational = w.iter().sum();
    let factor = total / BigRational::from_integer(rel_sum);
    for (wj, k) in w.iter_mut().zip(relation) {
        *wj -= &factor * BigRational::from_integer(k.clone());
        *wj = &*wj - wj.floor();
    }
    Ok(w)
}

impl BhkDatum {
    /// Validates the data: monomials in `m`, rays spanning the dual lattice, nonnegative
    /// exponents with a zero in every row, origin interior to the monomials' hull, canonical
    /// ray polytope, and `M_W ⊆ m_g ⊆ m` (default `m_g = m`).
    pub fn new(
        monomials: Vec<RatVector>,
        rays: Vec<RatVector>,
        m: RatLattice,
        m_g: Option<RatLattice>,
    ) -> Result<Self> {
        let n = m.dim();
        if !m.is_full_rank() {
            return Err(Error::RankDeficient {
                expected: n,
                found: m.rank(),
            });
        }
        for v in monomials.iter().chain(&rays) {
            if v.len() != n {
                return Err(Error::MixedDimension(n, v.len()));
            }
        }
        if let Some(u) = monomials.iter().find(|u| !m.contains(u)) {
            return Err(Error::InvalidFamily(format!("monomial {u} outside the lattice")));
        }
        let n_lattice = m.dual()?;
        if rays.iter().any(|r| !n_lattice.contains(r)) {
            return Err(Error::InvalidFamily("ray outside the dual lattice".into()));
        }
        if RatLattice::from_generators(&rays, n)? != n_lattice {
            return Err(Error::TorsionClassGroup(
                "rays do not generate the dual lattice".into(),
            ));
        }
        let mut a = IntMatrix::zeros(monomials.len(), rays.len());
        for (i, u) in monomials.iter().enumerate() {
            for (j, r) in rays.iter().enumerate() {
                let e = pair(u, r) + BigRational::one();
                if e.is_negative() {
                    return Err(Error::NotContained(u.clone()));
                }
                a.row_mut(i)[j] = e.to_integer();
            }
            if a.row(i).iter().all(|e| !e.is_zero()) {
                return Err(Error::InvalidFamily(format!(
                    "monomial {i} contains every variable"
                )));
            }
        }
        let m_w = RatLattice::from_generators(&monomials, n)?;
        let m_g = m_g.unwrap_or_else(|| m.clone());
        if !m_w.is_sublattice_of(&m_g) || !m_g.is_sublattice_of(&m) {
            return Err(Error::InvalidFamily(
                "group lattice must lie between the monomial lattice and M".into(),
            ));
        }
        let datum = Self {
            a,
            monomials,
            rays,
            m,
            m_w,
            m_g,
        };
        let hull = RationalPolytope::hull(&datum.monomials_in_frame())?;
        if !hull.has_origin_interior() {
            return Err(crate::error::GoodPairFailure::OriginNotInterior.into());
        }
        if !datum.ambient()?.has_canonical_singularities() {
            return Err(Error::NotCanonical("ray polytope".into()));
        }
        Ok(datum)
    }

    /// Data of a good pair: monomials are the sorted vertices of `delta1`, rays those of the
    /// polar of `delta2`; the group is trivial.
    pub fn from_good_pair(gp: &GoodPair) -> Result<Self> {
        let x = variety_from_polytope(gp.delta2())?;
        if !x.class_group().is_torsion_free() {
            return Err(Error::TorsionClassGroup(x.class_group().to_string()));
        }
        let rays = x.rays().iter().map(|r| RatVector::from(r.clone())).collect();
        Self::new(
            gp.delta1().vertices().to_vec(),
            rays,
            RatLattice::standard(gp.dim()),
            None,
        )
    }

    /// Data recovered from an exponent matrix alone. `group` lists rational combinations of
    /// the monomials (one coefficient per row of `a`) that, together with the monomial lattice,
    /// generate `M_G`; `None` means the trivial group `M_G = M`.
    pub fn from_matrix(a: &IntMatrix, group: Option<&[RatVector]>) -> Result<Self> {
        let x = recover_variety(a)?;
        let n = x.rank();
        let rays: Vec<RatVector> = x.rays().iter().map(|r| RatVector::from(r.clone())).collect();
        let mut monomials = Vec::with_capacity(a.rows());
        for i in 0..a.rows() {
            let target = RatVector(
                a.row(i)
                    .iter()
                    .map(|e| BigRational::from_integer(e - 1))
                    .collect(),
            );
            let u = solve_rational(x.p_matrix(), &target)
                .filter(RatVector::is_integral)
                .ok_or_else(|| Error::InvalidFamily(format!("row {i} is not a lattice point")))?;
            monomials.push(u);
        }
        let m = RatLattice::standard(n);
        let m_g = match group {
            None => None,
            Some(combos) => {
                let mut gens = monomials.clone();
                for c in combos {
                    if c.len() != monomials.len() {
                        return Err(Error::Shape(format!(
                            "group generator has {} coefficients, expected {}",
                            c.len(),
                            monomials.len()
                        )));
                    }
                    let mut v = vec![BigRational::zero(); n];
                    for (ci, u) in c.0.iter().zip(&monomials) {
                        for (o, x) in v.iter_mut().zip(&u.0) {
                            *o += ci * x;
                        }
                    }
                    gens.push(RatVector(v));
                }
                Some(RatLattice::from_generators(&gens, n)?)
            }
        };
        Self::new(monomials, rays, m, m_g)
    }

    /// The same monomials and rays with another group lattice.
    pub fn with_group(&self, m_g: RatLattice) -> Result<Self> {
        Self::new(
            self.monomials.clone(),
            self.rays.clone(),
            self.m.clone(),
            Some(m_g),
        )
    }

    /// `a_ij = ⟨u_i, n_j⟩ + 1`.
    pub fn a_matrix(&self) -> &IntMatrix {
        &self.a
    }

    pub fn monomials(&self) -> &[RatVector] {
        &self.monomials
    }

    pub fn rays(&self) -> &[RatVector] {
        &self.rays
    }

    pub fn m(&self) -> &RatLattice {
        &self.m
    }

    pub fn m_w(&self) -> &RatLattice {
        &self.m_w
    }

    pub fn m_g(&self) -> &RatLattice {
        &self.m_g
    }

    pub fn dim(&self) -> usize {
        self.m.dim()
    }

    fn monomials_in_frame(&self) -> Vec<RatVector> {
        self.monomials.iter().map(|u| coords(&self.m, u)).collect()
    }

    fn rays_in_frame(&self) -> Vec<Vec<BigInt>> {
        self.rays
            .iter()
            .map(|r| {
                dual_coords(&self.m, r)
                    .to_integers()
                    .expect("rays lie in the dual lattice")
            })
            .collect()
    }

    /// The toric variety of the rays, in coordinates of the Hermite basis of `M`.
    pub fn ambient(&self) -> Result<ToricVarietyData> {
        ToricVarietyData::from_rays(&self.rays_in_frame())
    }

    /// Dual datum: matrix `A^T`, monomials and rays exchanged, `M ↦ M_W^∨`, `M_G ↦ M_G^∨`.
    pub fn transpose(&self) -> Result<Self> {
        let t = Self::new(
            self.rays.clone(),
            self.monomials.clone(),
            self.m_w.dual()?,
            Some(self.m_g.dual()?),
        )?;
        debug_assert_eq!(t.a, self.a.transpose());
        Ok(t)
    }

    /// `(hull of the monomials, anticanonical polytope of the rays)` in coordinates of `M_G`.
    pub fn bhk_pair(&self) -> Result<GoodPair> {
        let d1: Vec<RatVector> = self.monomials.iter().map(|u| coords(&self.m_g, u)).collect();
        let rays: Vec<Vec<BigInt>> = self
            .rays
            .iter()
            .map(|r| {
                dual_coords(&self.m_g, r)
                    .to_integers()
                    .ok_or_else(|| Error::Internal("ray outside the dual group lattice".into()))
            })
            .collect::<Result<_>>()?;
        let d2 = RationalPolytope::hull_of_integers(&rays)?.polar()?;
        good_pair(RationalPolytope::hull(&d1)?, d2).map_err(|e| {
            Error::Internal(format!("transposition data do not form a good pair: {e}"))
        })
    }

    /// `SL(W)/J ≅ M/M_W`, with phase-vector generators on the `r` variables.
    pub fn symmetry_group(&self) -> Result<DiagonalGroupPresentation> {
        self.presentation(&self.m_w)
    }

    /// `G/J ≅ M/M_G`, with phase-vector generators on the `r` variables.
    pub fn group_elements(&self) -> Result<DiagonalGroupPresentation> {
        self.presentation(&self.m_g)
    }

    fn presentation(&self, sub: &RatLattice) -> Result<DiagonalGroupPresentation> {
        if !sub.is_full_rank() {
            return Err(Error::InfiniteGroup);
        }
        let structure = self.m.quotient_structure(sub)?;
        let outer = sub.dual()?;
        let inner = self.m.dual()?;
        let frame = IntMatrix::from_rows(&self.rays_in_frame(), self.dim())?.transpose();
        let generators = quotient_generators(&outer, &inner)?
            .into_iter()
            .map(|(y, _)| phases_for(&frame, &dual_coords(&self.m, &y)))
            .collect::<Result<_>>()?;
        Ok(DiagonalGroupPresentation {
            generators,
            structure,
        })
    }

    /// Whether `diag(exp(2πi·w))` is special linear and preserves every monomial of `M_G`.
    pub fn contains_phases(&self, w: &[BigRational]) -> bool {
        self.phase_test(w, &self.m_g)
    }

    /// Whether `diag(exp(2πi·w))` is special linear and acts trivially on the variety.
    pub fn acts_trivially(&self, w: &[BigRational]) -> bool {
        self.phase_test(w, &self.m)
    }

    fn phase_test(&self, w: &[BigRational], sub: &RatLattice) -> bool {
        if w.len() != self.rays.len() || !w.iter().sum::<BigRational>().is_integer() {
            return false;
        }
        let mut y = vec![BigRational::zero(); self.dim()];
        for (wj, r) in w.iter().zip(&self.rays) {
            for (o, x) in y.iter_mut().zip(&r.0) {
                *o += wj * x;
            }
        }
        let y = RatVector(y);
        sub.basis().iter().all(|b| pair(b, &y).is_integer())
    }

    /// For square data, the lattice of phase vectors `w ∈ Q^r` of the group `G`.
    pub fn phase_lattice(&self) -> Result<RatLattice> {
        let n = self.dim();
        let r = self.rays.len();
        if r != n + 1 {
            return Err(Error::Unsupported(
                "phase lattices are finite only for simplices".into(),
            ));
        }
        // w ↦ (pairings of Σ w_j n_j with the basis of M_G, Σ w_j) must be integral
        let mut t = IntMatrix::zeros(n + 1, r);
        for (j, ray) in self.rays.iter().enumerate() {
            let c = dual_coords(&self.m_g, ray)
                .to_integers()
                .ok_or_else(|| Error::Internal("ray outside the dual group lattice".into()))?;
            for (k, x) in c.into_iter().enumerate() {
                t.row_mut(k)[j] = x;
            }
            t.row_mut(n)[j] = BigInt::one();
        }
        let inv = t.inverse_rational()?;
        let gens: Vec<RatVector> = (0..r)
            .map(|k| RatVector((0..r).map(|j| inv[j][k].clone()).collect()))
            .collect();
        RatLattice::from_generators(&gens, r)
    }

    /// Lattices `M_W ⊆ M_G ⊆ M`, one per subgroup of `M/M_W`, ordered by index over `M_W`.
    pub fn intermediate_lattices(&self, cap: u64) -> Result<Vec<RatLattice>> {
        let gens = quotient_generators(&self.m, &self.m_w)?;
        let orders: Vec<u64> = gens
            .iter()
            .map(|(_, d)| d.to_u64().unwrap_or(u64::MAX))
            .collect();
        let total = orders
            .iter()
            .try_fold(1u64, |acc, &d| acc.checked_mul(d))
            .filter(|&t| t <= cap)
            .ok_or_else(|| Error::IndexTooLarge {
                index: gens
                    .iter()
                    .fold(BigInt::one(), |acc, (_, d)| acc * d)
                    .to_string(),
                cap,
            })?;
        let subgroups = enumerate_subgroups(&orders, total as usize);
        let mut out = Vec::with_capacity(subgroups.len());
        for members in subgroups {
            let mut basis = self.m_w.basis();
            for idx in members {
                let digits = decode(idx, &orders);
                let mut v = vec![BigRational::zero(); self.dim()];
                for ((g, _), k) in gens.iter().zip(&digits) {
                    for (o, x) in v.iter_mut().zip(&g.0) {
                        *o += x * BigRational::from_integer(BigInt::from(*k));
                    }
                }
                basis.push(RatVector(v));
            }
            out.push(RatLattice::from_generators(&basis, self.dim())?);
        }
        Ok(out)
    }
}

fn decode(mut idx: usize, orders: &[u64]) -> Vec<u64> {
    orders
        .iter()
        .map(|&d| {
            let d = d as usize;
            let k = idx % d;
            idx /= d;
            k as u64
        })
        .collect()
}

fn encode(digits: &[u64], orders: &[u64]) -> usize {
    digits
        .iter()
        .zip(orders)
        .rev()
        .fold(0usize, |acc, (&k, &d)| acc * d as usize + k as usize)
}

/// Subgroups of `⊕ Z/orders[i]`, each given by a generating set of element indices, sorted
/// by size and then by membership.
fn enumerate_subgroups(orders: &[u64], total: usize) -> Vec<Vec<usize>> {
    let add = |a: usize, b: usize| {
        let (x, y) = (decode(a, orders), decode(b, orders));
        let s: Vec<u64> = x
            .iter()
            .zip(&y)
            .zip(orders)
            .map(|((p, q), d)| (p + q) % d)
            .collect();
        encode(&s, orders)
    };
    let closure = |members: &[bool], g: usize| -> Vec<bool> {
        let mut out = members.to_vec();
        let base: Vec<usize> = (0..total).filter(|&i| members[i]).collect();
        let mut step = g;
        while step != 0 {
            for &b in &base {
                out[add(b, step)] = true;
            }
            step = add(step, g);
        }
        out
    };
    let mut trivial = vec![false; total];
    trivial[0] = true;
    let mut seen: HashMap<Vec<bool>, Vec<usize>> = HashMap::new();
    seen.insert(trivial.clone(), Vec::new());
    let mut queue = VecDeque::from([trivial]);
    while let Some(s) = queue.pop_front() {
        let gens = seen[&s].clone();
        for g in 0..total {
            if s[g] {
                continue;
            }
            let t = closure(&s, g);
            if !seen.contains_key(&t) {
                let mut tg = gens.clone();
                tg.push(g);
                seen.insert(t.clone(), tg);
                queue.push_back(t);
            }
        }
    }
    let mut all: Vec<(Vec<bool>, Vec<usize>)> = seen.into_iter().collect();
    all.sort_by(|(a, _), (b, _)| {
        let size = |v: &[bool]| v.iter().filter(|&&x| x).count();
        size(a).cmp(&size(b)).then_with(|| b.cmp(a))
    });
    all.into_iter().map(|(_, g)| g).collect()
}

/// `q* = (A^T)^{-1}·1` and its smallest positive integer multiple.
pub fn classical_dual_weights(a: &IntMatrix) -> Result<DualWeights> {
    let ones = RatVector(vec![BigRational::one(); a.cols()]);
    if a.rows() != a.cols() {
        return Err(Error::Shape("dual weights need a square matrix".into()));
    }
    let q = solve_rational(&a.transpose(), &ones).ok_or(Error::Singular)?;
    if q.0.iter().any(|x| !x.is_positive()) {
        return Err(Error::NonPositiveWeights);
    }
    let total: BigRational = q.0.iter().sum();
    if !total.is_one() {
        return Err(Error::Internal(format!("barycentric coordinates sum to {total}")));
    }
    let den = q.denominator_lcm();
    let scaled: Vec<BigInt> = q
        .0
        .iter()
        .map(|x| (x * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    let g = scaled.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let weights = scaled
        .iter()
        .map(|x| (x / &g).to_u64().ok_or_else(|| Error::Internal("weight overflow".into())))
        .collect::<Result<_>>()?;
    Ok(DualWeights { weights, q: q.0 })
}

/// Variety whose rays pair with the rows of `a − 1` as the monomials do.
///
/// Chooses the lexicographically first set of independent rows of `a − 1`, whose row lattice has
/// finite index in `P^T(M)`, and saturates it; the columns of a basis are the rays.
pub fn recover_variety(a: &IntMatrix) -> Result<ToricVarietyData> {
    let l = a.add_scalar(&BigInt::from(-1));
    let rows = first_independent_rows(&l);
    recover_variety_from_rows(a, &rows)
}

pub(crate) fn first_independent_rows(l: &IntMatrix) -> Vec<usize> {
    let mut chosen = Vec::new();
    for i in 0..l.rows() {
        let mut cand = chosen.clone();
        cand.push(i);
        if l.select_rows(&cand).rank() == cand.len() {
            chosen = cand;
        }
    }
    chosen
}

/// [`recover_variety`] with an explicit choice of independent rows.
pub fn recover_variety_from_rows(a: &IntMatrix, rows: &[usize]) -> Result<ToricVarietyData> {
    let l = a.add_scalar(&BigInt::from(-1));
    let n = l.rank();
    if n == 0 || rows.len() != n {
        return Err(Error::RankDeficient {
            expected: n,
            found: rows.len(),
        });
    }
    let p_prime = l.select_rows(rows);
    if p_prime.rank() != n {
        return Err(Error::RankDeficient {
            expected: n,
            found: p_prime.rank(),
        });
    }
    // the torsion of Z^r / rowspace(P') is N/N'; dropping it saturates the row lattice
    let relations = kernel_basis(&p_prime);
    let saturated = kernel_basis(&relations);
    let (p, _) = hnf(&saturated);
    let p = p.nonzero_rows();
    let rays: Vec<Vec<BigInt>> = (0..p.cols()).map(|j| p.column(j)).collect();
    let x = ToricVarietyData::from_rays(&rays)?;
    if !x.has_canonical_singularities() {
        return Err(Error::NotCanonical("recovered ray polytope".into()));
    }
    Ok(x)
}

/// Phase lattice `{α^T A^{-1} : α ∈ L^∨}` of the transposed group built from the inverse
/// matrix, where `L` is the phase lattice of `G`.
pub fn classical_transposed_lattice(a: &IntMatrix, g: &RatLattice) -> Result<RatLattice> {
    if a.rows() != a.cols() || g.dim() != a.cols() {
        return Err(Error::Shape("square matrix and matching phase lattice expected".into()));
    }
    let inv = a.inverse_rational()?;
    let s = a.rows();
    let gens: Vec<RatVector> = g
        .dual()?
        .basis()
        .iter()
        .map(|alpha| {
            RatVector(
                (0..s)
                    .map(|k| alpha.0.iter().zip(&inv).map(|(x, row)| x * &row[k]).sum())
                    .collect(),
            )
        })
        .collect();
    RatLattice::from_generators(&gens, s)
}

/// Outcome of comparing the pair of the transposed datum with the polar of the pair.
#[derive(Clone, Debug, Serialize)]
pub struct TransposeCheck {
    /// Newton and anticanonical polytopes agree as subsets of `N_Q`.
    pub polytopes_agree: bool,
    /// The dual ambient built from the rays equals the one recovered from `A^T` alone.
    pub ambient_recovered: bool,
}

impl TransposeCheck {
    pub fn holds(&self) -> bool {
        self.polytopes_agree && self.ambient_recovered
    }
}

/// Checks that transposing the data gives the polar pair, read in `M_G^∨`.
pub fn check_transpose(bd: &BhkDatum) -> Result<TransposeCheck> {
    let t = bd.transpose()?;
    let lhs = t.bhk_pair()?;
    let rhs = bd.bhk_pair()?.polar_pair();
    // lhs is in the basis of M_G^∨; rhs in the dual basis of M_G
    let lhs_ambient = |p: &RationalPolytope| -> Vec<RatVector> {
        p.vertices().iter().map(|c| from_coords(t.m_g(), c)).collect()
    };
    let rhs_ambient = |p: &RationalPolytope| -> Vec<RatVector> {
        p.vertices().iter().map(|c| from_dual_coords(bd.m_g(), c)).collect()
    };
    let sorted = |mut v: Vec<RatVector>| {
        v.sort();
        v
    };
    let polytopes_agree = sorted(lhs_ambient(lhs.delta1())) == sorted(rhs_ambient(rhs.delta1()))
        && sorted(lhs_ambient(lhs.delta2())) == sorted(rhs_ambient(rhs.delta2()));
    let recovered = recover_variety(t.a_matrix())?;
    let ambient = t.ambient()?;
    let ambient_recovered = hnf(recovered.grading()).0 == hnf(ambient.grading()).0
        && recovered.class_group() == ambient.class_group();
    Ok(TransposeCheck {
        polytopes_agree,
        ambient_recovered,
    })
}

/// Whether `a` and `b` agree after permuting rows and columns.
pub fn equal_up_to_permutation(a: &IntMatrix, b: &IntMatrix) -> bool {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return false;
    }
    let sorted_rows = |m: &IntMatrix, perm: &[usize]| {
        let mut rows: Vec<Vec<BigInt>> = m
            .row_iter()
            .map(|r| perm.iter().map(|&j| r[j].clone()).collect())
            .collect();
        rows.sort();
        rows
    };
    let target = sorted_rows(b, &(0..b.cols()).collect::<Vec<_>>());
    let mut perm: Vec<usize> = (0..a.cols()).collect();
    permutations(&mut perm, 0, &mut |p| sorted_rows(a, p) == target)
}

fn permutations(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if k == v.len() {
        return f(v);
    }
    for i in k..v.len() {
        v.swap(k, i);
        if permutations(v, k + 1, f) {
            v.swap(k, i);
            return true;
        }
        v.swap(k, i);
    }
    false
}
