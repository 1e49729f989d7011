//! Hermite and Smith normal forms, and what falls out of them: cokernels,
//! integer kernels and exact rational solving.
//!
//! Convention: matrices act on row vectors from the left for Hermite forms
//! (`u * m = h` uses row operations only). The cokernel of `m` is
//! `Z^rows / m Z^cols`, the image of the column span.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::matrix::{IntMatrix, RatVector};

/// Finitely generated abelian group `Z^free_rank ⊕ Z/d_1 ⊕ … ⊕ Z/d_k` with `d_i | d_{i+1}`, `d_i ≥ 2`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct AbelianGroupStructure {
    pub free_rank: usize,
    pub invariant_factors: Vec<BigInt>,
}

impl AbelianGroupStructure {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        Self {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    /// Normalizes arbitrary cyclic orders into invariant-factor form.
    pub fn from_orders(free_rank: usize, orders: &[BigInt]) -> Self {
        let diag: Vec<BigInt> = orders.iter().map(|x| x.abs()).collect();
        let (s, _, _) = snf(&IntMatrix::diagonal(&diag));
        let mut free = free_rank;
        let mut factors = Vec::new();
        for i in 0..diag.len() {
            let d = &s[(i, i)];
            if d.is_zero() {
                free += 1;
            } else if !d.is_one() {
                factors.push(d.clone());
            }
        }
        Self {
            free_rank: free,
            invariant_factors: factors,
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let orders: Vec<BigInt> = self
            .invariant_factors
            .iter()
            .chain(&other.invariant_factors)
            .cloned()
            .collect();
        Self::from_orders(self.free_rank + other.free_rank, &orders)
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_torsion_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.free_rank + self.invariant_factors.len() <= 1
    }

    /// Order of the torsion part.
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion_order())
    }
}

impl fmt::Display for AbelianGroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 {
                "Z".to_string()
            } else {
                format!("Z^{}", self.free_rank)
            });
        }
        for d in &self.invariant_factors {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Serialize for AbelianGroupStructure {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("AbelianGroupStructure", 3)?;
        st.serialize_field("free_rank", &self.free_rank)?;
        let f: Vec<String> = self
            .invariant_factors
            .iter()
            .map(ToString::to_string)
            .collect();
        st.serialize_field("invariant_factors", &f)?;
        st.serialize_field("display", &self.to_string())?;
        st.end()
    }
}

/// Row Hermite normal form: returns `(h, u)` with `u` unimodular and `u * m = h`.
///
/// Pivots are positive, entries above a pivot lie in `[0, pivot)`, zero rows sit at the bottom.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let rows = m.rows();
    let cols = m.cols();
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            // smallest nonzero entry at or below r in column c
            let pivot = (r..rows)
                .filter(|&i| !h[(i, c)].is_zero())
                .min_by(|&a, &b| h[(a, c)].abs().cmp(&h[(b, c)].abs()).then(a.cmp(&b)));
            let Some(p) = pivot else { break };
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = h[(i, c)].div_floor(&h[(r, c)]);
                let neg = -q;
                h.add_row_multiple(i, r, &neg);
                u.add_row_multiple(i, r, &neg);
                if !h[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = h[(i, c)].div_floor(&h[(r, c)]);
            if !q.is_zero() {
                let neg = -q;
                h.add_row_multiple(i, r, &neg);
                u.add_row_multiple(i, r, &neg);
            }
        }
        r += 1;
    }
    (h, u)
}

/// Smith normal form: returns `(s, u, v)` with `u`, `v` unimodular and `u * m * v = s`
/// diagonal, `d_1 | d_2 | …`, all `d_i ≥ 0`.
///
/// Pivots are chosen by least absolute value; ties go to the lowest row, then column.
pub fn snf(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let rows = m.rows();
    let cols = m.cols();
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if s[(i, j)].is_zero() {
                        continue;
                    }
                    best = match best {
                        Some((bi, bj)) if s[(bi, bj)].abs() <= s[(i, j)].abs() => Some((bi, bj)),
                        _ => Some((i, j)),
                    };
                }
            }
            let Some((pi, pj)) = best else {
                return (s, u, v);
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = -s[(i, t)].div_floor(&s[(t, t)]);
                s.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= s[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = -s[(t, j)].div_floor(&s[(t, t)]);
                s.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= s[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into the pivot row and retry
            let offending = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !s[(i, j)].is_multiple_of(&s[(t, t)]))
            });
            match offending {
                Some(i) => {
                    s.add_row_multiple(t, i, &BigInt::one());
                    u.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    (s, u, v)
}

/// Diagonal of a Smith form (length `min(rows, cols)`).
pub fn smith_diagonal(m: &IntMatrix) -> Vec<BigInt> {
    let (s, _, _) = snf(m);
    (0..m.rows().min(m.cols())).map(|i| s[(i, i)].clone()).collect()
}

/// Structure of `Z^rows / m Z^cols`.
pub fn cokernel(m: &IntMatrix) -> AbelianGroupStructure {
    let diag = smith_diagonal(m);
    let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
    AbelianGroupStructure {
        free_rank: m.rows() - nonzero,
        invariant_factors: diag
            .into_iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .collect(),
    }
}

/// Saturated basis (rows, in Hermite form) of the integer kernel `{x : m x = 0}`.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let cols = m.cols();
    let (h, u) = hnf(&m.transpose());
    let zero_rows: Vec<usize> = (0..h.rows())
        .filter(|&i| h.row(i).iter().all(Zero::is_zero))
        .collect();
    if zero_rows.is_empty() {
        return IntMatrix::zeros(0, cols);
    }
    let k = u.select_rows(&zero_rows);
    hnf(&k).0.nonzero_rows()
}

/// Unique rational solution of `a x = b`; `None` when inconsistent or underdetermined.
pub fn solve_rational(a: &IntMatrix, b: &RatVector) -> Option<RatVector> {
    let rows = a.rows();
    let cols = a.cols();
    if b.len() != rows {
        return None;
    }
    let mut aug: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| {
            let mut row: Vec<BigRational> = a
                .row(i)
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect();
            row.push(b.0[i].clone());
            row
        })
        .collect();
    let mut pivots = Vec::with_capacity(cols);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !aug[i][c].is_zero()) else {
            continue;
        };
        aug.swap(r, p);
        let inv = aug[r][c].recip();
        for x in aug[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in c..=cols {
                    let d = &aug[r][j] * &f;
                    aug[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if aug[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    if pivots.len() < cols {
        return None;
    }
    Some(RatVector(
        (0..cols).map(|i| aug[i][cols].clone()).collect(),
    ))
}

/// Integer solution of `a x = b`, if any (not necessarily unique).
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let (s, u, v) = snf(a);
    let ub = u.mul_vec(b);
    let mut z = vec![BigInt::zero(); a.cols()];
    for (i, rhs) in ub.iter().enumerate() {
        let d = if i < a.cols() { &s[(i, i)] } else { rhs };
        if i >= a.cols() || d.is_zero() {
            if !rhs.is_zero() {
                return None;
            }
            continue;
        }
        if !rhs.is_multiple_of(d) {
            return None;
        }
        z[i] = rhs / d;
    }
    Some(v.mul_vec(&z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ints;

    fn is_hnf(h: &IntMatrix) -> bool {
        let mut last_pivot: Option<usize> = None;
        let mut seen_zero = false;
        for i in 0..h.rows() {
            let lead = (0..h.cols()).find(|&j| !h[(i, j)].is_zero());
            match lead {
                None => seen_zero = true,
                Some(c) => {
                    if seen_zero || last_pivot.is_some_and(|p| c <= p) || !h[(i, c)].is_positive() {
                        return false;
                    }
                    for k in 0..i {
                        if h[(k, c)].is_negative() || h[(k, c)] >= h[(i, c)] {
                            return false;
                        }
                    }
                    last_pivot = Some(c);
                }
            }
        }
        true
    }

    #[test]
    fn hnf_of_identity_is_identity() {
        let id = IntMatrix::identity(3);
        let (h, u) = hnf(&id);
        assert_eq!(h, id);
        assert_eq!(u, id);
    }

    #[test]
    fn hnf_small_example() {
        let m = IntMatrix::from_i64(&[&[2, 4], &[1, 3]]);
        let (h, u) = hnf(&m);
        assert_eq!(h, IntMatrix::from_i64(&[&[1, 1], &[0, 2]]));
        assert!(u.is_unimodular());
        assert_eq!(u.mul(&m).unwrap(), h);
    }

    #[test]
    fn hnf_of_unimodular_is_identity() {
        let m = IntMatrix::from_i64(&[&[2, 3, 1], &[1, 2, 0], &[0, 0, 1]]);
        assert!(m.is_unimodular());
        assert_eq!(hnf(&m).0, IntMatrix::identity(3));
    }

    #[test]
    fn hnf_rank_deficient_shape() {
        let m = IntMatrix::from_i64(&[&[0, 2, 4], &[0, 3, 6], &[1, 1, 1]]);
        let (h, u) = hnf(&m);
        assert!(is_hnf(&h));
        assert_eq!(u.mul(&m).unwrap(), h);
        assert!(h.row(2).iter().all(Zero::is_zero));
    }

    #[test]
    fn snf_examples() {
        let d = IntMatrix::from_i64(&[&[1, 0], &[0, 5]]);
        assert_eq!(snf(&d).0, d);
        let m = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        let (s, u, v) = snf(&m);
        assert_eq!(s, IntMatrix::from_i64(&[&[1, 0], &[0, 6]]));
        assert_eq!(u.mul(&m).unwrap().mul(&v).unwrap(), s);
        let z = IntMatrix::zeros(2, 3);
        assert_eq!(snf(&z).0, z);
    }

    #[test]
    fn cokernel_examples() {
        let p2 = IntMatrix::from_i64(&[&[1, 0], &[0, 1], &[-1, -1]]);
        assert_eq!(cokernel(&p2), AbelianGroupStructure::free(1));
        assert!(cokernel(&IntMatrix::identity(4)).is_trivial());
        let five = IntMatrix::identity(3).scale(&BigInt::from(5));
        assert_eq!(
            cokernel(&five),
            AbelianGroupStructure {
                free_rank: 0,
                invariant_factors: ints(&[5, 5, 5])
            }
        );
    }

    #[test]
    fn solve_examples() {
        let b = RatVector::from_ints(&[3, -2, 7]);
        assert_eq!(solve_rational(&IntMatrix::identity(3), &b), Some(b));
        // transpose of the exponent matrix of x1^3x2 + x2^4 + x3^5 + x4^5 + x5^10
        let a = IntMatrix::from_i64(&[
            &[3, 1, 0, 0, 0],
            &[0, 4, 0, 0, 0],
            &[0, 0, 5, 0, 0],
            &[0, 0, 0, 5, 0],
            &[0, 0, 0, 0, 10],
        ])
        .transpose();
        let q = solve_rational(&a, &RatVector::from_ints(&[1, 1, 1, 1, 1])).unwrap();
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(q.0, vec![r(1, 3), r(1, 6), r(1, 5), r(1, 5), r(1, 10)]);
        let inconsistent = IntMatrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert_eq!(
            solve_rational(&inconsistent, &RatVector::from_ints(&[1, 2])),
            None
        );
        // underdetermined
        assert_eq!(
            solve_rational(&IntMatrix::from_i64(&[&[1, 1]]), &RatVector::from_ints(&[1])),
            None
        );
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&IntMatrix::from_i64(&[&[1, 1, 1]]));
        assert_eq!(k.rows(), 2);
        for row in k.row_iter() {
            assert_eq!(row.iter().sum::<BigInt>(), BigInt::zero());
        }
        // (1,-1,0) and (0,1,-1) must lie in the span with integer coefficients
        assert_eq!(cokernel(&k.transpose()), AbelianGroupStructure::free(1));
        assert_eq!(kernel_basis(&IntMatrix::identity(3)).rows(), 0);
        let k2 = kernel_basis(&IntMatrix::from_i64(&[&[1, 2, 1]]));
        assert_eq!(k2.rows(), 2);
        assert!(cokernel(&k2.transpose()).is_torsion_free());
    }

    #[test]
    fn integer_solve() {
        let a = IntMatrix::from_i64(&[&[2, 4]]);
        assert!(solve_integer(&a, &ints(&[3])).is_none());
        let x = solve_integer(&a, &ints(&[6])).unwrap();
        assert_eq!(a.mul_vec(&x), ints(&[6]));
    }

    #[test]
    fn group_sums() {
        let a = AbelianGroupStructure::from_orders(1, &ints(&[2]));
        let b = AbelianGroupStructure::from_orders(0, &ints(&[3]));
        let s = a.direct_sum(&b);
        assert_eq!(s.invariant_factors, ints(&[6]));
        assert_eq!(s.free_rank, 1);
        assert_eq!(s.to_string(), "Z + Z/6");
    }
}
