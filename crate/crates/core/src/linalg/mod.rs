//! Exact integer and rational linear algebra.

mod lattice;
mod matrix;
mod normal_form;

pub use lattice::RatLattice;
pub use matrix::{
    dot, gcd_all, ints, is_primitive, parse_rational, primitive, rank_of_rows, IntMatrix,
    RatVector,
};
pub(crate) use matrix::serialize_points;
pub use normal_form::{
    cokernel, hnf, kernel_basis, smith_diagonal, snf, solve_integer, solve_rational,
    AbelianGroupStructure,
};
