//! Exact arithmetic: rationals, sparse rational matrices, polynomials,
//! rational functions and their power-series expansions.

mod matrix;
mod poly;
mod ratfunc;
mod rational;

pub use matrix::{kernel_basis, rank, ExactMatrix, SparseVec};
pub use poly::Poly;
pub use ratfunc::{convolve, one_minus_t_pow, series_coeffs, RatFunc};
pub use rational::{
    common_denominator, content, exact_div, from_big, rat, ratio, serialize_decimal, Rational,
};

pub(crate) use matrix::{int_to_rational, kernel_of_columns, make_primitive, Echelon, IntVec};
