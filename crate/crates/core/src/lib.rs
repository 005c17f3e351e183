//! Exact computer algebra for column-symmetric polynomials.
//!
//! The crate works with polynomials in an `m x n` matrix of variables
//! `x[i,j]` over the rationals. Modding out monomials that take two factors
//! from one column gives the admissible quotient; the symmetric group acts by
//! permuting columns. Substituting the row sums `s_i = Σ_j x[i,j]` into
//! polynomials of degree at most `n` in `y1..ym` is an isomorphism onto the
//! column-symmetric part of that quotient, and [`rowsum_iso::to_rowsums`]
//! computes its inverse in closed form. [`formal_geometry`] uses this to build
//! primitives of closed polynomial 1-forms from chains of first-order
//! increments.

pub mod cli;
pub mod error;
pub mod expr_io;
pub mod formal_geometry;
pub mod matrix_ring;
pub mod par;
pub mod poly;
pub mod random;
pub mod rational;
pub mod rowsum_iso;
pub mod selftest;

pub use error::{Error, Result};
pub use formal_geometry::{BasePoint, OneForm};
pub use matrix_ring::{Permutation, RingShape};
pub use par::Execution;
pub use poly::{Degree, Monomial, Polynomial, VarKey};
pub use rational::Rational;
