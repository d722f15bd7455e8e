//! Exact integer and rational linear algebra. Nothing in this crate uses
//! floating point.

mod linalg;
mod matrix;
mod snf;

pub use linalg::{
    coordinates, gcd_of, integer_kernel, kernel_basis, rank_signature, rational_kernel,
    rational_row_basis, row_basis, rref, Signature,
};
pub use matrix::{common_denominator, int_vec_to_rat, rat, IntMatrix, RatMatrix};
pub use snf::{snf, SnfResult};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is not symmetric")]
    NotSymmetric,
}
