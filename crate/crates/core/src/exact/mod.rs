//! Exact integer and rational arithmetic.

pub mod arith;
pub mod matrix;
pub mod poly;
pub mod smith;

pub use arith::{
    bezout, exact_root, ext_gcd, factorize, gcd_all, is_fundamental_discriminant, is_squarefree,
    mod_inverse, prime_divisors, unit_group_is_cyclic, valuation,
};
pub use matrix::{to_integer_matrix, to_integer_vec, IntMatrix, Matrix, RatMatrix};
pub use poly::Poly;
pub use smith::{complete_unimodular, smith_form, SmithForm};

/// `det_exact` as a free function.
pub fn det_exact(m: &IntMatrix) -> crate::Result<num_bigint::BigInt> {
    m.det_exact()
}

pub fn adjugate(m: &IntMatrix) -> crate::Result<IntMatrix> {
    m.adjugate()
}
