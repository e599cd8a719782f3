//! Exact arithmetic kernels: big-integer matrices, polynomials over Z, Q and
//! F_p, Hermite/Smith normal forms and rational conjugacy invariants.

pub mod arith;
pub mod canonical;
pub mod matrix;
pub mod modp;
pub mod normal_form;
pub mod poly;

pub use canonical::{
    charpoly, charpoly_z, minimal_polynomial, poly_invariant_factors, unimodular_divisor,
    UnimodularSearch,
};
pub use matrix::{Matrix, QMat, Scalar, ZMat};
pub use modp::{ddf_signature, ModPoly, Signature};
pub use normal_form::{hnf, snf, Hnf, Snf};
pub use poly::{companion, companion_q, companion_z, cyclotomic, Poly, QPoly, ZPoly};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
