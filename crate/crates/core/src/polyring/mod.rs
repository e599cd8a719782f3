//! `N^d`-actions on quotients of integer polynomial rings by zero-dimensional
//! ideals.

mod groebner;
mod mpoly;
mod parse;
mod quotient;

pub use groebner::{buchberger, GroebnerBasis};
pub use mpoly::{normal_form, s_polynomial, MPoly, Monomial, MonomialOrder};
pub use parse::parse_poly;
pub use quotient::{
    char_poly_and_norm, commalg_conditions, principal_exactness, CommalgReport, ConditionC,
    ConditionD, PrincipalReport, QuotientAlgebra,
};
