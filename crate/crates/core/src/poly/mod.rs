//! Sparse multivariate polynomials over the rationals and prime fields with
//! the lexicographic ordering.

mod algebra;
mod field;
mod groebner;
mod monomial;
mod polynomial;

pub use field::{Field, Rationals};
pub use algebra::QuotientAlgebra;
pub use groebner::{
    is_groebner, lex_buchberger, normal_form, reduced_groebner, s_polynomial, zero_dimensional_groebner, GroebnerBasis,
};
pub(crate) use groebner::eliminate_first;
pub use monomial::{lex_compare, Monomial, MAX_VARS};
pub use polynomial::{
    LeadingData, ModularPoly, ModularRing, Polynomial, RationalPoly, RationalRing, Ring,
};
