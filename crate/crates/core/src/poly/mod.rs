//! Exact sparse multivariate polynomials over the rationals.

mod monomial;
mod polynomial;
mod series;
mod text;

/// Arbitrary-precision rational, always stored in lowest terms.
pub type Rational = num_rational::BigRational;

pub use monomial::{mono_compare, Monomial, MonomialOrder};
pub(crate) use polynomial::cmp_by_leading;
pub use polynomial::{Poly, Ring, Valuation};
pub use series::{series_mul, TruncatedSeries};
pub use text::{parse_poly, parse_rational, ParseError};

/// Order of vanishing of `p` at the origin.
pub fn poly_ord(p: &Poly) -> Valuation {
    p.ord()
}

pub fn poly_mul(p: &Poly, q: &Poly) -> crate::error::Result<Poly> {
    p.checked_mul(q)
}

pub fn poly_substitute(
    p: &Poly,
    assignment: &std::collections::BTreeMap<String, Poly>,
) -> crate::error::Result<Poly> {
    p.substitute(assignment)
}

#[cfg(test)]
pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
