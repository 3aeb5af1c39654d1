//! Łojasiewicz exponents read off characteristic polynomials, and Newton
//! polygons.

pub mod polygon;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::charpoly::{determined_points, robust_characteristic_polynomial, CharPoly};
use crate::error::{GermError, Result};
use crate::germ::{gradient_germ, lemma11_predicts_equality, multiplicity, Germ};
use crate::poly::{Poly, Rational};
pub use polygon::{last_edge_inclination, polygon_includes, sigma, Edge, LatticePoint, NewtonPolygon};

/// `o_f(h) = min_i ord(a_i) / i`, with the index attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeExponent {
    pub value: Rational,
    /// Index into the minimal polynomial `Q`; the ratio is the same for `P`.
    pub witness_index: usize,
    pub witness_order: u32,
}

/// Minimum of `ord(c_i) / i` over the nonzero `c_i`.
///
/// With `truncation = Some(N)` a zero `c_i` only means `ord c_i > N`; the
/// minimum is returned only if no such coefficient could undercut it.
pub fn exponent_from_coefficients(coeffs: &[Poly], truncation: Option<u32>) -> Result<RelativeExponent> {
    let mut best: Option<RelativeExponent> = None;
    for (k, c) in coeffs.iter().enumerate() {
        let Some(o) = c.ord().finite() else { continue };
        let i = k + 1;
        let value = Rational::new(BigInt::from(o), BigInt::from(i));
        if best.as_ref().is_none_or(|b| value < b.value) {
            best = Some(RelativeExponent { value, witness_index: i, witness_order: o });
        }
    }
    let best = best.ok_or_else(|| GermError::Indeterminate("no coefficient is known to be nonzero".into()))?;
    if let Some(n) = truncation {
        for (k, c) in coeffs.iter().enumerate() {
            let bound = Rational::new(BigInt::from(n + 1), BigInt::from(k + 1));
            if c.is_zero() && bound < best.value {
                return Err(GermError::Indeterminate(format!(
                    "coefficient {} is undetermined at truncation {n}",
                    k + 1
                )));
            }
        }
    }
    Ok(best)
}

pub fn relative_exponent(p: &CharPoly) -> Result<RelativeExponent> {
    exponent_from_coefficients(p.minimal_coefficients(), p.truncation())
}

/// `N(P)`; for `P = Q^r` this is `r` times the polygon of `Q`.
pub fn newton_polygon(p: &CharPoly) -> Result<NewtonPolygon> {
    let coeffs = p.minimal_coefficients();
    if let Some(n) = p.truncation() {
        if !crate::charpoly::polygon_certified(coeffs, n) {
            return Err(GermError::Indeterminate(format!("Newton polygon undetermined at truncation {n}")));
        }
    }
    Ok(NewtonPolygon::from_points(&determined_points(coeffs))?.dilate(p.power()))
}

/// Inclination of the first side of `N(P)`.
pub fn theta(p: &CharPoly) -> Result<Rational> {
    newton_polygon(p)?
        .first_edge_inclination()
        .ok_or_else(|| GermError::Degenerate("Newton polygon has a single vertex".into()))
}

/// `N(f, h) = σ(N(P_{f,h}))`.
pub fn relative_polygon(f: &Germ, h: &Poly) -> Result<NewtonPolygon> {
    let p = robust_characteristic_polynomial(f, h, multiplicity(f)?.m0)?;
    Ok(newton_polygon(&p)?.sigma())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LojasiewiczReport {
    pub l0: Rational,
    /// `o_f(z_j)` keyed by variable name, in ring order.
    pub per_coordinate: Vec<(String, Rational)>,
    pub m0: u64,
    pub lemma11_equality: bool,
}

pub fn lojasiewicz(f: &Germ) -> Result<LojasiewiczReport> {
    let m0 = multiplicity(f)?.m0;
    let ring = f.ring();
    let per_coordinate = (0..f.n())
        .into_par_iter()
        .map(|j| {
            let p = robust_characteristic_polynomial(f, &Poly::var(ring, j), m0)?;
            Ok((ring.name(j).to_string(), relative_exponent(&p)?.value))
        })
        .collect::<Result<Vec<_>>>()?;
    let min = per_coordinate.iter().map(|(_, o)| o).min().expect("n >= 1");
    if min.is_zero() {
        return Err(GermError::Internal("relative exponent vanished".into()));
    }
    Ok(LojasiewiczReport {
        l0: Rational::one() / min,
        per_coordinate,
        m0,
        lemma11_equality: lemma11_predicts_equality(f)?,
    })
}

pub fn lojasiewicz_exponent(f: &Germ) -> Result<Rational> {
    Ok(lojasiewicz(f)?.l0)
}

/// `l_0(∇h)`.
pub fn gradient_lojasiewicz(h: &Poly) -> Result<Rational> {
    lojasiewicz_exponent(&gradient_germ(h)?)
}
