//! Minimal polynomial `Q_{f,h}` and characteristic polynomial
//! `P_{f,h} = Q_{f,h}^r` of a function `h` relative to a finite germ `f`.
//!
//! `Q` is obtained from the polynomial eliminant `G(w, s)` of the graph of
//! `(f, h)`: when `G` is already distinguished it is used verbatim, otherwise
//! its distinguished factor at the origin is computed by Hensel lifting to a
//! finite `w`-adic precision, raised until the Newton polygon is certified.
//!
//! When other points of `V(f)` meet the fiber, the eliminant no longer sees
//! the origin alone; [`local_characteristic_polynomial`] then works in the
//! local algebra instead.

mod eliminant;
mod hensel;
mod local;
mod univariate;

use num_traits::{One, Zero};

use crate::error::{GermError, Result};
use crate::germ::{multiplicity, Germ};
use crate::lojexp::polygon::{LatticePoint, NewtonPolygon};
use crate::poly::{Monomial, Poly, Rational, Ring, TruncatedSeries};
pub use eliminant::{ws_ring, EliminantReport};
use hensel::HenselLifter;

/// Upper limit for automatic truncation doubling.
const MAX_TRUNCATION: u32 = 1 << 12;
/// The local-algebra path grows with `N^{n-1}` lines of size `m_0 (N + 1)`.
const MAX_LOCAL_TRUNCATION: u32 = 64;

/// How the coefficients of a [`CharPoly`] were obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Derivation {
    /// Read off the eliminant exactly.
    Eliminant,
    /// Distinguished factor of the eliminant by Hensel lifting.
    Hensel,
    /// Multiplication matrices on the local algebra; `Q` is not separated
    /// from `P`, so the power is 1.
    LocalAlgebra,
}

/// `P = Q^r` with `Q = s^{m_h} + c_1 s^{m_h - 1} + ... + c_{m_h}`.
///
/// Only `Q` is stored. When `truncation` is `Some(N)` every `c_i` is known
/// exactly up to `w`-degree `N` and nothing is known beyond.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPoly {
    w_ring: Ring,
    degree: u64,
    power: u64,
    minimal: Vec<Poly>,
    truncation: Option<u32>,
    derivation: Derivation,
}

impl CharPoly {
    /// Builds `P = Q^power` from the lower coefficients of `Q`.
    pub fn from_minimal(minimal: Vec<Poly>, power: u64, truncation: Option<u32>) -> Result<Self> {
        let first = minimal
            .first()
            .ok_or_else(|| GermError::invalid("minimal polynomial must have positive degree"))?;
        let w_ring = first.ring().clone();
        if power == 0 {
            return Err(GermError::invalid("power must be positive"));
        }
        if truncation == Some(0) {
            return Err(GermError::invalid("truncation must be positive"));
        }
        for (i, c) in minimal.iter().enumerate() {
            if c.ring() != &w_ring {
                return Err(GermError::invalid("coefficients live in different rings"));
            }
            if !c.constant_term().is_zero() {
                return Err(GermError::invalid(format!(
                    "coefficient a_{} does not vanish at the origin",
                    i + 1
                )));
            }
        }
        let minimal = match truncation {
            Some(n) => minimal.into_iter().map(|c| c.truncate(n)).collect(),
            None => minimal,
        };
        let derivation = if truncation.is_some() { Derivation::Hensel } else { Derivation::Eliminant };
        Ok(CharPoly { degree: power * minimal.len() as u64, w_ring, power, minimal, truncation, derivation })
    }

    pub fn derivation(&self) -> Derivation {
        self.derivation
    }

    /// `deg_s P`, equal to the multiplicity of the germ.
    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn minimal_degree(&self) -> usize {
        self.minimal.len()
    }

    pub fn power(&self) -> u64 {
        self.power
    }

    pub fn is_exact(&self) -> bool {
        self.truncation.is_none()
    }

    pub fn truncation(&self) -> Option<u32> {
        self.truncation
    }

    pub fn w_ring(&self) -> &Ring {
        &self.w_ring
    }

    /// `c_1, ..., c_{m_h}` of `Q` (bodies only when truncated).
    pub fn minimal_coefficients(&self) -> &[Poly] {
        &self.minimal
    }

    pub fn minimal_coefficient_series(&self) -> Option<Vec<TruncatedSeries>> {
        let n = self.truncation?;
        Some(self.minimal.iter().map(|c| TruncatedSeries::new(c.clone(), n).unwrap()).collect())
    }

    /// `Q` as a polynomial in `w_1, ..., w_n, s`.
    pub fn minimal_polynomial(&self) -> Poly {
        assemble(&self.minimal, &self.w_ring)
    }

    /// Lower coefficients `a_1, ..., a_m` of the expanded `P = Q^r`,
    /// truncated like `Q` when `Q` is truncated.
    pub fn characteristic_coefficients(&self) -> Vec<Poly> {
        let mut q: Vec<Poly> = std::iter::once(Poly::one(&self.w_ring))
            .chain(self.minimal.iter().cloned())
            .collect();
        let base = q.clone();
        for _ in 1..self.power {
            let mut out = vec![Poly::zero(&self.w_ring); q.len() + base.len() - 1];
            for (i, a) in q.iter().enumerate() {
                for (j, b) in base.iter().enumerate() {
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    let prod = match self.truncation {
                        Some(n) => a.mul_truncated(b, n).unwrap(),
                        None => a * b,
                    };
                    out[i + j] = &out[i + j] + &prod;
                }
            }
            q = out;
        }
        q.split_off(1)
    }

    /// `P` expanded as a polynomial in `w_1, ..., w_n, s`.
    pub fn characteristic_polynomial(&self) -> Poly {
        assemble(&self.characteristic_coefficients(), &self.w_ring)
    }
}

/// `s^k + Σ c_i s^{k-i}` in the ring `w_1, ..., w_n, s`.
fn assemble(coeffs: &[Poly], w_ring: &Ring) -> Poly {
    let n = w_ring.len();
    let ws = ws_ring(n);
    let k = coeffs.len() as u32;
    let positions: Vec<usize> = (0..n).collect();
    let mut terms = vec![(Monomial::pure_power(n + 1, n, k), Rational::one())];
    for (i, c) in coeffs.iter().enumerate() {
        let e = k - 1 - i as u32;
        for (m, v) in c.embed(&ws, &positions).terms() {
            let mut ex = m.exponents().to_vec();
            ex[n] = e;
            terms.push((Monomial::new(ex), v.clone()));
        }
    }
    Poly::from_terms(&ws, terms)
}

/// Newton-polygon points `(ord c_i, k - i)` of the coefficients whose order
/// is determined, plus `(0, k)`.
pub(crate) fn determined_points(coeffs: &[Poly]) -> Vec<LatticePoint> {
    let k = coeffs.len() as u64;
    std::iter::once((0, k))
        .chain(coeffs.iter().enumerate().filter_map(|(i, c)| {
            c.ord().finite().map(|o| (o as u64, k - 1 - i as u64))
        }))
        .collect()
}

/// A truncated coefficient list pins down the Newton polygon when the last
/// coefficient is known to be nonzero and every undetermined coefficient,
/// whose order exceeds `n`, would land inside the polygon anyway.
pub(crate) fn polygon_certified(coeffs: &[Poly], n: u32) -> bool {
    let k = coeffs.len() as u64;
    if coeffs.last().is_none_or(Poly::is_zero) {
        return false;
    }
    let Ok(hull) = NewtonPolygon::from_points(&determined_points(coeffs)) else {
        return false;
    };
    coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| c.is_zero())
        .all(|(i, _)| hull.contains((n as u64 + 1, k - 1 - i as u64)))
}

/// Distinguished factor `D` of an eliminant at the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinguishedFactor {
    pub degree: usize,
    /// `a_1, ..., a_k` of `D = s^k + a_1 s^{k-1} + ... + a_k`.
    pub coefficients: Vec<TruncatedSeries>,
    /// `G` itself was distinguished; the coefficients are exact.
    pub exact: bool,
}

/// Weierstrass factor of `g` (in `w_1, ..., w_n, s`) at the origin, lifted to
/// `w`-degree `max(1, ord_h) * m0`.
pub fn weierstrass_distinguished_factor(g: &Poly, m0: u64, ord_h: u32) -> Result<DistinguishedFactor> {
    let n = g.nvars() - 1;
    let truncation = u32::try_from(ord_h.max(1) as u64 * m0)
        .map_err(|_| GermError::invalid("truncation overflow"))?;
    if eliminant::is_distinguished(g, n) {
        let (coeffs, _) = exact_distinguished(g, n);
        check_divides(coeffs.len(), m0)?;
        let coefficients = coeffs
            .into_iter()
            .map(|c| TruncatedSeries::new(c.clone(), c.total_degree().unwrap_or(0).max(truncation)))
            .collect::<Result<Vec<_>>>()?;
        return Ok(DistinguishedFactor { degree: coefficients.len(), coefficients, exact: true });
    }
    let mut lifter = HenselLifter::new(g)?;
    check_divides(lifter.degree(), m0)?;
    lifter.lift_to(truncation);
    Ok(DistinguishedFactor {
        degree: lifter.degree(),
        coefficients: lifter.coefficients(truncation),
        exact: false,
    })
}

fn check_divides(k: usize, m0: u64) -> Result<()> {
    if k == 0 || !m0.is_multiple_of(k as u64) {
        return Err(GermError::ValidationFailed(format!(
            "distinguished factor of degree {k} does not divide the multiplicity {m0}"
        )));
    }
    Ok(())
}

/// Lower coefficients of `g / lc_s(g)` in the `w` ring, for distinguished `g`.
fn exact_distinguished(g: &Poly, n: usize) -> (Vec<Poly>, Rational) {
    let w_ring = Ring::new(g.ring().names()[..n].iter().cloned());
    let mut coeffs = g.coefficients_in(n);
    let top = coeffs.pop().unwrap();
    let lc = top.constant_term();
    let inv = Rational::one() / &lc;
    let lower = coeffs
        .into_iter()
        .rev()
        .map(|c| {
            let terms = c.terms().map(|(m, v)| (Monomial::new(m.exponents()[..n].to_vec()), v * &inv));
            Poly::from_terms(&w_ring, terms)
        })
        .collect();
    (lower, lc)
}

fn validate_function(f: &Germ, h: &Poly) -> Result<()> {
    if h.ring() != f.ring() {
        return Err(GermError::invalid("h must be a polynomial in the germ's variables"));
    }
    if h.is_zero() {
        return Err(GermError::invalid("h must be nonzero"));
    }
    if !h.constant_term().is_zero() {
        return Err(GermError::invalid("h must vanish at the origin"));
    }
    Ok(())
}

/// Elimination-ideal generator for `(f, h)`.
pub fn eliminant(f: &Germ, h: &Poly) -> Result<EliminantReport> {
    validate_function(f, h)?;
    multiplicity(f)?;
    eliminant::compute_eliminant(f, h)
}

/// Characteristic polynomial of `h` relative to `f`, with automatic
/// truncation on the Hensel path.
pub fn characteristic_polynomial(f: &Germ, h: &Poly) -> Result<CharPoly> {
    let m0 = multiplicity(f)?.m0;
    characteristic_polynomial_with(f, h, m0, None)
}

/// Same as [`characteristic_polynomial`] with a caller-supplied multiplicity
/// and, optionally, a fixed truncation for the Hensel path (no automatic
/// refinement then).
pub fn characteristic_polynomial_with(
    f: &Germ,
    h: &Poly,
    m0: u64,
    fixed_truncation: Option<u32>,
) -> Result<CharPoly> {
    validate_function(f, h)?;
    if fixed_truncation == Some(0) {
        return Err(GermError::invalid("truncation must be positive"));
    }
    eliminant::clean_fiber_check(f, h)?;
    let report = eliminant::compute_eliminant(f, h)?;
    let n = f.n();
    let g = &report.generator;
    eliminant::check_squarefree(g, n)?;

    if report.distinguished_fast_path {
        let (coeffs, _) = exact_distinguished(g, n);
        check_divides(coeffs.len(), m0)?;
        let r = m0 / coeffs.len() as u64;
        return CharPoly::from_minimal(coeffs, r, None);
    }

    let mut lifter = HenselLifter::new(g)?;
    let k = lifter.degree();
    check_divides(k, m0)?;
    let r = m0 / k as u64;
    let ord_h = h.ord().finite().expect("h is nonzero");
    let mut trunc = match fixed_truncation {
        Some(t) => t,
        None => u32::try_from(ord_h.max(1) as u64 * m0)
            .map_err(|_| GermError::invalid("truncation overflow"))?,
    };
    loop {
        lifter.lift_to(trunc);
        let coeffs: Vec<Poly> = lifter.coefficients(trunc).into_iter().map(TruncatedSeries::into_body).collect();
        if fixed_truncation.is_some() || polygon_certified(&coeffs, trunc) {
            return CharPoly::from_minimal(coeffs, r, Some(trunc));
        }
        if trunc >= MAX_TRUNCATION {
            return Err(GermError::Indeterminate(format!(
                "Newton polygon not determined at truncation {trunc}"
            )));
        }
        trunc = (trunc * 2).min(MAX_TRUNCATION);
    }
}

/// `P_{f,h}` from the local algebra of `f` at the origin, truncated at
/// `w`-degree `N`. Without a fixed truncation `N` starts at `max(1, ord h)`
/// and doubles until the Newton polygon is certified.
pub fn local_characteristic_polynomial(f: &Germ, h: &Poly, fixed_truncation: Option<u32>) -> Result<CharPoly> {
    validate_function(f, h)?;
    if fixed_truncation == Some(0) {
        return Err(GermError::invalid("truncation must be positive"));
    }
    let lead = multiplicity(f)?.standard_basis_leading_ideal;
    let mut trunc = fixed_truncation.unwrap_or_else(|| h.ord().finite().expect("h is nonzero").max(1));
    loop {
        let coeffs = local::local_coefficients(f, h, &lead, trunc)?;
        if fixed_truncation.is_some() || polygon_certified(&coeffs, trunc) {
            let mut p = CharPoly::from_minimal(coeffs, 1, Some(trunc))?;
            p.derivation = Derivation::LocalAlgebra;
            return Ok(p);
        }
        if trunc >= MAX_LOCAL_TRUNCATION {
            return Err(GermError::Indeterminate(format!(
                "Newton polygon not determined at truncation {trunc}"
            )));
        }
        trunc = (trunc * 2).min(MAX_LOCAL_TRUNCATION);
    }
}

/// [`characteristic_polynomial_with`], falling back to the local algebra
/// when the eliminant also sees points of `V(f)` away from the origin.
pub fn robust_characteristic_polynomial(f: &Germ, h: &Poly, m0: u64) -> Result<CharPoly> {
    match characteristic_polynomial_with(f, h, m0, None) {
        Err(GermError::CleanFiberViolation(_) | GermError::ValidationFailed(_) | GermError::NotDistinguishable(_)) => {
            local_characteristic_polynomial(f, h, None)
        }
        other => other,
    }
}
