//! Finite map germs `f = (f_1, ..., f_n)` in `n` variables with `f(0) = 0`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{GermError, Result};
use crate::poly::{Monomial, MonomialOrder, Poly, Rational, Ring, Valuation};
use crate::stdbasis::{standard_basis, staircase_dimension, IdealBasis, QuotientDimension};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Germ {
    components: Vec<Poly>,
}

impl Germ {
    /// Validates that there are as many components as ring variables and
    /// that every component vanishes at the origin.
    pub fn new(components: Vec<Poly>) -> Result<Self> {
        let first = components
            .first()
            .ok_or_else(|| GermError::invalid("germ needs at least one component"))?;
        let ring = first.ring().clone();
        if components.len() != ring.len() {
            return Err(GermError::invalid(format!(
                "germ has {} components in {} variables",
                components.len(),
                ring.len()
            )));
        }
        for (i, c) in components.iter().enumerate() {
            if c.ring() != &ring {
                return Err(GermError::invalid("germ components live in different rings"));
            }
            if !c.constant_term().is_zero() {
                return Err(GermError::invalid(format!(
                    "component {} does not vanish at the origin",
                    i + 1
                )));
            }
        }
        Ok(Germ { components })
    }

    pub fn identity(ring: &Ring) -> Self {
        Germ { components: (0..ring.len()).map(|i| Poly::var(ring, i)).collect() }
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }

    pub fn ring(&self) -> &Ring {
        self.components[0].ring()
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    /// `ord f = min_k ord f_k`.
    pub fn ord(&self) -> Valuation {
        self.components.iter().map(Poly::ord).min().unwrap_or(Valuation::Infinite)
    }

    pub fn multiplicity(&self) -> Result<MultiplicityReport> {
        multiplicity(self)
    }

    pub fn jacobian_rank_at_zero(&self) -> usize {
        jacobian_rank_at_zero(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityReport {
    pub m0: u64,
    /// Minimal generators of the leading ideal under the local order.
    pub standard_basis_leading_ideal: Vec<Monomial>,
}

/// `m_0(f) = dim Q{z}/I(f)`, read off a local standard basis of `I(f)`.
pub fn multiplicity(f: &Germ) -> Result<MultiplicityReport> {
    let gens: Vec<Poly> = f.components.iter().filter(|c| !c.is_zero()).cloned().collect();
    if gens.is_empty() {
        return Err(GermError::NotFinite("all components vanish identically".into()));
    }
    let sb = standard_basis(&IdealBasis::new(gens, MonomialOrder::LocalAntigraded)?)?;
    match staircase_dimension(&sb) {
        QuotientDimension::Finite(m0) if m0 >= 1 => Ok(MultiplicityReport {
            m0,
            standard_basis_leading_ideal: sb.leading_monomials().to_vec(),
        }),
        QuotientDimension::Finite(_) => {
            Err(GermError::Internal("standard basis contains a unit for a germ vanishing at 0".into()))
        }
        QuotientDimension::Infinite => Err(GermError::NotFinite(
            "the zero at the origin is not isolated".into(),
        )),
    }
}

/// Rank over Q of a rational matrix, by fraction-free (Bareiss) elimination
/// after clearing row denominators.
pub fn rank_of(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            row.iter().map(|c| c.numer() * (&l / c.denom())).collect()
        })
        .collect();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        let Some(p) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(rank, p);
        for r in rank + 1..nrows {
            for c in col + 1..ncols {
                let v = (&m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c]) / &prev;
                m[r][c] = v;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// Rank of `(∂f_i/∂z_j)(0)`, i.e. of the matrix of linear coefficients.
pub fn jacobian_rank_at_zero(f: &Germ) -> usize {
    let n = f.n();
    let rows: Vec<Vec<Rational>> = f
        .components
        .iter()
        .map(|c| (0..n).map(|j| c.coefficient(&Monomial::var(n, j))).collect())
        .collect();
    rank_of(&rows)
}

/// Whether the rank criterion predicts `l_0(f) = m_0(f)`: true iff the
/// Jacobian at the origin has rank at least `n - 1`.
pub fn lemma11_predicts_equality(f: &Germ) -> Result<bool> {
    multiplicity(f)?;
    Ok(jacobian_rank_at_zero(f) + 1 >= f.n())
}

/// The germ of partial derivatives of `h`; `h` must be singular at 0.
pub fn gradient_germ(h: &Poly) -> Result<Germ> {
    if !h.constant_term().is_zero() {
        return Err(GermError::NotSingular("h does not vanish at the origin".into()));
    }
    let parts: Vec<Poly> = (0..h.nvars()).map(|j| h.derivative(j)).collect();
    if let Some(j) = parts.iter().position(|d| !d.constant_term().is_zero()) {
        return Err(GermError::NotSingular(format!(
            "partial derivative in {} is nonzero at the origin",
            h.ring().name(j)
        )));
    }
    Germ::new(parts)
}

/// Milnor number `m_0(∇h)`.
pub fn milnor_number(h: &Poly) -> Result<u64> {
    Ok(multiplicity(&gradient_germ(h)?)?.m0)
}
