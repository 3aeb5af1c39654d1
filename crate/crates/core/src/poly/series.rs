use super::polynomial::{Poly, Ring};
use crate::error::{GermError, Result};

/// Power series known exactly up to total degree `truncation`.
///
/// The body never holds a term of degree above the truncation; every
/// arithmetic operation discards such terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    body: Poly,
    truncation: u32,
}

impl TruncatedSeries {
    pub fn new(body: Poly, truncation: u32) -> Result<Self> {
        if truncation == 0 {
            return Err(GermError::invalid("truncation must be positive"));
        }
        Ok(TruncatedSeries { body: body.truncate(truncation), truncation })
    }

    pub fn zero(ring: &Ring, truncation: u32) -> Self {
        TruncatedSeries { body: Poly::zero(ring), truncation }
    }

    pub fn body(&self) -> &Poly {
        &self.body
    }

    pub fn into_body(self) -> Poly {
        self.body
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    /// The body is empty: the series is zero or vanishes to order above the truncation.
    pub fn is_undetermined_zero(&self) -> bool {
        self.body.is_zero()
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        let n = self.truncation.min(other.truncation);
        Ok(TruncatedSeries { body: self.body.checked_add(&other.body)?.truncate(n), truncation: n })
    }

    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        series_mul(self, other)
    }
}

/// Product of two truncated series at the smaller of the two truncations.
pub fn series_mul(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries> {
    let n = a.truncation.min(b.truncation);
    Ok(TruncatedSeries { body: a.body.mul_truncated(&b.body, n)?, truncation: n })
}
