use std::cmp::Ordering;
use std::fmt;

use crate::error::{GermError, Result};

/// Exponent vector `z^α`, one entry per ring variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    /// The monomial `1` in `nvars` variables.
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    /// `z_index ^ power`
    pub fn pure_power(nvars: usize, index: usize, power: u32) -> Self {
        let mut e = vec![0; nvars];
        e[index] = power;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// If this is a pure power `z_j^k` with `k >= 1`, returns `(j, k)`.
    pub fn as_pure_power(&self) -> Option<(usize, u32)> {
        let mut found = None;
        for (j, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((j, e));
            }
        }
        found
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Monomial orders used by the reduction engines.
///
/// `Lex`, `DegRevLex` and `BlockElimination` are well-orders (global: `1` is
/// the smallest monomial). `LocalAntigraded` is the local degree order in
/// which lower total degree is larger and ties are broken reverse
/// lexicographically, so `1` is the largest monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    DegRevLex,
    /// Degrevlex on the first `front` variables, then degrevlex on the rest.
    /// Any monomial involving the front block beats every monomial free of it.
    BlockElimination(usize),
    LocalAntigraded,
    /// Global order for homogenizing a local computation, the homogenizing
    /// variable being the last one: total degree, then the larger power of
    /// the last variable, then the tie-break of `LocalAntigraded`.
    HomogenizedLocal,
}

fn revlex_tiebreak(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| revlex_tiebreak(a, b))
}

impl MonomialOrder {
    pub fn is_local(self) -> bool {
        matches!(self, MonomialOrder::LocalAntigraded)
    }

    pub fn is_global(self) -> bool {
        !self.is_local()
    }

    /// Compares exponent slices of equal length. Callers that cannot
    /// guarantee equal lengths go through [`mono_compare`].
    pub fn cmp_exponents(self, a: &[u32], b: &[u32]) -> Ordering {
        debug_assert_eq!(a.len(), b.len());
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::DegRevLex => degrevlex(a, b),
            MonomialOrder::BlockElimination(front) => {
                let k = front.min(a.len());
                degrevlex(&a[..k], &b[..k]).then_with(|| degrevlex(&a[k..], &b[k..]))
            }
            MonomialOrder::LocalAntigraded => {
                let da: u64 = a.iter().map(|&e| e as u64).sum();
                let db: u64 = b.iter().map(|&e| e as u64).sum();
                db.cmp(&da).then_with(|| revlex_tiebreak(a, b))
            }
            MonomialOrder::HomogenizedLocal => {
                let da: u64 = a.iter().map(|&e| e as u64).sum();
                let db: u64 = b.iter().map(|&e| e as u64).sum();
                da.cmp(&db)
                    .then_with(|| a.last().cmp(&b.last()))
                    .then_with(|| revlex_tiebreak(a, b))
            }
        }
    }

    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        self.cmp_exponents(a.exponents(), b.exponents())
    }
}

/// Checked comparison of two monomials under `order`.
pub fn mono_compare(order: MonomialOrder, m1: &Monomial, m2: &Monomial) -> Result<Ordering> {
    if m1.len() != m2.len() {
        return Err(GermError::invalid(format!(
            "monomial length mismatch: {} vs {}",
            m1.len(),
            m2.len()
        )));
    }
    Ok(order.cmp(m1, m2))
}
