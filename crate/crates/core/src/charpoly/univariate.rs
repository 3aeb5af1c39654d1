//! Dense univariate polynomials over Q, coefficient `k` at index `k`.

use num_traits::{One, Zero};

use crate::poly::Rational;

pub(crate) type Dense = Vec<Rational>;

pub(crate) fn trim(mut p: Dense) -> Dense {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn rem(a: &Dense, b: &Dense) -> Dense {
    let mut r = trim(a.clone());
    let db = b.len() - 1;
    let lead = b[db].clone();
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let q = r.last().unwrap() / &lead;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &q * c;
        }
        r = trim(r);
    }
    r
}

pub(crate) fn gcd(a: &Dense, b: &Dense) -> Dense {
    let (mut x, mut y) = (trim(a.clone()), trim(b.clone()));
    while !y.is_empty() {
        let r = rem(&x, &y);
        x = y;
        y = r;
    }
    x
}

pub(crate) fn derivative(p: &Dense) -> Dense {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * Rational::from_integer(k.into()))
        .collect()
}

/// `p^{-1} mod s^len`; needs `p[0] != 0`.
pub(crate) fn inverse_series(p: &Dense, len: usize) -> Dense {
    let c0 = Rational::one() / &p[0];
    let mut inv = vec![Rational::zero(); len];
    for k in 0..len {
        let mut acc = if k == 0 { Rational::one() } else { Rational::zero() };
        for j in 1..=k.min(p.len().saturating_sub(1)) {
            acc -= &p[j] * &inv[k - j];
        }
        inv[k] = acc * &c0;
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn d(v: &[i64]) -> Dense {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn gcd_of_shared_root() {
        // (s-1)(s+2) and (s-1)(s-3)
        let g = gcd(&d(&[-2, 1, 1]), &d(&[3, -4, 1]));
        assert_eq!(g.len(), 2);
        assert_eq!(&g[0] / &g[1], rat(-1));
        assert_eq!(gcd(&d(&[1, 1]), &d(&[2, 1])).len(), 1);
    }

    #[test]
    fn inverse() {
        let inv = inverse_series(&d(&[1, -1]), 4);
        assert_eq!(inv, d(&[1, 1, 1, 1]));
        assert_eq!(derivative(&d(&[5, 0, 3])), d(&[0, 6]));
    }
}
