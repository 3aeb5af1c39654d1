//! Weierstrass factorization of an eliminant at the origin by Hensel lifting
//! in the `w`-adic topology.
//!
//! Writing `G = Σ_d G_d(s)` with `G_d` homogeneous of degree `d` in `w`, and
//! `G_0 = s^k u_0(s)` with `u_0(0) != 0`, we build `D = s^k + Σ_{d≥1} D_d`
//! (`deg_s D_d < k`) and `E = u_0 + Σ_{d≥1} E_d` with `D E = G` degree by
//! degree. At degree `d` the unknowns satisfy
//! `s^k E_d + u_0 D_d = G_d - Σ_{0<i<d} D_i E_{d-i}`, which has a unique
//! solution with `deg_s D_d < k` because `s^k` and `u_0` are coprime.

use num_traits::Zero;

use super::eliminant::at_origin;
use super::univariate::{inverse_series, Dense};
use crate::error::{GermError, Result};
use crate::poly::{Poly, Ring, TruncatedSeries};

/// Polynomial in `s` whose coefficients are polynomials in `w`.
type SPoly = Vec<Poly>;

pub(crate) struct HenselLifter {
    w_ring: Ring,
    /// `graded[d][e]`: coefficient of `s^e` in the `w`-degree-`d` part of `G`.
    graded: Vec<SPoly>,
    k: usize,
    u0: Dense,
    inv: Dense,
    /// `d_parts[d]` for `d >= 1`; index 0 is unused.
    d_parts: Vec<SPoly>,
    e_parts: Vec<SPoly>,
}

fn mul_spoly(a: &SPoly, b: &SPoly, ring: &Ring) -> SPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Poly::zero(ring); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    out
}

impl HenselLifter {
    /// `g` lives in `w_1, ..., w_n, s` with `s` last.
    pub fn new(g: &Poly) -> Result<Self> {
        let n = g.nvars() - 1;
        let w_ring = Ring::new(g.ring().names()[..n].iter().cloned());
        let g0 = at_origin(g, n);
        if g0.is_empty() {
            return Err(GermError::NotDistinguishable("G(0, s) vanishes identically".into()));
        }
        let k = g0.iter().position(|c| !c.is_zero()).unwrap();
        if k == 0 {
            return Err(GermError::NotDistinguishable("G(0, 0) is not zero".into()));
        }
        let u0: Dense = g0[k..].to_vec();
        let inv = inverse_series(&u0, k);

        let mut graded: Vec<SPoly> = Vec::new();
        let deg_s = g.degree_in(n).unwrap_or(0) as usize;
        for (m, c) in g.terms() {
            let ex = m.exponents();
            let d = (m.degree() - ex[n]) as usize;
            while graded.len() <= d {
                graded.push(vec![Poly::zero(&w_ring); deg_s + 1]);
            }
            let wm = crate::poly::Monomial::new(ex[..n].to_vec());
            let e = ex[n] as usize;
            graded[d][e] = &graded[d][e] + &Poly::term(&w_ring, wm, c.clone());
        }
        let e0: SPoly = u0.iter().map(|c| Poly::constant(&w_ring, c.clone())).collect();
        Ok(HenselLifter {
            w_ring,
            graded,
            k,
            u0,
            inv,
            d_parts: vec![Vec::new()],
            e_parts: vec![e0],
        })
    }

    /// Degree of the distinguished factor.
    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn lift_to(&mut self, n: u32) {
        let ring = self.w_ring.clone();
        while self.d_parts.len() <= n as usize {
            let d = self.d_parts.len();
            let mut r: SPoly = self
                .graded
                .get(d)
                .cloned()
                .unwrap_or_default();
            for i in 1..d {
                let prod = mul_spoly(&self.d_parts[i], &self.e_parts[d - i], &ring);
                if r.len() < prod.len() {
                    r.resize(prod.len(), Poly::zero(&ring));
                }
                for (e, p) in prod.into_iter().enumerate() {
                    r[e] = &r[e] - &p;
                }
            }
            let k = self.k;
            let mut dd: SPoly = vec![Poly::zero(&ring); k];
            for (e, slot) in dd.iter_mut().enumerate() {
                let mut acc = Poly::zero(&ring);
                for (a, ra) in r.iter().enumerate().take(e + 1) {
                    if !ra.is_zero() && !self.inv[e - a].is_zero() {
                        acc = &acc + &ra.scale(&self.inv[e - a]);
                    }
                }
                *slot = acc;
            }
            // E_d = (R - D_d u0) / s^k
            let mut t = r;
            let need = k + self.u0.len() - 1;
            if t.len() < need {
                t.resize(need, Poly::zero(&ring));
            }
            for (i, di) in dd.iter().enumerate() {
                if di.is_zero() {
                    continue;
                }
                for (j, c) in self.u0.iter().enumerate() {
                    if !c.is_zero() {
                        t[i + j] = &t[i + j] - &di.scale(c);
                    }
                }
            }
            debug_assert!(t[..k].iter().all(Poly::is_zero), "division by s^k must be exact");
            let mut ed: SPoly = t.split_off(k);
            while ed.last().is_some_and(Poly::is_zero) {
                ed.pop();
            }
            self.d_parts.push(dd);
            self.e_parts.push(ed);
        }
    }

    /// Coefficients `a_1, ..., a_k` of `D = s^k + a_1 s^{k-1} + ... + a_k`,
    /// exact up to `w`-degree `n`.
    pub fn coefficients(&self, n: u32) -> Vec<TruncatedSeries> {
        assert!(self.d_parts.len() > n as usize, "lift before reading coefficients");
        (1..=self.k)
            .map(|i| {
                let mut acc = Poly::zero(&self.w_ring);
                for d in 1..=n as usize {
                    acc = &acc + &self.d_parts[d][self.k - i];
                }
                TruncatedSeries::new(acc, n).expect("positive truncation")
            })
            .collect()
    }
}

