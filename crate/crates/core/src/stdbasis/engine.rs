//! Sorted-term representation used inside the reduction loops.
//!
//! Terms are kept in ascending order under the active monomial order, so the
//! leading term is the last element and can be popped in O(1).

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::poly::{Monomial, MonomialOrder, Poly, Rational, Ring};

#[derive(Clone, Debug)]
pub(crate) struct SortedPoly {
    terms: Vec<(Monomial, Rational)>,
    /// Maximal total degree over all terms (for the ecart).
    max_degree: u32,
}

impl SortedPoly {
    pub fn from_poly(p: &Poly, order: MonomialOrder) -> Self {
        let mut terms: Vec<(Monomial, Rational)> =
            p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
        Self::from_sorted(terms)
    }

    fn from_sorted(terms: Vec<(Monomial, Rational)>) -> Self {
        let max_degree = terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
        SortedPoly { terms, max_degree }
    }

    pub fn to_poly(&self, ring: &Ring) -> Poly {
        Poly::from_terms(ring, self.terms.iter().cloned())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms.last().expect("leading monomial of zero").0
    }

    pub fn lc(&self) -> &Rational {
        &self.terms.last().expect("leading coefficient of zero").1
    }

    /// Total degree of the polynomial minus the degree of its leading monomial.
    pub fn ecart(&self) -> u32 {
        self.max_degree - self.lm().degree()
    }

    pub fn make_monic(&mut self) {
        if self.is_zero() {
            return;
        }
        let inv = Rational::one() / self.lc().clone();
        if inv.is_one() {
            return;
        }
        for (_, c) in &mut self.terms {
            *c *= &inv;
        }
    }

    /// `self - coef * mono * other`, merging the two ascending term lists.
    pub fn sub_scaled(
        &self,
        coef: &Rational,
        mono: &Monomial,
        other: &SortedPoly,
        order: MonomialOrder,
    ) -> SortedPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|(m, c)| (m.mul(mono), c * coef)).peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (Some(x), Some(y)) => order.cmp(&x.0, &y.0),
            };
            match ord {
                Ordering::Less => out.push(a.next().unwrap().clone()),
                Ordering::Greater => {
                    let (m, c) = b.next().unwrap();
                    out.push((m, -c));
                }
                Ordering::Equal => {
                    let (m, c) = a.next().unwrap();
                    let (_, d) = b.next().unwrap();
                    let s = c - d;
                    if !s.is_zero() {
                        out.push((m.clone(), s));
                    }
                }
            }
        }
        SortedPoly::from_sorted(out)
    }

    /// Cancels the leading term of `self` against the leading term of `g`;
    /// requires `lm(g) | lm(self)`.
    pub fn reduce_lead_by(&self, g: &SortedPoly, order: MonomialOrder) -> SortedPoly {
        let mono = g.lm().quotient_of(self.lm()).expect("reductor must divide");
        let coef = self.lc() / g.lc();
        self.sub_scaled(&coef, &mono, g, order)
    }

    pub fn s_poly(f: &SortedPoly, g: &SortedPoly, order: MonomialOrder) -> SortedPoly {
        let l = f.lm().lcm(g.lm());
        let mf = f.lm().quotient_of(&l).unwrap();
        let mg = g.lm().quotient_of(&l).unwrap();
        let lhs = SortedPoly::zero().sub_scaled(&-(Rational::one() / f.lc()), &mf, f, order);
        lhs.sub_scaled(&(Rational::one() / g.lc()), &mg, g, order)
    }

    pub fn zero() -> SortedPoly {
        SortedPoly { terms: Vec::new(), max_degree: 0 }
    }

    /// Drops the terms of total degree `>= bound`.
    pub fn truncate(&mut self, bound: u32) {
        if self.max_degree >= bound {
            self.terms.retain(|(m, _)| m.degree() < bound);
            self.max_degree = self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
        }
    }

    /// Full reduction: every term of the result is irreducible by the leading
    /// monomials of `basis`. Needs a well-founded order on the terms that can
    /// occur, so local orders require a degree `bound`.
    pub fn reduce_full(&self, basis: &[&SortedPoly], order: MonomialOrder, bound: Option<u32>) -> SortedPoly {
        let mut irreducible: Vec<(Monomial, Rational)> = Vec::new();
        let mut work = self.clone();
        if let Some(b) = bound {
            work.truncate(b);
        }
        while let Some((m, _)) = work.terms.last() {
            match basis.iter().find(|g| g.lm().divides(m)) {
                Some(g) => {
                    work = work.reduce_lead_by(g, order);
                    if let Some(b) = bound {
                        work.truncate(b);
                    }
                }
                None => {
                    let t = work.terms.pop().unwrap();
                    irreducible.push(t);
                }
            }
        }
        irreducible.reverse();
        SortedPoly::from_sorted(irreducible)
    }
}
