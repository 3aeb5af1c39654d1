use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, MonomialOrder};
use super::Rational;
use crate::error::{GermError, Result};

/// Ordered list of variable names shared by every polynomial of a ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring(Arc<[String]>);

impl Ring {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        Ring(names.into_iter().map(Into::into).collect::<Vec<_>>().into())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    fn same(&self, other: &Ring) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

/// Order of vanishing at the origin; `Infinite` is the order of `0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Valuation::Infinite
    }
}

impl Add for Valuation {
    type Output = Valuation;

    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// Sparse polynomial with exact rational coefficients.
///
/// Terms live in a `BTreeMap` keyed by exponent vector, so two polynomials
/// are equal exactly when they have the same ring and the same terms. No
/// zero coefficient is ever stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    ring: Ring,
    terms: BTreeMap<Monomial, Rational>,
}

fn ring_mismatch(a: &Ring, b: &Ring) -> GermError {
    GermError::invalid(format!(
        "ring mismatch: [{}] vs [{}]",
        a.names().join(","),
        b.names().join(",")
    ))
}

impl Poly {
    pub fn zero(ring: &Ring) -> Self {
        Poly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Ring, c: Rational) -> Self {
        Self::term(ring, Monomial::one(ring.len()), c)
    }

    pub fn var(ring: &Ring, index: usize) -> Self {
        Self::term(ring, Monomial::var(ring.len(), index), Rational::one())
    }

    pub fn term(ring: &Ring, mono: Monomial, coef: Rational) -> Self {
        assert_eq!(mono.len(), ring.len(), "monomial length does not match ring");
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(mono, coef);
        }
        Poly { ring: ring.clone(), terms }
    }

    /// Sums the given terms; repeated monomials are combined.
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.len(), ring.len(), "monomial length does not match ring");
            if c.is_zero() {
                continue;
            }
            match map.entry(m) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += c;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
            }
        }
        Poly { ring: ring.clone(), terms: map }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn coefficient(&self, mono: &Monomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.nvars()))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Minimal total degree of a term; `Infinite` for the zero polynomial.
    pub fn ord(&self) -> Valuation {
        self.terms
            .keys()
            .map(Monomial::degree)
            .min()
            .map_or(Valuation::Infinite, Valuation::Finite)
    }

    /// Terms sorted from largest to smallest under `order`.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn leading_monomial(&self, order: MonomialOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|(m, _)| m)
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        if !self.ring.same(&other.ring) {
            return Err(ring_mismatch(&self.ring, &other.ring));
        }
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_into(&mut terms, m.clone(), c.clone());
        }
        Ok(Poly { ring: self.ring.clone(), terms })
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        if !self.ring.same(&other.ring) {
            return Err(ring_mismatch(&self.ring, &other.ring));
        }
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_into(&mut terms, m.clone(), -c.clone());
        }
        Ok(Poly { ring: self.ring.clone(), terms })
    }

    /// Exact product; errors when the operands live in different rings.
    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        if !self.ring.same(&other.ring) {
            return Err(ring_mismatch(&self.ring, &other.ring));
        }
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                add_into(&mut terms, ma.mul(mb), ca * cb);
            }
        }
        Ok(Poly { ring: self.ring.clone(), terms })
    }

    /// Product keeping only terms of total degree `<= max_degree`.
    pub fn mul_truncated(&self, other: &Poly, max_degree: u32) -> Result<Poly> {
        if !self.ring.same(&other.ring) {
            return Err(ring_mismatch(&self.ring, &other.ring));
        }
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            let da = ma.degree();
            if da > max_degree {
                continue;
            }
            for (mb, cb) in &other.terms {
                if da + mb.degree() <= max_degree {
                    add_into(&mut terms, ma.mul(mb), ca * cb);
                }
            }
        }
        Ok(Poly { ring: self.ring.clone(), terms })
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.mul(mono), a * c)).collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.ring);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponents()[var];
            if e == 0 {
                return None;
            }
            let mut ex = m.exponents().to_vec();
            ex[var] -= 1;
            Some((Monomial::new(ex), c * Rational::from_integer(BigInt::from(e))))
        });
        Poly::from_terms(&self.ring, terms)
    }

    /// Drops all terms of total degree greater than `max_degree`.
    pub fn truncate(&self, max_degree: u32) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= max_degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn homogeneous_part(&self, degree: u32) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Highest power of `var` occurring, `None` for zero.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exponents()[var]).max()
    }

    /// Splits by powers of `var`: entry `k` is the coefficient of `var^k`,
    /// still expressed in this ring but free of `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Poly> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out: Vec<BTreeMap<Monomial, Rational>> = vec![BTreeMap::new(); deg + 1];
        for (m, c) in &self.terms {
            let mut ex = m.exponents().to_vec();
            let k = ex[var] as usize;
            ex[var] = 0;
            out[k].insert(Monomial::new(ex), c.clone());
        }
        out.into_iter().map(|t| Poly { ring: self.ring.clone(), terms: t }).collect()
    }

    /// Substitutes `images[i]` for variable `i`. Every variable that occurs in
    /// `self` needs an image; all images must live in `target`.
    pub fn compose(&self, images: &[Option<Poly>], target: &Ring) -> Result<Poly> {
        if images.len() != self.nvars() {
            return Err(GermError::invalid(format!(
                "substitution has {} entries for {} variables",
                images.len(),
                self.nvars()
            )));
        }
        for img in images.iter().flatten() {
            if !img.ring.same(target) {
                return Err(ring_mismatch(&img.ring, target));
            }
        }
        let mut powers: Vec<Vec<Poly>> = images
            .iter()
            .map(|_| vec![Poly::one(target)])
            .collect();
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut prod = Poly::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let img = images[i].as_ref().ok_or_else(|| {
                    GermError::invalid(format!("variable {} is not assigned", self.ring.name(i)))
                })?;
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap() * img;
                    cache.push(next);
                }
                prod = &prod * &cache[e as usize];
            }
            for (pm, pc) in prod.terms {
                add_into(&mut acc, pm, pc);
            }
        }
        Ok(Poly { ring: target.clone(), terms: acc })
    }

    /// Substitution by variable name, as in `p(z1 := ..., z2 := ...)`.
    pub fn substitute(&self, assignment: &BTreeMap<String, Poly>) -> Result<Poly> {
        let target = match assignment.values().next() {
            Some(p) => p.ring.clone(),
            None if self.is_constant() => return Ok(self.clone()),
            None => return Err(GermError::invalid("empty substitution")),
        };
        let images: Vec<Option<Poly>> = self
            .ring
            .names()
            .iter()
            .map(|n| assignment.get(n).cloned())
            .collect();
        for name in assignment.keys() {
            if self.ring.index_of(name).is_none() {
                return Err(GermError::invalid(format!("unknown variable {name} in substitution")));
            }
        }
        self.compose(&images, &target)
    }

    /// Re-expresses the polynomial in `target`, sending variable `i` to
    /// variable `positions[i]` of `target`.
    pub fn embed(&self, target: &Ring, positions: &[usize]) -> Poly {
        assert_eq!(positions.len(), self.nvars());
        let terms = self.terms.iter().map(|(m, c)| {
            let mut ex = vec![0; target.len()];
            for (i, &e) in m.exponents().iter().enumerate() {
                ex[positions[i]] += e;
            }
            (Monomial::new(ex), c.clone())
        });
        Poly::from_terms(target, terms)
    }

    /// Sets the listed variables to constants and drops them from the ring.
    pub fn specialize(&self, values: &[(usize, Rational)], target: &Ring) -> Poly {
        let fixed: BTreeMap<usize, &Rational> = values.iter().map(|(i, v)| (*i, v)).collect();
        let keep: Vec<usize> = (0..self.nvars()).filter(|i| !fixed.contains_key(i)).collect();
        assert_eq!(keep.len(), target.len(), "target ring size mismatch");
        let mut acc = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            for (&i, v) in &fixed {
                let e = m.exponents()[i];
                if e > 0 {
                    coef *= num_traits::pow((*v).clone(), e as usize);
                }
            }
            if coef.is_zero() {
                continue;
            }
            let ex: Vec<u32> = keep.iter().map(|&i| m.exponents()[i]).collect();
            add_into(&mut acc, Monomial::new(ex), coef);
        }
        Poly { ring: target.clone(), terms: acc }
    }

    /// Scales to coprime integer coefficients. The sign is left unchanged.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            let v = c.numer() * (&den_lcm / c.denom());
            num_gcd = num_gcd.gcd(&v);
        }
        let factor = Rational::new(den_lcm, num_gcd.abs());
        self.scale(&factor)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }
}

pub(crate) fn add_into(terms: &mut BTreeMap<Monomial, Rational>, m: Monomial, c: Rational) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("ring mismatch in +")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("ring mismatch in -")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("ring mismatch in *")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Orders polynomials by their leading monomials; used only for sorting
/// bases into a reproducible sequence.
pub(crate) fn cmp_by_leading(order: MonomialOrder, a: &Poly, b: &Poly) -> Ordering {
    match (a.leading_monomial(order), b.leading_monomial(order)) {
        (Some(x), Some(y)) => order.cmp(x, y),
        (None, None) => Ordering::Equal,
        (None, _) => Ordering::Less,
        (_, None) => Ordering::Greater,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use proptest::prelude::*;

    fn ring3() -> Ring {
        Ring::new(["z1", "z2", "z3"])
    }

    fn p(s: &str, r: &Ring) -> Poly {
        parse_poly(s, r).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = ring3();
        assert_eq!(&p("z1+z2", &r) * &p("z1-z2", &r), p("z1^2-z2^2", &r));
        assert!((&p("z1+z2", &r) * &Poly::zero(&r)).is_zero());
    }

    #[test]
    fn mul_ring_mismatch() {
        let a = Poly::var(&ring3(), 0);
        let b = Poly::var(&Ring::new(["x"]), 0);
        assert!(matches!(a.checked_mul(&b), Err(GermError::InvalidInput(_))));
    }

    #[test]
    fn sixth_power_coefficient() {
        let r = Ring::new(["w1", "w2", "w3", "s"]);
        let e = p("s^3 - w3", &r).pow(6);
        let m = Monomial::new(vec![0, 0, 1, 15]);
        assert_eq!(e.coefficient(&m), Rational::from_integer((-6).into()));
    }

    #[test]
    fn orders() {
        let r = ring3();
        assert_eq!(p("z3^3 - z1*z2", &r).ord(), Valuation::Finite(2));
        assert_eq!(Poly::zero(&r).ord(), Valuation::Infinite);
        let w = Ring::new(["w1", "w2", "w3"]);
        assert_eq!(p("w3^6 - w1^3*w2^2", &w).ord(), Valuation::Finite(5));
    }

    #[test]
    fn substitution_along_arc() {
        let r = ring3();
        let s = Ring::new(["s"]);
        let f = p("z3^3 - z1*z2", &r);
        let mut a = BTreeMap::new();
        a.insert("z1".to_string(), p("s^9", &s));
        a.insert("z2".to_string(), p("s^6", &s));
        a.insert("z3".to_string(), p("s^5", &s));
        assert!(f.substitute(&a).unwrap().is_zero());
    }

    #[test]
    fn identity_substitution() {
        let r = ring3();
        let f = p("z3^3 - z1*z2 + 1/2*z1", &r);
        let a: BTreeMap<String, Poly> =
            (0..3).map(|i| (r.name(i).to_string(), Poly::var(&r, i))).collect();
        assert_eq!(f.substitute(&a).unwrap(), f);
    }

    #[test]
    fn translation_specialized_at_zero() {
        let r = Ring::new(["t", "z1"]);
        let z = Ring::new(["z1"]);
        let g = p("z1^3 + 3*t*z1^2 + 3*t^2*z1", &r); // (z1+t)^3 - t^3
        let mut a = BTreeMap::new();
        a.insert("t".to_string(), Poly::zero(&z));
        a.insert("z1".to_string(), Poly::var(&z, 0));
        assert_eq!(g.substitute(&a).unwrap(), p("z1^3", &z));
    }

    #[test]
    fn unassigned_variable() {
        let r = ring3();
        let s = Ring::new(["s"]);
        let mut a = BTreeMap::new();
        a.insert("z1".to_string(), Poly::var(&s, 0));
        assert!(p("z1*z2", &r).substitute(&a).is_err());
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec((prop::collection::vec(0u32..3, 3), -3i64..4, 1i64..3), 0..5)
            .prop_map(|ts| {
                Poly::from_terms(
                    &ring3(),
                    ts.into_iter()
                        .map(|(e, n, d)| (Monomial::new(e), Rational::new(n.into(), d.into()))),
                )
            })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn ord_is_a_valuation(a in small_poly(), b in small_poly()) {
            prop_assert_eq!((&a * &b).ord(), a.ord() + b.ord());
            let s = (&a + &b).ord();
            prop_assert!(s >= a.ord().min(b.ord()));
            if a.ord() != b.ord() {
                prop_assert_eq!(s, a.ord().min(b.ord()));
            }
        }
    }
}
