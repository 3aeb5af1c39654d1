//! Gröbner bases for global orders, standard bases for the local order,
//! and quotient dimensions read off the staircase.

mod engine;
mod staircase;

use std::cmp::Ordering;

use num_traits::One;

use crate::error::{GermError, Result};
use crate::poly::{cmp_by_leading, Monomial, MonomialOrder, Poly, Rational, Ring};
use engine::SortedPoly;

pub use staircase::{staircase_count, staircase_dimension, staircase_monomials, QuotientDimension};

/// Generators of an ideal together with the order used to compute with it.
#[derive(Clone, Debug)]
pub struct IdealBasis {
    generators: Vec<Poly>,
    order: MonomialOrder,
}

impl IdealBasis {
    pub fn new(generators: Vec<Poly>, order: MonomialOrder) -> Result<Self> {
        let first = generators
            .first()
            .ok_or_else(|| GermError::invalid("ideal basis needs at least one generator"))?;
        let ring = first.ring().clone();
        for g in &generators {
            if g.ring() != &ring {
                return Err(GermError::invalid("generators live in different rings"));
            }
            if g.is_zero() {
                return Err(GermError::invalid("zero generator in ideal basis"));
            }
        }
        if let MonomialOrder::BlockElimination(k) = order {
            if k > ring.len() {
                return Err(GermError::invalid("block size exceeds variable count"));
            }
        }
        Ok(IdealBasis { generators, order })
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn ring(&self) -> &Ring {
        self.generators[0].ring()
    }
}

/// Output of [`buchberger`] or [`standard_basis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardBasis {
    elements: Vec<Poly>,
    order: MonomialOrder,
    leading_monomials: Vec<Monomial>,
    ring: Ring,
}

impl StandardBasis {
    fn from_sorted(ring: &Ring, order: MonomialOrder, polys: Vec<SortedPoly>) -> Self {
        let mut elements: Vec<Poly> = polys.iter().map(|p| p.to_poly(ring)).collect();
        elements.sort_by(|a, b| cmp_by_leading(order, a, b));
        let leading_monomials = elements
            .iter()
            .map(|p| p.leading_monomial(order).unwrap().clone())
            .collect();
        StandardBasis { elements, order, leading_monomials, ring: ring.clone() }
    }

    pub fn elements(&self) -> &[Poly] {
        &self.elements
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leading_monomials
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Normal form with respect to this basis: full reduction for global
    /// orders, Mora's weak normal form for the local order.
    pub fn normal_form(&self, p: &Poly) -> Result<Poly> {
        if self.order.is_local() {
            mora_normal_form(p, &self.elements, self.order)
        } else {
            if p.ring() != &self.ring {
                return Err(GermError::invalid("polynomial is not in the basis ring"));
            }
            let sorted: Vec<SortedPoly> =
                self.elements.iter().map(|g| SortedPoly::from_poly(g, self.order)).collect();
            let refs: Vec<&SortedPoly> = sorted.iter().collect();
            Ok(SortedPoly::from_poly(p, self.order).reduce_full(&refs, self.order, None).to_poly(&self.ring))
        }
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Normal selection strategy: smallest lcm degree, then the order, then indices.
fn select_pair(pairs: &mut Vec<Pair>, order: MonomialOrder) -> Option<Pair> {
    if pairs.is_empty() {
        return None;
    }
    let mut best = 0;
    for k in 1..pairs.len() {
        let (a, b) = (&pairs[k], &pairs[best]);
        let c = a
            .lcm
            .degree()
            .cmp(&b.lcm.degree())
            .then_with(|| order.cmp(&a.lcm, &b.lcm))
            .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)));
        if c == Ordering::Less {
            best = k;
        }
    }
    Some(pairs.swap_remove(best))
}

/// Gebauer–Möller installation of a new basis element `h` (product and chain
/// criteria).
fn update(polys: &[SortedPoly], active: &mut [bool], pairs: &mut Vec<Pair>, h: usize) {
    let lh = polys[h].lm().clone();
    let candidates: Vec<usize> = (0..h).filter(|&g| active[g]).collect();
    let lcm_with = |g: usize| lh.lcm(polys[g].lm());

    let mut kept: Vec<usize> = Vec::new();
    for (idx, &g1) in candidates.iter().enumerate() {
        let l1 = lcm_with(g1);
        if lh.is_coprime(polys[g1].lm()) {
            kept.push(g1);
            continue;
        }
        let dominated = candidates[idx + 1..]
            .iter()
            .chain(kept.iter())
            .any(|&g2| lcm_with(g2).divides(&l1));
        if !dominated {
            kept.push(g1);
        }
    }

    pairs.retain(|p| {
        !(lh.divides(&p.lcm)
            && polys[p.i].lm().lcm(&lh) != p.lcm
            && lh.lcm(polys[p.j].lm()) != p.lcm)
    });
    for g in kept {
        if !lh.is_coprime(polys[g].lm()) {
            pairs.push(Pair { i: g, j: h, lcm: lcm_with(g) });
        }
    }
    for g in 0..h {
        if active[g] && lh.divides(polys[g].lm()) {
            active[g] = false;
        }
    }
}

/// Reduced Gröbner basis for a global order (lex, degrevlex or block
/// elimination).
pub fn buchberger(basis: &IdealBasis) -> Result<StandardBasis> {
    let order = basis.order();
    if order.is_local() {
        return Err(GermError::invalid("buchberger needs a global order"));
    }
    let polys = buchberger_loop(basis.generators(), order, None);
    Ok(StandardBasis::from_sorted(basis.ring(), order, polys))
}

/// Standard basis of `I O_z` under the local order, given `bound` with
/// `m^bound ⊆ I O_z` (any bound at least the colength works).
///
/// Terms of degree `>= bound` are dropped throughout. On the remaining finite
/// set of monomials the local order is well-founded, so the global Buchberger
/// loop with full reduction applies and no ecart bookkeeping is needed.
pub fn truncated_standard_basis(basis: &IdealBasis, bound: u32) -> Result<StandardBasis> {
    let order = basis.order();
    if !order.is_local() {
        return Err(GermError::invalid("truncated_standard_basis needs the local order"));
    }
    if bound == 0 {
        return Err(GermError::invalid("degree bound must be positive"));
    }
    let ring = basis.ring();
    let mut polys = buchberger_loop(basis.generators(), order, Some(bound));
    // the pure powers are in the ideal but vanish under truncation
    for i in 0..ring.len() {
        let power = Monomial::pure_power(ring.len(), i, bound);
        if !polys.iter().any(|g| g.lm().divides(&power)) {
            polys.push(SortedPoly::from_poly(&Poly::term(ring, power, Rational::one()), order));
        }
    }
    Ok(StandardBasis::from_sorted(ring, order, polys))
}

fn buchberger_loop(generators: &[Poly], order: MonomialOrder, bound: Option<u32>) -> Vec<SortedPoly> {
    let mut polys: Vec<SortedPoly> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let install = |mut h: SortedPoly, polys: &mut Vec<SortedPoly>, active: &mut Vec<bool>, pairs: &mut Vec<Pair>| {
        h.make_monic();
        polys.push(h);
        active.push(true);
        let idx = polys.len() - 1;
        update(polys, active, pairs, idx);
    };

    for g in generators {
        let sp = SortedPoly::from_poly(g, order);
        let reducers: Vec<&SortedPoly> =
            polys.iter().zip(&active).filter(|(_, a)| **a).map(|(p, _)| p).collect();
        let h = sp.reduce_full(&reducers, order, bound);
        if !h.is_zero() {
            install(h, &mut polys, &mut active, &mut pairs);
        }
    }

    while let Some(pair) = select_pair(&mut pairs, order) {
        let s = SortedPoly::s_poly(&polys[pair.i], &polys[pair.j], order);
        let reducers: Vec<&SortedPoly> =
            polys.iter().zip(&active).filter(|(_, a)| **a).map(|(p, _)| p).collect();
        let h = s.reduce_full(&reducers, order, bound);
        if !h.is_zero() {
            install(h, &mut polys, &mut active, &mut pairs);
        }
    }

    interreduce(polys, active, order, bound)
}

/// Drops non-minimal elements and fully reduces each survivor by the others.
fn interreduce(polys: Vec<SortedPoly>, active: Vec<bool>, order: MonomialOrder, bound: Option<u32>) -> Vec<SortedPoly> {
    let live: Vec<SortedPoly> =
        polys.into_iter().zip(active).filter(|(_, a)| *a).map(|(p, _)| p).collect();
    let mut minimal: Vec<SortedPoly> = Vec::new();
    for (k, p) in live.iter().enumerate() {
        let redundant = live.iter().enumerate().any(|(l, q)| {
            l != k && q.lm().divides(p.lm()) && (q.lm() != p.lm() || l < k)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<&SortedPoly> =
            minimal.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, p)| p).collect();
        // the leading term survives: no other leading monomial divides it
        let mut r = minimal[k].reduce_full(&others, order, bound);
        r.make_monic();
        out.push(r);
    }
    out
}

/// Mora's weak normal form of `p` with respect to `basis` under the local
/// order.
///
/// There is a unit `u` (not returned) with `u*p - result` in the ideal; the
/// leading monomial of a nonzero result is divisible by no leading monomial
/// of `basis`.
pub fn mora_normal_form(p: &Poly, basis: &[Poly], order: MonomialOrder) -> Result<Poly> {
    if !order.is_local() {
        return Err(GermError::invalid("mora_normal_form needs the local order"));
    }
    let ring = p.ring();
    if basis.iter().any(|g| g.ring() != ring) {
        return Err(GermError::invalid("basis and polynomial live in different rings"));
    }
    let sorted: Vec<SortedPoly> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| SortedPoly::from_poly(g, order))
        .collect();
    Ok(nf_mora(SortedPoly::from_poly(p, order), &sorted, order).to_poly(ring))
}

fn nf_mora(f: SortedPoly, basis: &[SortedPoly], order: MonomialOrder) -> SortedPoly {
    let mut extra: Vec<SortedPoly> = Vec::new();
    let mut h = f;
    while !h.is_zero() {
        let lm = h.lm().clone();
        let pick = basis
            .iter()
            .chain(extra.iter())
            .filter(|g| g.lm().divides(&lm))
            .min_by_key(|g| g.ecart())
            .cloned();
        let Some(g) = pick else { break };
        if g.ecart() > h.ecart() {
            extra.push(h.clone());
        }
        h = h.reduce_lead_by(&g, order);
    }
    h
}

/// Largest degree bound tried by the truncated pass of [`standard_basis`].
const MAX_TRUNCATED_BOUND: u32 = 32;

/// Standard basis under the local order.
///
/// First a truncated pass: for growing `B` a standard basis of `I + m^B` is
/// computed; once every staircase monomial has degree at most `B - 2`,
/// `m^(B-1) ⊆ I + m^B`, so `m^(B-1) ⊆ I O_z` by Nakayama and the truncated
/// basis is a standard basis of `I O_z`. Otherwise (a non-isolated zero, or a
/// large colength) the generators are homogenized with an extra last
/// variable `h` and a Gröbner basis is computed for `HomogenizedLocal`. On
/// homogeneous polynomials of one degree that order ranks terms exactly as
/// the local order ranks their dehomogenizations, so setting `h = 1` yields
/// a standard basis of `I O_z`.
pub fn standard_basis(basis: &IdealBasis) -> Result<StandardBasis> {
    let order = basis.order();
    if !order.is_local() {
        return Err(GermError::invalid("standard_basis needs the local order"));
    }
    let ring = basis.ring().clone();
    let n = ring.len();
    let ord = basis.generators().iter().filter_map(|g| g.ord().finite()).max().unwrap_or(1);
    let mut bound = 2 * ord + 2;
    while bound <= MAX_TRUNCATED_BOUND {
        let sb = truncated_standard_basis(basis, bound)?;
        let settled = staircase_monomials(sb.leading_monomials(), n)
            .is_some_and(|stairs| stairs.iter().all(|m| m.degree() + 2 <= bound));
        if settled {
            return Ok(sb);
        }
        bound *= 2;
    }
    homogenized_standard_basis(basis)
}

fn homogenized_standard_basis(basis: &IdealBasis) -> Result<StandardBasis> {
    let order = basis.order();
    let ring = basis.ring().clone();
    let n = ring.len();
    let hring = Ring::new(ring.names().iter().cloned().chain(std::iter::once(String::from("_h"))));
    let homogeneous: Vec<Poly> = basis
        .generators()
        .iter()
        .map(|g| {
            let d = g.total_degree().unwrap_or(0);
            Poly::from_terms(
                &hring,
                g.terms().map(|(m, c)| {
                    let mut e = m.exponents().to_vec();
                    e.push(d - m.degree());
                    (Monomial::new(e), c.clone())
                }),
            )
        })
        .collect();
    let polys: Vec<SortedPoly> = buchberger_loop(&homogeneous, MonomialOrder::HomogenizedLocal, None)
        .into_iter()
        .map(|g| {
            let p = g.to_poly(&hring);
            let affine = Poly::from_terms(
                &ring,
                p.terms().map(|(m, c)| (Monomial::new(m.exponents()[..n].to_vec()), c.clone())),
            );
            let mut sp = SortedPoly::from_poly(&affine, order);
            sp.make_monic();
            sp
        })
        .collect();
    // keep one element per minimal leading monomial
    let mut keep: Vec<SortedPoly> = Vec::new();
    for (k, p) in polys.iter().enumerate() {
        let redundant = polys.iter().enumerate().any(|(l, q)| {
            l != k && q.lm().divides(p.lm()) && (q.lm() != p.lm() || l < k)
        });
        if !redundant {
            keep.push(p.clone());
        }
    }
    Ok(StandardBasis::from_sorted(&ring, order, keep))
}
