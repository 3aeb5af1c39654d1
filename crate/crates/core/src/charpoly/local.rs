//! `P_{f,h}` straight from the local algebra, for pairs where global
//! elimination cannot tell the branches at the origin from branches coming
//! from other points of `V(f, h)`.
//!
//! `P_{f,h}` is the characteristic polynomial of multiplication by `h` on
//! `O_z`, a free `O_w`-module of rank `m_0` through `w = f(z)`. Along a line
//! `w = λ (1, γ)` this becomes the Artinian algebra
//! `O_z / (f_j - γ_j f_1, f_1^{N+1})` over `Q[λ]/λ^{N+1}` with `λ = f_1`, whose
//! multiplication matrices are found by exact linear algebra. The homogeneous
//! parts of each `a_i(w)` up to degree `N` are then interpolated from the
//! lines with `γ` on the grid `{γ ∈ N^{n-1} : |γ| <= N}`, which is unisolvent
//! for polynomials of degree `<= N`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{GermError, Result};
use crate::germ::Germ;
use crate::poly::{Monomial, MonomialOrder, Poly, Rational, Ring};
use crate::stdbasis::{staircase_monomials, truncated_standard_basis, IdealBasis};

const LOCAL: MonomialOrder = MonomialOrder::LocalAntigraded;

#[derive(Clone, PartialEq, Eq)]
struct Key(Monomial);

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        LOCAL.cmp(&self.0, &other.0)
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `O_z / J` for an ideal `J` that is primary to the maximal ideal locally.
pub(crate) struct Artinian {
    ring: Ring,
    /// Monic standard basis elements: leading monomial and the other terms.
    rules: Vec<(Monomial, Vec<(Monomial, Rational)>)>,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// Every monomial of higher degree lies in `J O_z`.
    top_degree: u32,
}

impl Artinian {
    /// `bound` must satisfy `m^bound ⊆ J O_z`.
    pub fn new(gens: Vec<Poly>, bound: u32) -> Result<Self> {
        let ring = gens[0].ring().clone();
        let sb = truncated_standard_basis(&IdealBasis::new(gens, LOCAL)?, bound)?;
        let basis = staircase_monomials(sb.leading_monomials(), ring.len())
            .ok_or_else(|| GermError::NotFinite("local quotient is not finite".into()))?;
        let top_degree = basis.iter().map(Monomial::degree).max().unwrap_or(0);
        let rules = sb
            .elements()
            .iter()
            .map(|g| {
                let terms = g.sorted_terms(LOCAL);
                let (lm, lc) = terms[0];
                let inv = Rational::one() / lc;
                let rest = terms[1..].iter().map(|(m, c)| ((*m).clone(), *c * &inv)).collect();
                (lm.clone(), rest)
            })
            .collect();
        let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Ok(Artinian { ring, rules, basis, index, top_degree })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Exact normal form: the unique combination of staircase monomials
    /// congruent to `p` modulo `J O_z`.
    ///
    /// Terms are processed from the largest down; rewriting a term only adds
    /// smaller ones, and terms above `top_degree` vanish.
    pub fn reduce(&self, p: &Poly) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        let mut work: BTreeMap<Key, Rational> = p
            .terms()
            .filter(|(m, _)| m.degree() <= self.top_degree)
            .map(|(m, c)| (Key(m.clone()), c.clone()))
            .collect();
        while let Some((Key(m), c)) = work.pop_last() {
            if let Some(&i) = self.index.get(&m) {
                out[i] = c;
                continue;
            }
            let (lm, rest) = self
                .rules
                .iter()
                .find(|(lm, _)| lm.divides(&m))
                .expect("monomials outside the staircase are leading monomials");
            let q = lm.quotient_of(&m).expect("divisible");
            for (t, tc) in rest {
                let t = t.mul(&q);
                if t.degree() > self.top_degree {
                    continue;
                }
                let key = Key(t);
                let v = work.entry(key.clone()).or_insert_with(Rational::zero);
                *v -= &c * tc;
                if v.is_zero() {
                    work.remove(&key);
                }
            }
        }
        out
    }

    pub fn to_poly(&self, coords: &[Rational]) -> Poly {
        Poly::from_terms(
            &self.ring,
            self.basis.iter().cloned().zip(coords.iter().cloned()).filter(|(_, c)| !c.is_zero()),
        )
    }
}

/// Solves `a x = b` for square nonsingular `a` (columns of `b` are separate
/// right-hand sides).
pub(crate) fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Vec<Rational>>) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = Rational::one() / &a[col][col];
        for x in a[col].iter_mut().chain(b[col].iter_mut()) {
            *x *= &inv;
        }
        let (prow_a, prow_b) = (a[col].clone(), b[col].clone());
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for (x, p) in a[r].iter_mut().zip(&prow_a).skip(col) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
            for (x, p) in b[r].iter_mut().zip(&prow_b) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
    }
    Some(b)
}

/// Truncated univariate series `Σ_{k<=N} c_k λ^k`.
type Series = Vec<Rational>;

fn series_mul(a: &Series, b: &Series) -> Series {
    let len = a.len();
    let mut out = vec![Rational::zero(); len];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Lower coefficients of `det(s I - M)` by Faddeev-LeVerrier.
fn charpoly_coefficients(m: &[Vec<Series>]) -> Vec<Series> {
    let k = m.len();
    let len = m[0][0].len();
    let zero = vec![Rational::zero(); len];
    let matmul = |a: &[Vec<Series>], b: &[Vec<Series>]| -> Vec<Vec<Series>> {
        (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        let mut acc = zero.clone();
                        for l in 0..k {
                            if a[i][l].iter().all(Zero::is_zero) || b[l][j].iter().all(Zero::is_zero) {
                                continue;
                            }
                            for (x, y) in acc.iter_mut().zip(series_mul(&a[i][l], &b[l][j])) {
                                *x += y;
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    };
    // a_i is the coefficient of s^{k-i}
    let mut coeffs = Vec::with_capacity(k);
    let mut acc: Vec<Vec<Series>> = m.to_vec();
    for step in 1..=k {
        let mut c = zero.clone();
        for (i, row) in acc.iter().enumerate() {
            for (x, y) in c.iter_mut().zip(&row[i]) {
                *x += y;
            }
        }
        let scale = -Rational::one() / Rational::from_integer(BigInt::from(step));
        for x in c.iter_mut() {
            *x *= &scale;
        }
        if step < k {
            for (i, row) in acc.iter_mut().enumerate() {
                for (x, y) in row[i].iter_mut().zip(&c) {
                    *x += y;
                }
            }
            acc = matmul(m, &acc);
        }
        coeffs.push(c);
    }
    coeffs
}

/// `a_1(λ v), ..., a_m(λ v)` for `v = (1, γ)`, truncated at `λ^{N+1}`.
fn along_line(f: &Germ, h: &Poly, staircase: &[Monomial], gamma: &[Rational], n_trunc: u32) -> Result<Vec<Series>> {
    let ring = f.ring();
    let f1 = &f.components()[0];
    let mut gens: Vec<Poly> = f.components()[1..]
        .iter()
        .zip(gamma)
        .map(|(fj, g)| fj - &f1.scale(g))
        .filter(|p| !p.is_zero())
        .collect();
    gens.push(f1.pow(n_trunc + 1));
    // m^{d+1} ⊆ (f) for the top staircase degree d, so m^{(d+1)(N+1)} ⊆ (f)^{N+1}
    let top = staircase.iter().map(Monomial::degree).max().unwrap_or(0);
    let alg = Artinian::new(gens, (top + 1) * (n_trunc + 1))?;
    let m = staircase.len();
    let len = n_trunc as usize + 1;
    if alg.dim() != m * len {
        return Err(GermError::ValidationFailed(format!(
            "local algebra along a line has dimension {}, expected {}",
            alg.dim(),
            m * len
        )));
    }
    // columns f_1^k z^α, ordered by (k, α)
    let mut columns: Vec<Vec<Rational>> = vec![Vec::new(); m * len];
    for (a, alpha) in staircase.iter().enumerate() {
        let mut cur = alg.reduce(&Poly::term(ring, alpha.clone(), Rational::one()));
        for k in 0..len {
            if k > 0 {
                cur = alg.reduce(&(&alg.to_poly(&cur) * f1));
            }
            columns[k * m + a] = cur.clone();
        }
    }
    let d = m * len;
    let t: Vec<Vec<Rational>> = (0..d).map(|r| (0..d).map(|c| columns[c][r].clone()).collect()).collect();
    let images: Vec<Vec<Rational>> = staircase
        .iter()
        .map(|alpha| alg.reduce(&(h * &Poly::term(ring, alpha.clone(), Rational::one()))))
        .collect();
    let rhs: Vec<Vec<Rational>> = (0..d).map(|r| images.iter().map(|v| v[r].clone()).collect()).collect();
    let x = solve(t, rhs).ok_or_else(|| GermError::ValidationFailed("staircase is not a module basis".into()))?;
    let mat: Vec<Vec<Series>> = (0..m)
        .map(|row| (0..m).map(|col| (0..len).map(|k| x[k * m + row][col].clone()).collect()).collect())
        .collect();
    Ok(charpoly_coefficients(&mat))
}

fn grid(dim: usize, total: u32) -> Vec<Vec<u32>> {
    if dim == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in grid(dim - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `a_1, ..., a_m` of `P_{f,h}`, each exact up to `w`-degree `n_trunc`.
pub(crate) fn local_coefficients(f: &Germ, h: &Poly, staircase_leading: &[Monomial], n_trunc: u32) -> Result<Vec<Poly>> {
    let n = f.n();
    let staircase = staircase_monomials(staircase_leading, n)
        .ok_or_else(|| GermError::NotFinite("the zero at the origin is not isolated".into()))?;
    let m = staircase.len();
    let len = n_trunc as usize + 1;
    let points = grid(n - 1, n_trunc);
    let lines = points
        .par_iter()
        .map(|g| {
            let gamma: Vec<Rational> = g.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect();
            along_line(f, h, &staircase, &gamma, n_trunc)
        })
        .collect::<Result<Vec<_>>>()?;

    // interpolate: value at γ of the degree-d part of a_i, dehomogenized at w_1 = 1
    let exps = &points;
    let vander: Vec<Vec<Rational>> = points
        .iter()
        .map(|g| {
            exps.iter()
                .map(|e| {
                    let v: BigInt = g.iter().zip(e).map(|(&x, &k)| num_traits::pow(BigInt::from(x), k as usize)).product();
                    Rational::from_integer(v)
                })
                .collect()
        })
        .collect();
    let rhs: Vec<Vec<Rational>> = lines
        .iter()
        .map(|line| (0..m).flat_map(|i| (0..len).map(move |d| line[i][d].clone())).collect())
        .collect();
    let sol = solve(vander, rhs).ok_or_else(|| GermError::Internal("interpolation grid is singular".into()))?;

    let w_ring = Ring::new((1..=n).map(|i| format!("w{i}")));
    (0..m)
        .map(|i| {
            let mut terms = Vec::new();
            for d in 0..len {
                for (row, e) in exps.iter().enumerate() {
                    let c = &sol[row][i * len + d];
                    if c.is_zero() {
                        continue;
                    }
                    let rest: u32 = e.iter().sum();
                    if rest as usize > d {
                        return Err(GermError::Internal("interpolated part exceeds its degree".into()));
                    }
                    let mut ex = vec![d as u32 - rest];
                    ex.extend_from_slice(e);
                    terms.push((Monomial::new(ex), c.clone()));
                }
            }
            Ok(Poly::from_terms(&w_ring, terms))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germ::multiplicity;
    use crate::poly::parse_poly;

    fn germ(vars: &[&str], comps: &[&str]) -> Germ {
        let ring = Ring::new(vars.iter().copied());
        Germ::new(comps.iter().map(|c| parse_poly(c, &ring).unwrap()).collect()).unwrap()
    }

    fn coeffs(f: &Germ, h: &Poly, n: u32) -> Vec<Poly> {
        let lead = multiplicity(f).unwrap().standard_basis_leading_ideal;
        local_coefficients(f, h, &lead, n).unwrap()
    }

    #[test]
    fn artinian_normal_form() {
        let r = Ring::new(["x"]);
        let p = |s: &str| parse_poly(s, &r).unwrap();
        // x (1 - x - x^2) is x times a unit
        let alg = Artinian::new(vec![p("x - x^2 - x^3")], 1).unwrap();
        assert_eq!(alg.dim(), 1);
        let alg = Artinian::new(vec![p("x^3 - x^4")], 3).unwrap();
        assert_eq!(alg.dim(), 3);
        // x^3 = x^4 = ... = 0 in the local ring
        assert_eq!(alg.to_poly(&alg.reduce(&p("x^5 + 2*x^2 + x"))), p("2*x^2 + x"));
    }

    #[test]
    fn one_variable_roots_are_catalan_numbers() {
        let f = germ(&["z"], &["z - z^2"]);
        let a = coeffs(&f, &Poly::var(f.ring(), 0), 5);
        let w = Ring::new(["w1"]);
        assert_eq!(a, vec![parse_poly("-w1 - w1^2 - 2*w1^3 - 5*w1^4 - 14*w1^5", &w).unwrap()]);
    }

    #[test]
    fn agrees_with_exact_eliminant() {
        let f = germ(&["z1", "z2", "z3"], &["z1^2", "z2^3", "z3^3 - z1*z2"]);
        let z1 = Poly::var(f.ring(), 0);
        let a = coeffs(&f, &z1, 2);
        let exact = crate::charpoly::characteristic_polynomial(&f, &z1).unwrap().characteristic_coefficients();
        let trunc: Vec<Poly> = exact.iter().map(|c| c.truncate(2)).collect();
        assert_eq!(a, trunc);
    }

    #[test]
    fn local_branch_is_separated_from_far_zeros() {
        // f vanishes also at (-2, 0, 0), where h = z3 vanishes too
        let f = germ(&["z1", "z2", "z3"], &["2*z1 + z1^2", "z2^3", "-z2 + z3^3 - z1*z2"]);
        let z3 = Poly::var(f.ring(), 2);
        let a = coeffs(&f, &z3, 1);
        assert_eq!(a.len(), 9);
        assert_eq!(a[8].ord().finite(), Some(1));
        let e = crate::lojexp::exponent_from_coefficients(&a, Some(1)).unwrap();
        assert_eq!(e.value, Rational::new(1.into(), 9.into()));
    }
}
