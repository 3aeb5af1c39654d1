use num_traits::{One, Signed, Zero};

use super::univariate::{self, Dense};
use crate::error::{GermError, Result};
use crate::germ::Germ;
use crate::poly::{MonomialOrder, Poly, Rational, Ring};
use crate::stdbasis::{buchberger, IdealBasis};

/// Generator of the elimination ideal `⟨w - f(z), s - h(z)⟩ ∩ Q[w, s]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminantReport {
    /// Polynomial in `w_1, ..., w_n, s`, primitive over Z with positive
    /// leading coefficient in `s`.
    pub generator: Poly,
    pub principal: bool,
    /// The generator is already monic in `s` up to a constant and
    /// distinguished at the origin.
    pub distinguished_fast_path: bool,
}

/// The ring `w_1, ..., w_n, s` in which eliminants live.
pub fn ws_ring(n: usize) -> Ring {
    Ring::new((1..=n).map(|i| format!("w{i}")).chain(std::iter::once("s".to_string())))
}

/// Recognizes `h = c * z_j`; such an `h` lets `z_j` be replaced by `s / c`
/// instead of eliminating it.
fn as_scaled_coordinate(h: &Poly) -> Option<(usize, Rational)> {
    if !h.is_monomial() {
        return None;
    }
    let (m, c) = h.terms().next()?;
    match m.as_pure_power() {
        Some((j, 1)) => Some((j, c.clone())),
        _ => None,
    }
}

pub(crate) fn compute_eliminant(f: &Germ, h: &Poly) -> Result<EliminantReport> {
    let n = f.n();
    let zr = f.ring();
    let ws = ws_ring(n);

    let mut gens = Vec::with_capacity(n + 1);
    let (combined, images, block) = match as_scaled_coordinate(h) {
        Some((j, c)) => {
            let block = n - 1;
            let front = (0..n).filter(|&i| i != j).map(|i| zr.name(i).to_string());
            let combined = Ring::new(front.chain(ws.names().iter().cloned()));
            let s_var = Poly::var(&combined, block + n).scale(&(Rational::one() / &c));
            let images: Vec<Option<Poly>> = (0..n)
                .map(|i| match i.cmp(&j) {
                    std::cmp::Ordering::Equal => Some(s_var.clone()),
                    std::cmp::Ordering::Less => Some(Poly::var(&combined, i)),
                    std::cmp::Ordering::Greater => Some(Poly::var(&combined, i - 1)),
                })
                .collect();
            (combined, images, block)
        }
        None => {
            let combined = Ring::new(zr.names().iter().cloned().chain(ws.names().iter().cloned()));
            let images: Vec<Option<Poly>> = (0..n).map(|i| Some(Poly::var(&combined, i))).collect();
            let hz = h.compose(&images, &combined)?;
            gens.push(&Poly::var(&combined, 2 * n) - &hz);
            (combined, images, n)
        }
    };
    for (i, fi) in f.components().iter().enumerate() {
        let fz = fi.compose(&images, &combined)?;
        gens.push(&Poly::var(&combined, block + i) - &fz);
    }
    let gb = buchberger(&IdealBasis::new(gens, MonomialOrder::BlockElimination(block))?)?;
    let elim: Vec<&Poly> = gb
        .elements()
        .iter()
        .filter(|p| (0..block).all(|v| p.degree_in(v) == Some(0)))
        .collect();
    if elim.len() != 1 {
        return Err(GermError::NotPrincipal(format!(
            "elimination ideal has {} generators",
            elim.len()
        )));
    }
    let positions: Vec<usize> = (0..combined.len()).map(|i| i.saturating_sub(block)).collect();
    let generator = normalize(&elim[0].embed(&ws, &positions), n);
    let distinguished_fast_path = is_distinguished(&generator, n);
    Ok(EliminantReport { generator, principal: true, distinguished_fast_path })
}

/// Primitive over Z, with the leading term (degrevlex) of the top
/// `s`-coefficient positive.
fn normalize(g: &Poly, s: usize) -> Poly {
    let p = g.primitive();
    let top = p.coefficients_in(s).pop().unwrap_or_else(|| Poly::zero(p.ring()));
    match top.leading_term(MonomialOrder::DegRevLex) {
        Some((_, c)) if c.is_negative() => -&p,
        _ => p,
    }
}

/// Monic in `s` up to a nonzero constant, with every lower coefficient
/// vanishing at `w = 0`.
pub(crate) fn is_distinguished(g: &Poly, s: usize) -> bool {
    let coeffs = g.coefficients_in(s);
    let Some((top, rest)) = coeffs.split_last() else { return false };
    if coeffs.len() < 2 || !top.is_constant() || top.is_zero() {
        return false;
    }
    rest.iter().all(|c| c.constant_term().is_zero())
}

/// `G(w, s)` at a fixed rational point `w`, as a dense polynomial in `s`.
fn at_point(g: &Poly, s: usize, point: &[Rational]) -> Dense {
    let mut out = vec![Rational::zero(); g.degree_in(s).unwrap_or(0) as usize + 1];
    for (m, c) in g.terms() {
        let mut v = c.clone();
        for (i, &e) in m.exponents().iter().enumerate() {
            if i != s && e > 0 {
                v *= num_traits::pow(point[i].clone(), e as usize);
            }
        }
        out[m.exponents()[s] as usize] += v;
    }
    out
}

/// Checks `gcd(G, ∂G/∂s) = 1` by specializing `w` at a few fixed points.
pub(crate) fn check_squarefree(g: &Poly, s: usize) -> Result<()> {
    let deg = g.degree_in(s).unwrap_or(0) as usize;
    if deg == 0 {
        return Err(GermError::ValidationFailed("eliminant does not involve s".into()));
    }
    for trial in 0..16i64 {
        let point: Vec<Rational> = (0..s as i64)
            .map(|i| Rational::from_integer(((trial + 1) * (i + 2) + trial * trial - 3 * i).into()))
            .collect();
        let u = at_point(g, s, &point);
        if u.len() != deg + 1 || u[deg].is_zero() {
            continue;
        }
        if univariate::gcd(&u, &univariate::derivative(&u)).len() == 1 {
            return Ok(());
        }
    }
    Err(GermError::ValidationFailed("eliminant is not squarefree in s".into()))
}

/// Requires `V(f_1, ..., f_n, h) = {0}`: for every variable `z_j` the
/// eliminant of `⟨f, h⟩ ∩ Q[z_j]` must be a constant times a power of `z_j`.
pub(crate) fn clean_fiber_check(f: &Germ, h: &Poly) -> Result<()> {
    let n = f.n();
    let zr = f.ring();
    for j in 0..n {
        // z_j goes last so that the block order eliminates the others
        let perm: Vec<usize> = (0..n).map(|i| if i == j { n - 1 } else if i < j { i } else { i - 1 }).collect();
        let mut names = vec![String::new(); n];
        for i in 0..n {
            names[perm[i]] = zr.name(i).to_string();
        }
        let ring = Ring::new(names);
        let gens: Vec<Poly> = f
            .components()
            .iter()
            .chain(std::iter::once(h))
            .filter(|p| !p.is_zero())
            .map(|p| p.embed(&ring, &perm))
            .collect();
        let gb = buchberger(&IdealBasis::new(gens, MonomialOrder::BlockElimination(n - 1))?)?;
        let univ: Vec<&Poly> = gb
            .elements()
            .iter()
            .filter(|p| (0..n - 1).all(|v| p.degree_in(v) == Some(0)))
            .collect();
        let ok = match univ.as_slice() {
            [g] => g.is_monomial() && !g.is_constant(),
            _ => false,
        };
        if !ok {
            return Err(GermError::CleanFiberViolation(format!(
                "common zeros of f and h away from the origin (coordinate {})",
                zr.name(j)
            )));
        }
    }
    Ok(())
}

/// `G(0, s)` as a dense polynomial.
pub(crate) fn at_origin(g: &Poly, s: usize) -> Dense {
    let zero = vec![Rational::zero(); s];
    univariate::trim(at_point(g, s, &zero))
}
