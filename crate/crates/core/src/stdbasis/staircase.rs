use std::fmt;

use super::StandardBasis;
use crate::poly::Monomial;

/// Dimension of a quotient ring; `Infinite` when the staircase is unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QuotientDimension {
    Finite(u64),
    Infinite,
}

impl QuotientDimension {
    pub fn finite(self) -> Option<u64> {
        match self {
            QuotientDimension::Finite(d) => Some(d),
            QuotientDimension::Infinite => None,
        }
    }
}

impl fmt::Display for QuotientDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientDimension::Finite(d) => write!(f, "{d}"),
            QuotientDimension::Infinite => write!(f, "inf"),
        }
    }
}

/// Exponent bound per variable from the pure powers among `leading`;
/// `None` if some variable has none.
fn box_bounds(leading: &[Monomial], nvars: usize) -> Option<Vec<u32>> {
    (0..nvars)
        .map(|j| {
            leading
                .iter()
                .filter_map(|m| match m.as_pure_power() {
                    Some((v, k)) if v == j => Some(k),
                    _ => None,
                })
                .min()
        })
        .collect()
}

/// Number of monomials in `nvars` variables divisible by none of
/// `leading`. Finite exactly when every variable has a pure power among the
/// leading monomials.
pub fn staircase_count(leading: &[Monomial], nvars: usize) -> QuotientDimension {
    if leading.iter().any(Monomial::is_one) {
        return QuotientDimension::Finite(0);
    }
    let Some(bounds) = box_bounds(leading, nvars) else {
        return QuotientDimension::Infinite;
    };
    let mut total = 0u64;
    walk_below(leading, &bounds, &mut vec![0; nvars], 0, &mut |_| total += 1);
    QuotientDimension::Finite(total)
}

/// The monomials counted by [`staircase_count`], in the walk order
/// (lexicographic on exponent vectors); `None` if there are infinitely many.
pub fn staircase_monomials(leading: &[Monomial], nvars: usize) -> Option<Vec<Monomial>> {
    if leading.iter().any(Monomial::is_one) {
        return Some(Vec::new());
    }
    let bounds = box_bounds(leading, nvars)?;
    let mut out = Vec::new();
    walk_below(leading, &bounds, &mut vec![0; nvars], 0, &mut |e| out.push(Monomial::new(e.to_vec())));
    Some(out)
}

// Walks the bounding box one coordinate at a time; a partial exponent vector
// that is already divisible by a leading monomial prunes its whole subtree.
fn walk_below(
    leading: &[Monomial],
    bounds: &[u32],
    current: &mut Vec<u32>,
    depth: usize,
    visit: &mut dyn FnMut(&[u32]),
) {
    if depth == bounds.len() {
        visit(current);
        return;
    }
    for e in 0..bounds[depth] {
        current[depth] = e;
        let blocked = leading.iter().any(|m| {
            let ex = m.exponents();
            ex[depth + 1..].iter().all(|&x| x == 0)
                && ex[..=depth].iter().zip(current.iter()).all(|(a, b)| a <= b)
        });
        if blocked {
            // larger exponents at this depth stay blocked
            break;
        }
        walk_below(leading, bounds, current, depth + 1, visit);
    }
    current[depth] = 0;
}

/// Dimension of the quotient by the ideal whose standard basis is `sb`.
pub fn staircase_dimension(sb: &StandardBasis) -> QuotientDimension {
    staircase_count(sb.leading_monomials(), sb.ring().len())
}
