//! Independent oracles and the germ corpus shared by the integration tests.
//!
//! The oracles use nothing from the library beyond polynomial parsing and
//! term iteration, so they can disagree with the standard-basis, eliminant
//! and Hensel code paths.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use germlab::germ::Germ;
use germlab::poly::{parse_poly, Poly, Rational, Ring};

pub fn q(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

pub fn zero() -> Rational {
    q(0, 1)
}

pub fn ring(names: &[&str]) -> Ring {
    Ring::new(names.iter().copied())
}

pub fn p(text: &str, r: &Ring) -> Poly {
    parse_poly(text, r).unwrap_or_else(|e| panic!("{text}: {e:?}"))
}

pub fn germ(vars: &[&str], comps: &[&str]) -> Germ {
    let r = ring(vars);
    Germ::new(comps.iter().map(|c| p(c, &r)).collect()).unwrap()
}

/// One finite germ with its frozen reference values.
pub struct Entry {
    pub name: &'static str,
    pub vars: &'static [&'static str],
    pub comps: &'static [&'static str],
    /// Dimension of the local algebra, frozen from [`oracle_multiplicity`].
    pub m0: u64,
    /// `(num, den)` of the Łojasiewicz exponent.
    pub l0: (i64, i64),
    /// Arc attaining `l0`, components separated by commas.
    pub witness_arc: &'static str,
}

const Z2: &[&str] = &["z1", "z2"];
const Z3: &[&str] = &["z1", "z2", "z3"];

pub const CORPUS: &[Entry] = &[
    Entry { name: "running", vars: Z3, comps: &["z1^2", "z2^3", "z3^3 - z1*z2"], m0: 18, l0: (18, 5), witness_arc: "s^9,s^6,s^5" },
    Entry { name: "jump_t1", vars: Z3, comps: &["2*z1 + z1^2", "z2^3", "-z2 + z3^3 - z1*z2"], m0: 9, l0: (9, 1), witness_arc: "0,s^3,s" },
    Entry { name: "jump_t1/2", vars: Z3, comps: &["z1 + z1^2", "z2^3", "-1/2*z2 + z3^3 - z1*z2"], m0: 9, l0: (9, 1), witness_arc: "0,2*s^3,s" },
    Entry { name: "jump_t-1", vars: Z3, comps: &["-2*z1 + z1^2", "z2^3", "z2 + z3^3 - z1*z2"], m0: 9, l0: (9, 1), witness_arc: "0,-s^3,s" },
    Entry { name: "rankfam_t0", vars: Z2, comps: &["z1^3", "z2"], m0: 3, l0: (3, 1), witness_arc: "s,0" },
    Entry { name: "rankfam_t1", vars: Z2, comps: &["3*z1 + 3*z1^2 + z1^3", "z2"], m0: 1, l0: (1, 1), witness_arc: "s,0" },
    Entry { name: "rankfam_t1/2", vars: Z2, comps: &["3/4*z1 + 3/2*z1^2 + z1^3", "z2"], m0: 1, l0: (1, 1), witness_arc: "s,s" },
    Entry { name: "line_square", vars: Z2, comps: &["z1^2", "z2"], m0: 2, l0: (2, 1), witness_arc: "s,0" },
    Entry { name: "line_fourth", vars: Z3, comps: &["z1^4", "z2", "z3"], m0: 4, l0: (4, 1), witness_arc: "s,0,0" },
    Entry { name: "diag23", vars: Z2, comps: &["z1^2", "z2^3"], m0: 6, l0: (3, 1), witness_arc: "0,s" },
    Entry { name: "diag222", vars: Z3, comps: &["z1^2", "z2^2", "z3^2"], m0: 8, l0: (2, 1), witness_arc: "s,s,s" },
    Entry { name: "diag234", vars: Z3, comps: &["z1^2", "z2^3", "z3^4"], m0: 24, l0: (4, 1), witness_arc: "0,0,s" },
    Entry { name: "identity", vars: Z2, comps: &["z1", "z2"], m0: 1, l0: (1, 1), witness_arc: "s,s" },
    Entry { name: "mconst_t0", vars: Z2, comps: &["z1^2 + z2^2", "z1^2 - z2^5"], m0: 4, l0: (2, 1), witness_arc: "s,0" },
    Entry { name: "mconst_t1", vars: Z2, comps: &["z1 + z1^2 + z2^2", "z1^2 - z2^5"], m0: 4, l0: (4, 1), witness_arc: "-s^2,s" },
    Entry { name: "cusp_pair", vars: Z2, comps: &["z1^2 - z2^3", "z1*z2"], m0: 5, l0: (3, 1), witness_arc: "0,s" },
    Entry { name: "gradient_cusp", vars: Z2, comps: &["3*z1^2", "-2*z2"], m0: 2, l0: (2, 1), witness_arc: "s,0" },
];

impl Entry {
    pub fn germ(&self) -> Germ {
        germ(self.vars, self.comps)
    }

    pub fn l0(&self) -> Rational {
        q(self.l0.0, self.l0.1)
    }
}

fn monomials_below(n: usize, bound: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for e in 0..=left {
            prefix.push(e);
            rec(n, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if bound > 0 {
        rec(n, bound - 1, &mut Vec::new(), &mut out);
    }
    out
}

/// Incremental row echelon form over sparse rational rows.
#[derive(Default)]
struct Echelon {
    pivots: BTreeMap<usize, BTreeMap<usize, Rational>>,
}

impl Echelon {
    fn insert(&mut self, mut row: BTreeMap<usize, Rational>) {
        row.retain(|_, v| *v != zero());
        while let Some((c, v)) = row.iter().next().map(|(&c, v)| (c, v.clone())) {
            match self.pivots.get(&c) {
                Some(piv) => {
                    for (k, pv) in piv {
                        let e = row.entry(*k).or_insert_with(zero);
                        *e -= &v * pv;
                        if *e == zero() {
                            row.remove(k);
                        }
                    }
                }
                None => {
                    let inv = q(1, 1) / &v;
                    for x in row.values_mut() {
                        *x *= &inv;
                    }
                    self.pivots.insert(c, row);
                    return;
                }
            }
        }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// `dim Q[z] / (I(f) + m^bound)`.
pub fn truncated_quotient_dimension(f: &Germ, bound: u32) -> u64 {
    let n = f.n();
    let monos = monomials_below(n, bound);
    let index: HashMap<&Vec<u32>, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut ech = Echelon::default();
    for g in f.components() {
        for alpha in &monos {
            let mut row = BTreeMap::new();
            for (m, c) in g.terms() {
                let e: Vec<u32> = m.exponents().iter().zip(alpha).map(|(a, b)| a + b).collect();
                if let Some(&i) = index.get(&e) {
                    *row.entry(i).or_insert_with(zero) += c;
                }
            }
            ech.insert(row);
        }
    }
    (monos.len() - ech.rank()) as u64
}

/// Local multiplicity by truncated linear algebra: the first `N` with
/// `d_N = d_{N+1}` gives `m^N ⊆ I + m^{N+1}`, hence `m^N ⊆ I` locally by
/// Nakayama, and `d_N` is the answer.
pub fn oracle_multiplicity(f: &Germ, max_bound: u32) -> Option<u64> {
    let mut prev = truncated_quotient_dimension(f, 1);
    for bound in 2..=max_bound {
        let d = truncated_quotient_dimension(f, bound);
        if d == prev {
            return Some(d);
        }
        prev = d;
    }
    None
}

/// Univariate power series in `v`, precision `PREC`.
pub const PREC: usize = 24;

fn ser_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![zero(); PREC];
    for (i, x) in a.iter().enumerate() {
        if *x == zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(PREC - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn ser_pow(a: &[Rational], k: u32) -> Vec<Rational> {
    let mut out = vec![zero(); PREC];
    out[0] = q(1, 1);
    for _ in 0..k {
        out = ser_mul(&out, a);
    }
    out
}

/// Newton–Puiseux for `G = s^5 + s^2 - u`: with `u = v^2`, `s = v y`, the
/// root near `y = 1` solves `y^2 + v^3 y^5 = 1`. The two small roots are
/// `v y(v)` and `-v y(-v)`; returns the series in `u` of `a_1, a_2` where
/// `D = s^2 + a_1 s + a_2`.
pub fn puiseux_quintic() -> (Vec<Rational>, Vec<Rational>) {
    let mut y = vec![zero(); PREC];
    y[0] = q(1, 1);
    // y <- y - (y^2 + v^3 y^5 - 1) / 2; each pass fixes at least one more order
    for _ in 0..PREC {
        let mut res = ser_mul(&y, &y);
        let y5 = ser_pow(&y, 5);
        for i in 3..PREC {
            res[i] += &y5[i - 3];
        }
        res[0] -= q(1, 1);
        for i in 0..PREC {
            y[i] -= &res[i] / q(2, 1);
        }
    }
    let y_neg: Vec<Rational> = y.iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() }).collect();
    // r1 = v y(v), r2 = -v y(-v)
    let shift = |a: &[Rational]| -> Vec<Rational> {
        let mut out = vec![zero(); PREC];
        out[1..].clone_from_slice(&a[..PREC - 1]);
        out
    };
    let r1 = shift(&y);
    let r2: Vec<Rational> = shift(&y_neg).into_iter().map(|c| -c).collect();
    let a1: Vec<Rational> = r1.iter().zip(&r2).map(|(a, b)| -(a + b)).collect();
    let a2 = ser_mul(&r1, &r2);
    let to_u = |a: Vec<Rational>| -> Vec<Rational> {
        assert!(a.iter().skip(1).step_by(2).all(|c| *c == zero()), "series is not even in v");
        a.into_iter().step_by(2).collect()
    };
    (to_u(a1), to_u(a2))
}

/// Expands `sum c_k u^k` with `u = w1 - w2`, keeping total degree `<= trunc`.
pub fn in_w(series: &[Rational], w: &Ring, trunc: u32) -> Poly {
    let u = p("w1 - w2", w);
    let mut out = Poly::zero(w);
    for (k, c) in series.iter().enumerate().take(trunc as usize + 1) {
        out = out.checked_add(&u.pow(k as u32).scale(c)).unwrap();
    }
    out
}

/// `a + b i` over the rationals.
#[derive(Clone, Debug, PartialEq)]
pub struct Gauss(pub Rational, pub Rational);

impl Gauss {
    fn mul(&self, o: &Gauss) -> Gauss {
        Gauss(&self.0 * &o.0 - &self.1 * &o.1, &self.0 * &o.1 + &self.1 * &o.0)
    }
}

/// Order in `s` of `g(c_1 s, ..., c_n s)` for Gaussian-rational `c`.
pub fn order_on_complex_line(g: &Poly, c: &[Gauss]) -> Option<u32> {
    let mut by_degree: BTreeMap<u32, Gauss> = BTreeMap::new();
    for (m, coef) in g.terms() {
        let mut v = Gauss(coef.clone(), zero());
        for (ci, &e) in c.iter().zip(m.exponents()) {
            for _ in 0..e {
                v = v.mul(ci);
            }
        }
        let e = by_degree.entry(m.degree()).or_insert(Gauss(zero(), zero()));
        e.0 += v.0;
        e.1 += v.1;
    }
    by_degree.into_iter().find(|(_, v)| v.0 != zero() || v.1 != zero()).map(|(d, _)| d)
}

/// Certificate that `l0 = 2` for `(z1^2 + z2^2, z1^2 - z2^5)`.
///
/// Upper bound: `z2^2 (1 + z2^3) = f1 - f2` and `z1^2 = f1 - z2^2`, with
/// `1 + z2^3` a unit, give `|z|^2 <= C |f|`. Lower bound: along
/// `(i s, s)` the map has order 2.
pub fn mconst_base_l0_certificate() -> Rational {
    let r = ring(&["z1", "z2"]);
    let f1 = p("z1^2 + z2^2", &r);
    let f2 = p("z1^2 - z2^5", &r);
    assert_eq!(f1.checked_sub(&f2).unwrap(), p("z2^2 + z2^5", &r));
    assert_eq!(p("z2^2", &r).checked_mul(&p("1 + z2^3", &r)).unwrap(), p("z2^2 + z2^5", &r));
    assert_eq!(f1.checked_sub(&p("z2^2", &r)).unwrap(), p("z1^2", &r));
    let line = [Gauss(zero(), q(1, 1)), Gauss(q(1, 1), zero())];
    let ord = [&f1, &f2].iter().filter_map(|g| order_on_complex_line(g, &line)).min().unwrap();
    // both bounds meet at the exponent 2
    assert_eq!(ord, 2);
    q(ord as i64, 1)
}
