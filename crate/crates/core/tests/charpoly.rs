mod common;

use std::collections::BTreeMap;

use common::{in_w, p, puiseux_quintic, q, ring, CORPUS};
use germlab::charpoly::{
    characteristic_polynomial, robust_characteristic_polynomial, weierstrass_distinguished_factor, ws_ring, CharPoly,
    Derivation,
};
use germlab::germ::{multiplicity, Germ};
use germlab::lojexp::{exponent_from_coefficients, newton_polygon, relative_exponent, theta, NewtonPolygon};
use germlab::poly::{poly_substitute, Poly, Valuation};

/// `(f, h, P)` for every corpus germ and coordinate, plus the coordinate sum
/// when `m0 <= 6` (generic eliminants of larger germs are slow).
fn corpus_polynomials() -> Vec<(&'static str, Germ, Poly, CharPoly)> {
    let mut out = Vec::new();
    for e in CORPUS {
        let f = e.germ();
        let m0 = multiplicity(&f).unwrap().m0;
        let mut hs: Vec<Poly> = (0..f.n()).map(|j| Poly::var(f.ring(), j)).collect();
        if m0 <= 6 {
            hs.push(p(&f.ring().names().join(" + "), f.ring()));
        }
        for h in hs {
            let cp = robust_characteristic_polynomial(&f, &h, m0).unwrap_or_else(|err| panic!("{} {h}: {err}", e.name));
            out.push((e.name, f.clone(), h, cp));
        }
    }
    out
}

fn annihilator_value(f: &Germ, h: &Poly, cp: &CharPoly) -> Poly {
    let n = f.n();
    let mut assignment = BTreeMap::new();
    for (i, c) in f.components().iter().enumerate() {
        assignment.insert(format!("w{}", i + 1), c.clone());
    }
    assignment.insert("s".to_string(), h.clone());
    let pp = cp.characteristic_polynomial();
    assert_eq!(pp.ring(), &ws_ring(n));
    poly_substitute(&pp, &assignment).unwrap()
}

#[test]
fn corpus_laws() {
    for (name, f, h, cp) in corpus_polynomials() {
        let m0 = multiplicity(&f).unwrap().m0;
        let ctx = format!("{name}, h = {h}");
        // degree law and divisibility
        assert_eq!(cp.degree(), m0, "{ctx}");
        assert_eq!(m0 % cp.minimal_degree() as u64, 0, "{ctx}");
        // distinguished
        for a in cp.characteristic_coefficients() {
            assert!(a.constant_term() == q(0, 1), "{ctx}");
        }
        // first side of N(P) is the relative exponent
        let e = relative_exponent(&cp).unwrap();
        assert_eq!(theta(&cp).unwrap(), e.value, "{ctx}");
        // computing from the expanded P gives the same exponent
        let from_p = exponent_from_coefficients(&cp.characteristic_coefficients(), cp.truncation()).unwrap();
        assert_eq!(from_p.value, e.value, "{ctx}");
        // sigma image meets the horizontal axis at (m0, 0)
        let sig = newton_polygon(&cp).unwrap().sigma();
        assert_eq!(*sig.vertices().last().unwrap(), (m0, 0), "{ctx}");
        assert_eq!(sig.sigma(), newton_polygon(&cp).unwrap(), "{ctx}");
    }
}

#[test]
fn annihilation() {
    for (name, f, h, cp) in corpus_polynomials() {
        let v = annihilator_value(&f, &h, &cp);
        match cp.truncation() {
            None => assert!(v.is_zero(), "{name}, h = {h}: P(f, h) = {v}"),
            Some(n) => assert!(v.ord() > Valuation::Finite(n), "{name}, h = {h}: order {:?}", v.ord()),
        }
    }
}

#[test]
fn dilation_law_by_expansion() {
    let mut checked = 0;
    for (name, _, h, cp) in corpus_polynomials() {
        if cp.power() > 9 {
            continue;
        }
        let coeffs = cp.characteristic_coefficients();
        let m = coeffs.len() as u64;
        let pts: Vec<(u64, u64)> = std::iter::once((0, m))
            .chain(coeffs.iter().enumerate().filter_map(|(i, c)| c.ord().finite().map(|o| (o as u64, m - 1 - i as u64))))
            .collect();
        let expanded = NewtonPolygon::from_points(&pts).unwrap();
        assert_eq!(expanded, newton_polygon(&cp).unwrap(), "{name}, h = {h}");
        if cp.power() > 1 {
            checked += 1;
        }
    }
    assert!(checked >= 5, "only {checked} pairs with r > 1");
}

#[test]
fn running_example_powers() {
    let f = CORPUS[0].germ();
    let r = f.ring().clone();
    let w = ws_ring(3);
    let cases = [("z1", "(s^2 - w1)", 9u32), ("z2", "(s^3 - w2)", 6)];
    for (h, base, r_pow) in cases {
        let cp = characteristic_polynomial(&f, &p(h, &r)).unwrap();
        assert!(cp.is_exact());
        assert_eq!(cp.power(), r_pow as u64);
        let base = base.trim_matches(|c| c == '(' || c == ')');
        assert_eq!(cp.characteristic_polynomial(), p(base, &w).pow(r_pow));
    }
    let cp = characteristic_polynomial(&f, &p("z3", &r)).unwrap();
    let expected = p("s^3 - w3", &w).pow(6).checked_sub(&p("w1^3*w2^2", &w)).unwrap();
    assert_eq!(cp.characteristic_polynomial(), expected);
    assert_eq!(cp.derivation(), Derivation::Eliminant);
}

#[test]
fn hensel_matches_puiseux() {
    let w = ws_ring(2);
    let g = p("s^5 + s^2 - w1 + w2", &w);
    let d = weierstrass_distinguished_factor(&g, 4, 1).unwrap();
    assert_eq!(d.degree, 2);
    assert!(!d.exact);
    let (a1, a2) = puiseux_quintic();
    let wr = ring(&["w1", "w2"]);
    for (series, got) in [(&a1, &d.coefficients[0]), (&a2, &d.coefficients[1])] {
        let n = got.truncation();
        assert_eq!(got.body(), &in_w(series, &wr, n));
    }
    assert_eq!(d.coefficients[1].body().ord(), Valuation::Finite(1));
    assert!(d.coefficients[0].body().ord() >= Valuation::Finite(2));
    // the oracle itself: a2 = -u + ..., a1 = u^2 + ...
    assert_eq!(a2[1], q(-1, 1));
    assert_eq!(a1[1], q(0, 1));
    assert_eq!(a1[2], q(1, 1));
}

#[test]
fn local_algebra_agrees_with_global_path() {
    use germlab::charpoly::local_characteristic_polynomial;
    let f = common::germ(&["z1", "z2"], &["z1^2 + z2^2", "z1^2 - z2^5"]);
    let r = f.ring().clone();
    for h in ["z1", "z2"] {
        let global = characteristic_polynomial(&f, &p(h, &r)).unwrap();
        let local = local_characteristic_polynomial(&f, &p(h, &r), None).unwrap();
        assert_eq!(local.derivation(), Derivation::LocalAlgebra);
        let n = local.truncation().unwrap().min(global.truncation().unwrap_or(u32::MAX));
        let cut = |cp: &CharPoly| -> Vec<Poly> { cp.characteristic_coefficients().iter().map(|c| c.truncate(n)).collect() };
        assert_eq!(cut(&global), cut(&local), "h = {h}");
        assert_eq!(relative_exponent(&global).unwrap().value, relative_exponent(&local).unwrap().value);
    }
}
