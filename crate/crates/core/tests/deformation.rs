mod common;

use common::{p, q, ring};
use germlab::deformation::{
    multiplicity_constancy_probe, prop23_check, semicontinuity_check, DeformationFamily, TPoint, Verdict,
};
use germlab::lojexp::polygon_includes;
use germlab::GermError;

fn family(comps: &[&str]) -> DeformationFamily {
    let r = ring(&["t", "z1", "z2", "z3"][..comps.len() + 1]);
    DeformationFamily::new(&r, 1, comps.iter().map(|c| p(c, &r)).collect()).unwrap()
}

fn samples(values: &[(i64, i64)]) -> Vec<TPoint> {
    values.iter().map(|&(a, b)| vec![q(a, b)]).collect()
}

#[test]
fn first_family() {
    let f = family(&["t*z1 + z1^2 + z2^2", "z1^2 - z2^5"]);
    let r = semicontinuity_check(&f, &samples(&[(1, 1), (1, 2), (-2, 1)]), None).unwrap();
    assert!(r.multiplicity_constant);
    assert_eq!(r.samples.len(), 4);
    assert!(r.samples.iter().all(|s| s.m0 == Some(4)));
    assert_eq!(r.samples[0].l0, Some(q(2, 1)));
    assert!(r.samples[1..].iter().all(|s| s.l0 == Some(q(4, 1))));
    assert_eq!(r.thm21, Verdict::Holds);
    assert_eq!(r.thm41, Verdict::Holds);
    assert_eq!(r.thm52, Verdict::Holds);
    assert_eq!(r.constancy_at_nonzero, Verdict::Holds);
    let base = &r.samples[0].functions;
    let first = &r.samples[1].functions;
    for s in &r.samples[1..] {
        for ((a, b), c) in s.functions.iter().zip(base).zip(first) {
            assert!(a.exponent <= b.exponent);
            assert!(polygon_includes(&b.polygon, &a.polygon));
            assert_eq!(a.polygon, c.polygon);
        }
    }
}

#[test]
fn multiplicity_jump_is_not_a_counterexample() {
    let f = family(&["2*t*z1 + z1^2", "z2^3", "-t*z2 + z3^3 - z1*z2"]);
    let probe = multiplicity_constancy_probe(&f, &samples(&[(1, 1)])).unwrap();
    assert!(!probe.constant);
    assert!(probe.upper_semicontinuous);
    assert_eq!(probe.samples.iter().map(|s| s.m0).collect::<Vec<_>>(), vec![Some(18), Some(9)]);
    let r = semicontinuity_check(&f, &samples(&[(1, 1)]), None).unwrap();
    assert_eq!(r.thm21, Verdict::NotApplicable);
    assert_eq!(r.thm41, Verdict::NotApplicable);
    assert_eq!(r.thm52, Verdict::NotApplicable);
    assert_eq!(r.samples[0].l0, Some(q(18, 5)));
    assert_eq!(r.samples[1].l0, Some(q(9, 1)));
    assert!(matches!(prop23_check(&f, &samples(&[(1, 1)])), Err(GermError::HypothesisFails(_))));
}

#[test]
fn rank_hypothesis_family() {
    let f = family(&["3*t^2*z1 + 3*t*z1^2 + z1^3", "z2"]);
    let r = prop23_check(&f, &samples(&[(1, 1), (1, 2), (-2, 1)])).unwrap();
    assert!(r.holds);
    assert_eq!(r.samples[0].l0, q(3, 1));
    assert_eq!(r.samples[0].rank, 1);
    for s in &r.samples[1..] {
        assert_eq!(s.l0, q(1, 1));
        assert_eq!(s.rank, 2);
        assert!(s.l0 <= r.samples[0].l0);
    }
}

#[test]
fn multi_parameter_family() {
    let r = ring(&["t1", "t2", "z1", "z2"]);
    let f = DeformationFamily::new(&r, 2, vec![p("t1*z2 + z1^2", &r), p("t2*z1 + z2^3", &r)]).unwrap();
    let pts = vec![vec![q(1, 1), q(0, 1)], vec![q(0, 1), q(1, 1)], vec![q(1, 2), q(-1, 3)]];
    let rep = semicontinuity_check(&f, &pts, None).unwrap();
    assert!(!rep.multiplicity_constant);
    assert!(rep.multiplicity_upper_semicontinuous);
    assert_eq!(rep.samples[0].m0, Some(6));
    assert_eq!(rep.constancy_at_nonzero, Verdict::NotApplicable);
}
