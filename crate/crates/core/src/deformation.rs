//! Deformations `F(t, z)` of a germ, specialized at exact rational parameter
//! values, and the semicontinuity statements checked on those samples.
//!
//! "Close to 0" cannot be certified by sampling; every check here only
//! exhibits consistency at the chosen points.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::charpoly::robust_characteristic_polynomial;
use crate::error::{GermError, Result};
use crate::germ::{jacobian_rank_at_zero, multiplicity, Germ};
use crate::lojexp::{lojasiewicz, newton_polygon, polygon_includes, relative_exponent, NewtonPolygon};
use crate::poly::{Poly, Rational, Ring};

/// A point of the parameter space `Q^k`.
pub type TPoint = Vec<Rational>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationFamily {
    /// `t_1, ..., t_k, z_1, ..., z_n`.
    ring: Ring,
    z_ring: Ring,
    k: usize,
    components: Vec<Poly>,
}

impl DeformationFamily {
    /// `components` live in `ring`, whose first `k` variables are the
    /// parameters. Requires `F(t, 0) = 0` identically.
    pub fn new(ring: &Ring, k: usize, components: Vec<Poly>) -> Result<Self> {
        if k > ring.len() {
            return Err(GermError::invalid("more parameters than variables"));
        }
        let n = ring.len() - k;
        if n == 0 || components.len() != n {
            return Err(GermError::invalid(format!(
                "family has {} components in {} variables",
                components.len(),
                n
            )));
        }
        for (i, c) in components.iter().enumerate() {
            if c.ring() != ring {
                return Err(GermError::invalid("family components live in a different ring"));
            }
            if c.terms().any(|(m, _)| m.exponents()[k..].iter().all(|&e| e == 0)) {
                return Err(GermError::invalid(format!(
                    "component {} does not vanish identically at z = 0",
                    i + 1
                )));
            }
        }
        let z_ring = Ring::new(ring.names()[k..].iter().cloned());
        Ok(DeformationFamily { ring: ring.clone(), z_ring, k, components })
    }

    /// The trivial family `F(t, z) = f(z)` with parameters named `params`.
    pub fn constant(f: &Germ, params: &[&str]) -> Result<Self> {
        let ring = Ring::new(params.iter().map(|s| s.to_string()).chain(f.ring().names().iter().cloned()));
        let k = params.len();
        let positions: Vec<usize> = (k..k + f.n()).collect();
        let comps = f.components().iter().map(|c| c.embed(&ring, &positions)).collect();
        Self::new(&ring, k, comps)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn z_ring(&self) -> &Ring {
        &self.z_ring
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    /// `F_t = F(t, ·)`.
    pub fn specialize(&self, t: &[Rational]) -> Result<Germ> {
        if t.len() != self.k {
            return Err(GermError::invalid(format!(
                "parameter point has {} coordinates, expected {}",
                t.len(),
                self.k
            )));
        }
        let values: Vec<(usize, Rational)> = t.iter().cloned().enumerate().collect();
        Germ::new(self.components.iter().map(|c| c.specialize(&values, &self.z_ring)).collect())
    }

    pub fn base(&self) -> Germ {
        self.specialize(&vec![Rational::zero(); self.k]).expect("parameter count matches")
    }
}

/// Polynomial arc `φ(s)` with `φ(0) = 0`, `φ ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    components: Vec<Poly>,
}

impl Arc {
    pub fn new(components: Vec<Poly>) -> Result<Self> {
        let first = components.first().ok_or_else(|| GermError::invalid("arc has no components"))?;
        let ring = first.ring().clone();
        if ring.len() != 1 {
            return Err(GermError::invalid("arc components must be univariate"));
        }
        if components.iter().any(|c| c.ring() != &ring) {
            return Err(GermError::invalid("arc components live in different rings"));
        }
        if components.iter().any(|c| !c.constant_term().is_zero()) {
            return Err(GermError::invalid("arc does not pass through the origin"));
        }
        if components.iter().all(Poly::is_zero) {
            return Err(GermError::invalid("arc is identically zero"));
        }
        Ok(Arc { components })
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn ord(&self) -> u32 {
        self.components.iter().filter_map(|c| c.ord().finite()).min().expect("nonzero arc")
    }

    /// Highest power of `s` present; `f∘φ` is exact, so a vanishing
    /// composition is only known to vanish for this polynomial arc.
    pub fn degree(&self) -> u32 {
        self.components.iter().filter_map(Poly::total_degree).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArcQuotient {
    Finite(Rational),
    /// `f∘φ = 0` for this polynomial arc of the given degree.
    Unbounded { arc_degree: u32 },
}

/// `ord(f∘φ) / ord(φ)`.
pub fn arc_quotient(f: &Germ, phi: &Arc) -> Result<ArcQuotient> {
    if phi.components.len() != f.n() {
        return Err(GermError::invalid(format!(
            "arc has {} components for a germ in {} variables",
            phi.components.len(),
            f.n()
        )));
    }
    let s_ring = phi.components[0].ring().clone();
    let images: Vec<Option<Poly>> = phi.components.iter().cloned().map(Some).collect();
    let mut ord = None::<u32>;
    for c in f.components() {
        if let Some(o) = c.compose(&images, &s_ring)?.ord().finite() {
            ord = Some(ord.map_or(o, |m| m.min(o)));
        }
    }
    Ok(match ord {
        Some(o) => ArcQuotient::Finite(Rational::new(BigInt::from(o), BigInt::from(phi.ord()))),
        None => ArcQuotient::Unbounded { arc_degree: phi.degree() },
    })
}

fn fmt_point(t: &[Rational]) -> String {
    t.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

/// Default parameter samples for one-parameter families.
pub fn default_samples() -> Vec<TPoint> {
    [(1, 1), (1, 2), (-2, 1), (3, 5)]
        .iter()
        .map(|&(a, b)| vec![Rational::new(BigInt::from(a), BigInt::from(b))])
        .collect()
}

/// `0` first, then the given samples without repetitions.
fn with_base(f: &DeformationFamily, samples: &[TPoint]) -> Result<Vec<TPoint>> {
    let zero = vec![Rational::zero(); f.k];
    let mut out = vec![zero];
    for t in samples {
        if t.len() != f.k {
            return Err(GermError::invalid(format!(
                "sample ({}) has {} coordinates, expected {}",
                fmt_point(t),
                t.len(),
                f.k
            )));
        }
        if !out.contains(t) {
            out.push(t.clone());
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicitySample {
    pub t: TPoint,
    /// `None` when `F_t` is not finite.
    pub m0: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstancyProbe {
    /// Base point first.
    pub samples: Vec<MultiplicitySample>,
    pub constant: bool,
    /// `m_0(F_t) <= m_0(F_0)` at every finite sample.
    pub upper_semicontinuous: bool,
}

fn finite_multiplicity(g: &Germ) -> Result<Option<u64>> {
    match multiplicity(g) {
        Ok(r) => Ok(Some(r.m0)),
        Err(GermError::NotFinite(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Compares `m_0(F_t)` with `m_0(F_0)` at every sample.
pub fn multiplicity_constancy_probe(f: &DeformationFamily, samples: &[TPoint]) -> Result<ConstancyProbe> {
    let points = with_base(f, samples)?;
    let samples = points
        .par_iter()
        .map(|t| Ok(MultiplicitySample { t: t.clone(), m0: finite_multiplicity(&f.specialize(t)?)? }))
        .collect::<Result<Vec<_>>>()?;
    let base = samples[0]
        .m0
        .ok_or_else(|| GermError::NotFinite("the base germ F_0 is not finite".into()))?;
    let constant = samples.iter().all(|s| s.m0 == Some(base));
    let upper_semicontinuous = samples.iter().all(|s| s.m0.is_none_or(|m| m <= base));
    Ok(ConstancyProbe { samples, constant, upper_semicontinuous })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Violated,
    /// The hypothesis (constant multiplicity, one parameter) is not met.
    NotApplicable,
}

impl Verdict {
    fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Holds
        } else {
            Verdict::Violated
        }
    }
}

/// Data for one function `h` at one sample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionData {
    pub h: Poly,
    pub exponent: Rational,
    /// `N(F_t, h)`.
    pub polygon: NewtonPolygon,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleRecord {
    pub t: TPoint,
    pub m0: Option<u64>,
    pub l0: Option<Rational>,
    pub functions: Vec<FunctionData>,
    /// Why the sample could not be evaluated fully.
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemicontinuityReport {
    /// Base point first.
    pub samples: Vec<SampleRecord>,
    pub multiplicity_constant: bool,
    pub multiplicity_upper_semicontinuous: bool,
    /// `l_0(F_0) <= l_0(F_t)`.
    pub thm21: Verdict,
    /// `o_{F_t}(h) <= o_{F_0}(h)`.
    pub thm41: Verdict,
    /// The region above `N(F_0, h)` lies inside the region above `N(F_t, h)`.
    pub thm52: Verdict,
    /// All quantities agree across the nonzero samples; one parameter only.
    pub constancy_at_nonzero: Verdict,
}

fn evaluate(f: &DeformationFamily, t: &TPoint, hs: &[Poly]) -> SampleRecord {
    let mut rec = SampleRecord { t: t.clone(), m0: None, l0: None, functions: Vec::new(), error: None };
    let run = |rec: &mut SampleRecord| -> Result<()> {
        let g = f.specialize(t)?;
        rec.m0 = Some(multiplicity(&g)?.m0);
        rec.l0 = Some(lojasiewicz(&g)?.l0);
        for h in hs {
            let p = robust_characteristic_polynomial(&g, h, rec.m0.unwrap())?;
            rec.functions.push(FunctionData {
                h: h.clone(),
                exponent: relative_exponent(&p)?.value,
                polygon: newton_polygon(&p)?.sigma(),
            });
        }
        Ok(())
    };
    if let Err(e) = run(&mut rec) {
        rec.error = Some(e.to_string());
    }
    rec
}

/// Evaluates `m_0`, `l_0`, `o_{F_t}(h)` and `N(F_t, h)` at `0` and at every
/// sample, for each `h` (default: the coordinate functions), and checks the
/// semicontinuity statements on the evaluated samples.
pub fn semicontinuity_check(
    f: &DeformationFamily,
    samples: &[TPoint],
    hs: Option<&[Poly]>,
) -> Result<SemicontinuityReport> {
    let points = with_base(f, samples)?;
    let hs: Vec<Poly> = match hs {
        Some(list) => {
            for h in list {
                if h.ring() != &f.z_ring {
                    return Err(GermError::invalid("h must be a polynomial in the germ's variables"));
                }
            }
            list.to_vec()
        }
        None => (0..f.n()).map(|j| Poly::var(&f.z_ring, j)).collect(),
    };
    let records: Vec<SampleRecord> = points.par_iter().map(|t| evaluate(f, t, &hs)).collect();
    let base = &records[0];
    if let Some(e) = &base.error {
        return Err(match finite_multiplicity(&f.base()) {
            Ok(None) => GermError::NotFinite("the base germ F_0 is not finite".into()),
            _ => GermError::ValidationFailed(format!("base germ: {e}")),
        });
    }
    let base_m0 = base.m0.unwrap();
    let rest: Vec<&SampleRecord> = records[1..].iter().collect();
    let multiplicity_constant = rest.iter().all(|r| r.m0 == Some(base_m0));
    let multiplicity_upper_semicontinuous = rest.iter().all(|r| r.m0.is_none_or(|m| m <= base_m0));

    let done: Vec<&&SampleRecord> = rest.iter().filter(|r| r.error.is_none()).collect();
    let complete = done.len() == rest.len();
    let gate = |ok: bool| {
        if !multiplicity_constant {
            Verdict::NotApplicable
        } else if !ok {
            Verdict::Violated
        } else if complete {
            Verdict::Holds
        } else {
            // a sample that could not be evaluated is not a confirmation
            Verdict::Violated
        }
    };
    let base_l0 = base.l0.as_ref().unwrap();
    let thm21 = gate(done.iter().all(|r| base_l0 <= r.l0.as_ref().unwrap()));
    let thm41 = gate(done.iter().all(|r| {
        r.functions.iter().zip(&base.functions).all(|(a, b)| a.exponent <= b.exponent)
    }));
    let thm52 = gate(done.iter().all(|r| {
        r.functions.iter().zip(&base.functions).all(|(a, b)| polygon_includes(&b.polygon, &a.polygon))
    }));
    let constancy_at_nonzero = if f.k != 1 || !multiplicity_constant {
        Verdict::NotApplicable
    } else {
        let same = |a: &SampleRecord, b: &SampleRecord| {
            a.l0 == b.l0
                && a.functions.iter().zip(&b.functions).all(|(x, y)| x.exponent == y.exponent && x.polygon == y.polygon)
        };
        Verdict::from_bool(complete && done.windows(2).all(|w| same(w[0], w[1])))
    };
    Ok(SemicontinuityReport {
        samples: records,
        multiplicity_constant,
        multiplicity_upper_semicontinuous,
        thm21,
        thm41,
        thm52,
        constancy_at_nonzero,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prop23Sample {
    pub t: TPoint,
    pub rank: usize,
    pub m0: u64,
    pub l0: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prop23Report {
    /// Base point first.
    pub samples: Vec<Prop23Sample>,
    /// `l_0(F_t) <= l_0(F_0)` at every sample.
    pub holds: bool,
}

/// Checks the rank hypothesis `rank dF_t(0) >= n - 1` at `0` and every
/// sample, then compares `l_0(F_t)` with `l_0(F_0)`.
pub fn prop23_check(f: &DeformationFamily, samples: &[TPoint]) -> Result<Prop23Report> {
    let points = with_base(f, samples)?;
    let n = f.n();
    let germs = points.iter().map(|t| f.specialize(t)).collect::<Result<Vec<_>>>()?;
    for (t, g) in points.iter().zip(&germs) {
        let rank = jacobian_rank_at_zero(g);
        if rank + 1 < n {
            return Err(GermError::HypothesisFails(format!(
                "Jacobian rank {rank} < {} at t = ({})",
                n - 1,
                fmt_point(t)
            )));
        }
    }
    let samples = points
        .par_iter()
        .zip(germs.par_iter())
        .map(|(t, g)| {
            let r = lojasiewicz(g)?;
            Ok(Prop23Sample { t: t.clone(), rank: jacobian_rank_at_zero(g), m0: r.m0, l0: r.l0 })
        })
        .collect::<Result<Vec<_>>>()?;
    let holds = samples.iter().all(|s| s.l0 <= samples[0].l0);
    Ok(Prop23Report { samples, holds })
}
