use germlab::charpoly::{characteristic_polynomial_with, robust_characteristic_polynomial, CharPoly, Derivation};
use germlab::deformation::{
    arc_quotient, default_samples, prop23_check, semicontinuity_check, ArcQuotient, SampleRecord, TPoint, Verdict,
};
use germlab::germ;
use germlab::lojexp::{
    last_edge_inclination, lojasiewicz, newton_polygon, relative_exponent, theta, NewtonPolygon,
};
use germlab::poly::{Poly, Rational, Ring};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::input::{parse_arc, ArcError, InputDocument};
use crate::CliError;

const SAMPLING_NOTE: &str = "Statements about parameters close to 0 are checked only at the listed \
     rational samples; sampling cannot certify a neighborhood.";

fn rat(r: &Rational) -> Value {
    Value::String(r.to_string())
}

fn point(t: &TPoint) -> Value {
    Value::Array(t.iter().map(rat).collect())
}

fn polygon_json(p: &NewtonPolygon) -> Value {
    json!({
        "vertices": p.vertices().iter().map(|&(x, y)| json!([x, y])).collect::<Vec<_>>(),
        "edges": p.edges().iter().map(|e| json!({"inclination": rat(&e.inclination)})).collect::<Vec<_>>(),
    })
}

fn verdict(v: Verdict) -> Value {
    match v {
        Verdict::Holds => Value::Bool(true),
        Verdict::Violated => Value::Bool(false),
        Verdict::NotApplicable => Value::String("NOT-APPLICABLE".into()),
    }
}

fn derivation_name(d: Derivation) -> &'static str {
    match d {
        Derivation::Eliminant => "eliminant",
        Derivation::Hensel => "hensel",
        Derivation::LocalAlgebra => "local_algebra",
    }
}

pub fn multiplicity(doc: &InputDocument) -> Result<Value, CliError> {
    let f = doc.germ()?;
    let r = germ::multiplicity(&f)?;
    let lead: Vec<String> = r
        .standard_basis_leading_ideal
        .iter()
        .map(|m| Poly::term(f.ring(), m.clone(), Rational::from_integer(1.into())).to_string())
        .collect();
    Ok(json!({"m0": r.m0, "leading_ideal": lead}))
}

pub fn exponent(doc: &InputDocument) -> Result<Value, CliError> {
    let r = lojasiewicz(&doc.germ()?)?;
    let per: Map<String, Value> = r.per_coordinate.iter().map(|(name, o)| (name.clone(), rat(o))).collect();
    Ok(json!({
        "l0": rat(&r.l0),
        "per_coordinate": per,
        "m0": r.m0,
        "lemma11_equality": r.lemma11_equality,
    }))
}

fn charpoly_fields(p: &CharPoly) -> Map<String, Value> {
    let mut out = Map::new();
    out.insert("derivation".into(), json!(derivation_name(p.derivation())));
    out.insert("exact".into(), json!(p.is_exact()));
    out.insert("truncation".into(), json!(p.truncation()));
    out.insert("degree".into(), json!(p.degree()));
    out.insert("power".into(), json!(p.power()));
    out.insert("minimal_polynomial".into(), json!(p.minimal_polynomial().to_string()));
    out.insert("characteristic_polynomial".into(), json!(p.characteristic_polynomial().to_string()));
    out
}

pub fn charpoly(doc: &InputDocument, h: &str, truncation: Option<u32>) -> Result<Value, CliError> {
    let f = doc.germ()?;
    let h = doc.parse_function(h)?;
    let m0 = germ::multiplicity(&f)?.m0;
    let p = characteristic_polynomial_with(&f, &h, m0, truncation)?;
    let mut out = Map::new();
    out.insert("h".into(), json!(h.to_string()));
    out.insert("m0".into(), json!(m0));
    out.extend(charpoly_fields(&p));
    // a fixed truncation may be too small to pin down the exponent
    out.insert("relative_exponent".into(), relative_exponent(&p).map_or(Value::Null, |e| rat(&e.value)));
    Ok(Value::Object(out))
}

pub fn polygon(doc: &InputDocument, h: &str) -> Result<Value, CliError> {
    let f = doc.germ()?;
    let h = doc.parse_function(h)?;
    let m0 = germ::multiplicity(&f)?.m0;
    let p = robust_characteristic_polynomial(&f, &h, m0)?;
    let np = newton_polygon(&p)?;
    let nfh = np.sigma();
    Ok(json!({
        "h": h.to_string(),
        "m0": m0,
        "derivation": derivation_name(p.derivation()),
        "relative_exponent": rat(&relative_exponent(&p)?.value),
        "theta": rat(&theta(&p)?),
        "characteristic_polygon": polygon_json(&np),
        "polygon": polygon_json(&nfh),
        "last_edge_inclination": rat(&last_edge_inclination(&nfh)?),
    }))
}

fn quotient_json(q: &ArcQuotient) -> Value {
    match q {
        ArcQuotient::Finite(r) => rat(r),
        ArcQuotient::Unbounded { .. } => Value::Null,
    }
}

pub fn arc(doc: &InputDocument, arc: Option<&str>) -> Result<Value, CliError> {
    let f = doc.germ()?;
    let l0 = lojasiewicz(&f)?.l0;
    let attains = |q: &ArcQuotient| matches!(q, ArcQuotient::Finite(r) if *r == l0);
    match arc {
        Some(text) => {
            let phi = parse_arc(text, &Ring::new(["s"]), f.n()).map_err(|e| match e {
                ArcError::Parse(offset, column, message) => {
                    CliError::invalid(format!("--arc, column {}: {message}", offset + column))
                }
                ArcError::Other(m) => CliError::invalid(format!("--arc: {m}")),
            })?;
            let q = arc_quotient(&f, &phi)?;
            Ok(json!({"quotient": quotient_json(&q), "attains_l0": attains(&q)}))
        }
        None => {
            if doc.arcs.is_empty() {
                return Err(CliError::invalid("no arc given: use --arc or the document's \"arcs\""));
            }
            let rows = doc
                .arcs
                .iter()
                .map(|phi| {
                    let q = arc_quotient(&f, phi)?;
                    let text: Vec<String> = phi.components().iter().map(Poly::to_string).collect();
                    Ok(json!({"arc": text.join(","), "quotient": quotient_json(&q), "attains_l0": attains(&q)}))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            Ok(json!({"l0": rat(&l0), "arcs": rows}))
        }
    }
}

/// `--samples`, then seeded random samples, then the document, then the
/// defaults (repeated along the diagonal for several parameters).
pub fn choose_samples(
    doc: &InputDocument,
    text: Option<&str>,
    random: Option<(usize, u64)>,
) -> Result<Vec<TPoint>, CliError> {
    let k = doc.parameters.len().max(1);
    if let Some(t) = text {
        return crate::input::parse_samples(t);
    }
    if let Some((count, seed)) = random {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        return Ok((0..count)
            .map(|_| {
                (0..k)
                    .map(|_| {
                        let num = rng.gen_range(1..=9i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
                        let den = rng.gen_range(1..=9i64);
                        Rational::new(num.into(), den.into())
                    })
                    .collect()
            })
            .collect());
    }
    if !doc.samples.is_empty() {
        return Ok(doc.samples.clone());
    }
    Ok(default_samples().into_iter().map(|t| vec![t[0].clone(); k]).collect())
}

fn sample_json(r: &SampleRecord) -> Value {
    let functions: Vec<Value> = r
        .functions
        .iter()
        .map(|fd| {
            json!({
                "h": fd.h.to_string(),
                "relative_exponent": rat(&fd.exponent),
                "polygon": polygon_json(&fd.polygon),
            })
        })
        .collect();
    json!({
        "t": point(&r.t),
        "m0": r.m0,
        "l0": r.l0.as_ref().map(rat),
        "functions": functions,
        "error": r.error,
    })
}

pub fn deform(doc: &InputDocument, samples: Vec<TPoint>, hs: &[String]) -> Result<Value, CliError> {
    let family = doc.family()?;
    let mut functions: Vec<Poly> = doc.h.clone();
    for h in hs {
        functions.push(doc.parse_function(h)?);
    }
    let r = semicontinuity_check(&family, &samples, (!functions.is_empty()).then_some(&functions[..]))?;
    Ok(json!({
        "note": SAMPLING_NOTE,
        "samples": r.samples.iter().map(sample_json).collect::<Vec<_>>(),
        "multiplicity_constant": r.multiplicity_constant,
        "multiplicity_upper_semicontinuous": r.multiplicity_upper_semicontinuous,
        "thm21_holds": verdict(r.thm21),
        "thm41_holds": verdict(r.thm41),
        "thm52_holds": verdict(r.thm52),
        "constancy_at_nonzero": verdict(r.constancy_at_nonzero),
    }))
}

pub fn prop23(doc: &InputDocument, samples: Vec<TPoint>) -> Result<Value, CliError> {
    let r = prop23_check(&doc.family()?, &samples)?;
    let rows: Vec<Value> = r
        .samples
        .iter()
        .map(|s| json!({"t": point(&s.t), "rank": s.rank, "m0": s.m0, "l0": rat(&s.l0)}))
        .collect();
    Ok(json!({"note": SAMPLING_NOTE, "samples": rows, "holds": r.holds}))
}
