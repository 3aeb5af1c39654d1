//! Input documents: a germ or a deformation family, plus optional arcs,
//! functions and parameter samples.

use germlab::deformation::{Arc, DeformationFamily, TPoint};
use germlab::germ::Germ;
use germlab::poly::{parse_poly, parse_rational, Poly, Rational, Ring};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Scalar {
    Int(i64),
    Text(String),
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawSample {
    One(Scalar),
    Tuple(Vec<Scalar>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    variables: Vec<String>,
    #[serde(default)]
    parameters: Vec<String>,
    map: Vec<String>,
    #[serde(default)]
    arcs: Vec<String>,
    #[serde(default)]
    h: Vec<String>,
    #[serde(default)]
    samples: Vec<RawSample>,
}

/// A validated document. Polynomials in `map` live in the ring
/// `parameters ++ variables`.
#[derive(Clone, Debug)]
pub struct InputDocument {
    pub parameters: Vec<String>,
    pub map: Vec<Poly>,
    pub arcs: Vec<Arc>,
    pub h: Vec<Poly>,
    pub samples: Vec<TPoint>,
    /// Ring of the variables alone.
    pub z_ring: Ring,
}

/// Source text used to turn string-relative columns into file positions.
struct Source<'a> {
    text: &'a str,
}

impl Source<'_> {
    fn line_col(&self, offset: usize) -> (usize, usize) {
        let before = &self.text[..offset];
        let line = before.matches('\n').count() + 1;
        let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        (line, col)
    }

    /// Position of character `column` (1-based) of the JSON string literal
    /// holding `value`, searching from the field named `field`.
    fn locate(&self, field: &str, value: &str, column: usize) -> Option<(usize, usize)> {
        let key = format!("\"{field}\"");
        let from = self.text.find(&key).unwrap_or(0);
        let literal = serde_json::to_string(value).ok()?;
        let start = from + self.text[from..].find(&literal)?;
        let (line, col) = self.line_col(start);
        Some((line, col + column))
    }

    fn error(&self, field: &str, value: &str, column: usize, message: &str) -> CliError {
        match self.locate(field, value, column) {
            Some((line, col)) => {
                CliError::invalid(format!("line {line}, column {col}: {message} (in {field} entry '{value}')"))
            }
            None => CliError::invalid(format!("{field} entry '{value}', column {column}: {message}")),
        }
    }
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn check_names(names: &[&String]) -> Result<(), CliError> {
    for (i, n) in names.iter().enumerate() {
        if !is_identifier(n) {
            return Err(CliError::invalid(format!("'{n}' is not a valid variable name")));
        }
        if names[..i].contains(n) {
            return Err(CliError::invalid(format!("variable name '{n}' is declared twice")));
        }
    }
    Ok(())
}

fn scalar(s: &Scalar) -> Result<Rational, CliError> {
    match s {
        Scalar::Int(i) => Ok(Rational::from_integer((*i).into())),
        Scalar::Text(t) => parse_rational(t).map_err(|e| CliError::invalid(format!("sample value: {e}"))),
    }
}

pub fn parse_input(text: &str) -> Result<InputDocument, CliError> {
    let raw: RawDocument = serde_json::from_str(text).map_err(|e| {
        CliError::invalid(format!("line {}, column {}: {}", e.line(), e.column(), strip_position(&e.to_string())))
    })?;
    let src = Source { text };
    let names: Vec<&String> = raw.parameters.iter().chain(&raw.variables).collect();
    if raw.variables.is_empty() {
        return Err(CliError::invalid("at least one variable is required"));
    }
    check_names(&names)?;
    if raw.variables.iter().any(|v| v == "s") && !raw.arcs.is_empty() {
        return Err(CliError::invalid("'s' is reserved for the arc parameter"));
    }
    if raw.map.len() != raw.variables.len() {
        return Err(CliError::invalid(format!(
            "map has {} components but there are {} variables",
            raw.map.len(),
            raw.variables.len()
        )));
    }
    let full = Ring::new(names.iter().map(|s| s.as_str()));
    let z_ring = Ring::new(raw.variables.iter().map(String::as_str));
    let s_ring = Ring::new(["s"]);

    let map = raw
        .map
        .iter()
        .map(|t| parse_poly(t, &full).map_err(|e| src.error("map", t, e.column, &e.message)))
        .collect::<Result<Vec<_>, _>>()?;
    let h = raw
        .h
        .iter()
        .map(|t| parse_poly(t, &z_ring).map_err(|e| src.error("h", t, e.column, &e.message)))
        .collect::<Result<Vec<_>, _>>()?;
    let arcs = raw
        .arcs
        .iter()
        .map(|t| parse_arc(t, &s_ring, raw.variables.len()).map_err(|e| match e {
            ArcError::Parse(offset, column, message) => src.error("arcs", t, offset + column, &message),
            ArcError::Other(m) => CliError::invalid(format!("arc '{t}': {m}")),
        }))
        .collect::<Result<Vec<_>, _>>()?;
    let samples = raw
        .samples
        .iter()
        .map(|s| match s {
            RawSample::One(x) => Ok(vec![scalar(x)?]),
            RawSample::Tuple(xs) => xs.iter().map(scalar).collect(),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(InputDocument { parameters: raw.parameters, map, arcs, h, samples, z_ring })
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

pub enum ArcError {
    /// Character offset of the component, column inside it, message.
    Parse(usize, usize, String),
    Other(String),
}

/// `"p1,...,pn"` in the variable `s`.
pub fn parse_arc(text: &str, s_ring: &Ring, n: usize) -> Result<Arc, ArcError> {
    let mut comps = Vec::new();
    let mut offset = 0;
    for part in text.split(',') {
        let p = parse_poly(part, s_ring).map_err(|e| ArcError::Parse(offset, e.column, e.message))?;
        comps.push(p);
        offset += part.chars().count() + 1;
    }
    if comps.len() != n {
        return Err(ArcError::Other(format!("has {} components, expected {n}", comps.len())));
    }
    Arc::new(comps).map_err(|e| ArcError::Other(e.to_string()))
}

/// `"1;1/2;-2"`, coordinates of one point separated by commas.
pub fn parse_samples(text: &str) -> Result<Vec<TPoint>, CliError> {
    text.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|point| {
            point
                .split(',')
                .map(|x| parse_rational(x).map_err(|e| CliError::invalid(format!("--samples: {e}"))))
                .collect()
        })
        .collect()
}

impl InputDocument {
    pub fn germ(&self) -> Result<Germ, CliError> {
        if !self.parameters.is_empty() {
            return Err(CliError::invalid("the document describes a family; use 'deform' or 'prop23'"));
        }
        Ok(Germ::new(self.map.clone())?)
    }

    pub fn family(&self) -> Result<DeformationFamily, CliError> {
        if self.parameters.is_empty() {
            return Err(CliError::invalid("the document declares no parameters"));
        }
        let ring = self.map[0].ring().clone();
        Ok(DeformationFamily::new(&ring, self.parameters.len(), self.map.clone())?)
    }

    pub fn parse_function(&self, text: &str) -> Result<Poly, CliError> {
        parse_poly(text, &self.z_ring).map_err(|e| CliError::invalid(format!("--h '{text}', column {}: {}", e.column, e.message)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_germs_and_families() {
        let d = parse_input(r#"{"variables":["z1","z2","z3"],"map":["z1^2","z2^3","z3^3 - z1*z2"]}"#).unwrap();
        assert_eq!(d.germ().unwrap().n(), 3);
        let d = parse_input(
            r#"{"variables":["z1","z2"],"parameters":["t"],"map":["t*z1 + z1^2 + z2^2","z1^2 - z2^5"],
               "samples":["1", [2], ["-1/2"]]}"#,
        )
        .unwrap();
        assert_eq!(d.family().unwrap().k(), 1);
        assert_eq!(d.samples.len(), 3);
        assert!(d.germ().is_err());
    }

    #[test]
    fn reports_positions() {
        let e = parse_input(r#"{"variables":["z1"],"map":["z1^2","z1"]}"#).unwrap_err();
        assert!(e.message.contains("2 components"));
        let text = "{\"variables\":[\"z1\",\"z2\"],\n \"map\":[\"z1^2\", \"z2^2 + q\"]}";
        let e = parse_input(text).unwrap_err();
        assert_eq!(e.code, 2);
        assert!(e.message.starts_with("line 2, column 25"), "{}", e.message);
        let e = parse_input("{\"variables\":[\"z1\"],\n\"map\":[\"z1\"").unwrap_err();
        assert!(e.message.starts_with("line 2"), "{}", e.message);
        assert!(parse_input(r#"{"variables":["z1","z1"],"map":["z1","z1"]}"#).is_err());
        assert!(parse_input(r#"{"variables":["1z"],"map":["z1"]}"#).is_err());
    }

    #[test]
    fn samples_and_arcs() {
        let s = parse_samples("1;1/2; -2").unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s[2][0], Rational::from_integer((-2).into()));
        assert!(parse_samples("1;x").is_err());
        let r = Ring::new(["s"]);
        assert!(parse_arc("s^9,s^6,s^5", &r, 3).is_ok());
        assert!(matches!(parse_arc("s,1", &r, 2), Err(ArcError::Other(_))));
        assert!(matches!(parse_arc("s,t", &r, 2), Err(ArcError::Parse(2, _, _))));
    }
}
