//! Instance files: one directive per line.
//!
//! ```text
//! field: F32003
//! vars: x,y
//! ideal: x^2, x*y^3
//! extdeg: 4        # optional
//! label: sample    # optional
//! ```
//!
//! Blank lines and `#` comments are allowed. Parsing validates everything,
//! including that every polynomial parses over the declared field, so a
//! parsed spec is ready for analysis.

use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::arith::{Field, PrimeField, Rationals};
use crate::error::{Error, Result};
use crate::poly::parse::parse_polynomial_at;
use crate::poly::{PolyRing, Polynomial, TermOrder};

/// Coefficient field descriptor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldDesc {
    Prime(u64),
    Rationals,
}

impl FieldDesc {
    pub fn parse(text: &str, line: usize, col: usize) -> Result<Self> {
        let t = text.trim();
        if t == "Q" {
            return Ok(FieldDesc::Rationals);
        }
        if let Some(digits) = t.strip_prefix('F') {
            let p: u64 = digits
                .parse()
                .map_err(|_| Error::parse(line, col, format!("bad field '{t}'")))?;
            PrimeField::new(p)?;
            return Ok(FieldDesc::Prime(p));
        }
        Err(Error::parse(line, col, format!("bad field '{t}': expected F<p> or Q")))
    }

    pub fn as_text(&self) -> String {
        match self {
            FieldDesc::Prime(p) => format!("F{p}"),
            FieldDesc::Rationals => "Q".to_string(),
        }
    }
}

/// A fully validated analysis instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceSpec {
    pub field: FieldDesc,
    pub vars: Vec<String>,
    /// Generator texts, canonically re-emitted by the parser.
    pub ideal: Vec<String>,
    /// Externally supplied extended degree D(A), for non-homogeneous
    /// ideals where hdeg does not apply.
    pub extdeg: Option<BigInt>,
    pub label: Option<String>,
}

impl InstanceSpec {
    pub fn parse(text: &str) -> Result<InstanceSpec> {
        let mut field: Option<(FieldDesc, usize)> = None;
        let mut vars: Option<Vec<String>> = None;
        let mut ideal: Option<(String, usize, usize)> = None; // raw text, line, col offset
        let mut extdeg: Option<BigInt> = None;
        let mut label: Option<String> = None;

        for (lineno, raw) in text.lines().enumerate() {
            let lineno = lineno + 1;
            let line = raw.trim_end();
            let stripped = line.trim_start();
            if stripped.is_empty() || stripped.starts_with('#') {
                continue;
            }
            let Some(colon) = line.find(':') else {
                return Err(Error::parse(lineno, 1, "expected 'directive: value'"));
            };
            let key = line[..colon].trim();
            let value = &line[colon + 1..];
            let value_col = colon + 2;
            let dup = |name: &str| {
                Error::parse(lineno, 1, format!("duplicate directive '{name}'"))
            };
            match key {
                "field" => {
                    if field.is_some() {
                        return Err(dup("field"));
                    }
                    field = Some((FieldDesc::parse(value, lineno, value_col)?, lineno));
                }
                "vars" => {
                    if vars.is_some() {
                        return Err(dup("vars"));
                    }
                    let names: Vec<String> =
                        value.split(',').map(|v| v.trim().to_string()).collect();
                    for name in &names {
                        let ok = !name.is_empty()
                            && name.chars().next().unwrap().is_alphabetic()
                            && name.chars().all(|c| c.is_alphanumeric() || c == '_');
                        if !ok {
                            return Err(Error::parse(
                                lineno,
                                value_col,
                                format!("bad variable name '{name}'"),
                            ));
                        }
                    }
                    let mut sorted = names.clone();
                    sorted.sort();
                    sorted.dedup();
                    if sorted.len() != names.len() {
                        return Err(Error::parse(lineno, value_col, "variables must be distinct"));
                    }
                    vars = Some(names);
                }
                "ideal" => {
                    if ideal.is_some() {
                        return Err(dup("ideal"));
                    }
                    ideal = Some((value.to_string(), lineno, colon + 1));
                }
                "extdeg" => {
                    if extdeg.is_some() {
                        return Err(dup("extdeg"));
                    }
                    let v = BigInt::from_str(value.trim()).map_err(|_| {
                        Error::parse(lineno, value_col, "extdeg must be an integer")
                    })?;
                    extdeg = Some(v);
                }
                "label" => {
                    if label.is_some() {
                        return Err(dup("label"));
                    }
                    label = Some(value.trim().to_string());
                }
                other => {
                    return Err(Error::parse(lineno, 1, format!("unknown directive '{other}'")));
                }
            }
        }

        let (field, _) = field.ok_or_else(|| Error::parse(1, 1, "missing 'field' directive"))?;
        let vars = vars.ok_or_else(|| Error::parse(1, 1, "missing 'vars' directive"))?;
        let (ideal_text, ideal_line, ideal_off) =
            ideal.ok_or_else(|| Error::parse(1, 1, "missing 'ideal' directive"))?;

        let var_refs: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
        let ideal = match &field {
            FieldDesc::Prime(p) => parse_ideal_texts(
                &PolyRing::new(PrimeField::new(*p)?, &var_refs, TermOrder::grevlex()),
                &ideal_text,
                ideal_line,
                ideal_off,
            )?,
            FieldDesc::Rationals => parse_ideal_texts(
                &PolyRing::new(Rationals, &var_refs, TermOrder::grevlex()),
                &ideal_text,
                ideal_line,
                ideal_off,
            )?,
        };

        Ok(InstanceSpec { field, vars, ideal, extdeg, label })
    }

    /// Canonical text form; `parse(emit(spec)) == spec`.
    pub fn emit(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("field: {}\n", self.field.as_text()));
        out.push_str(&format!("vars: {}\n", self.vars.join(",")));
        out.push_str(&format!("ideal: {}\n", self.ideal.join(", ")));
        if let Some(d) = &self.extdeg {
            out.push_str(&format!("extdeg: {d}\n"));
        }
        if let Some(l) = &self.label {
            out.push_str(&format!("label: {l}\n"));
        }
        out
    }

    /// The one-parameter family (x^2, x*y^r) over the default prime field:
    /// multiplicity 1, deviation r, a tightness witness for the dimension-one
    /// regularity and first-coefficient bounds.
    pub fn family(r: u64) -> InstanceSpec {
        assert!(r >= 1, "family parameter must be >= 1");
        let second = if r == 1 { "x*y".to_string() } else { format!("x*y^{r}") };
        InstanceSpec {
            field: FieldDesc::Prime(PrimeField::DEFAULT_PRIME),
            vars: vec!["x".into(), "y".into()],
            ideal: vec!["x^2".into(), second],
            extdeg: None,
            label: Some(format!("family r={r}")),
        }
    }

    /// Parse the generators over a concrete field into a ring built from
    /// this spec.
    pub fn generators<F: Field>(&self, ring: &Arc<PolyRing<F>>) -> Result<Vec<Polynomial<F>>> {
        self.ideal
            .iter()
            .map(|t| crate::poly::parse::parse_polynomial(ring, t))
            .collect()
    }
}

fn parse_ideal_texts<F: Field>(
    ring: &Arc<PolyRing<F>>,
    text: &str,
    line: usize,
    col_off: usize,
) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut offset = col_off;
    for chunk in text.split(',') {
        let poly = parse_polynomial_at(ring, chunk, line, offset)?;
        out.push(poly.to_text());
        offset += chunk.len() + 1;
    }
    Ok(out)
}
