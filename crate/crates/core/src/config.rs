//! Field description files:
//!
//! ```text
//! # F_9 = F_3[x]/(x^2 + 1)
//! p = 3
//! e = 2
//! modulus = 1 0 1      # low to high
//! ```
//!
//! `q = 9` alone selects the default modulus.

use crate::algebra::FieldConfig;
use crate::error::{Error, Result};

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidField(msg.into())
}

fn parse_u32(key: &str, v: &str) -> Result<u32> {
    v.trim().parse().map_err(|_| bad(format!("{key}: expected a nonnegative integer, found {v:?}")))
}

/// Residues separated by spaces and/or commas, optionally in brackets.
pub fn parse_modulus(v: &str) -> Result<Vec<u32>> {
    v.trim()
        .trim_start_matches('[')
        .trim_end_matches(']')
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| parse_u32("modulus", s))
        .collect()
}

pub fn parse_field_config(text: &str) -> Result<FieldConfig> {
    let (mut p, mut e, mut q, mut modulus) = (None, None, None, None);
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| bad(format!("line {}: expected key = value", lineno + 1)))?;
        match key.trim() {
            "p" => p = Some(parse_u32("p", value)?),
            "e" => e = Some(parse_u32("e", value)?),
            "q" => q = Some(parse_u32("q", value)?),
            "modulus" => modulus = Some(parse_modulus(value)?),
            other => return Err(bad(format!("line {}: unknown key {other:?}", lineno + 1))),
        }
    }
    field_from_parts(p, e, q, modulus)
}

/// Resolves a field from any consistent combination of `p`, `e`, `q` and a modulus.
pub fn field_from_parts(p: Option<u32>, e: Option<u32>, q: Option<u32>, modulus: Option<Vec<u32>>) -> Result<FieldConfig> {
    let field = match (p, e, modulus) {
        (Some(p), Some(e), Some(m)) => FieldConfig::with_degree(p, e, &m)?,
        (Some(p), None, Some(m)) => FieldConfig::new(p, &m)?,
        (Some(p), e, None) => {
            let e = e.unwrap_or(1);
            let q = p.checked_pow(e).ok_or_else(|| bad("q overflows"))?;
            let f = FieldConfig::for_q(q)?;
            if f.p() != p {
                return Err(bad(format!("{p} is not prime")));
            }
            f
        }
        (None, _, Some(_)) => return Err(bad("a modulus needs p")),
        (None, _, None) => FieldConfig::for_q(q.ok_or_else(|| bad("no field given: set q or p"))?)?,
    };
    if let Some(q) = q {
        if q != field.q() {
            return Err(bad(format!("q = {q} disagrees with p^e = {}", field.q())));
        }
    }
    Ok(field)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_files() {
        let f = parse_field_config("# nine\np = 3\ne = 2\nmodulus = 1, 0, 1\n").unwrap();
        assert_eq!(f, FieldConfig::for_q(9).unwrap());
        let f = parse_field_config("q = 8").unwrap();
        assert_eq!(f.modulus(), &[1, 1, 0, 1]);
        assert!(parse_field_config("p = 2\nmodulus = [1 0 1]").is_err());
        assert!(parse_field_config("p = 3\ne = 2\nq = 8").is_err());
        assert!(parse_field_config("r = 3").is_err());
        assert!(parse_field_config("").is_err());
    }
}
