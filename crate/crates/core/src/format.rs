//! Text and structured encodings of monomial ideals.
//!
//! Text: one monomial per line, written as `x1^2*x3` or `1`. Blank lines and
//! lines starting with `#` are ignored. An optional `n=<arity>` line fixes
//! the arity; otherwise it is the largest variable index that appears.
//!
//! Structured: a JSON object `{"n": 3, "generators": [[2,0,1], [0,1,0]]}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ideal::{minimalize, MonomialIdeal};
use crate::monomial::{Monomial, DEFAULT_EXPONENT_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    /// 1-based line; 0 when the position is not meaningful.
    pub line: usize,
    /// 1-based column.
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            column,
            message: message.into(),
        }
    }
}

/// Parses either encoding, choosing structured when the text starts with `{`.
pub fn parse_ideal(input: &str) -> Result<MonomialIdeal, ParseError> {
    if input.trim_start().starts_with('{') {
        parse_ideal_structured(input)
    } else {
        parse_ideal_text(input)
    }
}

pub fn parse_ideal_text(input: &str) -> Result<MonomialIdeal, ParseError> {
    let mut declared: Option<usize> = None;
    // (line, exponents keyed by 0-based variable index)
    let mut parsed: Vec<Vec<(usize, u32)>> = Vec::new();
    let mut max_var = 0usize;

    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let offset = raw.len() - raw.trim_start().len();
        if let Some(rest) = trimmed.strip_prefix("n=").or_else(|| trimmed.strip_prefix("n =")) {
            let n: usize = rest.trim().parse().map_err(|_| {
                ParseError::at(line_no, offset + 1, format!("invalid arity `{}`", rest.trim()))
            })?;
            if n == 0 {
                return Err(ParseError::at(line_no, offset + 1, "arity must be positive"));
            }
            if declared.is_some() {
                return Err(ParseError::at(line_no, offset + 1, "arity declared twice"));
            }
            declared = Some(n);
            continue;
        }
        let factors = parse_monomial_line(trimmed, line_no, offset)?;
        for &(var, _) in &factors {
            max_var = max_var.max(var + 1);
        }
        parsed.push(factors);
    }

    let arity = match declared {
        Some(n) => {
            if max_var > n {
                return Err(ParseError::at(
                    0,
                    0,
                    format!("variable x{max_var} exceeds declared arity {n}"),
                ));
            }
            n
        }
        None => max_var.max(1),
    };

    let mut gens = Vec::with_capacity(parsed.len());
    for factors in parsed {
        let mut exps = vec![0u32; arity];
        for (var, e) in factors {
            exps[var] += e;
        }
        let mono = Monomial::new(exps).map_err(|e| ParseError::at(0, 0, e.to_string()))?;
        gens.push(mono);
    }
    minimalize(arity, gens).map_err(|e| ParseError::at(0, 0, e.to_string()))
}

fn parse_monomial_line(
    text: &str,
    line: usize,
    offset: usize,
) -> Result<Vec<(usize, u32)>, ParseError> {
    if text == "1" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut col = offset + 1;
    for token in text.split('*') {
        let tok = token.trim();
        let tok_col = col + (token.len() - token.trim_start().len());
        col += token.len() + 1;
        if tok.is_empty() {
            return Err(ParseError::at(line, tok_col, "empty factor"));
        }
        if tok == "1" {
            continue;
        }
        let body = tok
            .strip_prefix('x')
            .ok_or_else(|| ParseError::at(line, tok_col, format!("expected `x<index>`, found `{tok}`")))?;
        let (index_text, exp_text) = match body.split_once('^') {
            Some((i, e)) => (i, Some(e)),
            None => (body, None),
        };
        let index: usize = index_text.parse().map_err(|_| {
            ParseError::at(line, tok_col, format!("invalid variable index in `{tok}`"))
        })?;
        if index == 0 {
            return Err(ParseError::at(line, tok_col, "variables are numbered from x1"));
        }
        let exp: u32 = match exp_text {
            None => 1,
            Some(e) => {
                if e.starts_with('-') {
                    return Err(ParseError::at(line, tok_col, "negative exponent"));
                }
                let v: u64 = e.parse().map_err(|_| {
                    ParseError::at(line, tok_col, format!("invalid exponent in `{tok}`"))
                })?;
                if v > u64::from(DEFAULT_EXPONENT_CAP) {
                    return Err(ParseError::at(
                        line,
                        tok_col,
                        format!("exponent {v} exceeds the cap {DEFAULT_EXPONENT_CAP}"),
                    ));
                }
                v as u32
            }
        };
        out.push((index - 1, exp));
    }
    Ok(out)
}

#[derive(Debug, Serialize, Deserialize)]
struct StructuredIdeal {
    n: i64,
    generators: Vec<Vec<i64>>,
}

pub fn parse_ideal_structured(input: &str) -> Result<MonomialIdeal, ParseError> {
    let doc: StructuredIdeal = serde_json::from_str(input)
        .map_err(|e| ParseError::at(e.line(), e.column(), e.to_string()))?;
    ideal_from_vectors(doc.n, &doc.generators)
}

/// Validates raw integer vectors: positive arity, exact lengths, no negatives.
pub fn ideal_from_vectors(n: i64, generators: &[Vec<i64>]) -> Result<MonomialIdeal, ParseError> {
    if n <= 0 {
        return Err(ParseError::at(0, 0, "arity must be positive"));
    }
    let n = n as usize;
    let mut gens = Vec::with_capacity(generators.len());
    for (i, g) in generators.iter().enumerate() {
        if g.len() != n {
            return Err(ParseError::at(
                0,
                0,
                format!("generator {i} has length {}, expected {n}", g.len()),
            ));
        }
        if g.iter().any(|&e| e < 0) {
            return Err(ParseError::at(0, 0, format!("generator {i} has a negative exponent")));
        }
        if let Some(&e) = g.iter().find(|&&e| e > i64::from(DEFAULT_EXPONENT_CAP)) {
            return Err(ParseError::at(
                0,
                0,
                format!("generator {i}: exponent {e} exceeds the cap {DEFAULT_EXPONENT_CAP}"),
            ));
        }
        let exps = g.iter().map(|&e| e as u32).collect();
        gens.push(Monomial::new(exps).map_err(|e| ParseError::at(0, 0, e.to_string()))?);
    }
    minimalize(n, gens).map_err(|e| ParseError::at(0, 0, e.to_string()))
}

/// Text encoding with an explicit arity line; parses back to the same ideal.
pub fn render_ideal_text(ideal: &MonomialIdeal) -> String {
    let mut out = format!("n={}\n", ideal.arity());
    for g in ideal.generators() {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}

pub fn render_ideal_structured(ideal: &MonomialIdeal) -> String {
    let doc = StructuredIdeal {
        n: ideal.arity() as i64,
        generators: ideal
            .generators()
            .iter()
            .map(|g| g.exponents().iter().map(|&e| i64::from(e)).collect())
            .collect(),
    };
    serde_json::to_string(&doc).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_format() {
        let i = parse_ideal_text("# comment\nx1^2*x3\n\nx2\n").unwrap();
        assert_eq!(i.arity(), 3);
        assert_eq!(i, MonomialIdeal::from_exponents(3, &[&[2, 0, 1], &[0, 1, 0]]).unwrap());
        let u = parse_ideal_text("1\n").unwrap();
        assert!(u.is_unit());
        let declared = parse_ideal_text("n=5\nx1\n").unwrap();
        assert_eq!(declared.arity(), 5);
        let zero = parse_ideal_text("n=2\n").unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn text_errors_carry_positions() {
        let err = parse_ideal_text("x1\n  x0^2\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 3));
        let err = parse_ideal_text("x1*y2").unwrap_err();
        assert_eq!((err.line, err.column), (1, 4));
        assert!(parse_ideal_text("x1^-2").unwrap_err().message.contains("negative"));
        assert!(parse_ideal_text("x1^99999").is_err());
        assert!(parse_ideal_text("n=2\nx3\n").is_err());
        assert!(parse_ideal_text("x1**x2").is_err());
    }

    #[test]
    fn structured_format() {
        let i = parse_ideal(r#"{"n": 2, "generators": [[1,0],[1,1]]}"#).unwrap();
        assert_eq!(i, MonomialIdeal::from_exponents(2, &[&[1, 0]]).unwrap());
        assert!(parse_ideal(r#"{"n": 2, "generators": [[1,-1]]}"#).is_err());
        assert!(parse_ideal(r#"{"n": 2, "generators": [[1,0,0]]}"#).is_err());
        assert!(parse_ideal(r#"{"n": 0, "generators": []}"#).is_err());
        assert!(parse_ideal(r#"{"n": 2"#).is_err());
    }

    #[test]
    fn renderings_parse_back() {
        let i = MonomialIdeal::from_exponents(3, &[&[2, 0, 1], &[0, 3, 0], &[1, 1, 1]]).unwrap();
        assert_eq!(parse_ideal(&render_ideal_text(&i)).unwrap(), i);
        assert_eq!(parse_ideal(&render_ideal_structured(&i)).unwrap(), i);
        let z = MonomialIdeal::zero(4);
        assert_eq!(parse_ideal(&render_ideal_text(&z)).unwrap(), z);
    }
}
