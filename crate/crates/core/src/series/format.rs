//! Text and JSON encodings of exact series.
//!
//! Text: one `n<TAB>coefficient` line per term in ascending `n`; absent
//! exponents are zero and the order is the largest `n` listed. Writers emit
//! every exponent so the order survives a round trip.
//!
//! JSON: `{"order": N, "coeffs": [c0, ..., cN]}` with coefficients as exact
//! JSON integers of any size.

use num_bigint::BigInt;
use serde_json::{json, Number, Value};

use super::Series;
use crate::error::ParseError;

pub fn series_to_text(series: &Series) -> String {
    let mut out = String::new();
    for (n, c) in series.coeffs().iter().enumerate() {
        out.push_str(&format!("{n}\t{c}\n"));
    }
    out
}

pub fn parse_series_text(input: &str) -> Result<Series, ParseError> {
    let mut terms: Vec<(usize, BigInt)> = Vec::new();
    let mut offset = 0;
    for line in input.split_inclusive('\n') {
        let start = offset;
        offset += line.len();
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let lead = line.len() - line.trim_start().len();
        let mut fields = trimmed.split_whitespace();
        let (Some(n_str), Some(c_str), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(ParseError::new(
                "expected `n<TAB>coefficient`",
                start + lead,
            ));
        };
        let n: usize = n_str
            .parse()
            .map_err(|_| ParseError::new(format!("bad exponent `{n_str}`"), start + lead))?;
        let c_pos = start + line.find(c_str).unwrap_or(lead);
        let c: BigInt = c_str
            .parse()
            .map_err(|_| ParseError::new(format!("bad coefficient `{c_str}`"), c_pos))?;
        if let Some(&(prev, _)) = terms.last() {
            if n <= prev {
                return Err(ParseError::new(
                    format!("exponent {n} does not follow {prev} in ascending order"),
                    start + lead,
                ));
            }
        }
        terms.push((n, c));
    }
    let Some(&(order, _)) = terms.last() else {
        return Err(ParseError::new("no terms", 0));
    };
    let mut coeffs = vec![BigInt::from(0); order + 1];
    for (n, c) in terms {
        coeffs[n] = c;
    }
    Ok(Series::new(coeffs, order).expect("length equals order + 1"))
}

fn big_number(value: &BigInt) -> Value {
    // arbitrary_precision keeps the digits verbatim
    Value::Number(
        value
            .to_string()
            .parse::<Number>()
            .expect("decimal integer"),
    )
}

pub fn series_to_json(series: &Series) -> Value {
    let coeffs: Vec<Value> = series.coeffs().iter().map(big_number).collect();
    json!({ "order": series.order(), "coeffs": coeffs })
}

pub(crate) fn exact_number(value: &BigInt) -> Value {
    big_number(value)
}

pub fn parse_series_json(input: &str) -> Result<Series, ParseError> {
    let value: Value = serde_json::from_str(input)
        .map_err(|e| ParseError::new(format!("invalid JSON: {e}"), 0))?;
    let order = value
        .get("order")
        .and_then(Value::as_u64)
        .ok_or_else(|| ParseError::new("missing non-negative integer `order`", 0))?
        as usize;
    let coeffs = value
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| ParseError::new("missing array `coeffs`", 0))?;
    let coeffs = coeffs
        .iter()
        .enumerate()
        .map(|(i, v)| match v {
            Value::Number(n) => n
                .to_string()
                .parse::<BigInt>()
                .map_err(|_| ParseError::new(format!("coefficient {i} is not an integer"), 0)),
            _ => Err(ParseError::new(
                format!("coefficient {i} is not a number"),
                0,
            )),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Series::new(coeffs, order).map_err(|e| ParseError::new(e.to_string(), 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_sparse_input() {
        let s = parse_series_text("0\t1\n3\t-7\n").unwrap();
        assert_eq!(s, Series::from_i64s(&[1, 0, 0, -7], 3).unwrap());
        assert_eq!(series_to_text(&s), "0\t1\n1\t0\n2\t0\n3\t-7\n");
    }

    #[test]
    fn text_rejects_descending() {
        let err = parse_series_text("0\t1\n2\t1\n1\t1\n").unwrap_err();
        assert_eq!(err.position, 8);
    }

    #[test]
    fn text_rejects_garbage() {
        assert!(parse_series_text("0\tx\n").is_err());
        assert!(parse_series_text("\n\n").is_err());
        assert!(parse_series_text("0 1 2\n").is_err());
    }

    #[test]
    fn json_keeps_huge_coefficients() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let s = Series::new(vec![BigInt::from(1), big.clone()], 1).unwrap();
        let text = series_to_json(&s).to_string();
        assert_eq!(
            text,
            r#"{"coeffs":[1,123456789012345678901234567890],"order":1}"#
        );
        assert_eq!(parse_series_json(&text).unwrap(), s);
    }

    #[test]
    fn json_rejects_overlong() {
        assert!(parse_series_json(r#"{"order":0,"coeffs":[1,2]}"#).is_err());
        assert!(parse_series_json(r#"{"order":1,"coeffs":[1.5]}"#).is_err());
    }
}
