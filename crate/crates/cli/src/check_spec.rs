//! Ad-hoc congruence specs for `parity-forge check`:
//!
//! ```text
//! ak=<k> A=<A> B=<B> mod=<M>
//! internal ak=<k> lhs=<A1>,<B1> rhs=<A2>,<B2> mod=<M>
//! ```

use std::collections::HashMap;

use parity_forge::recipe::Recipe;
use parity_forge::verify::{Check, CongruenceFamily, InternalCongruence};
use parity_forge::ParseError;

struct Field<'a> {
    value: &'a str,
    at: usize,
}

fn tokens(input: &str) -> impl Iterator<Item = (usize, &str)> {
    input
        .split_whitespace()
        .map(move |tok| (tok.as_ptr() as usize - input.as_ptr() as usize, tok))
}

fn number<T: std::str::FromStr>(field: &Field, what: &str) -> Result<T, ParseError> {
    field
        .value
        .parse()
        .map_err(|_| ParseError::new(format!("{what} must be a non-negative integer"), field.at))
}

fn pair(field: &Field, what: &str) -> Result<(u64, u64), ParseError> {
    let Some((a, b)) = field.value.split_once(',') else {
        return Err(ParseError::new(
            format!("{what} must look like <A>,<B>"),
            field.at,
        ));
    };
    let a_field = Field {
        value: a,
        at: field.at,
    };
    let b_field = Field {
        value: b,
        at: field.at + a.len() + 1,
    };
    Ok((number(&a_field, what)?, number(&b_field, what)?))
}

pub fn parse(input: &str) -> Result<Check, ParseError> {
    let mut toks = tokens(input).peekable();
    let internal = matches!(toks.peek(), Some((_, "internal")));
    if internal {
        toks.next();
    }
    let allowed: &[&str] = if internal {
        &["ak", "lhs", "rhs", "mod"]
    } else {
        &["ak", "A", "B", "mod"]
    };

    let mut fields: HashMap<&str, Field> = HashMap::new();
    for (at, tok) in toks {
        let Some((key, value)) = tok.split_once('=') else {
            return Err(ParseError::new("expected key=value", at));
        };
        let Some(key) = allowed.iter().copied().find(|k| *k == key) else {
            return Err(ParseError::new(format!("unknown key `{key}`"), at));
        };
        let field = Field {
            value,
            at: at + key.len() + 1,
        };
        if fields.insert(key, field).is_some() {
            return Err(ParseError::new(format!("`{key}` given twice"), at));
        }
    }
    let get = |key: &str| {
        fields
            .get(key)
            .ok_or_else(|| ParseError::new(format!("missing `{key}=`"), input.len()))
    };

    let ak_field = get("ak")?;
    let k: u32 = number(ak_field, "ak")?;
    if k == 0 {
        return Err(ParseError::new("ak needs at least one color", ak_field.at));
    }
    let modulus: u64 = number(get("mod")?, "mod")?;

    if internal {
        let lhs = pair(get("lhs")?, "lhs")?;
        let rhs = pair(get("rhs")?, "rhs")?;
        return Ok(Check::Internal(InternalCongruence {
            id: format!(
                "a{k}({}n+{}) == a{k}({}n+{}) mod {modulus}",
                lhs.0, lhs.1, rhs.0, rhs.1
            ),
            recipe: Recipe::ak(k),
            modulus,
            lhs,
            rhs,
        }));
    }
    let stride: u64 = number(get("A")?, "A")?;
    let offset: u64 = number(get("B")?, "B")?;
    Ok(Check::Vanishing(CongruenceFamily {
        id: format!("a{k}({stride}n+{offset}) == 0 mod {modulus}"),
        recipe: Recipe::ak(k),
        stride,
        offset,
        modulus,
        params: Vec::new(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vanishing_spec() {
        let Check::Vanishing(f) = parse("ak=5 A=5 B=3 mod=5").unwrap() else {
            panic!("expected a vanishing family")
        };
        assert_eq!((f.stride, f.offset, f.modulus), (5, 3, 5));
        assert_eq!(f.recipe, Recipe::ak(5));
    }

    #[test]
    fn internal_spec() {
        let Check::Internal(c) = parse("internal ak=5 lhs=27,10 rhs=3,1 mod=3").unwrap() else {
            panic!("expected an internal congruence")
        };
        assert_eq!((c.lhs, c.rhs, c.modulus), ((27, 10), (3, 1), 3));
    }

    #[test]
    fn error_positions() {
        let at = |s: &str| parse(s).unwrap_err().position;
        assert_eq!(at("ak=5 A=x B=3 mod=5"), 7);
        assert_eq!(at("ak=5 A=5 C=3 mod=5"), 9);
        assert_eq!(at("ak=5 A=5 B=3"), 12);
        assert_eq!(at("internal ak=5 lhs=27,x rhs=3,1 mod=3"), 21);
        assert_eq!(at("ak=0 A=5 B=3 mod=5"), 3);
        assert_eq!(at("ak=5 ak=5 A=5 B=3 mod=5"), 5);
        assert_eq!(at("ak=5 A5"), 5);
    }
}
