//! Named series: the Pochhammer factors `f_k = (q^k; q^k)_inf`, products of
//! their integer powers (eta quotients), and the theta sums `D(q)` and `Y(q)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{ParseError, SeriesError};
use crate::series::{CoefficientRing, Integers, ModSeries, Series, TruncatedSeries, Zn};

/// Generalized pentagonal exponents `j(3j-1)/2`, `j = 0, 1, -1, 2, -2, ...`,
/// paired with the sign `(-1)^j`, stopping past `order`.
fn pentagonal_terms(order: usize) -> Vec<(usize, i64)> {
    let mut terms = vec![(0, 1)];
    for j in 1usize.. {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let lower = j * (3 * j - 1) / 2;
        let upper = j * (3 * j + 1) / 2;
        if lower > order {
            break;
        }
        terms.push((lower, sign));
        if upper <= order {
            terms.push((upper, sign));
        }
    }
    terms
}

/// `f_k` truncated at `order`, with coefficients in `ring`.
///
/// Built from Euler's pentagonal expansion of `f_1` and then dilated by `k`.
pub fn pochhammer_in<R: CoefficientRing>(ring: R, k: usize, order: usize) -> TruncatedSeries<R> {
    assert!(k >= 1, "Pochhammer dilation must be positive");
    let base_order = order / k;
    let mut coeffs = vec![ring.zero(); base_order + 1];
    for (e, sign) in pentagonal_terms(base_order) {
        coeffs[e] = ring.from_i64(sign);
    }
    TruncatedSeries::from_vec_unchecked(ring, coeffs)
        .dilate_to(k, order)
        .expect("base series covers order / k")
}

/// `f_k = prod_{j >= 1} (1 - q^{kj})` truncated at `order`.
pub fn pochhammer(k: usize, order: usize) -> Series {
    pochhammer_in(Integers, k, order)
}

/// `D(q) = sum_{n in Z} (-1)^n q^{n^2}`.
pub fn theta_d_in<R: CoefficientRing>(ring: R, order: usize) -> TruncatedSeries<R> {
    let mut coeffs = vec![ring.zero(); order + 1];
    coeffs[0] = ring.one();
    for n in 1usize.. {
        let e = n * n;
        if e > order {
            break;
        }
        // n and -n contribute the same term
        coeffs[e] = ring.from_i64(if n % 2 == 0 { 2 } else { -2 });
    }
    TruncatedSeries::from_vec_unchecked(ring, coeffs)
}

pub fn theta_d(order: usize) -> Series {
    theta_d_in(Integers, order)
}

/// `Y(q) = sum_{n in Z} (-1)^n q^{3n^2 - 2n}`.
pub fn theta_y_in<R: CoefficientRing>(ring: R, order: usize) -> TruncatedSeries<R> {
    let mut coeffs = vec![ring.zero(); order + 1];
    coeffs[0] = ring.one();
    for n in 1usize.. {
        let sign = ring.from_i64(if n % 2 == 0 { 1 } else { -1 });
        // 3n^2 - 2n for n > 0 and 3n^2 + 2n for -n; the latter is larger
        let pos = 3 * n * n - 2 * n;
        let neg = 3 * n * n + 2 * n;
        if pos > order {
            break;
        }
        ring.add_assign(&mut coeffs[pos], &sign);
        if neg <= order {
            ring.add_assign(&mut coeffs[neg], &sign);
        }
    }
    TruncatedSeries::from_vec_unchecked(ring, coeffs)
}

pub fn theta_y(order: usize) -> Series {
    theta_y_in(Integers, order)
}

/// One factor `f_k^e` of an eta quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EtaFactor {
    pub k: usize,
    pub e: i64,
}

/// A finite product `prod f_k^e`. Repeated dilations are allowed; their
/// exponents add when the quotient is evaluated.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct EtaQuotient {
    factors: Vec<EtaFactor>,
}

impl EtaQuotient {
    /// The empty product, which evaluates to 1.
    pub fn one() -> Self {
        EtaQuotient::default()
    }

    /// Panics if any dilation is zero.
    pub fn new(factors: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let factors = factors
            .into_iter()
            .map(|(k, e)| {
                assert!(k >= 1, "eta factor dilation must be positive");
                EtaFactor { k, e }
            })
            .collect();
        EtaQuotient { factors }
    }

    pub fn f(k: usize) -> Self {
        Self::new([(k, 1)])
    }

    pub fn factors(&self) -> &[EtaFactor] {
        &self.factors
    }

    /// Exponent per dilation after merging duplicates; zero exponents vanish.
    pub fn merged(&self) -> BTreeMap<usize, i64> {
        let mut map = BTreeMap::new();
        for f in &self.factors {
            *map.entry(f.k).or_insert(0) += f.e;
        }
        map.retain(|_, e| *e != 0);
        map
    }

    pub fn times(&self, other: &EtaQuotient) -> EtaQuotient {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        EtaQuotient { factors }
    }

    pub fn pow(&self, e: i64) -> EtaQuotient {
        EtaQuotient {
            factors: self
                .factors
                .iter()
                .map(|f| EtaFactor { k: f.k, e: f.e * e })
                .collect(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.merged().is_empty()
    }

    /// Rewrites `f_k^{p a + b}` as `f_{pk}^a f_k^b` until every exponent has
    /// absolute value below `p`. The result agrees with `self` modulo the
    /// prime `p`, not over the integers.
    pub fn reduce_exponents_mod_prime(&self, p: u64) -> EtaQuotient {
        let p = p as i64;
        let mut pending = self.merged();
        let mut done: BTreeMap<usize, i64> = BTreeMap::new();
        while let Some((k, e)) = pending.pop_first() {
            let carry = e / p;
            let rest = e - carry * p;
            if rest != 0 {
                *done.entry(k).or_insert(0) += rest;
            }
            if carry != 0 {
                *pending.entry(k * p as usize).or_insert(0) += carry;
            }
        }
        EtaQuotient::new(done.into_iter().filter(|&(_, e)| e != 0))
    }

    /// Evaluates to `order` over `ring`.
    ///
    /// Multiplies in the positive-exponent factors first and then divides by
    /// the rest, one sparse `f_k` at a time, so every divisor has constant
    /// term 1.
    pub fn eval_in<R: CoefficientRing>(
        &self,
        ring: R,
        order: usize,
    ) -> Result<TruncatedSeries<R>, SeriesError> {
        let merged = self.merged();
        let mut acc = TruncatedSeries::one_in(ring.clone(), order);
        for (&k, &e) in merged.iter().filter(|(_, e)| **e > 0) {
            let fk = pochhammer_in(ring.clone(), k, order);
            for _ in 0..e {
                acc = acc.mul(&fk);
            }
        }
        for (&k, &e) in merged.iter().filter(|(_, e)| **e < 0) {
            let fk = pochhammer_in(ring.clone(), k, order);
            for _ in 0..-e {
                acc = acc.div(&fk)?;
            }
        }
        Ok(acc)
    }

    pub fn eval(&self, order: usize) -> Result<Series, SeriesError> {
        self.eval_in(Integers, order)
    }

    pub fn eval_mod(&self, modulus: u64, order: usize) -> Result<ModSeries, SeriesError> {
        let ring = Zn::checked(modulus).ok_or(SeriesError::BadModulus(modulus))?;
        self.eval_in(ring, order)
    }
}

/// `eval_eta` under its usual name.
pub fn eval_eta(quotient: &EtaQuotient, order: usize) -> Result<Series, SeriesError> {
    quotient.eval(order)
}

/// Canonical form: numerator factors, then `/` and the denominator, e.g.
/// `f2^4/f1^5`. The empty product prints as `1`.
impl fmt::Display for EtaQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let merged = self.merged();
        let render = |items: Vec<(usize, i64)>| {
            items
                .into_iter()
                .map(|(k, e)| {
                    if e == 1 {
                        format!("f{k}")
                    } else {
                        format!("f{k}^{e}")
                    }
                })
                .collect::<Vec<_>>()
                .join("*")
        };
        let num: Vec<_> = merged
            .iter()
            .filter(|(_, e)| **e > 0)
            .map(|(&k, &e)| (k, e))
            .collect();
        let den: Vec<_> = merged
            .iter()
            .filter(|(_, e)| **e < 0)
            .map(|(&k, &e)| (k, -e))
            .collect();
        let num = if num.is_empty() {
            "1".to_string()
        } else {
            render(num)
        };
        match den.len() {
            0 => write!(f, "{num}"),
            1 => write!(f, "{num}/{}", render(den)),
            _ => write!(f, "{num}/({})", render(den)),
        }
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, want: char) -> bool {
        if self.peek() == Some(want) {
            self.pos += want.len_utf8();
            true
        } else {
            false
        }
    }

    fn integer(&mut self, signed: bool) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut neg = false;
        if signed {
            if self.eat('-') {
                neg = true;
            } else {
                self.eat('+');
            }
            self.skip_ws();
        }
        let digits_start = self.pos;
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if digits_start == self.pos {
            return Err(ParseError::new(
                "expected an integer",
                start.max(digits_start),
            ));
        }
        let v: i64 = self.src[digits_start..self.pos]
            .parse()
            .map_err(|_| ParseError::new("integer out of range", digits_start))?;
        Ok(if neg { -v } else { v })
    }
}

/// One `f<k>[^e]` or `1` token, pushed with its exponent negated when `invert`.
fn eta_token(
    cur: &mut Cursor,
    invert: bool,
    factors: &mut Vec<(usize, i64)>,
) -> Result<(), ParseError> {
    cur.skip_ws();
    let token_start = cur.pos;
    match cur.peek() {
        Some('f') => {
            cur.pos += 1;
            let k_pos = cur.pos;
            let k = cur.integer(false)?;
            if k == 0 {
                return Err(ParseError::new("dilation must be positive", k_pos));
            }
            let e = if cur.eat('^') { cur.integer(true)? } else { 1 };
            factors.push((k as usize, if invert { -e } else { e }));
            Ok(())
        }
        Some('1') => match cur.integer(false)? {
            1 => Ok(()),
            _ => Err(ParseError::new(
                "only the constant 1 is allowed",
                token_start,
            )),
        },
        Some(_) => Err(ParseError::new("expected `f<k>`", token_start)),
        None => Err(ParseError::new("expected a factor", token_start)),
    }
}

impl FromStr for EtaQuotient {
    type Err = ParseError;

    /// Grammar: tokens `f<k>` or `f<k>^<e>` (`e` optionally signed, default
    /// `1`) or the literal `1`, separated by `*` or `/`. A `/` inverts the
    /// item that follows it, where an item is a token or a parenthesized
    /// product of tokens such as `(f1^2*f3)`. Whitespace is ignored.
    fn from_str(src: &str) -> Result<Self, ParseError> {
        let mut cur = Cursor { src, pos: 0 };
        let mut factors = Vec::new();
        let mut invert = false;
        loop {
            if cur.eat('(') {
                let mut inner = false;
                loop {
                    eta_token(&mut cur, invert != inner, &mut factors)?;
                    match cur.peek() {
                        Some(')') => break,
                        Some('*') => inner = false,
                        Some('/') => inner = true,
                        _ => return Err(ParseError::new("expected `*`, `/` or `)`", cur.pos)),
                    }
                    cur.pos += 1;
                }
                cur.pos += 1;
            } else {
                eta_token(&mut cur, invert, &mut factors)?;
            }
            match cur.peek() {
                None => break,
                Some('*') => invert = false,
                Some('/') => invert = true,
                Some(_) => return Err(ParseError::new("expected `*` or `/`", cur.pos)),
            }
            cur.pos += 1;
        }
        Ok(EtaQuotient::new(factors))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn ints(s: &Series) -> Vec<i64> {
        s.coeffs()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    fn direct_product(k: usize, order: usize) -> Series {
        let mut acc = Series::one(order);
        let mut j = 1;
        while k * j <= order {
            let mut factor = vec![0i64; order + 1];
            factor[0] = 1;
            factor[k * j] = -1;
            acc = &acc * &Series::from_i64s(&factor, order).unwrap();
            j += 1;
        }
        acc
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(
            ints(&pochhammer(1, 12)),
            vec![1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1]
        );
        assert_eq!(ints(&pochhammer(2, 4)), vec![1, 0, -1, 0, -1]);
        assert_eq!(ints(&pochhammer(7, 0)), vec![1]);
    }

    #[test]
    fn pochhammer_matches_direct_product() {
        for k in [1, 2, 3, 5, 6, 9, 10, 18, 27, 54] {
            assert_eq!(pochhammer(k, 300), direct_product(k, 300), "k = {k}");
        }
    }

    #[test]
    fn dilated_pochhammer_is_dilated_f1() {
        for k in [2, 3, 7] {
            assert_eq!(pochhammer(k, 100), pochhammer(1, 100).dilate(k).unwrap());
        }
    }

    #[test]
    fn theta_examples() {
        assert_eq!(ints(&theta_d(10)), vec![1, -2, 0, 0, 2, 0, 0, 0, 0, -2, 0]);
        assert_eq!(ints(&theta_d(0)), vec![1]);
        let y = theta_y(16);
        let mut want = vec![0i64; 17];
        want[0] = 1;
        want[1] = -1;
        want[5] = -1;
        want[8] = 1;
        want[16] = 1;
        assert_eq!(ints(&y), want);
        assert_eq!(ints(&theta_y(0)), vec![1]);
    }

    #[test]
    fn theta_product_forms() {
        let d = EtaQuotient::new([(1, 2), (2, -1)]);
        assert_eq!(theta_d(200), d.eval(200).unwrap());
        let y = EtaQuotient::new([(1, 1), (6, 2), (2, -1), (3, -1)]);
        assert_eq!(theta_y(200), y.eval(200).unwrap());
    }

    #[test]
    fn eval_eta_examples() {
        let d = EtaQuotient::new([(1, 2), (2, -1)]);
        assert_eq!(
            ints(&d.eval(9).unwrap()),
            vec![1, -2, 0, 0, 2, 0, 0, 0, 0, -2]
        );
        let a5 = EtaQuotient::new([(2, 4), (1, -5)]);
        assert_eq!(ints(&a5.eval(3).unwrap()), vec![1, 5, 16, 45]);
        assert_eq!(
            ints(&EtaQuotient::one().eval(5).unwrap()),
            vec![1, 0, 0, 0, 0, 0]
        );
    }

    #[test]
    fn eval_ignores_factor_order() {
        let a = EtaQuotient::new([(2, 4), (1, -5), (3, 1)]);
        let b = EtaQuotient::new([(3, 1), (1, -2), (2, 4), (1, -3)]);
        assert_eq!(a.eval(60).unwrap(), b.eval(60).unwrap());
    }

    #[test]
    fn eval_matches_pow_and_invert() {
        let q = EtaQuotient::new([(2, 3), (1, -4), (3, -1)]);
        let n = 80;
        let via_pow = &(&pochhammer(2, n).pow(3).unwrap() * &pochhammer(1, n).pow(-4).unwrap())
            * &pochhammer(3, n).invert().unwrap();
        assert_eq!(q.eval(n).unwrap(), via_pow);
    }

    #[test]
    fn euler_partition_identity() {
        let p = pochhammer(1, 12).invert().unwrap();
        assert_eq!(ints(&p), vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
        let p = pochhammer(1, 400).invert().unwrap();
        assert!(p.coeffs().iter().all(|c| c > &BigInt::from(0)));
        // p(100) = 190569292
        assert_eq!(p.coeff(100).unwrap(), &BigInt::from(190_569_292u64));
    }

    #[test]
    fn parse_forms() {
        let a: EtaQuotient = "f2^4/f1^5".parse().unwrap();
        let b: EtaQuotient = " f1^-5 * f2^4 ".parse().unwrap();
        assert_eq!(a.merged(), b.merged());
        assert_eq!(a.to_string(), "f2^4/f1^5");
        assert_eq!("f1f2".parse::<EtaQuotient>().unwrap_err().position, 2);
        assert!("1".parse::<EtaQuotient>().unwrap().is_one());
        let d: EtaQuotient = "1/f1^2/f2".parse().unwrap();
        assert_eq!(d.to_string(), "1/(f1^2*f2)");
        let e: EtaQuotient = "f3^+2".parse().unwrap();
        assert_eq!(e.merged().get(&3), Some(&2));
        let g: EtaQuotient = "f1*f6^2/(f2*f3)".parse().unwrap();
        assert_eq!(
            g.merged(),
            EtaQuotient::new([(1, 1), (6, 2), (2, -1), (3, -1)]).merged()
        );
        let h: EtaQuotient = "f9/(f3/f6)".parse().unwrap();
        assert_eq!(h.to_string(), "f6*f9/f3");
    }

    #[test]
    fn display_round_trips() {
        for src in [
            "1",
            "f1",
            "1/(f1^2*f2)",
            "f2*f54/(f1^2*f27)",
            "f6^4*f9^4/(f3^5*f18^2)",
            "1/f4^7",
        ] {
            let q: EtaQuotient = src.parse().unwrap();
            assert_eq!(q.to_string(), src);
            assert_eq!(
                q.to_string().parse::<EtaQuotient>().unwrap().merged(),
                q.merged()
            );
        }
    }

    #[test]
    fn parse_errors_point_at_column() {
        let err = "f2^4 / g1".parse::<EtaQuotient>().unwrap_err();
        assert_eq!(err.position, 7);
        assert_eq!(
            err.caret("f2^4 / g1"),
            "f2^4 / g1\n       ^ expected `f<k>`"
        );
        assert_eq!("f0".parse::<EtaQuotient>().unwrap_err().position, 1);
        assert_eq!("f2^".parse::<EtaQuotient>().unwrap_err().position, 3);
        assert_eq!("".parse::<EtaQuotient>().unwrap_err().position, 0);
        assert_eq!("f2*".parse::<EtaQuotient>().unwrap_err().position, 3);
        assert!("2".parse::<EtaQuotient>().is_err());
        assert_eq!("1/(f1".parse::<EtaQuotient>().unwrap_err().position, 5);
        assert_eq!("1/(f1*)".parse::<EtaQuotient>().unwrap_err().position, 6);
        assert_eq!("(f1)f2".parse::<EtaQuotient>().unwrap_err().position, 4);
    }

    #[test]
    fn exponent_reduction_mod_prime() {
        let q: EtaQuotient = "f2^25/f1^26".parse().unwrap();
        let r = q.reduce_exponents_mod_prime(3);
        assert!(r.merged().values().all(|e| e.abs() < 3));
        assert_eq!(r.eval_mod(3, 300).unwrap(), q.eval_mod(3, 300).unwrap());
    }
}
