//! Series recipes: small expressions over `q`, `f_k`, `a_k`, the theta sums
//! and the dissection operators, evaluated lazily to any order.
//!
//! ```text
//! expr    := ['-'] term (('+' | '-') term)*
//! term    := factor (('*' | '/') factor)*
//! factor  := atom ['^' signed-int]
//! atom    := int | 'q' | 'f'k | 'a'k | 'D(' qpow ')' | 'Y(' qpow ')'
//!          | 'extract(' expr ',' m ',' r ')' | 'component(' expr ',' m ',' r ')'
//!          | 'dilate(' expr ',' k ')' | '(' expr ')'
//! qpow    := 'q' ['^' k]
//! ```
//!
//! Evaluating `extract(S, m, r)` at order `N` evaluates `S` at `mN + r`, so
//! the caller never has to size inner series by hand.

use std::fmt;
use std::str::FromStr;

use crate::colored::ColoredPartitionSpec;
use crate::dissection::{component, extract};
use crate::error::{ParseError, SeriesError};
use crate::series::{CoefficientRing, TruncatedSeries};
use crate::special::{theta_d_in, theta_y_in, EtaQuotient};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Recipe {
    Const(i64),
    /// The indeterminate `q`.
    Q,
    /// `f_k`.
    Eta(usize),
    /// Generating function of `a_k(n)`.
    Ak(u32),
    ThetaD,
    ThetaY,
    Dilate(Box<Recipe>, usize),
    Extract(Box<Recipe>, usize, usize),
    Component(Box<Recipe>, usize, usize),
    Neg(Box<Recipe>),
    Sum(Vec<Recipe>),
    /// Product of integer powers.
    Product(Vec<(Recipe, i64)>),
}

impl Recipe {
    pub fn ak(k: u32) -> Recipe {
        Recipe::Ak(k)
    }

    pub fn extract(self, m: usize, r: usize) -> Recipe {
        Recipe::Extract(Box::new(self), m, r)
    }

    pub fn component(self, m: usize, r: usize) -> Recipe {
        Recipe::Component(Box::new(self), m, r)
    }

    pub fn eta(quotient: &EtaQuotient) -> Recipe {
        Recipe::Product(
            quotient
                .merged()
                .into_iter()
                .map(|(k, e)| (Recipe::Eta(k), e))
                .collect(),
        )
    }

    /// Every `(k, order)` at which an `a_k` leaf is read when the recipe is
    /// evaluated at `order`.
    pub fn ak_demands(&self, order: usize) -> Vec<(u32, usize)> {
        let mut out = Vec::new();
        self.collect_demands(order, &mut out);
        out
    }

    fn collect_demands(&self, order: usize, out: &mut Vec<(u32, usize)>) {
        match self {
            Recipe::Ak(k) => out.push((*k, order)),
            Recipe::Dilate(inner, k) => inner.collect_demands(order / k, out),
            Recipe::Extract(inner, m, r) => inner.collect_demands(m * order + r, out),
            Recipe::Component(inner, _, _) | Recipe::Neg(inner) => {
                inner.collect_demands(order, out)
            }
            Recipe::Sum(items) => items.iter().for_each(|i| i.collect_demands(order, out)),
            Recipe::Product(items) => items
                .iter()
                .for_each(|(i, _)| i.collect_demands(order, out)),
            Recipe::Const(_) | Recipe::Q | Recipe::Eta(_) | Recipe::ThetaD | Recipe::ThetaY => {}
        }
    }

    /// Evaluates to `order` over `ring`, computing `a_k` leaves from their
    /// eta quotients.
    pub fn eval_in<R: CoefficientRing>(
        &self,
        ring: &R,
        order: usize,
    ) -> Result<TruncatedSeries<R>, SeriesError> {
        self.eval_with(ring, order, &|k, n| {
            ColoredPartitionSpec::new(k)
                .expect("a_k requires k >= 1")
                .quotient()
                .eval_in(ring.clone(), n)
        })
    }

    /// Evaluates with `a_k` leaves supplied by `ak(k, order)`.
    pub fn eval_with<R, F>(
        &self,
        ring: &R,
        order: usize,
        ak: &F,
    ) -> Result<TruncatedSeries<R>, SeriesError>
    where
        R: CoefficientRing,
        F: Fn(u32, usize) -> Result<TruncatedSeries<R>, SeriesError>,
    {
        match self {
            Recipe::Const(c) => Ok(TruncatedSeries::monomial_in(
                ring.clone(),
                0,
                ring.from_i64(*c),
                order,
            )),
            Recipe::Q => Ok(TruncatedSeries::monomial_in(
                ring.clone(),
                1,
                ring.one(),
                order,
            )),
            Recipe::Eta(k) => EtaQuotient::f(*k).eval_in(ring.clone(), order),
            Recipe::Ak(k) => ak(*k, order),
            Recipe::ThetaD => Ok(theta_d_in(ring.clone(), order)),
            Recipe::ThetaY => Ok(theta_y_in(ring.clone(), order)),
            Recipe::Dilate(inner, k) => {
                if *k == 0 {
                    return Err(SeriesError::ZeroDilation);
                }
                inner.eval_with(ring, order / k, ak)?.dilate_to(*k, order)
            }
            Recipe::Extract(inner, m, r) => {
                if *m == 0 {
                    return Err(SeriesError::ZeroDilation);
                }
                extract(&inner.eval_with(ring, m * order + r, ak)?, *m, *r)
            }
            Recipe::Component(inner, m, r) => component(&inner.eval_with(ring, order, ak)?, *m, *r),
            Recipe::Neg(inner) => Ok(inner.eval_with(ring, order, ak)?.negate()),
            Recipe::Sum(items) => {
                let mut acc = TruncatedSeries::zero_in(ring.clone(), order);
                for item in items {
                    acc = acc.add(&item.eval_with(ring, order, ak)?);
                }
                Ok(acc)
            }
            Recipe::Product(items) => {
                let mut eta = EtaQuotient::one();
                let mut shift: i64 = 0;
                let mut scalar = ring.one();
                let mut num = Vec::new();
                let mut den = Vec::new();
                for (item, e) in items {
                    match item {
                        Recipe::Eta(k) => eta = eta.times(&EtaQuotient::new([(*k, *e)])),
                        Recipe::Q => shift += e,
                        Recipe::Const(c) if *e >= 0 => {
                            let c = ring.from_i64(*c);
                            for _ in 0..*e {
                                scalar = ring.mul(&scalar, &c);
                            }
                        }
                        _ if *e >= 0 => num.push((item, *e)),
                        _ => den.push((item, -*e)),
                    }
                }
                let shift = usize::try_from(shift)
                    .map_err(|_| SeriesError::OutOfRange { index: 0, order })?;
                let mut acc = eta.eval_in(ring.clone(), order)?;
                for (item, e) in num {
                    acc = acc.mul(&item.eval_with(ring, order, ak)?.pow(e)?);
                }
                for (item, e) in den {
                    acc = acc.div(&item.eval_with(ring, order, ak)?.pow(e)?)?;
                }
                if ring.sign_class(&scalar) != crate::series::UnitSign::One {
                    acc = acc.scale(&scalar);
                }
                Ok(if shift > 0 { acc.shift(shift) } else { acc })
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Recipe::Sum(_) | Recipe::Neg(_) => 0,
            Recipe::Product(_) => 1,
            _ => 2,
        }
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, item: &Recipe, min: u8) -> fmt::Result {
    if item.precedence() < min {
        write!(f, "({item})")
    } else {
        write!(f, "{item}")
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recipe::Const(c) => write!(f, "{c}"),
            Recipe::Q => write!(f, "q"),
            Recipe::Eta(k) => write!(f, "f{k}"),
            Recipe::Ak(k) => write!(f, "a{k}"),
            Recipe::ThetaD => write!(f, "D(q)"),
            Recipe::ThetaY => write!(f, "Y(q)"),
            Recipe::Dilate(inner, k) => match **inner {
                Recipe::ThetaD => write!(f, "D(q^{k})"),
                Recipe::ThetaY => write!(f, "Y(q^{k})"),
                _ => write!(f, "dilate({inner}, {k})"),
            },
            Recipe::Extract(inner, m, r) => write!(f, "extract({inner}, {m}, {r})"),
            Recipe::Component(inner, m, r) => write!(f, "component({inner}, {m}, {r})"),
            Recipe::Neg(inner) => {
                write!(f, "-")?;
                write_operand(f, inner, 1)
            }
            Recipe::Sum(items) => {
                for (i, item) in items.iter().enumerate() {
                    match (i, item) {
                        (0, _) => write_operand(f, item, 0)?,
                        (_, Recipe::Neg(inner)) => {
                            write!(f, " - ")?;
                            write_operand(f, inner, 1)?;
                        }
                        _ => {
                            write!(f, " + ")?;
                            write_operand(f, item, 1)?;
                        }
                    }
                }
                Ok(())
            }
            Recipe::Product(items) => {
                let mut first = true;
                let render = |f: &mut fmt::Formatter<'_>, item: &Recipe, e: i64| -> fmt::Result {
                    write_operand(f, item, 2)?;
                    if e != 1 {
                        write!(f, "^{e}")?;
                    }
                    Ok(())
                };
                for (item, e) in items.iter().filter(|(_, e)| *e > 0) {
                    if !first {
                        write!(f, "*")?;
                    }
                    render(f, item, *e)?;
                    first = false;
                }
                if first {
                    write!(f, "1")?;
                }
                for (item, e) in items.iter().filter(|(_, e)| *e < 0) {
                    write!(f, "/")?;
                    render(f, item, -e)?;
                }
                Ok(())
            }
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
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

    fn expect(&mut self, want: char) -> Result<(), ParseError> {
        if self.eat(want) {
            Ok(())
        } else {
            Err(ParseError::new(format!("expected `{want}`"), self.pos))
        }
    }

    fn keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(word) {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    fn unsigned(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..]
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.src.len() - start);
        if len == 0 {
            return Err(ParseError::new("expected an integer", start));
        }
        self.pos += len;
        self.src[start..self.pos]
            .parse()
            .map_err(|_| ParseError::new("integer out of range", start))
    }

    fn positive(&mut self) -> Result<usize, ParseError> {
        let at = {
            self.skip_ws();
            self.pos
        };
        match self.unsigned()? {
            0 => Err(ParseError::new("expected a positive integer", at)),
            v => Ok(v as usize),
        }
    }

    fn signed(&mut self) -> Result<i64, ParseError> {
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let at = self.pos;
        let v = i64::try_from(self.unsigned()?)
            .map_err(|_| ParseError::new("integer out of range", at))?;
        Ok(if neg { -v } else { v })
    }

    fn expr(&mut self) -> Result<Recipe, ParseError> {
        let mut items = Vec::new();
        let first_neg = self.eat('-');
        let first = self.term()?;
        items.push(if first_neg {
            Recipe::Neg(Box::new(first))
        } else {
            first
        });
        loop {
            if self.eat('+') {
                items.push(self.term()?);
            } else if self.eat('-') {
                items.push(Recipe::Neg(Box::new(self.term()?)));
            } else {
                break;
            }
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Recipe::Sum(items)
        })
    }

    fn term(&mut self) -> Result<Recipe, ParseError> {
        let mut factors: Vec<(Recipe, i64)> = Vec::new();
        let (atom, e) = self.factor()?;
        push_factor(&mut factors, atom, e);
        loop {
            let sign = if self.eat('*') {
                1
            } else if self.eat('/') {
                -1
            } else {
                break;
            };
            let (atom, e) = self.factor()?;
            push_factor(&mut factors, atom, sign * e);
        }
        Ok(match factors.as_slice() {
            [(_, 1)] => factors.pop().unwrap().0,
            _ => Recipe::Product(factors),
        })
    }

    fn factor(&mut self) -> Result<(Recipe, i64), ParseError> {
        let atom = self.atom()?;
        let e = if self.eat('^') { self.signed()? } else { 1 };
        Ok((atom, e))
    }

    fn theta_arg(&mut self) -> Result<usize, ParseError> {
        self.expect('(')?;
        self.expect('q')?;
        let k = if self.eat('^') { self.positive()? } else { 1 };
        self.expect(')')?;
        Ok(k)
    }

    fn progression(&mut self) -> Result<(Recipe, usize, usize), ParseError> {
        self.expect('(')?;
        let inner = self.expr()?;
        self.expect(',')?;
        let m = self.positive()?;
        self.expect(',')?;
        let at = {
            self.skip_ws();
            self.pos
        };
        let r = self.unsigned()? as usize;
        if r >= m {
            return Err(ParseError::new(format!("residue {r} is not below {m}"), at));
        }
        self.expect(')')?;
        Ok((inner, m, r))
    }

    fn atom(&mut self) -> Result<Recipe, ParseError> {
        let start = {
            self.skip_ws();
            self.pos
        };
        if self.keyword("extract") {
            let (inner, m, r) = self.progression()?;
            return Ok(inner.extract(m, r));
        }
        if self.keyword("component") {
            let (inner, m, r) = self.progression()?;
            return Ok(inner.component(m, r));
        }
        if self.keyword("dilate") {
            self.expect('(')?;
            let inner = self.expr()?;
            self.expect(',')?;
            let k = self.positive()?;
            self.expect(')')?;
            return Ok(Recipe::Dilate(Box::new(inner), k));
        }
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some('q') => {
                self.pos += 1;
                Ok(Recipe::Q)
            }
            Some('f') => {
                self.pos += 1;
                Ok(Recipe::Eta(self.positive()?))
            }
            Some('a') => {
                self.pos += 1;
                let at = self.pos;
                let k = u32::try_from(self.positive()?)
                    .map_err(|_| ParseError::new("too many colors", at))?;
                Ok(Recipe::Ak(k))
            }
            Some(c @ ('D' | 'Y')) => {
                self.pos += 1;
                let base = if c == 'D' {
                    Recipe::ThetaD
                } else {
                    Recipe::ThetaY
                };
                Ok(match self.theta_arg()? {
                    1 => base,
                    k => Recipe::Dilate(Box::new(base), k),
                })
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.unsigned()?;
                let v =
                    i64::try_from(v).map_err(|_| ParseError::new("integer out of range", start))?;
                Ok(Recipe::Const(v))
            }
            Some(_) => Err(ParseError::new("unexpected character", start)),
            None => Err(ParseError::new("unexpected end of input", start)),
        }
    }
}

/// Splices nested products so that `(f1*f2)^3/f3` stays one flat product.
fn push_factor(factors: &mut Vec<(Recipe, i64)>, atom: Recipe, e: i64) {
    match atom {
        Recipe::Product(inner) => {
            for (item, inner_e) in inner {
                factors.push((item, inner_e * e));
            }
        }
        other => factors.push((other, e)),
    }
}

impl FromStr for Recipe {
    type Err = ParseError;

    fn from_str(src: &str) -> Result<Self, ParseError> {
        let mut p = Parser { src, pos: 0 };
        let r = p.expr()?;
        if p.peek().is_some() {
            return Err(ParseError::new("trailing input", p.pos));
        }
        Ok(r)
    }
}
