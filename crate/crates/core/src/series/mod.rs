//! Truncated formal power series in one indeterminate `q`.
//!
//! A series of order `N` stores the coefficients of `q^0, ..., q^N`. Every
//! binary operation truncates to the smaller operand order, and reading a
//! coefficient past the order is an error rather than an implicit zero.
//!
//! [`Series`] carries exact integer coefficients; [`ModSeries`] carries
//! residues in `[0, m)`. Both are instances of [`TruncatedSeries`].

mod format;
mod ring;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

pub(crate) use format::exact_number as format_exact_number;
pub use format::{parse_series_json, parse_series_text, series_to_json, series_to_text};
pub use ring::{render, CoefficientRing, Integers, UnitSign, Zn, MAX_MODULUS};

use crate::error::SeriesError;

/// Truncated power series over the coefficient ring `R`.
#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<R: CoefficientRing> {
    ring: R,
    coeffs: Vec<R::Elem>,
}

/// Series with exact integer coefficients.
pub type Series = TruncatedSeries<Integers>;

/// Series with coefficients reduced into `Z/m`.
pub type ModSeries = TruncatedSeries<Zn>;

impl<R: CoefficientRing> TruncatedSeries<R> {
    /// Builds a series of order `order`, zero-filling missing high coefficients.
    pub fn from_coeffs(
        ring: R,
        mut coeffs: Vec<R::Elem>,
        order: usize,
    ) -> Result<Self, SeriesError> {
        if coeffs.len() > order + 1 {
            return Err(SeriesError::TooManyCoefficients {
                len: coeffs.len(),
                order,
            });
        }
        coeffs.resize(order + 1, ring.zero());
        Ok(TruncatedSeries { ring, coeffs })
    }

    pub(crate) fn from_vec_unchecked(ring: R, coeffs: Vec<R::Elem>) -> Self {
        debug_assert!(!coeffs.is_empty());
        TruncatedSeries { ring, coeffs }
    }

    pub fn zero_in(ring: R, order: usize) -> Self {
        let coeffs = vec![ring.zero(); order + 1];
        TruncatedSeries { ring, coeffs }
    }

    pub fn one_in(ring: R, order: usize) -> Self {
        Self::monomial_in(ring.clone(), 0, ring.one(), order)
    }

    /// `c * q^exponent`, which is the zero series when `exponent > order`.
    pub fn monomial_in(ring: R, exponent: usize, c: R::Elem, order: usize) -> Self {
        let mut s = Self::zero_in(ring, order);
        if exponent <= order {
            s.coeffs[exponent] = c;
        }
        s
    }

    /// Converts integer coefficients into this ring.
    pub fn from_i64_in(ring: R, values: &[i64], order: usize) -> Result<Self, SeriesError> {
        let coeffs = values.iter().map(|&v| ring.from_i64(v)).collect();
        Self::from_coeffs(ring, coeffs, order)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R::Elem> {
        self.coeffs
    }

    /// Coefficient of `q^n`.
    pub fn coeff(&self, n: usize) -> Result<&R::Elem, SeriesError> {
        self.coeffs.get(n).ok_or(SeriesError::OutOfRange {
            index: n,
            order: self.order(),
        })
    }

    /// Exact comparison of the coefficients of `q^0..=q^n`.
    pub fn eq_upto(&self, other: &Self, n: usize) -> Result<bool, SeriesError> {
        let order = self.order().min(other.order());
        if n > order {
            return Err(SeriesError::OutOfRange { index: n, order });
        }
        self.assert_same_ring(other);
        Ok(self.coeffs[..=n] == other.coeffs[..=n])
    }

    /// First exponent at or below `n` where the two series differ.
    pub fn first_difference(&self, other: &Self, n: usize) -> Result<Option<usize>, SeriesError> {
        let order = self.order().min(other.order());
        if n > order {
            return Err(SeriesError::OutOfRange { index: n, order });
        }
        self.assert_same_ring(other);
        Ok((0..=n).find(|&i| self.coeffs[i] != other.coeffs[i]))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.ring.is_zero(c))
    }

    /// Drops coefficients above `order`.
    pub fn truncate(&self, order: usize) -> Result<Self, SeriesError> {
        if order > self.order() {
            return Err(SeriesError::OutOfRange {
                index: order,
                order: self.order(),
            });
        }
        Ok(Self::from_vec_unchecked(
            self.ring.clone(),
            self.coeffs[..=order].to_vec(),
        ))
    }

    /// Nonzero `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &R::Elem)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(move |(_, c)| !self.ring.is_zero(c))
    }

    pub fn nonzero_count(&self) -> usize {
        self.terms().count()
    }

    fn assert_same_ring(&self, other: &Self) {
        assert_eq!(
            self.ring, other.ring,
            "series over different coefficient rings cannot be combined"
        );
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&R::Elem, &R::Elem) -> R::Elem) -> Self {
        self.assert_same_ring(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| f(a, b))
            .collect();
        Self::from_vec_unchecked(self.ring.clone(), coeffs)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| self.ring.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| self.ring.sub(a, b))
    }

    pub fn negate(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| self.ring.neg(c)).collect();
        Self::from_vec_unchecked(self.ring.clone(), coeffs)
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.ring.mul(a, c)).collect();
        Self::from_vec_unchecked(self.ring.clone(), coeffs)
    }

    /// Multiplies by `q^r`, keeping the order.
    pub fn shift(&self, r: usize) -> Self {
        let n = self.order();
        let mut coeffs = vec![self.ring.zero(); n + 1];
        if r <= n {
            coeffs[r..].clone_from_slice(&self.coeffs[..=n - r]);
        }
        Self::from_vec_unchecked(self.ring.clone(), coeffs)
    }

    /// Cauchy product truncated at the smaller order.
    ///
    /// Schoolbook convolution driven by the nonzero terms of the sparser
    /// operand, so multiplying by a Pochhammer factor costs `O(N sqrt N)`.
    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_ring(other);
        let n = self.order().min(other.order());
        let (outer, inner) = if self.nonzero_count() <= other.nonzero_count() {
            (self, other)
        } else {
            (other, self)
        };
        let ring = &self.ring;
        let mut out = vec![ring.zero(); n + 1];
        for (i, a) in outer.terms() {
            if i > n {
                break;
            }
            let src = &inner.coeffs[..=n - i];
            let dst = &mut out[i..];
            match ring.sign_class(a) {
                UnitSign::One => {
                    for (d, b) in dst.iter_mut().zip(src) {
                        ring.add_assign(d, b);
                    }
                }
                UnitSign::MinusOne => {
                    for (d, b) in dst.iter_mut().zip(src) {
                        ring.sub_assign(d, b);
                    }
                }
                UnitSign::Other => {
                    for (d, b) in dst.iter_mut().zip(src) {
                        if !ring.is_zero(b) {
                            let p = ring.mul(a, b);
                            ring.add_assign(d, &p);
                        }
                    }
                }
            }
        }
        Self::from_vec_unchecked(ring.clone(), out)
    }

    /// Quotient `self / divisor` by forward substitution, truncated at the
    /// smaller order. The divisor's constant term must be a unit.
    pub fn div(&self, divisor: &Self) -> Result<Self, SeriesError> {
        self.assert_same_ring(divisor);
        let ring = &self.ring;
        let n = self.order().min(divisor.order());
        let lead = &divisor.coeffs[0];
        let lead_inv = ring
            .unit_inverse(lead)
            .ok_or_else(|| SeriesError::NonUnitConstant {
                constant: render(ring, lead),
            })?;
        let lead_is_one = ring.sign_class(&lead_inv) == UnitSign::One;
        let tail: Vec<(usize, UnitSign, &R::Elem)> = divisor
            .terms()
            .filter(|&(i, _)| i >= 1 && i <= n)
            .map(|(i, c)| (i, ring.sign_class(c), c))
            .collect();

        let mut out: Vec<R::Elem> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.coeffs[k].clone();
            for &(i, sign, c) in &tail {
                if i > k {
                    break;
                }
                let prev = &out[k - i];
                match sign {
                    UnitSign::One => ring.sub_assign(&mut acc, prev),
                    UnitSign::MinusOne => ring.add_assign(&mut acc, prev),
                    UnitSign::Other => {
                        if !ring.is_zero(prev) {
                            let p = ring.mul(c, prev);
                            ring.sub_assign(&mut acc, &p);
                        }
                    }
                }
            }
            if !lead_is_one {
                acc = ring.mul(&acc, &lead_inv);
            }
            out.push(acc);
        }
        Ok(Self::from_vec_unchecked(ring.clone(), out))
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        Self::one_in(self.ring.clone(), self.order()).div(self)
    }

    /// Integer power by repeated squaring; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Self, SeriesError> {
        let base = if e < 0 { self.invert()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut result = Self::one_in(self.ring.clone(), self.order());
        let mut square = base;
        while e > 0 {
            if e & 1 == 1 {
                result = Self::mul(&result, &square);
            }
            e >>= 1;
            if e > 0 {
                square = Self::mul(&square, &square);
            }
        }
        Ok(result)
    }

    /// Substitutes `q -> q^k`, keeping the order. Coefficients of `self`
    /// beyond `order / k` fall off the end.
    pub fn dilate(&self, k: usize) -> Result<Self, SeriesError> {
        self.dilate_to(k, self.order())
    }

    /// Substitutes `q -> q^k` and truncates at `order`. Only coefficients up
    /// to `order / k` are read, so `self` may be shorter than `order`.
    pub fn dilate_to(&self, k: usize, order: usize) -> Result<Self, SeriesError> {
        if k == 0 {
            return Err(SeriesError::ZeroDilation);
        }
        let needed = order / k;
        if needed > self.order() {
            return Err(SeriesError::OutOfRange {
                index: needed,
                order: self.order(),
            });
        }
        let mut coeffs = vec![self.ring.zero(); order + 1];
        for (i, c) in self.coeffs[..=needed].iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Ok(Self::from_vec_unchecked(self.ring.clone(), coeffs))
    }

    /// Moves the coefficients into another ring through their integer values.
    pub fn change_ring<S: CoefficientRing>(&self, target: S) -> TruncatedSeries<S> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| target.from_bigint(&self.ring.to_bigint(c)))
            .collect();
        TruncatedSeries::from_vec_unchecked(target, coeffs)
    }

    pub fn to_bigints(&self) -> Vec<BigInt> {
        self.coeffs.iter().map(|c| self.ring.to_bigint(c)).collect()
    }
}

impl Series {
    /// Builds an exact series from integer coefficients.
    pub fn new(coeffs: Vec<BigInt>, order: usize) -> Result<Self, SeriesError> {
        Self::from_coeffs(Integers, coeffs, order)
    }

    pub fn from_i64s(values: &[i64], order: usize) -> Result<Self, SeriesError> {
        Self::from_i64_in(Integers, values, order)
    }

    pub fn zero(order: usize) -> Self {
        Self::zero_in(Integers, order)
    }

    pub fn one(order: usize) -> Self {
        Self::one_in(Integers, order)
    }

    /// The indeterminate `q` itself.
    pub fn q(order: usize) -> Self {
        Self::monomial_in(Integers, 1, BigInt::from(1), order)
    }

    /// Reduces every coefficient into `[0, m)`.
    pub fn reduce_mod(&self, m: u64) -> Result<ModSeries, SeriesError> {
        let ring = Zn::checked(m).ok_or(SeriesError::BadModulus(m))?;
        Ok(self.change_ring(ring))
    }
}

impl ModSeries {
    pub fn new(modulus: u64, coeffs: &[i64], order: usize) -> Result<Self, SeriesError> {
        let ring = Zn::checked(modulus).ok_or(SeriesError::BadModulus(modulus))?;
        Self::from_i64_in(ring, coeffs, order)
    }

    pub fn modulus(&self) -> u64 {
        self.ring().get()
    }

    /// Re-embeds the canonical representatives into the integers.
    pub fn lift(&self) -> Series {
        self.change_ring(Integers)
    }
}

impl<R: CoefficientRing> fmt::Debug for TruncatedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TruncatedSeries")
            .field("ring", &self.ring)
            .field("coeffs", &self.coeffs)
            .finish()
    }
}

/// Renders as `1 - 2q + 2q^4 + O(q^11)`, with a `(mod m)` suffix over `Z/m`.
impl<R: CoefficientRing> fmt::Display for TruncatedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.terms() {
            let v = self.ring.to_bigint(c);
            let (neg, mag) = (v.sign() == num_bigint::Sign::Minus, v.magnitude().clone());
            let sep = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            write!(f, "{sep}")?;
            let unit = mag == 1u32.into();
            match (i, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}q")?,
                (_, true) => write!(f, "q^{i}")?,
                (_, false) => write!(f, "{mag}q^{i}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)?;
        if let Some(m) = self.ring.modulus() {
            write!(f, " (mod {m})")?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl<R: CoefficientRing> $trait for &TruncatedSeries<R> {
            type Output = TruncatedSeries<R>;
            fn $method(self, rhs: Self) -> TruncatedSeries<R> {
                TruncatedSeries::$method(self, rhs)
            }
        }

        impl<R: CoefficientRing> $trait for TruncatedSeries<R> {
            type Output = TruncatedSeries<R>;
            fn $method(self, rhs: Self) -> TruncatedSeries<R> {
                TruncatedSeries::$method(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl<R: CoefficientRing> Neg for &TruncatedSeries<R> {
    type Output = TruncatedSeries<R>;
    fn neg(self) -> TruncatedSeries<R> {
        self.negate()
    }
}

impl<R: CoefficientRing> Neg for TruncatedSeries<R> {
    type Output = TruncatedSeries<R>;
    fn neg(self) -> TruncatedSeries<R> {
        self.negate()
    }
}
