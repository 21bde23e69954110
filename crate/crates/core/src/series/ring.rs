//! Coefficient rings for truncated series.
//!
//! Two rings are supported: the integers, with arbitrary-precision elements,
//! and `Z/m` for a word-sized modulus. Series code is written once against
//! [`CoefficientRing`] and instantiated for both.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Sign class of a ring element. Sparse kernels use this to replace
/// multiplications by `±1` with additions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnitSign {
    One,
    MinusOne,
    Other,
}

// `from_*` constructors need `&self`: a residue ring has to know its modulus.
#[allow(clippy::wrong_self_convention)]
pub trait CoefficientRing: Clone + PartialEq + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, value: i64) -> Self::Elem;
    fn from_bigint(&self, value: &BigInt) -> Self::Elem;
    fn to_bigint(&self, value: &Self::Elem) -> BigInt;

    fn is_zero(&self, value: &Self::Elem) -> bool;
    fn sign_class(&self, value: &Self::Elem) -> UnitSign;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn add_assign(&self, acc: &mut Self::Elem, b: &Self::Elem);
    fn sub_assign(&self, acc: &mut Self::Elem, b: &Self::Elem);

    /// `acc += a * b`
    fn mul_add_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        match self.sign_class(a) {
            UnitSign::One => self.add_assign(acc, b),
            UnitSign::MinusOne => self.sub_assign(acc, b),
            UnitSign::Other => {
                let prod = self.mul(a, b);
                self.add_assign(acc, &prod);
            }
        }
    }

    /// Multiplicative inverse, if `value` is a unit.
    fn unit_inverse(&self, value: &Self::Elem) -> Option<Self::Elem>;

    /// Modulus of the ring, `None` for the integers.
    fn modulus(&self) -> Option<u64>;
}

/// The ring of integers with arbitrary-precision elements.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl CoefficientRing for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn one(&self) -> BigInt {
        BigInt::one()
    }

    fn from_i64(&self, value: i64) -> BigInt {
        BigInt::from(value)
    }

    fn from_bigint(&self, value: &BigInt) -> BigInt {
        value.clone()
    }

    fn to_bigint(&self, value: &BigInt) -> BigInt {
        value.clone()
    }

    fn is_zero(&self, value: &BigInt) -> bool {
        value.is_zero()
    }

    fn sign_class(&self, value: &BigInt) -> UnitSign {
        if value.is_one() {
            UnitSign::One
        } else if value.is_negative() && value.magnitude().is_one() {
            UnitSign::MinusOne
        } else {
            UnitSign::Other
        }
    }

    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }

    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn add_assign(&self, acc: &mut BigInt, b: &BigInt) {
        *acc += b;
    }

    fn sub_assign(&self, acc: &mut BigInt, b: &BigInt) {
        *acc -= b;
    }

    fn unit_inverse(&self, value: &BigInt) -> Option<BigInt> {
        match self.sign_class(value) {
            UnitSign::One | UnitSign::MinusOne => Some(value.clone()),
            UnitSign::Other => None,
        }
    }

    fn modulus(&self) -> Option<u64> {
        None
    }
}

/// Largest modulus accepted by [`Zn`]; residues of products then fit in a `u64`.
pub const MAX_MODULUS: u64 = 1 << 32;

/// The residue ring `Z/m` with canonical representatives in `[0, m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Zn {
    modulus: u64,
}

impl Zn {
    /// Panics unless `2 <= modulus <= 2^32`.
    pub fn new(modulus: u64) -> Self {
        assert!(
            (2..=MAX_MODULUS).contains(&modulus),
            "modulus {modulus} outside supported range [2, 2^32]"
        );
        Zn { modulus }
    }

    pub fn checked(modulus: u64) -> Option<Self> {
        (2..=MAX_MODULUS)
            .contains(&modulus)
            .then_some(Zn { modulus })
    }

    pub fn get(&self) -> u64 {
        self.modulus
    }

    pub fn reduce_i64(&self, value: i64) -> u64 {
        value.rem_euclid(self.modulus as i64) as u64
    }
}

impl CoefficientRing for Zn {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn from_i64(&self, value: i64) -> u64 {
        self.reduce_i64(value)
    }

    fn from_bigint(&self, value: &BigInt) -> u64 {
        value
            .mod_floor(&BigInt::from(self.modulus))
            .to_u64()
            .expect("residue fits in u64")
    }

    fn to_bigint(&self, value: &u64) -> BigInt {
        BigInt::from(*value)
    }

    fn is_zero(&self, value: &u64) -> bool {
        *value == 0
    }

    fn sign_class(&self, value: &u64) -> UnitSign {
        if *value == 1 {
            UnitSign::One
        } else if *value == self.modulus - 1 {
            UnitSign::MinusOne
        } else {
            UnitSign::Other
        }
    }

    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.modulus as u128) as u64
    }

    #[inline]
    fn add_assign(&self, acc: &mut u64, b: &u64) {
        *acc = self.add(acc, b);
    }

    #[inline]
    fn sub_assign(&self, acc: &mut u64, b: &u64) {
        *acc = self.sub(acc, b);
    }

    fn unit_inverse(&self, value: &u64) -> Option<u64> {
        let m = self.modulus as i128;
        let egcd = (*value as i128).extended_gcd(&m);
        if egcd.gcd != 1 {
            return None;
        }
        Some(egcd.x.rem_euclid(m) as u64)
    }

    fn modulus(&self) -> Option<u64> {
        Some(self.modulus)
    }
}

/// Renders an element as a decimal integer.
pub fn render<R: CoefficientRing>(ring: &R, value: &R::Elem) -> String {
    ring.to_bigint(value).to_string()
}
