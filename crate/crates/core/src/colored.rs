//! Colored partitions `a_k(n)`: partitions of `n` whose odd parts carry one
//! of `k` colors while even parts stay monochromatic.
//!
//! Generating function: `sum a_k(n) q^n = f_2^{k-1} / f_1^k`. `a_1` is the
//! partition function and `a_2` counts overpartitions.
//!
//! [`ak_oracle`] recomputes the same numbers by direct counting and shares
//! no code with the eta-quotient path.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::SeriesError;
use crate::series::{ModSeries, Series, Zn};
use crate::special::EtaQuotient;

/// Number of colors available to odd parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredPartitionSpec {
    k: u32,
}

impl ColoredPartitionSpec {
    /// `None` when `k == 0`.
    pub fn new(k: u32) -> Option<Self> {
        (k >= 1).then_some(ColoredPartitionSpec { k })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `f_2^{k-1} / f_1^k`.
    pub fn quotient(&self) -> EtaQuotient {
        EtaQuotient::new([(2, self.k as i64 - 1), (1, -(self.k as i64))])
    }
}

fn spec(k: u32) -> ColoredPartitionSpec {
    ColoredPartitionSpec::new(k).expect("number of colors must be at least 1")
}

/// `a_k(0..=order)` from the eta quotient. Panics if `k == 0`.
pub fn ak_series(k: u32, order: usize) -> Series {
    spec(k)
        .quotient()
        .eval(order)
        .expect("Pochhammer denominators have unit constant term")
}

/// `a_k(0..=order)` reduced mod `m`, straight from the eta quotient.
pub fn ak_series_mod(k: u32, order: usize, m: u64) -> Result<ModSeries, SeriesError> {
    spec(k).quotient().eval_mod(m, order)
}

/// `a_k(0..=order)` by counting: one factor `1/(1 - q^s)` per part size `s`
/// for even `s`, and `k` of them for odd `s`.
pub fn ak_oracle(k: u32, order: usize) -> Series {
    assert!(k >= 1, "number of colors must be at least 1");
    let mut table = vec![BigInt::zero(); order + 1];
    table[0] = BigInt::from(1);
    for part in 1..=order {
        let copies = if part % 2 == 0 { 1 } else { k };
        for _ in 0..copies {
            for n in part..=order {
                let (lo, hi) = table.split_at_mut(n);
                hi[0] += &lo[n - part];
            }
        }
    }
    Series::new(table, order).expect("table has order + 1 entries")
}

/// `a_k(0..=order) mod m` using residue arithmetic only.
///
/// For prime `m` and `k >= m` the exponents are first shrunk with
/// `f_a^{bm} = f_{am}^b (mod m)`.
pub fn ak_prefix_mod(k: u32, order: usize, m: u64) -> Result<ModSeries, SeriesError> {
    let ring = Zn::checked(m).ok_or(SeriesError::BadModulus(m))?;
    let mut quotient = spec(k).quotient();
    if k as u64 >= m && is_prime(m) {
        quotient = quotient.reduce_exponents_mod_prime(m);
    }
    quotient.eval_in(ring, order)
}

/// `a_k(n) mod m`.
pub fn ak_coeff_mod(k: u32, n: usize, m: u64) -> Result<u64, SeriesError> {
    Ok(*ak_prefix_mod(k, n, m)?.coeff(n)?)
}

pub(crate) fn is_prime(m: u64) -> bool {
    m >= 2
        && (2..)
            .take_while(|d| d * d <= m)
            .all(|d| !m.is_multiple_of(d))
}
