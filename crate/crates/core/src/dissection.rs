//! Arithmetic-progression extraction.
//!
//! Two views of the same progression are kept apart. [`extract`] relabels:
//! the result's `q^n` coefficient is the source's `q^{mn+r}` coefficient.
//! [`component`] keeps the original exponents and zeroes everything else.

use crate::error::SeriesError;
use crate::series::{CoefficientRing, TruncatedSeries};

fn check_progression(m: usize, r: usize) -> Result<(), SeriesError> {
    if m == 0 {
        return Err(SeriesError::ZeroDilation);
    }
    if r >= m {
        return Err(SeriesError::InvalidResidue {
            modulus: m,
            residue: r,
        });
    }
    Ok(())
}

/// `sum_n c(mn + r) q^n`, of order `floor((N - r) / m)` for a source of order `N`.
///
/// Fails when `r >= m`, or when `r` exceeds the source order so that no
/// coefficient of the progression is known.
pub fn extract<R: CoefficientRing>(
    series: &TruncatedSeries<R>,
    m: usize,
    r: usize,
) -> Result<TruncatedSeries<R>, SeriesError> {
    check_progression(m, r)?;
    let order = series.order();
    if r > order {
        return Err(SeriesError::EmptyProgression {
            modulus: m,
            residue: r,
            order,
        });
    }
    let new_order = (order - r) / m;
    let coeffs: Vec<R::Elem> = series.coeffs()[r..].iter().step_by(m).cloned().collect();
    debug_assert_eq!(coeffs.len(), new_order + 1);
    Ok(TruncatedSeries::from_vec_unchecked(
        series.ring().clone(),
        coeffs,
    ))
}

/// `sum_n c(mn + r) q^{mn+r}`, at the source order.
pub fn component<R: CoefficientRing>(
    series: &TruncatedSeries<R>,
    m: usize,
    r: usize,
) -> Result<TruncatedSeries<R>, SeriesError> {
    check_progression(m, r)?;
    let ring = series.ring();
    let coeffs = series
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| if i % m == r { c.clone() } else { ring.zero() })
        .collect();
    Ok(TruncatedSeries::from_vec_unchecked(ring.clone(), coeffs))
}

/// All `m` components, indexed by residue.
pub fn dissect<R: CoefficientRing>(
    series: &TruncatedSeries<R>,
    m: usize,
) -> Result<Vec<TruncatedSeries<R>>, SeriesError> {
    (0..m).map(|r| component(series, m, r)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Series;
    use crate::special::theta_d;

    fn s(values: &[i64], order: usize) -> Series {
        Series::from_i64s(values, order).unwrap()
    }

    #[test]
    fn extract_examples() {
        let a = s(&[1, 2, 3, 4], 3);
        assert_eq!(extract(&a, 2, 1).unwrap(), s(&[2, 4], 1));
        assert_eq!(extract(&a, 1, 0).unwrap(), a);
        assert_eq!(extract(&a, 3, 2).unwrap(), s(&[3], 0));
    }

    #[test]
    fn extract_order_uses_floor_division() {
        let a = Series::zero(10);
        assert_eq!(extract(&a, 3, 0).unwrap().order(), 3);
        assert_eq!(extract(&a, 3, 1).unwrap().order(), 3);
        assert_eq!(extract(&a, 3, 2).unwrap().order(), 2);
        assert_eq!(extract(&a, 27, 10).unwrap().order(), 0);
    }

    #[test]
    fn extract_errors() {
        let a = s(&[1, 2], 1);
        assert_eq!(
            extract(&a, 2, 2),
            Err(SeriesError::InvalidResidue {
                modulus: 2,
                residue: 2
            })
        );
        assert_eq!(
            extract(&a, 5, 3),
            Err(SeriesError::EmptyProgression {
                modulus: 5,
                residue: 3,
                order: 1
            })
        );
        assert!(component(&a, 0, 0).is_err());
    }

    #[test]
    fn component_examples() {
        let a = s(&[1, 2, 3, 4], 3);
        assert_eq!(component(&a, 2, 1).unwrap(), s(&[0, 2, 0, 4], 3));
        let parts = dissect(&a, 3).unwrap();
        let sum = parts
            .iter()
            .skip(1)
            .fold(parts[0].clone(), |acc, p| &acc + p);
        assert_eq!(sum, a);
    }

    #[test]
    fn component_of_theta_d() {
        // squares up to 9 that are 1 mod 3: 1 and 4
        let c = component(&theta_d(9), 3, 1).unwrap();
        assert_eq!(c, s(&[0, -2, 0, 0, 2], 9));
    }

    #[test]
    fn component_is_shifted_dilated_extract() {
        let a = s(&[5, -1, 4, 4, 0, 7, 2, 1, -9, 3, 3], 10);
        for (m, r) in [(2, 1), (3, 0), (3, 2), (4, 3)] {
            let via = extract(&a, m, r).unwrap().dilate_to(m, 10 - r).unwrap();
            let via = Series::new(
                std::iter::repeat_n(num_bigint::BigInt::from(0), r)
                    .chain(via.coeffs().iter().cloned())
                    .collect(),
                10,
            )
            .unwrap();
            assert_eq!(component(&a, m, r).unwrap(), via);
        }
    }
}
