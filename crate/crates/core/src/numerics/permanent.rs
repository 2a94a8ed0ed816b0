use super::matrix::SquareMatrix;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Largest dimension [`permanent`] accepts; Ryser costs O(2^n n).
pub const MAX_PERMANENT_DIM: usize = 20;

/// Permanent by Ryser's inclusion-exclusion formula,
///
/// `perm(A) = (-1)^n Σ_{S ⊆ cols} (-1)^{|S|} Π_i Σ_{j ∈ S} a_ij`,
///
/// walking the column subsets in Gray-code order so each step adds or
/// removes one column from the running row sums.
pub fn permanent<T: Scalar>(m: &SquareMatrix<T>) -> Result<T> {
    let n = m.dim();
    if n > MAX_PERMANENT_DIM {
        return Err(Error::DimensionTooLarge { dim: n, max: MAX_PERMANENT_DIM });
    }
    m.check_finite()?;
    if n == 1 {
        return Ok(m.get(0, 0).clone());
    }

    let mut row_sums = vec![T::zero(); n];
    let mut in_subset = vec![false; n];
    let mut total = T::zero();
    let mut subset_len = 0usize;

    for step in 1u64..(1u64 << n) {
        let col = step.trailing_zeros() as usize;
        if in_subset[col] {
            for (i, s) in row_sums.iter_mut().enumerate() {
                *s = std::mem::replace(s, T::zero()) - m.get(i, col);
            }
            subset_len -= 1;
        } else {
            for (i, s) in row_sums.iter_mut().enumerate() {
                *s = std::mem::replace(s, T::zero()) + m.get(i, col);
            }
            subset_len += 1;
        }
        in_subset[col] = !in_subset[col];

        let mut prod = row_sums[0].clone();
        for s in &row_sums[1..] {
            if prod.is_zero() {
                break;
            }
            prod = prod * s;
        }
        if subset_len % 2 == n % 2 {
            total = total + prod;
        } else {
            total = total - prod;
        }
    }

    if !total.is_finite() {
        return Err(Error::NonFiniteEntry("permanent overflowed".into()));
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_i64(n)
    }

    #[test]
    fn one_by_one_is_the_entry() {
        let m = SquareMatrix::from_rows(vec![vec![q(7)]]).unwrap();
        assert_eq!(permanent(&m).unwrap(), q(7));
    }

    #[test]
    fn two_by_two() {
        let m = SquareMatrix::from_rows(vec![vec![q(1), q(2)], vec![q(3), q(4)]]).unwrap();
        assert_eq!(permanent(&m).unwrap(), q(10));
    }

    #[test]
    fn all_ones_gives_factorial() {
        let m = SquareMatrix::<BigRational>::from_fn(6, |_, _| q(1)).unwrap();
        assert_eq!(permanent(&m).unwrap(), q(720));
    }

    #[test]
    fn refuses_oversized_input() {
        let m = SquareMatrix::<Complex64>::identity(21).unwrap();
        assert_eq!(
            permanent(&m),
            Err(Error::DimensionTooLarge { dim: 21, max: MAX_PERMANENT_DIM })
        );
    }

    #[test]
    fn rejects_non_finite_float_entries() {
        let mut m = SquareMatrix::<Complex64>::identity(3).unwrap();
        m.set(1, 2, Complex64::new(f64::NAN, 0.0));
        assert!(matches!(permanent(&m), Err(Error::NonFiniteEntry(_))));
    }
}
