use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::SquareMatrix;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Determinant in the matrix's own mode: Bareiss for exact rationals,
/// partially pivoted elimination for floats.
pub fn determinant<T: Scalar>(m: &SquareMatrix<T>) -> Result<T> {
    m.check_finite()?;
    T::determinant_kernel(m)
}

/// Exact determinant of a rational matrix.
///
/// Each row is cleared of denominators first, then the integer matrix is
/// reduced with fraction-free (Bareiss) elimination, so every intermediate
/// stays an exact integer minor.
pub fn bareiss(m: &SquareMatrix<BigRational>) -> BigRational {
    let n = m.dim();
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for row in m.rows() {
        let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        a.push(row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect());
        scale *= lcm;
    }
    BigRational::new(bareiss_integer(a), scale)
}

/// Fraction-free elimination on an integer matrix; consumes its input.
pub fn bareiss_integer(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign_flip = false;
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                // exact by Sylvester's identity
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign_flip {
        -det
    } else {
        det
    }
}

/// LU with partial pivoting on complex doubles.
pub fn partial_pivot_lu(m: &SquareMatrix<Complex64>) -> Result<Complex64> {
    let n = m.dim();
    let mut a: Vec<Complex64> = m.entries().to_vec();
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let (p, pmag) = (k..n)
            .map(|i| (i, a[i * n + k].norm()))
            .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if pmag == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if p != k {
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            det = -det;
        }
        let pivot = a[k * n + k];
        det *= pivot;
        for i in k + 1..n {
            let f = a[i * n + k] / pivot;
            if f.is_zero() {
                continue;
            }
            for j in k + 1..n {
                let t = a[k * n + j];
                a[i * n + j] -= f * t;
            }
        }
    }
    if !det.is_finite() {
        return Err(Error::NonFiniteEntry(format!("determinant overflowed to {det}")));
    }
    Ok(det)
}

/// Solves `a x = b` in place by Gaussian elimination with partial pivoting.
/// Returns `None` for a numerically singular system.
pub fn solve_linear(mut a: Vec<Vec<Complex64>>, mut b: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let n = b.len();
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| a[i][k].norm().total_cmp(&a[j][k].norm()))?;
        if a[p][k].norm() == 0.0 || !a[p][k].is_finite() {
            return None;
        }
        a.swap(k, p);
        b.swap(k, p);
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            for j in k..n {
                let t = a[k][j];
                a[i][j] -= f * t;
            }
            let t = b[k];
            b[i] -= f * t;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for i in (0..n).rev() {
        let mut s = b[i];
        for j in i + 1..n {
            s -= a[i][j] * x[j];
        }
        x[i] = s / a[i][i];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}
