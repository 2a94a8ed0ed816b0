use num_bigint::BigInt;

use super::coefficients::{structure_coefficients, StructureCoefficients};
use super::system::{check_distinct, SpinSystem};
use crate::error::{Error, Result};
use crate::gamma::{factorial, GammaTable, RapiditySet};
use crate::numerics::{Scalar, SquareMatrix};

fn check_no_pole<T: Scalar>(nu: &[T], eps: &[T]) -> Result<()> {
    for (i, v) in nu.iter().enumerate() {
        if let Some(j) = eps.iter().position(|e| e == v) {
            return Err(Error::PoleAtEvaluationPoint(format!("rapidity #{i} equals inhomogeneity #{j}")));
        }
    }
    Ok(())
}

/// `C_ij = 1/(ν_i − ε_j)`.
pub fn cauchy_matrix<T: Scalar>(nu: &[T], eps: &[T]) -> Result<SquareMatrix<T>> {
    if nu.len() != eps.len() {
        return Err(Error::CardinalityMismatch { expected: eps.len(), found: nu.len() });
    }
    check_no_pole(nu, eps)?;
    SquareMatrix::from_fn(nu.len(), |i, j| (nu[i].clone() - &eps[j]).recip())
}

/// The Ω×Ω Cauchy-like matrix whose columns are ε₁ repeated 2S times
/// followed by ε₂…ε_N. Its permanent is the partition function.
pub fn repeated_cauchy_matrix<T: Scalar>(system: &SpinSystem<T>, nu: &RapiditySet<T>) -> Result<SquareMatrix<T>> {
    let eps = system.epsilons();
    let columns: Vec<T> = std::iter::repeat(eps[0].clone())
        .take(system.two_s() as usize)
        .chain(eps[1..].iter().cloned())
        .collect();
    cauchy_matrix(nu.values(), &columns)
}

/// Diagonal `Σ_{k≠i} 1/(ε_i − ε_k) − Σ_k 1/(ε_i − ν_k)`, off-diagonal
/// `sign / (ε_i − ε_j)`. Any number of rapidities is allowed.
fn spin_half_style<T: Scalar>(eps: &[T], nu: &[T], off_sign: i64) -> Result<SquareMatrix<T>> {
    check_distinct(eps)?;
    check_no_pole(nu, eps)?;
    let sign = T::from_i64(off_sign);
    SquareMatrix::from_fn(eps.len(), |i, j| {
        if i == j {
            let mut d = T::zero();
            for (k, e) in eps.iter().enumerate() {
                if k != i {
                    d = d + (eps[i].clone() - e).recip();
                }
            }
            for v in nu {
                d = d - (eps[i].clone() - v).recip();
            }
            d
        } else {
            sign.clone() / (eps[i].clone() - &eps[j])
        }
    })
}

/// The spin-½ matrix with `J_ij = 1/(ε_j − ε_i)` off the diagonal; its
/// determinant is the permanent of the N×N Cauchy matrix.
pub fn build_j_spin_half<T: Scalar>(eps: &[T], nu: &RapiditySet<T>) -> Result<SquareMatrix<T>> {
    if nu.len() != eps.len() {
        return Err(Error::CardinalityMismatch { expected: eps.len(), found: nu.len() });
    }
    spin_half_style(eps, nu.values(), -1)
}

/// `J̃` with the rapidity sum running over all N+M values and
/// `J̃_ij = 1/(ε_i − ε_j)` off the diagonal.
pub fn build_j_boson<T: Scalar>(eps: &[T], nu: &[T]) -> Result<SquareMatrix<T>> {
    spin_half_style(eps, nu, 1)
}

fn two_s_factorial<T: Scalar>(two_s: u32) -> T {
    T::from_bigint(&BigInt::from(factorial(two_s as usize)))
}

/// Assembles the determinant matrix from coefficients and the first-row
/// variables `e_0…e_{2S}` at ε₁ and `Γ₁(ε_i)` on the other rows.
fn assemble<T: Scalar>(coeffs: &StructureCoefficients<T>, e_at_eps1: &[T], gamma1_others: &[T]) -> Result<SquareMatrix<T>> {
    let two_s = coeffs.two_s() as usize;
    let fact = two_s_factorial::<T>(coeffs.two_s());
    SquareMatrix::from_fn(coeffs.n(), |i, j| match (i, j) {
        (0, 0) => {
            let s = (0..=two_s).fold(T::zero(), |acc, n| acc + coeffs.c11(n).clone() * &e_at_eps1[n]);
            fact.clone() * s
        }
        (0, j) => {
            let s = (0..two_s).fold(T::zero(), |acc, n| acc + coeffs.c1j(j, n).clone() * &e_at_eps1[n]);
            fact.clone() * s
        }
        (i, j) if i == j => coeffs.c0_diag(i).clone() + coeffs.c1_diag(i) * &gamma1_others[i - 1],
        (i, j) => coeffs.c0_off(i, j),
    })
}

/// The N×N matrix whose determinant is the partition function of a spin S
/// at ε₁ and N−1 spins ½.
///
/// First row: `J₁₁ = (2S)! Σ_{n=0}^{2S} C^n_11 e_n`,
/// `J₁ⱼ = (2S)! Σ_{n=0}^{2S−1} C^n_1j e_n`, where `e_n` is
/// [`GammaTable::elementary_at_eps1`]. Other rows:
/// `J_ii = C⁰_ii + Γ₁(ε_i)`, `J_ij = 1/(ε_j − ε_i)`.
pub fn build_j_higher<T: Scalar>(system: &SpinSystem<T>, gamma: &GammaTable<T>) -> Result<SquareMatrix<T>> {
    if gamma.two_s() != system.two_s() {
        return Err(Error::CardinalityMismatch {
            expected: system.two_s() as usize + 1,
            found: gamma.gammas_at_eps1().len(),
        });
    }
    if gamma.gamma1_at_others().len() != system.n() - 1 {
        return Err(Error::CardinalityMismatch { expected: system.n() - 1, found: gamma.gamma1_at_others().len() });
    }
    let coeffs = structure_coefficients(system);
    let e: Vec<T> = (0..=system.two_s() as usize).map(|n| gamma.elementary_at_eps1(n)).collect();
    assemble(&coeffs, &e, gamma.gamma1_at_others())
}

/// The rapidity-independent matrix left when every rapidity goes to
/// infinity (`e_0 = 1`, all higher variables vanish). Its determinant is
/// zero for every system.
pub fn build_j_limit<T: Scalar>(system: &SpinSystem<T>) -> Result<SquareMatrix<T>> {
    let coeffs = structure_coefficients(system);
    let mut e = vec![T::zero(); system.two_s() as usize + 1];
    e[0] = T::one();
    let zeros = vec![T::zero(); system.n() - 1];
    assemble(&coeffs, &e, &zeros)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::build_gamma_table;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::from_ratio(n, d)
    }

    fn nu(v: &[i64]) -> RapiditySet<BigRational> {
        RapiditySet::new(v.iter().map(|&x| q(x, 1)).collect()).unwrap()
    }

    #[test]
    fn cauchy_entries() {
        let c = cauchy_matrix(&[q(2, 1), q(3, 1)], &[q(0, 1), q(1, 1)]).unwrap();
        assert_eq!(c.entries(), &[q(1, 2), q(1, 1), q(1, 3), q(1, 2)]);
        assert_eq!(cauchy_matrix(&[q(1, 1)], &[q(0, 1)]).unwrap().entries(), &[q(1, 1)]);
        assert!(matches!(
            cauchy_matrix(&[q(1, 1), q(2, 1)], &[q(0, 1), q(2, 1)]),
            Err(Error::PoleAtEvaluationPoint(_))
        ));
        assert!(matches!(cauchy_matrix(&[q(1, 1)], &[q(0, 1), q(2, 1)]), Err(Error::CardinalityMismatch { .. })));
    }

    #[test]
    fn spin_half_single_site() {
        let j = build_j_spin_half(&[q(0, 1)], &nu(&[2])).unwrap();
        assert_eq!(j.entries(), &[q(1, 2)]);
        assert_eq!(j.determinant().unwrap(), q(1, 2));
    }

    #[test]
    fn spin_half_two_sites_by_hand() {
        let j = build_j_spin_half(&[q(0, 1), q(1, 1)], &nu(&[2, 3])).unwrap();
        // two-term permanent: 1/((2−0)(3−1)) + 1/((3−0)(2−1))
        assert_eq!(j.determinant().unwrap(), q(1, 4) + q(1, 3));
    }

    #[test]
    fn higher_with_spin_half_matches_base_matrix() {
        let eps = vec![q(0, 1), q(1, 1), q(5, 2)];
        let system = SpinSystem::new(1, eps.clone()).unwrap();
        let r = RapiditySet::new(vec![q(7, 3), q(-4, 1), q(9, 5)]).unwrap();
        let table = build_gamma_table(&system, &r).unwrap();
        assert_eq!(build_j_higher(&system, &table).unwrap(), build_j_spin_half(&eps, &r).unwrap());
    }

    #[test]
    fn limit_for_spin_half_has_vanishing_column_sums() {
        let system = SpinSystem::new(1, vec![q(0, 1), q(1, 1), q(3, 1), q(-2, 7)]).unwrap();
        let lim = build_j_limit(&system).unwrap();
        for row in lim.rows() {
            let s = row.iter().fold(q(0, 1), |a, x| a + x);
            assert_eq!(s, q(0, 1));
        }
        assert_eq!(lim.determinant().unwrap(), q(0, 1));
    }
}
