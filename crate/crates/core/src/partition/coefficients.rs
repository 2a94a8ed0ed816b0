use super::multiset::Multisets;
use super::system::SpinSystem;
use crate::numerics::Scalar;

/// Rapidity-independent coefficients of the N×N determinant.
///
/// With `x_k = 1/(ε₁ − ε_k)` for the spins ½:
///
/// * `C^n_11 = Σ_{E ∈ S^(2S−n)} Π_{k∈E} x_k`, summed over multisets of
///   size `2S − n` drawn from all spins ½;
/// * `C^n_1j = −Σ_{p=n}^{2S−1} (2S−p) x_j^{2S−p} Σ_{E ∈ S^(p−n)_ĵ} Π x_k`,
///   with the multisets drawn from the spins ½ other than `j`;
/// * `C⁰_ii = 2S/(ε_i − ε₁) + Σ_{k≠1,i} 1/(ε_i − ε_k)`, `C¹_ii = 1`;
/// * `C⁰_ij = 1/(ε_j − ε_i)` for `i ≥ 2`.
///
/// The first-row off-diagonal coefficients carry their overall minus sign,
/// so each first-row entry is `(2S)! Σ_n C^n_1j e_n(ε₁)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureCoefficients<T> {
    two_s: u32,
    epsilons: Vec<T>,
    c11: Vec<T>,
    c1j: Vec<Vec<T>>,
    diag0: Vec<T>,
}

impl<T: Scalar> StructureCoefficients<T> {
    pub fn two_s(&self) -> u32 {
        self.two_s
    }

    pub fn n(&self) -> usize {
        self.epsilons.len()
    }

    /// `C^n_11` for `n = 0..=2S`.
    pub fn c11(&self, n: usize) -> &T {
        &self.c11[n]
    }

    /// `C^n_1j` for spin `j ≥ 1` (0-based) and `n = 0..2S`.
    pub fn c1j(&self, j: usize, n: usize) -> &T {
        &self.c1j[j - 1][n]
    }

    /// `C⁰_ii` for spin `i ≥ 1`.
    pub fn c0_diag(&self, i: usize) -> &T {
        &self.diag0[i - 1]
    }

    /// `C¹_ii`, identically one.
    pub fn c1_diag(&self, _i: usize) -> T {
        T::one()
    }

    /// `C⁰_ij = 1/(ε_j − ε_i)` for `i ≥ 1`, `j ≠ i`.
    pub fn c0_off(&self, i: usize, j: usize) -> T {
        (self.epsilons[j].clone() - &self.epsilons[i]).recip()
    }
}

/// Builds every coefficient of the determinant for `system`.
pub fn structure_coefficients<T: Scalar>(system: &SpinSystem<T>) -> StructureCoefficients<T> {
    let two_s = system.two_s() as usize;
    let eps = system.epsilons();
    let n_spins = eps.len();
    // x[k] = 1/(ε₁ − ε_{k+1}) for the spins ½
    let x: Vec<T> = eps[1..].iter().map(|e| (eps[0].clone() - e).recip()).collect();

    let c11 = (0..=two_s).map(|n| multiset_sum(&x, two_s - n)).collect();

    let c1j = (1..n_spins)
        .map(|j| {
            let others: Vec<T> =
                x.iter().enumerate().filter(|&(k, _)| k + 1 != j).map(|(_, v)| v.clone()).collect();
            let xj = &x[j - 1];
            (0..two_s)
                .map(|n| {
                    let mut c = T::zero();
                    for p in n..two_s {
                        let mult = (two_s - p) as u32;
                        let weight = T::from_i64(mult as i64) * xj.powi(mult);
                        c = c + weight * multiset_sum(&others, p - n);
                    }
                    -c
                })
                .collect()
        })
        .collect();

    let diag0 = (1..n_spins)
        .map(|i| {
            let mut c = T::from_i64(two_s as i64) / (eps[i].clone() - &eps[0]);
            for k in 1..n_spins {
                if k != i {
                    c = c + (eps[i].clone() - &eps[k]).recip();
                }
            }
            c
        })
        .collect();

    StructureCoefficients { two_s: system.two_s(), epsilons: eps.to_vec(), c11, c1j, diag0 }
}

/// `Σ_{E} Π_{k∈E} values[k]` over all size-`size` multisets.
pub fn multiset_sum<T: Scalar>(values: &[T], size: usize) -> T {
    Multisets::new(values.len(), size).fold(T::zero(), |acc, idx| {
        acc + idx.iter().fold(T::one(), |p, &k| p * &values[k])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::from_ratio(n, d)
    }

    #[test]
    fn spin_half_reduces_to_plain_cauchy_coefficients() {
        let s = SpinSystem::new(1, vec![q(0, 1), q(2, 1), q(-3, 2)]).unwrap();
        let c = structure_coefficients(&s);
        assert_eq!(c.c11(1), &q(1, 1));
        assert_eq!(c.c11(0), &(q(1, 1) / q(-2, 1) + q(1, 1) / q(3, 2)));
        // first-row off-diagonal: 1/(ε_j − ε₁)
        assert_eq!(c.c1j(1, 0), &q(1, 2));
        assert_eq!(c.c1j(2, 0), &q(-2, 3));
    }

    #[test]
    fn spin_one_single_partner() {
        // 2S = 2, N = 2, ε = (0, 1): x = -1
        let s = SpinSystem::new(2, vec![q(0, 1), q(1, 1)]).unwrap();
        let c = structure_coefficients(&s);
        assert_eq!((c.c11(0), c.c11(1), c.c11(2)), (&q(1, 1), &q(-1, 1), &q(1, 1)));
        // C^0_12 = -(2 x² + 1·x·[empty multiset of size 1 → 0]) = -2
        assert_eq!(c.c1j(1, 0), &q(-2, 1));
        assert_eq!(c.c1j(1, 1), &q(1, 1));
        assert_eq!(c.c0_diag(1), &q(2, 1));
        assert_eq!(c.c0_off(1, 0), q(-1, 1));
    }
}
