//! The Λ-derivative tower and the Γ hierarchy.
//!
//! For rapidities ν₁…ν_Ω let `Q(z) = Π (z − ν_i)` and
//! `Λ(z) = Q'(z)/Q(z) = Σ 1/(z − ν_i)`. The hierarchy is
//! `Γ_n(z) = −Q⁽ⁿ⁾(z)/Q(z)`, so `Γ₀ = −1` and `Γ₁ = −Λ`. Two independent
//! routes are provided:
//!
//! * [`gamma_recursive`] applies `Γ_n = Γ'_{n−1} + Λ Γ_{n−1}` to polynomials
//!   in the symbols `Λ⁽ᵃ⁾` and evaluates them;
//! * [`gamma_explicit`] sums the closed form
//!   `Γ_n = −Σ_k C^n_k Π_a (Λ⁽ᵃ⁾)^{k_a}` over every `k` with
//!   `Σ (a+1) k_a = n`.
//!
//! Both must agree exactly in rational mode.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numerics::Scalar;
use crate::partition::SpinSystem;

/// The rapidities ν₁…ν_Ω of a domain-wall overlap.
///
/// Repeated values are allowed; only coincidences with evaluation points
/// are poles.
#[derive(Debug, Clone, PartialEq)]
pub struct RapiditySet<T>(Vec<T>);

impl<T: Scalar> RapiditySet<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidInput("rapidity set must not be empty".into()));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFiniteEntry(format!("rapidity {}", v.to_value())));
        }
        Ok(Self(values))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[T] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.0.iter()
    }

    /// Copy with one extra rapidity appended.
    pub fn with(&self, extra: T) -> Self {
        let mut v = self.0.clone();
        v.push(extra);
        Self(v)
    }

    /// Every rapidity multiplied by `t`.
    pub fn scaled(&self, t: &T) -> Self {
        Self(self.0.iter().map(|v| v.clone() * t).collect())
    }

    /// Errors if `z` coincides with a rapidity.
    pub fn check_not_pole(&self, z: &T) -> Result<()> {
        match self.0.iter().position(|v| v == z) {
            Some(i) => Err(Error::PoleAtEvaluationPoint(format!("rapidity #{i} equals {}", z.to_value()))),
            None => Ok(()),
        }
    }
}

/// `[Λ(z), Λ'(z), …, Λ⁽ⁿ⁾(z)]` at a fixed point `z`.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaDerivTable<T> {
    z: T,
    values: Vec<T>,
}

impl<T: Scalar> LambdaDerivTable<T> {
    pub fn z(&self) -> &T {
        &self.z
    }

    /// Highest derivative order stored.
    pub fn order(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn get(&self, a: usize) -> &T {
        &self.values[a]
    }

    fn require(&self, needed: usize) -> Result<()> {
        if self.order() < needed {
            return Err(Error::InsufficientDerivatives { needed, available: self.order() });
        }
        Ok(())
    }
}

/// Closed-form tower `Λ⁽ᵃ⁾(z) = (−1)ᵃ a! Σ_i (z − ν_i)^{−(a+1)}` for
/// `a = 0..=n_max`.
pub fn lambda_derivatives<T: Scalar>(
    nu: &RapiditySet<T>,
    z: &T,
    n_max: usize,
) -> Result<LambdaDerivTable<T>> {
    nu.check_not_pole(z)?;
    let inv: Vec<T> = nu.iter().map(|v| (z.clone() - v).recip()).collect();
    let mut powers = inv.clone();
    let mut values = Vec::with_capacity(n_max + 1);
    let mut factor = T::one();
    for a in 0..=n_max {
        if a > 0 {
            factor = -(factor * T::from_i64(a as i64));
            for (p, x) in powers.iter_mut().zip(&inv) {
                *p = std::mem::replace(p, T::zero()) * x;
            }
        }
        let sum = powers.iter().fold(T::zero(), |acc, p| acc + p);
        values.push(factor.clone() * sum);
    }
    Ok(LambdaDerivTable { z: z.clone(), values })
}

/// A polynomial with integer coefficients in the symbols Λ, Λ', Λ'', …;
/// keys are exponent vectors `(k_0, k_1, …)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LambdaPolynomial {
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl LambdaPolynomial {
    pub fn constant(c: i64, width: usize) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(vec![0; width], BigInt::from(c));
        }
        Self { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(k, c)| (k.as_slice(), c))
    }

    fn add_term(&mut self, key: Vec<u32>, c: BigInt) {
        let entry = self.terms.entry(key.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// `d/dz` using `d Λ⁽ᵇ⁾ / dz = Λ⁽ᵇ⁺¹⁾`. The caller keeps the exponent
    /// vectors wide enough for the highest order reached.
    pub fn derivative(&self) -> Self {
        let mut out = Self::default();
        for (k, c) in &self.terms {
            for b in 0..k.len() - 1 {
                if k[b] == 0 {
                    continue;
                }
                let mut key = k.clone();
                key[b] -= 1;
                key[b + 1] += 1;
                out.add_term(key, c * BigInt::from(k[b]));
            }
        }
        out
    }

    /// Multiplication by Λ = Λ⁽⁰⁾.
    pub fn times_lambda(&self) -> Self {
        let mut out = Self::default();
        for (k, c) in &self.terms {
            let mut key = k.clone();
            key[0] += 1;
            out.add_term(key, c.clone());
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn evaluate<T: Scalar>(&self, lam: &LambdaDerivTable<T>) -> T {
        let mut total = T::zero();
        for (k, c) in &self.terms {
            let mut term = T::from_bigint(c);
            for (a, &e) in k.iter().enumerate() {
                if e > 0 {
                    term = term * lam.get(a).powi(e);
                }
            }
            total = total + term;
        }
        total
    }
}

/// The symbolic polynomials Γ₀…Γ_{n_max} produced by the recursion.
pub fn gamma_polynomials(n_max: usize) -> Vec<LambdaPolynomial> {
    let width = n_max + 1;
    let mut out = vec![LambdaPolynomial::constant(-1, width)];
    for _ in 1..=n_max {
        let prev = out.last().expect("non-empty");
        out.push(prev.derivative().add(&prev.times_lambda()));
    }
    out
}

/// `[Γ₀, …, Γ_{n_max}]` via the recursion `Γ_n = Γ'_{n−1} + Λ Γ_{n−1}`.
pub fn gamma_recursive<T: Scalar>(lam: &LambdaDerivTable<T>, n_max: usize) -> Result<Vec<T>> {
    lam.require(n_max.saturating_sub(1))?;
    Ok(gamma_polynomials(n_max).iter().map(|p| p.evaluate(lam)).collect())
}

/// `n! / Π_a [((a+1)!)^{k_a} k_a!]` when `Σ_a (a+1) k_a = n`, else zero.
pub fn gamma_partition_coefficient(k: &[u32], n: usize) -> BigUint {
    let weight: usize = k.iter().enumerate().map(|(a, &ka)| (a + 1) * ka as usize).sum();
    if weight != n {
        return BigUint::zero();
    }
    let mut den = BigUint::one();
    for (a, &ka) in k.iter().enumerate() {
        den *= factorial(a + 1).pow(ka) * factorial(ka as usize);
    }
    factorial(n) / den
}

pub(crate) fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Every `k = (k_0, …, k_n)` with `Σ (a+1) k_a = n`, in lexicographic order
/// of `(k_n, …, k_0)`.
pub fn weighted_partitions(n: usize) -> Vec<Vec<u32>> {
    fn fill(a: usize, remaining: usize, k: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let part = a + 1;
        if a == 0 {
            k[0] = remaining as u32;
            out.push(k.clone());
            k[0] = 0;
            return;
        }
        for count in 0..=remaining / part {
            k[a] = count as u32;
            fill(a - 1, remaining - count * part, k, out);
        }
        k[a] = 0;
    }
    let mut out = Vec::new();
    let mut k = vec![0; n + 1];
    fill(n, n, &mut k, &mut out);
    out
}

/// `Γ_n` from the closed-form partition sum. The global minus sign makes
/// `Γ₁ = −Λ`, matching `Γ_n = −Q⁽ⁿ⁾/Q`.
pub fn gamma_explicit<T: Scalar>(lam: &LambdaDerivTable<T>, n: usize) -> Result<T> {
    lam.require(n)?;
    let mut total = T::zero();
    for k in weighted_partitions(n) {
        let c = gamma_partition_coefficient(&k, n);
        let mut term = T::from_bigint(&BigInt::from(c));
        for (a, &e) in k.iter().enumerate() {
            if e > 0 {
                term = term * lam.get(a).powi(e);
            }
        }
        total = total + term;
    }
    Ok(-total)
}

/// The Γ values a determinant of [`crate::partition::build_j_higher`]
/// needs: `Γ₀…Γ_{2S}` at ε₁ and `Γ₁` at every other ε.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaTable<T> {
    two_s: u32,
    gammas_at_eps1: Vec<T>,
    gamma1_at_others: Vec<T>,
}

impl<T: Scalar> GammaTable<T> {
    pub fn two_s(&self) -> u32 {
        self.two_s
    }

    /// `[Γ₀(ε₁), …, Γ_{2S}(ε₁)]`.
    pub fn gammas_at_eps1(&self) -> &[T] {
        &self.gammas_at_eps1
    }

    /// `Γ₁(ε_j)` for the spins ½, in order (index 0 is ε₂).
    pub fn gamma1_at_others(&self) -> &[T] {
        &self.gamma1_at_others
    }

    /// `(−1)^{n+1} Γ_n(ε₁) / n!`, which equals the elementary symmetric
    /// polynomial `e_n` of the values `1/(ν_i − ε₁)`. This is the
    /// normalization under which the determinant reproduces the
    /// partition function; it has `Res_{ν=ε₁} e_n = e_{n−1}`.
    pub fn elementary_at_eps1(&self, n: usize) -> T {
        let g = self.gammas_at_eps1[n].clone() / T::from_bigint(&BigInt::from(factorial(n)));
        if n % 2 == 1 {
            g
        } else {
            -g
        }
    }
}

/// Fills a [`GammaTable`] for `system` and rapidities `nu` (|nu| = Ω).
pub fn build_gamma_table<T: Scalar>(system: &SpinSystem<T>, nu: &RapiditySet<T>) -> Result<GammaTable<T>> {
    if nu.len() != system.omega() {
        return Err(Error::CardinalityMismatch { expected: system.omega(), found: nu.len() });
    }
    let eps = system.epsilons();
    for e in eps {
        nu.check_not_pole(e)?;
    }
    let two_s = system.two_s() as usize;
    let lam = lambda_derivatives(nu, &eps[0], two_s)?;
    let gammas_at_eps1 = (0..=two_s).map(|n| gamma_explicit(&lam, n)).collect::<Result<Vec<_>>>()?;
    let gamma1_at_others = eps[1..]
        .iter()
        .map(|e| Ok(-lambda_derivatives(nu, e, 0)?.get(0).clone()))
        .collect::<Result<Vec<_>>>()?;
    Ok(GammaTable { two_s: system.two_s(), gammas_at_eps1, gamma1_at_others })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::from_ratio(n, d)
    }

    fn rapidities(v: &[(i64, i64)]) -> RapiditySet<BigRational> {
        RapiditySet::new(v.iter().map(|&(n, d)| q(n, d)).collect()).unwrap()
    }

    #[test]
    fn lambda_of_single_rapidity() {
        let nu = rapidities(&[(0, 1)]);
        assert_eq!(lambda_derivatives(&nu, &q(1, 1), 0).unwrap().values(), &[q(1, 1)]);
        assert_eq!(lambda_derivatives(&nu, &q(1, 1), 1).unwrap().values(), &[q(1, 1), q(-1, 1)]);
    }

    #[test]
    fn pole_is_reported() {
        let nu = rapidities(&[(0, 1), (3, 2)]);
        assert!(matches!(
            lambda_derivatives(&nu, &q(3, 2), 2),
            Err(Error::PoleAtEvaluationPoint(_))
        ));
    }

    #[test]
    fn low_order_gammas() {
        let nu = rapidities(&[(2, 1), (-1, 3), (5, 7)]);
        let lam = lambda_derivatives(&nu, &q(1, 2), 3).unwrap();
        let g = gamma_recursive(&lam, 1).unwrap();
        assert_eq!(g[0], q(-1, 1));
        assert_eq!(g[1], -lam.get(0).clone());
        assert_eq!(gamma_recursive(&lam, 0).unwrap(), vec![q(-1, 1)]);
        let l0 = lam.get(0).clone();
        let l1 = lam.get(1).clone();
        assert_eq!(gamma_explicit(&lam, 2).unwrap(), -(l1 + l0.clone() * &l0));
        assert_eq!(gamma_explicit(&lam, 0).unwrap(), q(-1, 1));
    }

    #[test]
    fn partition_coefficients() {
        let c = |k: &[u32], n| gamma_partition_coefficient(k, n);
        assert_eq!(c(&[1], 1), BigUint::from(1u32));
        assert_eq!(c(&[2, 0, 0], 2), BigUint::from(1u32));
        assert_eq!(c(&[0, 1, 0], 2), BigUint::from(1u32));
        assert_eq!(c(&[1, 1, 0, 0], 3), BigUint::from(3u32));
        assert_eq!(c(&[1, 1, 0, 0], 4), BigUint::zero());
    }

    #[test]
    fn gamma_three_matches_listed_form() {
        // Γ₃ = −Λ'' − 3ΛΛ' − Λ³
        let polys = gamma_polynomials(3);
        let terms: Vec<_> = polys[3].terms().map(|(k, c)| (k.to_vec(), c.clone())).collect();
        assert_eq!(
            terms,
            vec![
                (vec![0, 0, 1, 0], BigInt::from(-1)),
                (vec![1, 1, 0, 0], BigInt::from(-3)),
                (vec![3, 0, 0, 0], BigInt::from(-1)),
            ]
        );
    }

    #[test]
    fn partitions_are_enumerated_in_order() {
        assert_eq!(
            weighted_partitions(3),
            vec![vec![3, 0, 0, 0], vec![1, 1, 0, 0], vec![0, 0, 1, 0]]
        );
        // p(n) for n = 0..=8
        let counts: Vec<_> = (0..=8).map(|n| weighted_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
    }

    #[test]
    fn insufficient_derivatives() {
        let nu = rapidities(&[(2, 1)]);
        let lam = lambda_derivatives(&nu, &q(0, 1), 1).unwrap();
        assert_eq!(
            gamma_explicit(&lam, 2),
            Err(Error::InsufficientDerivatives { needed: 2, available: 1 })
        );
        assert_eq!(
            gamma_recursive(&lam, 3),
            Err(Error::InsufficientDerivatives { needed: 2, available: 1 })
        );
    }

    #[test]
    fn table_for_single_spin_half() {
        let system = SpinSystem::new(1, vec![q(0, 1)]).unwrap();
        let table = build_gamma_table(&system, &rapidities(&[(2, 1)])).unwrap();
        assert_eq!(table.gammas_at_eps1(), &[q(-1, 1), q(1, 2)]);
        assert!(table.gamma1_at_others().is_empty());
        assert_eq!(table.elementary_at_eps1(0), q(1, 1));
        assert_eq!(table.elementary_at_eps1(1), q(1, 2));
    }

    #[test]
    fn table_checks_cardinality() {
        let system = SpinSystem::new(2, vec![q(0, 1), q(1, 1)]).unwrap();
        assert_eq!(
            build_gamma_table(&system, &rapidities(&[(2, 1), (3, 1)])),
            Err(Error::CardinalityMismatch { expected: 3, found: 2 })
        );
    }
}
