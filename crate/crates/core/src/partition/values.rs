use num_bigint::BigInt;
use serde::Serialize;

use super::matrices::{build_j_higher, cauchy_matrix};
use super::multiset::Subsets;
use super::system::SpinSystem;
use crate::error::{Error, Result};
use crate::gamma::{build_gamma_table, factorial, RapiditySet};
use crate::numerics::{permanent, Scalar};

/// Largest Ω the permanent route accepts.
pub const MAX_PERMANENT_OMEGA: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Permanent,
    Determinant,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Permanent => "permanent",
            Method::Determinant => "determinant",
        })
    }
}

/// A partition function value together with the route that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionValue<T> {
    pub value: T,
    pub method: Method,
}

fn validate<T: Scalar>(system: &SpinSystem<T>, nu: &RapiditySet<T>) -> Result<()> {
    if nu.len() != system.omega() {
        return Err(Error::CardinalityMismatch { expected: system.omega(), found: nu.len() });
    }
    for e in system.epsilons() {
        nu.check_not_pole(e)?;
    }
    Ok(())
}

/// Partition function from its defining sum: choose the 2S rapidities
/// attached to ε₁, weight them by `(2S)! / Π (A_k − ε₁)`, and pair the
/// remaining N−1 rapidities with ε₂…ε_N in every order (a Cauchy
/// permanent).
pub fn z_permanent<T: Scalar>(system: &SpinSystem<T>, nu: &RapiditySet<T>) -> Result<PartitionValue<T>> {
    validate(system, nu)?;
    let omega = system.omega();
    if omega > MAX_PERMANENT_OMEGA {
        return Err(Error::CostGuard { size: omega, max: MAX_PERMANENT_OMEGA });
    }
    let eps = system.epsilons();
    let two_s = system.two_s() as usize;
    let fact = T::from_bigint(&BigInt::from(factorial(two_s)));
    let nu = nu.values();

    let mut total = T::zero();
    for chosen in Subsets::new(omega, two_s) {
        let mut weight = fact.clone();
        for &a in &chosen {
            weight = weight / (nu[a].clone() - &eps[0]);
        }
        let rest: Vec<T> = (0..omega).filter(|i| !chosen.contains(i)).map(|i| nu[i].clone()).collect();
        let inner = if rest.is_empty() { T::one() } else { permanent(&cauchy_matrix(&rest, &eps[1..])?)? };
        total = total + weight * inner;
    }
    if !total.is_finite() {
        return Err(Error::NonFiniteEntry("partition function overflowed".into()));
    }
    Ok(PartitionValue { value: total, method: Method::Permanent })
}

/// Partition function as an N×N determinant in the Γ variables; cost is
/// polynomial in N and 2S.
pub fn z_determinant<T: Scalar>(system: &SpinSystem<T>, nu: &RapiditySet<T>) -> Result<PartitionValue<T>> {
    validate(system, nu)?;
    let table = build_gamma_table(system, nu)?;
    let j = build_j_higher(system, &table)?;
    Ok(PartitionValue { value: j.determinant()?, method: Method::Determinant })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::from_ratio(n, d)
    }

    #[test]
    fn single_excitation() {
        let s = SpinSystem::new(1, vec![q(1, 3)]).unwrap();
        let nu = RapiditySet::new(vec![q(5, 2)]).unwrap();
        let expected = q(1, 1) / (q(5, 2) - q(1, 3));
        assert_eq!(z_permanent(&s, &nu).unwrap().value, expected);
        assert_eq!(z_determinant(&s, &nu).unwrap().value, expected);
    }

    #[test]
    fn spin_one_with_one_partner_three_terms() {
        let (e1, e2) = (q(0, 1), q(1, 1));
        let v = [q(2, 1), q(3, 1), q(5, 1)];
        let s = SpinSystem::new(2, vec![e1.clone(), e2.clone()]).unwrap();
        let nu = RapiditySet::new(v.to_vec()).unwrap();
        let t = |a: &BigRational, b: &BigRational, c: &BigRational| {
            q(2, 1) / ((a.clone() - &e1) * (b.clone() - &e1) * (c.clone() - &e2))
        };
        let expected = t(&v[0], &v[1], &v[2]) + t(&v[1], &v[2], &v[0]) + t(&v[0], &v[2], &v[1]);
        assert_eq!(z_permanent(&s, &nu).unwrap().value, expected);
        assert_eq!(z_determinant(&s, &nu).unwrap().value, expected);
    }

    #[test]
    fn guards() {
        let s = SpinSystem::new(10, vec![q(0, 1), q(1, 1), q(2, 1), q(3, 1), q(4, 1), q(5, 1)]).unwrap();
        let nu = RapiditySet::new((0..15).map(|i| q(2 * i + 11, 2)).collect()).unwrap();
        assert_eq!(z_permanent(&s, &nu), Err(Error::CostGuard { size: 15, max: 14 }));
        assert!(z_determinant(&s, &nu).is_ok());

        let short = RapiditySet::new(vec![q(1, 2)]).unwrap();
        assert_eq!(z_determinant(&s, &short), Err(Error::CardinalityMismatch { expected: 15, found: 1 }));

        let s = SpinSystem::new(1, vec![q(0, 1), q(1, 1)]).unwrap();
        let pole = RapiditySet::new(vec![q(1, 1), q(3, 1)]).unwrap();
        assert!(matches!(z_permanent(&s, &pole), Err(Error::PoleAtEvaluationPoint(_))));
        assert!(matches!(z_determinant(&s, &pole), Err(Error::PoleAtEvaluationPoint(_))));
    }
}
