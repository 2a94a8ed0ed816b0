use crate::error::{Error, Result};
use crate::numerics::Scalar;

/// One spin of length S = `two_s`/2 at ε₁ plus N−1 spins ½ at ε₂…ε_N.
///
/// Spin indices are 0-based throughout the crate: index 0 is the large
/// spin, indices `1..n` are the spins ½.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinSystem<T> {
    two_s: u32,
    epsilons: Vec<T>,
}

impl<T: Scalar> SpinSystem<T> {
    pub fn new(two_s: u32, epsilons: Vec<T>) -> Result<Self> {
        if two_s == 0 {
            return Err(Error::InvalidInput("two_s must be at least 1".into()));
        }
        if epsilons.is_empty() {
            return Err(Error::InvalidInput("need at least one inhomogeneity".into()));
        }
        if let Some(e) = epsilons.iter().find(|e| !e.is_finite()) {
            return Err(Error::NonFiniteEntry(format!("inhomogeneity {}", e.to_value())));
        }
        check_distinct(&epsilons)?;
        Ok(Self { two_s, epsilons })
    }

    pub fn two_s(&self) -> u32 {
        self.two_s
    }

    /// Number of spins N.
    pub fn n(&self) -> usize {
        self.epsilons.len()
    }

    /// Number of excitations Ω = 2S + N − 1.
    pub fn omega(&self) -> usize {
        self.two_s as usize + self.n() - 1
    }

    pub fn epsilons(&self) -> &[T] {
        &self.epsilons
    }

    /// The system with the large spin lowered from S to S − ½.
    ///
    /// For S = ½ the first site drops out and ε₂ takes over the role of
    /// the (spin-½) first site. `None` when nothing is left.
    pub fn lowered(&self) -> Option<Self> {
        if self.two_s >= 2 {
            Some(Self { two_s: self.two_s - 1, epsilons: self.epsilons.clone() })
        } else if self.n() >= 2 {
            Some(Self { two_s: 1, epsilons: self.epsilons[1..].to_vec() })
        } else {
            None
        }
    }

    /// The system with spin ½ number `j` (0-based, `j ≥ 1`) removed.
    pub fn without_spin(&self, j: usize) -> Result<Self> {
        if j == 0 || j >= self.n() {
            return Err(Error::InvalidInput(format!(
                "spin index {j} is not a spin-1/2 of a {}-spin system",
                self.n()
            )));
        }
        let mut epsilons = self.epsilons.clone();
        epsilons.remove(j);
        Ok(Self { two_s: self.two_s, epsilons })
    }
}

pub(crate) fn check_distinct<T: Scalar>(values: &[T]) -> Result<()> {
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            if values[i] == values[j] {
                return Err(Error::DegenerateEpsilons { i, j });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn eps(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_i64(x)).collect()
    }

    #[test]
    fn omega_counts_excitations() {
        let s = SpinSystem::new(3, eps(&[0, 1, 2])).unwrap();
        assert_eq!(s.omega(), 5);
        assert_eq!(s.n(), 3);
    }

    #[test]
    fn degenerate_epsilons_rejected() {
        assert_eq!(
            SpinSystem::new(1, eps(&[0, 1, 0])),
            Err(Error::DegenerateEpsilons { i: 0, j: 2 })
        );
        assert!(SpinSystem::new(0, eps(&[0])).is_err());
    }

    #[test]
    fn lowering_and_removal() {
        let s = SpinSystem::new(2, eps(&[0, 1, 2])).unwrap();
        let l = s.lowered().unwrap();
        assert_eq!((l.two_s(), l.n()), (1, 3));
        let ll = l.lowered().unwrap();
        assert_eq!((ll.two_s(), ll.epsilons()), (1, &eps(&[1, 2])[..]));
        assert!(SpinSystem::new(1, eps(&[5])).unwrap().lowered().is_none());

        let r = s.without_spin(1).unwrap();
        assert_eq!(r.epsilons(), &eps(&[0, 2])[..]);
        assert!(s.without_spin(0).is_err());
        assert!(s.without_spin(3).is_err());
    }
}
