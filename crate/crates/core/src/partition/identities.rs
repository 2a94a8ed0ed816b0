use super::matrices::{build_j_boson, cauchy_matrix};
use super::multiset::Subsets;
use super::system::check_distinct;
use crate::error::{Error, Result};
use crate::numerics::{permanent, Scalar, SquareMatrix};

/// Largest N+M accepted by [`boson_sum_determinant`].
pub const MAX_BOSON_RAPIDITIES: usize = 12;

/// Both sides of `Det C · Perm C = Det M`, `M_ij = 1/(ν_i − ε_j)²`.
#[derive(Debug, Clone, PartialEq)]
pub struct BorchardtReport<T> {
    pub det_c: T,
    pub perm_c: T,
    pub det_m: T,
    pub holds: bool,
}

pub fn borchardt_check<T: Scalar>(nu: &[T], eps: &[T]) -> Result<BorchardtReport<T>> {
    check_distinct(nu)?;
    check_distinct(eps)?;
    let c = cauchy_matrix(nu, eps)?;
    let m = c.map(|x| x.clone() * x);
    let det_c = c.determinant()?;
    let perm_c = permanent(&c)?;
    let det_m = m.determinant()?;
    let holds = (det_c.clone() * &perm_c).agrees_with(&det_m);
    Ok(BorchardtReport { det_c, perm_c, det_m, holds })
}

/// Sum of Cauchy permanents over every N-subset of N+M rapidities
/// against the determinant of `J̃`.
#[derive(Debug, Clone, PartialEq)]
pub struct BosonReport<T> {
    pub sum_of_permanents: T,
    pub det_j_tilde: T,
    pub holds: bool,
}

pub fn boson_sum_determinant<T: Scalar>(nu: &[T], eps: &[T]) -> Result<BosonReport<T>> {
    let n = eps.len();
    if nu.len() < n {
        return Err(Error::CardinalityMismatch { expected: n, found: nu.len() });
    }
    if nu.len() > MAX_BOSON_RAPIDITIES {
        return Err(Error::CostGuard { size: nu.len(), max: MAX_BOSON_RAPIDITIES });
    }
    let mut sum = T::zero();
    for subset in Subsets::new(nu.len(), n) {
        let chosen: Vec<T> = subset.iter().map(|&i| nu[i].clone()).collect();
        sum = sum + permanent(&cauchy_matrix(&chosen, eps)?)?;
    }
    let j: SquareMatrix<T> = build_j_boson(eps, nu)?;
    let det = j.determinant()?;
    let holds = sum.agrees_with(&det);
    Ok(BosonReport { sum_of_permanents: sum, det_j_tilde: det, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::from_ratio(n, d)
    }

    #[test]
    fn borchardt_single() {
        let r = borchardt_check(&[q(3, 1)], &[q(1, 1)]).unwrap();
        assert_eq!((r.det_c.clone(), r.perm_c.clone(), r.det_m.clone()), (q(1, 2), q(1, 2), q(1, 4)));
        assert!(r.holds);
    }

    #[test]
    fn boson_without_extra_rapidities_is_plain_identity() {
        let eps = [q(0, 1), q(1, 1), q(2, 1)];
        let nu = [q(7, 2), q(-5, 3), q(11, 4)];
        let r = boson_sum_determinant(&nu, &eps).unwrap();
        assert!(r.holds);
        assert_eq!(r.sum_of_permanents, permanent(&cauchy_matrix(&nu, &eps).unwrap()).unwrap());
    }

    #[test]
    fn boson_guard() {
        let eps = [q(0, 1)];
        let nu: Vec<_> = (0..13).map(|i| q(2 * i + 1, 2)).collect();
        assert_eq!(boson_sum_determinant(&nu, &eps), Err(Error::CostGuard { size: 13, max: 12 }));
    }
}
