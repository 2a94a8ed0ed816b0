mod common;

use common::{q, Q};
use dwpf_core::*;
use proptest::prelude::*;

fn fraction() -> impl Strategy<Value = Q> {
    (-999i64..=999, 1i64..=64).prop_map(|(p, d)| q(p, d))
}

fn square(max: usize) -> impl Strategy<Value = Vec<Vec<Q>>> {
    (2..=max).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(fraction(), n), n))
}

/// Distinct rapidities avoiding the integer levels `0..n`.
fn rapidities(count: usize, n: usize) -> impl Strategy<Value = Vec<Q>> {
    prop::collection::vec(fraction(), count).prop_filter("distinct, off the levels", move |v| {
        v.iter().enumerate().all(|(i, x)| {
            !v[..i].contains(x) && !(0..n as i64).any(|e| x == &q(e, 1))
        })
    })
}

fn system_and_rapidities() -> impl Strategy<Value = (u32, usize, Vec<Q>)> {
    (1u32..=3, 1usize..=4)
        .prop_flat_map(|(two_s, n)| (Just(two_s), Just(n), rapidities(two_s as usize + n - 1, n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn row_swap_negates_determinant_and_keeps_permanent(rows in square(6), a in 0usize..6, b in 0usize..6) {
        let m = SquareMatrix::from_rows(rows).unwrap();
        let (a, b) = (a % m.dim(), b % m.dim());
        prop_assume!(a != b);
        let mut swapped = m.clone();
        swapped.swap_rows(a, b);
        prop_assert_eq!(swapped.determinant().unwrap(), -m.determinant().unwrap());
        prop_assert_eq!(swapped.permanent().unwrap(), m.permanent().unwrap());
    }

    #[test]
    fn partition_function_is_symmetric_in_rapidities(
        (two_s, n, nu) in system_and_rapidities(),
        shuffle in any::<prop::sample::Index>(),
    ) {
        let eps: Vec<Q> = (0..n as i64).map(|i| q(i, 1)).collect();
        let system = SpinSystem::new(two_s, eps).unwrap();
        let mut permuted = nu.clone();
        let k = shuffle.index(permuted.len());
        permuted.rotate_left(k);
        permuted.reverse();
        let a = RapiditySet::new(nu).unwrap();
        let b = RapiditySet::new(permuted).unwrap();
        prop_assert_eq!(build_gamma_table(&system, &a).unwrap(), build_gamma_table(&system, &b).unwrap());
        prop_assert_eq!(z_determinant(&system, &a).unwrap(), z_determinant(&system, &b).unwrap());
    }

    #[test]
    fn relabeling_spin_halves_leaves_determinant(
        (two_s, nu) in (1u32..=3).prop_flat_map(|t| (Just(t), rapidities(t as usize + 3, 4))),
    ) {
        let nu = RapiditySet::new(nu).unwrap();
        let a = SpinSystem::new(two_s, vec![q(0, 1), q(1, 1), q(2, 1), q(3, 1)]).unwrap();
        let b = SpinSystem::new(two_s, vec![q(0, 1), q(3, 1), q(1, 1), q(2, 1)]).unwrap();
        prop_assert_eq!(z_determinant(&a, &nu).unwrap().value, z_determinant(&b, &nu).unwrap().value);
    }
}
