//! Index enumerators: multisets (combinations with repetition) and plain
//! k-subsets, both as sorted index tuples in lexicographic order.

use num_bigint::BigUint;
use num_traits::One;

/// Size-`size` multisets over `0..ground`, as nondecreasing index tuples.
#[derive(Debug, Clone)]
pub struct Multisets {
    ground: usize,
    current: Option<Vec<usize>>,
}

impl Multisets {
    pub fn new(ground: usize, size: usize) -> Self {
        let current = if size > 0 && ground == 0 { None } else { Some(vec![0; size]) };
        Self { ground, current }
    }
}

impl Iterator for Multisets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        if let Some(i) = next.iter().rposition(|&x| x + 1 < self.ground) {
            let v = next[i] + 1;
            for x in &mut next[i..] {
                *x = v;
            }
            self.current = Some(next);
        }
        Some(out)
    }
}

/// `binom(ground + size − 1, size)`, the number of items [`Multisets`]
/// yields.
pub fn multiset_count(ground: usize, size: usize) -> BigUint {
    if size == 0 {
        return BigUint::one();
    }
    if ground == 0 {
        return BigUint::from(0u32);
    }
    binomial(ground + size - 1, size)
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Size-`size` subsets of `0..ground`, as increasing index tuples.
#[derive(Debug, Clone)]
pub struct Subsets {
    ground: usize,
    current: Option<Vec<usize>>,
}

impl Subsets {
    pub fn new(ground: usize, size: usize) -> Self {
        let current = (size <= ground).then(|| (0..size).collect());
        Self { ground, current }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let k = out.len();
        let mut next = out.clone();
        if let Some(i) = (0..k).rev().find(|&i| next[i] < self.ground - k + i) {
            next[i] += 1;
            for t in i + 1..k {
                next[t] = next[t - 1] + 1;
            }
            self.current = Some(next);
        }
        Some(out)
    }
}
