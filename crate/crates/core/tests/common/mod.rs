//! Reference implementations kept deliberately naive. None of them call
//! into the library's kernels.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_q(rng: &mut impl Rng) -> Q {
    q(rng.gen_range(-999..=999), rng.gen_range(1..=64))
}

/// Distinct random rationals avoiding every value in `avoid`.
pub fn random_distinct(rng: &mut impl Rng, count: usize, avoid: &[Q]) -> Vec<Q> {
    let mut out: Vec<Q> = Vec::new();
    while out.len() < count {
        let x = random_q(rng);
        if !avoid.contains(&x) && !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

pub fn random_matrix(rng: &mut impl Rng, n: usize) -> Vec<Vec<Q>> {
    (0..n).map(|_| (0..n).map(|_| random_q(rng)).collect()).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut next = p.clone();
            next.insert(pos, n - 1);
            out.push(next);
        }
    }
    out
}

fn sign(p: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Σ over all permutations of Π m[i][σ(i)].
pub fn permanent_by_permutations(m: &[Vec<Q>]) -> Q {
    permutations(m.len())
        .iter()
        .map(|p| p.iter().enumerate().fold(Q::one(), |acc, (i, &j)| acc * &m[i][j]))
        .fold(Q::zero(), |a, b| a + b)
}

/// Leibniz sum with permutation signs.
pub fn determinant_by_permutations(m: &[Vec<Q>]) -> Q {
    permutations(m.len())
        .iter()
        .map(|p| {
            let prod = p.iter().enumerate().fold(Q::one(), |acc, (i, &j)| acc * &m[i][j]);
            prod * Q::from_integer(BigInt::from(sign(p)))
        })
        .fold(Q::zero(), |a, b| a + b)
}

/// Laplace expansion along the first row.
pub fn determinant_by_cofactors(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total = Q::zero();
    for col in 0..n {
        let minor: Vec<Vec<Q>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != col).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = m[0][col].clone() * determinant_by_cofactors(&minor);
        if col % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

pub fn cauchy(nu: &[Q], eps: &[Q]) -> Vec<Vec<Q>> {
    nu.iter().map(|v| eps.iter().map(|e| (v - e).recip()).collect()).collect()
}

/// Dense polynomial, coefficients in increasing degree.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly(pub Vec<Q>);

impl Poly {
    pub fn from_roots(roots: &[Q]) -> Self {
        let mut c = vec![Q::one()];
        for r in roots {
            let mut next = vec![Q::zero(); c.len() + 1];
            for (k, ck) in c.iter().enumerate() {
                next[k + 1] += ck;
                next[k] -= ck * r;
            }
            c = next;
        }
        Poly(c)
    }

    pub fn derivative(&self) -> Self {
        if self.0.len() <= 1 {
            return Poly(vec![Q::zero()]);
        }
        Poly(self.0.iter().enumerate().skip(1).map(|(k, c)| c * Q::from_integer(BigInt::from(k))).collect())
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.0.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }
}

/// `−Q⁽ⁿ⁾(z)/Q(z)` with `Q(z) = Π(z − ν_i)`.
pub fn gamma_by_polynomial(nu: &[Q], z: &Q, n: usize) -> Q {
    let base = Poly::from_roots(nu);
    let mut d = base.clone();
    for _ in 0..n {
        d = d.derivative();
    }
    -(d.eval(z) / base.eval(z))
}

/// `dⁿ/dzⁿ [Q'(z)/Q(z)]` by the quotient rule, tracking `num / Q^k`.
pub fn lambda_derivative_by_polynomial(nu: &[Q], z: &Q, order: usize) -> Q {
    let base = Poly::from_roots(nu);
    let base_d = base.derivative();
    let mut num = base_d.clone();
    for k in 1..=order {
        // d/dz (num / Q^k) = (num'·Q − k·num·Q') / Q^{k+1}
        let scaled = Poly(num.0.iter().map(|c| c * Q::from_integer(BigInt::from(k))).collect());
        num = sub(&mul(&num.derivative(), &base), &mul(&scaled, &base_d));
    }
    let q = base.eval(z);
    let mut den = Q::one();
    for _ in 0..=order {
        den *= &q;
    }
    num.eval(z) / den
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![Q::zero(); a.0.len() + b.0.len() - 1];
    for (i, x) in a.0.iter().enumerate() {
        for (j, y) in b.0.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    Poly(out)
}

fn sub(a: &Poly, b: &Poly) -> Poly {
    let len = a.0.len().max(b.0.len());
    Poly(
        (0..len)
            .map(|k| a.0.get(k).cloned().unwrap_or_else(Q::zero) - b.0.get(k).cloned().unwrap_or_else(Q::zero))
            .collect(),
    )
}

/// Partition function by its defining sum, built from the
/// permutation-sum permanent.
pub fn z_by_definition(two_s: usize, eps: &[Q], nu: &[Q]) -> Q {
    let omega = nu.len();
    let mut fact = Q::one();
    for k in 1..=two_s {
        fact *= Q::from_integer(BigInt::from(k));
    }
    let mut total = Q::zero();
    for mask in 0u32..(1 << omega) {
        if mask.count_ones() as usize != two_s {
            continue;
        }
        let mut w = fact.clone();
        let mut rest = Vec::new();
        for (i, v) in nu.iter().enumerate() {
            if mask & (1 << i) != 0 {
                w /= v - &eps[0];
            } else {
                rest.push(v.clone());
            }
        }
        let inner = if rest.is_empty() { Q::one() } else { permanent_by_permutations(&cauchy(&rest, &eps[1..])) };
        total += w * inner;
    }
    total
}

/// The spin-3/2 coefficient list for levels (e1, e2, e3), written out
/// term by term.
pub struct SpinThreeHalves {
    /// C^n_11, n = 0..=3
    pub c11: [Q; 4],
    /// C^n_12, n = 0..=2
    pub c12: [Q; 3],
    /// C^n_13, n = 0..=2
    pub c13: [Q; 3],
    pub c0_22: Q,
    pub c0_33: Q,
    pub c0_23: Q,
    pub c0_32: Q,
}

pub fn spin_three_halves(e1: &Q, e2: &Q, e3: &Q) -> SpinThreeHalves {
    let a = (e1 - e2).recip(); // 1/(ε1−ε2)
    let b = (e1 - e3).recip(); // 1/(ε1−ε3)
    let p2 = (e2 - e1).recip();
    let p3 = (e3 - e1).recip();
    let n = |k: i64| Q::from_integer(BigInt::from(k));
    let c11 = [
        &a * &a * &a + &b * &b * &b + &a * &a * &b + &a * &b * &b,
        &a * &a + &b * &b + &a * &b,
        &a + &b,
        Q::one(),
    ];
    let c12 = [
        &p2 * (n(3) * &a * &a + &b * &b + n(2) * &a * &b),
        &p2 * (n(2) * &a + &b),
        p2.clone(),
    ];
    let c13 = [
        &p3 * (n(3) * &b * &b + &a * &a + n(2) * &a * &b),
        &p3 * (n(2) * &b + &a),
        p3.clone(),
    ];
    SpinThreeHalves {
        c11,
        c12,
        c13,
        c0_22: n(3) * (e2 - e1).recip() + (e2 - e3).recip(),
        c0_33: n(3) * (e3 - e1).recip() + (e3 - e2).recip(),
        c0_23: (e3 - e2).recip(),
        c0_32: (e2 - e3).recip(),
    }
}
