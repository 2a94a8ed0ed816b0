//! Executable versions of the facts that pin the partition function down:
//! pole residues, vanishing at infinity, and the permanent/determinant
//! identity on random instances.
//!
//! Every check produces a [`CheckReport`]. Exact-mode reports decide by
//! rational equality; float-mode reports by relative agreement within
//! [`FLOAT_REL_TOL`](crate::numerics::FLOAT_REL_TOL).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::RapiditySet;
use crate::numerics::{permanent, BigRational, Complex64, Mode, Scalar, Value, FLOAT_REL_TOL};
use crate::partition::{
    borchardt_check, boson_sum_determinant, build_j_limit, build_j_spin_half, cauchy_matrix, z_determinant,
    z_permanent, SpinSystem, MAX_PERMANENT_OMEGA,
};

/// Offsets `1/p` used to sample `ν_Ω = ε_j + t` for residue extraction.
const SAMPLE_PRIMES: [i64; 16] = [7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67];
/// Offsets of the convergence probe, shrinking tenfold.
pub const PROBE_STEPS: [i64; 3] = [10, 100, 1000];

/// Where a report came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Instance {
    pub two_s: u32,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trial: Option<usize>,
}

impl Instance {
    fn of<T: Scalar>(system: &SpinSystem<T>) -> Self {
        Self { two_s: system.two_s(), n: system.n(), seed: None, trial: None }
    }
}

/// One sample of a convergence trace.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbePoint {
    pub t: Value,
    pub gap: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub instance: Instance,
    pub left: Value,
    pub right: Value,
    pub holds: bool,
    pub mode: Mode,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<ProbePoint>,
}

impl CheckReport {
    fn new<T: Scalar>(check: impl Into<String>, instance: Instance, left: &T, right: &T, holds: bool) -> Self {
        Self {
            check: check.into(),
            instance,
            left: left.to_value(),
            right: right.to_value(),
            holds,
            mode: T::MODE,
            trace: Vec::new(),
        }
    }

    fn tagged(mut self, seed: u64, trial: usize) -> Self {
        self.instance.seed = Some(seed);
        self.instance.trial = Some(trial);
        self
    }

    /// Whether each trace gap is at most `1/factor` of the previous one.
    /// A zero gap counts as shrunk.
    pub fn trace_shrinks_by(&self, factor: u32) -> bool {
        self.trace.windows(2).all(|w| match (&w[0].gap, &w[1].gap) {
            (Value::Exact(a), Value::Exact(b)) => num_traits::Zero::is_zero(b) || a >= &(b * BigRational::from_i64(factor as i64)),
            (a, b) => b.is_zero() || a.magnitude() >= factor as f64 * b.magnitude(),
        })
    }
}

fn abs<T: Scalar>(v: &T) -> T {
    match v.to_value() {
        Value::Exact(r) => T::from_rational(&num_traits::Signed::abs(&r)),
        Value::Float(c) => T::from_rational(
            &BigRational::from_float(c.norm()).unwrap_or_else(|| BigRational::from_i64(0)),
        ),
    }
}

/// `Z(ν_prefix ∪ {x}) · Π_k (x − ε_k)` at `x = ε_pole + t`.
fn pole_free_sample<T: Scalar>(system: &SpinSystem<T>, nu_prefix: &[T], x: &T) -> Result<T> {
    let mut nu = nu_prefix.to_vec();
    nu.push(x.clone());
    let z = z_determinant(system, &RapiditySet::new(nu)?)?.value;
    Ok(system.epsilons().iter().fold(z, |acc, e| acc * (x.clone() - e)))
}

/// Residue of Z in its last rapidity at `ε_pole`, from Lagrange
/// extrapolation of the polynomial `Z · Π_k(ν_Ω − ε_k)` (degree ≤ N − 1)
/// to `ν_Ω = ε_pole`.
fn extract_residue<T: Scalar>(system: &SpinSystem<T>, nu_prefix: &[T], pole: usize) -> Result<T> {
    let eps = system.epsilons();
    let e0 = &eps[pole];
    let mut offsets: Vec<T> = Vec::with_capacity(system.n());
    let mut samples: Vec<T> = Vec::with_capacity(system.n());
    for &p in &SAMPLE_PRIMES {
        if samples.len() == system.n() {
            break;
        }
        let t = T::from_ratio(1, p);
        let x = e0.clone() + &t;
        if eps.contains(&x) || nu_prefix.contains(&x) {
            continue;
        }
        samples.push(pole_free_sample(system, nu_prefix, &x)?);
        offsets.push(t);
    }
    if samples.len() < system.n() {
        return Err(Error::InvalidInput("ran out of residue sample points".into()));
    }
    let mut at_pole = T::zero();
    for (m, pm) in samples.iter().enumerate() {
        let mut w = pm.clone();
        for (l, tl) in offsets.iter().enumerate() {
            if l != m {
                w = w * (T::zero() - tl) / (offsets[m].clone() - tl);
            }
        }
        at_pole = at_pole + w;
    }
    let denom = eps
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != pole)
        .fold(T::one(), |acc, (_, e)| acc * (e0.clone() - e));
    Ok(at_pole / denom)
}

/// Gaps `|t·Z(ε_pole + t) − target|` for `t = 1/10, 1/100, 1/1000`.
fn probe_trace<T: Scalar>(system: &SpinSystem<T>, nu_prefix: &[T], pole: usize, target: &T) -> Result<Vec<ProbePoint>> {
    let e0 = &system.epsilons()[pole];
    let mut trace = Vec::with_capacity(PROBE_STEPS.len());
    for &d in &PROBE_STEPS {
        let t = T::from_ratio(1, d);
        let mut nu = nu_prefix.to_vec();
        nu.push(e0.clone() + &t);
        let z = z_determinant(system, &RapiditySet::new(nu)?)?.value;
        let gap = abs(&(z * &t - target));
        trace.push(ProbePoint { t: t.to_value(), gap: gap.to_value() });
    }
    Ok(trace)
}

fn prefix_len_ok<T: Scalar>(system: &SpinSystem<T>, nu_prefix: &[T]) -> Result<()> {
    let expected = system.omega() - 1;
    if nu_prefix.len() != expected {
        return Err(Error::CardinalityMismatch { expected, found: nu_prefix.len() });
    }
    for (k, e) in system.epsilons().iter().enumerate() {
        if nu_prefix.contains(e) {
            return Err(Error::PoleAtEvaluationPoint(format!("a rapidity equals epsilon {k}")));
        }
    }
    Ok(())
}

/// Residue at `ν_Ω = ε₁` against `2S · Z` of the system with the large
/// spin lowered by ½ (1 when nothing is left).
pub fn check_residue_eps1<T: Scalar>(system: &SpinSystem<T>, nu_prefix: &[T]) -> Result<CheckReport> {
    prefix_len_ok(system, nu_prefix)?;
    let extracted = extract_residue(system, nu_prefix, 0)?;
    let target = match system.lowered() {
        Some(lower) => {
            T::from_i64(system.two_s() as i64) * z_determinant(&lower, &RapiditySet::new(nu_prefix.to_vec())?)?.value
        }
        None => T::one(),
    };
    let holds = extracted.agrees_with(&target);
    let mut report = CheckReport::new("residue_eps1", Instance::of(system), &extracted, &target, holds);
    report.trace = probe_trace(system, nu_prefix, 0, &target)?;
    Ok(report)
}

/// Residue at `ν_Ω = ε_j` (0-based `j ≥ 1`) against Z of the system with
/// spin j removed.
pub fn check_residue_epsj<T: Scalar>(system: &SpinSystem<T>, nu_prefix: &[T], j: usize) -> Result<CheckReport> {
    let reduced = system.without_spin(j)?;
    prefix_len_ok(system, nu_prefix)?;
    let extracted = extract_residue(system, nu_prefix, j)?;
    let target = z_determinant(&reduced, &RapiditySet::new(nu_prefix.to_vec())?)?.value;
    let holds = extracted.agrees_with(&target);
    let mut report =
        CheckReport::new(format!("residue_eps{}", j + 1), Instance::of(system), &extracted, &target, holds);
    report.trace = probe_trace(system, nu_prefix, j, &target)?;
    Ok(report)
}

/// `det J^lim = 0` together with strict decrease of |Z| along the given
/// rapidity scalings. The trace holds `(scale, |Z|)`.
pub fn check_infinity_limit<T: Scalar>(system: &SpinSystem<T>, nu: &RapiditySet<T>, scales: &[T]) -> Result<CheckReport> {
    if scales.is_empty() {
        return Err(Error::InvalidInput("need at least one scale".into()));
    }
    let det_lim = build_j_limit(system)?.determinant()?;
    let zero_det = match T::MODE {
        Mode::Exact => det_lim.is_zero(),
        Mode::F64 => det_lim.magnitude() <= FLOAT_REL_TOL,
    };
    let mut trace = Vec::with_capacity(scales.len());
    let mut previous: Option<f64> = None;
    let mut decreasing = true;
    for t in scales {
        let z = z_determinant(system, &nu.scaled(t))?.value;
        let size = abs(&z);
        let m = size.magnitude();
        if let Some(p) = previous {
            decreasing &= m < p;
        }
        previous = Some(m);
        trace.push(ProbePoint { t: t.to_value(), gap: size.to_value() });
    }
    let mut report = CheckReport::new("infinity_limit", Instance::of(system), &det_lim, &T::zero(), zero_det && decreasing);
    report.trace = trace;
    Ok(report)
}

/// Deterministic per-trial generator.
pub fn trial_rng(seed: u64, two_s: u32, n: usize, trial: usize) -> ChaCha8Rng {
    let mix = seed
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add((two_s as u64) << 48)
        .wrapping_add((n as u64) << 32)
        .wrapping_add(trial as u64);
    ChaCha8Rng::seed_from_u64(mix)
}

/// `count` distinct fractions `p/q`, `p ∈ [−999, 999]`, `q ∈ [1, 64]`,
/// none equal to an integer in `0..n_levels`.
pub fn random_fractions(rng: &mut impl Rng, count: usize, n_levels: usize) -> Vec<(i64, i64)> {
    let mut out: Vec<(i64, i64)> = Vec::with_capacity(count);
    while out.len() < count {
        let p: i64 = rng.gen_range(-999..=999);
        let q: i64 = rng.gen_range(1..=64);
        if p % q == 0 && (0..n_levels as i64).contains(&(p / q)) {
            continue;
        }
        if out.iter().any(|&(a, b)| a * q == p * b) {
            continue;
        }
        out.push((p, q));
    }
    out
}

/// Levels `ε_i = 0, 1, …, N−1` and Ω random rapidities.
pub fn random_instance<T: Scalar>(two_s: u32, n: usize, rng: &mut impl Rng) -> Result<(SpinSystem<T>, RapiditySet<T>)> {
    let system = SpinSystem::new(two_s, (0..n as i64).map(T::from_i64).collect())?;
    let nu = random_fractions(rng, system.omega(), n).into_iter().map(|(p, q)| T::from_ratio(p, q)).collect();
    Ok((system, RapiditySet::new(nu)?))
}

fn levels<T: Scalar>(n: usize) -> Vec<T> {
    (0..n as i64).map(T::from_i64).collect()
}

/// What a sweep verifies on each random instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Permanent route against determinant route.
    Identity,
    /// Cauchy permanent against the N×N spin-½ determinant.
    SpinHalf,
    Residues,
    Limit,
    Borchardt,
    Boson,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "identity" => Suite::Identity,
            "spin-half" => Suite::SpinHalf,
            "residues" => Suite::Residues,
            "limit" => Suite::Limit,
            "borchardt" => Suite::Borchardt,
            "boson" => Suite::Boson,
            other => return Err(Error::InvalidInput(format!("unknown suite {other:?}"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub suite: Suite,
    /// `(2S, N)` points; the Cauchy suites use N and ignore 2S.
    pub grid: Vec<(u32, usize)>,
    /// Extra rapidities M for the boson suite.
    pub extra: usize,
    pub trials: usize,
    pub seed: u64,
    pub mode: Mode,
}

fn run_trial<T: Scalar>(config: &SweepConfig, two_s: u32, n: usize, trial: usize) -> Result<Vec<CheckReport>> {
    let seed = config.seed;
    let mut rng = trial_rng(seed, two_s, n, trial);
    let reports = match config.suite {
        Suite::Identity => {
            let (system, nu) = random_instance::<T>(two_s, n, &mut rng)?;
            let left = z_permanent(&system, &nu)?.value;
            let right = z_determinant(&system, &nu)?.value;
            let holds = left.agrees_with(&right);
            vec![CheckReport::new("identity", Instance::of(&system), &left, &right, holds)]
        }
        Suite::SpinHalf => {
            let (system, nu) = random_instance::<T>(1, n, &mut rng)?;
            let left = permanent(&cauchy_matrix(nu.values(), system.epsilons())?)?;
            let right = build_j_spin_half(system.epsilons(), &nu)?.determinant()?;
            let holds = left.agrees_with(&right);
            vec![CheckReport::new("spin_half", Instance::of(&system), &left, &right, holds)]
        }
        Suite::Residues => {
            let (system, nu) = random_instance::<T>(two_s, n, &mut rng)?;
            let prefix = &nu.values()[..system.omega() - 1];
            let mut out = vec![check_residue_eps1(&system, prefix)?];
            for j in 1..n {
                out.push(check_residue_epsj(&system, prefix, j)?);
            }
            out
        }
        Suite::Limit => {
            let (system, nu) = random_instance::<T>(two_s, n, &mut rng)?;
            let scales = [T::from_i64(1_000), T::from_i64(1_000_000)];
            vec![check_infinity_limit(&system, &nu, &scales)?]
        }
        Suite::Borchardt => {
            let nu: Vec<T> = random_fractions(&mut rng, n, n).into_iter().map(|(p, q)| T::from_ratio(p, q)).collect();
            let r = borchardt_check(&nu, &levels::<T>(n))?;
            let left = r.det_c * &r.perm_c;
            let instance = Instance { two_s: 1, n, seed: None, trial: None };
            vec![CheckReport::new("borchardt", instance, &left, &r.det_m, r.holds)]
        }
        Suite::Boson => {
            let count = n + config.extra;
            let nu: Vec<T> =
                random_fractions(&mut rng, count, n).into_iter().map(|(p, q)| T::from_ratio(p, q)).collect();
            let r = boson_sum_determinant(&nu, &levels::<T>(n))?;
            let instance = Instance { two_s: 1, n, seed: None, trial: None };
            let name = format!("boson_m{}", config.extra);
            vec![CheckReport::new(name, instance, &r.sum_of_permanents, &r.det_j_tilde, r.holds)]
        }
    };
    Ok(reports.into_iter().map(|r| r.tagged(seed, trial)).collect())
}

fn sweep_in<T: Scalar>(config: &SweepConfig) -> Result<Vec<CheckReport>> {
    for &(two_s, n) in &config.grid {
        let omega = match config.suite {
            Suite::Identity => two_s as usize + n - 1,
            _ => 0,
        };
        if omega > MAX_PERMANENT_OMEGA {
            return Err(Error::CostGuard { size: omega, max: MAX_PERMANENT_OMEGA });
        }
        if n == 0 || (config.suite != Suite::Borchardt && config.suite != Suite::Boson && config.suite != Suite::SpinHalf && two_s == 0) {
            return Err(Error::InvalidInput(format!("bad grid point (2S = {two_s}, N = {n})")));
        }
    }
    let jobs: Vec<(u32, usize, usize)> = config
        .grid
        .iter()
        .flat_map(|&(two_s, n)| (0..config.trials).map(move |t| (two_s, n, t)))
        .collect();
    let per_trial: Vec<Vec<CheckReport>> =
        jobs.par_iter().map(|&(two_s, n, t)| run_trial::<T>(config, two_s, n, t)).collect::<Result<_>>()?;
    Ok(per_trial.into_iter().flatten().collect())
}

/// Runs a sweep in the configured mode. Trials run in parallel; reports
/// come back in grid order, then trial order, and depend only on the seed.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<CheckReport>> {
    match config.mode {
        Mode::Exact => sweep_in::<BigRational>(config),
        Mode::F64 => sweep_in::<Complex64>(config),
    }
}

/// Permanent route against determinant route over `(2S, N)` grid points.
pub fn identity_sweep(grid: &[(u32, usize)], trials: usize, seed: u64, mode: Mode) -> Result<Vec<CheckReport>> {
    run_sweep(&SweepConfig { suite: Suite::Identity, grid: grid.to_vec(), extra: 0, trials, seed, mode })
}
