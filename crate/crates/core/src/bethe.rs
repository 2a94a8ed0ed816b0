//! Spin-½ Bethe equations in rapidity form and in eigenvalue-based form.
//!
//! Rapidity (Richardson) form, for `i = 1…M`:
//! `2/g = Σ_{j≠i} 2/(λ_i − λ_j) + Σ_k 1/(ε_k − λ_i)`.
//!
//! Eigenvalue-based form in `Λ_i = Σ_k 1/(ε_i − λ_k)`, for `i = 1…N`:
//! `Λ_i² = Σ_{j≠i} (Λ_i − Λ_j)/(ε_i − ε_j) + (2/g) Λ_i`.
//!
//! Both are solved by Newton iteration continued in g from the weak
//! coupling limit, where occupied levels have `Λ_i ≈ 2/g` and rapidities
//! sit at `ε_i − g/2`. Everything here is double-precision complex.

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numerics::solve_linear;
use crate::partition::SpinSystem;

type C64 = Complex64;

/// Newton stops once the residual is below this times the problem scale.
const NEWTON_TOL: f64 = 1e-12;
const MAX_NEWTON_ITERS: usize = 60;
const MAX_LINE_SEARCH: usize = 30;
/// Consecutive step halvings allowed before giving up.
const MAX_HALVINGS: usize = 40;
/// Starting coupling satisfies |g₀| ≤ this × smallest level spacing.
const WEAK_COUPLING_FRACTION: f64 = 0.05;
/// Homotopy sub-steps per doubling of g.
const STEPS_PER_DOUBLING: f64 = 4.0;
/// Peak phase (radians) of the complex detour taken by the rapidity solver,
/// which keeps the path clear of real-g points where two rapidities meet
/// at a level.
const DETOUR_ANGLE: f64 = 0.3;

/// Coupling g, levels ε₁…ε_N and the excitation number M.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingModel {
    g: C64,
    eps: Vec<C64>,
    m: usize,
}

impl CouplingModel {
    pub fn new(g: C64, eps: Vec<C64>, m: usize) -> Result<Self> {
        if g.is_zero() || !g.is_finite() {
            return Err(Error::InvalidInput(format!("coupling must be finite and non-zero, got {g}")));
        }
        if eps.is_empty() {
            return Err(Error::InvalidInput("need at least one level".into()));
        }
        if m > eps.len() {
            return Err(Error::InvalidInput(format!("M = {m} exceeds N = {}", eps.len())));
        }
        // reuses the spin-system distinctness/finiteness checks
        SpinSystem::new(1, eps.clone())?;
        Ok(Self { g, eps, m })
    }

    pub fn real(g: f64, eps: &[f64], m: usize) -> Result<Self> {
        Self::new(C64::new(g, 0.0), eps.iter().map(|&e| C64::new(e, 0.0)).collect(), m)
    }

    pub fn g(&self) -> C64 {
        self.g
    }

    pub fn eps(&self) -> &[C64] {
        &self.eps
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.eps.len()
    }

    fn min_gap(&self) -> f64 {
        let mut gap = f64::INFINITY;
        for i in 0..self.eps.len() {
            for j in i + 1..self.eps.len() {
                gap = gap.min((self.eps[i] - self.eps[j]).norm());
            }
        }
        if gap.is_finite() {
            gap
        } else {
            1.0
        }
    }

    /// Number of halvings taking g into the weak-coupling regime.
    fn weak_coupling_doublings(&self) -> u32 {
        let target = WEAK_COUPLING_FRACTION * self.min_gap();
        let mut k = 0;
        while self.g.norm() / 2f64.powi(k as i32) > target {
            k += 1;
        }
        k
    }
}

/// Eigenvalue-based variables Λ₁…Λ_N.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaVars(pub Vec<C64>);

impl LambdaVars {
    pub fn values(&self) -> &[C64] {
        &self.0
    }
}

/// Bethe rapidities λ₁…λ_M.
#[derive(Debug, Clone, PartialEq)]
pub struct RapidityState(pub Vec<C64>);

impl RapidityState {
    pub fn values(&self) -> &[C64] {
        &self.0
    }
}

fn richardson_residuals_at(lam: &[C64], g: C64, eps: &[C64]) -> Result<Vec<C64>> {
    let mut out = Vec::with_capacity(lam.len());
    for (i, li) in lam.iter().enumerate() {
        let mut r = 2.0 / g;
        for (j, lj) in lam.iter().enumerate() {
            if j != i {
                if li == lj {
                    return Err(Error::PoleAtEvaluationPoint(format!("rapidities {i} and {j} coincide")));
                }
                r -= 2.0 / (li - lj);
            }
        }
        for (k, e) in eps.iter().enumerate() {
            if e == li {
                return Err(Error::PoleAtEvaluationPoint(format!("rapidity {i} sits on level {k}")));
            }
            r -= 1.0 / (e - li);
        }
        out.push(r);
    }
    Ok(out)
}

fn richardson_jacobian_at(lam: &[C64], eps: &[C64]) -> Vec<Vec<C64>> {
    let m = lam.len();
    let mut jac = vec![vec![C64::zero(); m]; m];
    for i in 0..m {
        let mut d = C64::zero();
        for j in 0..m {
            if j != i {
                let t = 2.0 / ((lam[i] - lam[j]) * (lam[i] - lam[j]));
                d += t;
                jac[i][j] = -t;
            }
        }
        for e in eps {
            d -= 1.0 / ((e - lam[i]) * (e - lam[i]));
        }
        jac[i][i] = d;
    }
    jac
}

/// `2/g − Σ_{j≠i} 2/(λ_i − λ_j) − Σ_k 1/(ε_k − λ_i)` for each rapidity.
pub fn richardson_residuals(state: &RapidityState, model: &CouplingModel) -> Result<Vec<C64>> {
    richardson_residuals_at(&state.0, model.g, &model.eps)
}

fn quad_residuals_at(lv: &[C64], g: C64, eps: &[C64]) -> Vec<C64> {
    (0..lv.len())
        .map(|i| {
            let mut r = lv[i] * lv[i] - 2.0 / g * lv[i];
            for j in 0..lv.len() {
                if j != i {
                    r -= (lv[i] - lv[j]) / (eps[i] - eps[j]);
                }
            }
            r
        })
        .collect()
}

fn quad_jacobian_at(lv: &[C64], g: C64, eps: &[C64]) -> Vec<Vec<C64>> {
    let n = lv.len();
    let mut jac = vec![vec![C64::zero(); n]; n];
    for i in 0..n {
        let mut d = 2.0 * lv[i] - 2.0 / g;
        for j in 0..n {
            if j != i {
                let c = 1.0 / (eps[i] - eps[j]);
                d -= c;
                jac[i][j] = c;
            }
        }
        jac[i][i] = d;
    }
    jac
}

fn check_len(found: usize, expected: usize) -> Result<()> {
    if found != expected {
        return Err(Error::CardinalityMismatch { expected, found });
    }
    Ok(())
}

/// `Λ_i² − Σ_{j≠i} (Λ_i − Λ_j)/(ε_i − ε_j) − (2/g) Λ_i`.
pub fn quad_residuals(lv: &LambdaVars, model: &CouplingModel) -> Result<Vec<C64>> {
    check_len(lv.0.len(), model.n())?;
    Ok(quad_residuals_at(&lv.0, model.g, &model.eps))
}

/// Analytic Jacobian of [`quad_residuals`], `J[i][j] = ∂R_i/∂Λ_j`.
pub fn quad_jacobian(lv: &LambdaVars, model: &CouplingModel) -> Result<Vec<Vec<C64>>> {
    check_len(lv.0.len(), model.n())?;
    Ok(quad_jacobian_at(&lv.0, model.g, &model.eps))
}

/// `Λ_i = Σ_k 1/(ε_i − λ_k)`.
pub fn lambdas_from_rapidities(state: &RapidityState, eps: &[C64]) -> Result<LambdaVars> {
    let mut out = Vec::with_capacity(eps.len());
    for (i, e) in eps.iter().enumerate() {
        let mut s = C64::zero();
        for (k, l) in state.0.iter().enumerate() {
            if l == e {
                return Err(Error::PoleAtEvaluationPoint(format!("rapidity {k} sits on level {i}")));
            }
            s += 1.0 / (e - l);
        }
        out.push(s);
    }
    Ok(LambdaVars(out))
}

/// Normal-to-dual map `Λ_i ↦ Λ_i − 2/g`. The result solves the quadratic
/// equations with coupling −g.
pub fn dual_transform(lv: &LambdaVars, model: &CouplingModel) -> LambdaVars {
    let shift = 2.0 / model.g;
    LambdaVars(lv.0.iter().map(|l| l - shift).collect())
}

fn max_norm(v: &[C64]) -> f64 {
    v.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

/// One Newton solve at fixed g; `None` if it fails to reach `tol`.
fn newton<R, J>(mut x: Vec<C64>, residual: &R, jacobian: &J, tol: f64) -> Option<(Vec<C64>, f64)>
where
    R: Fn(&[C64]) -> Result<Vec<C64>>,
    J: Fn(&[C64]) -> Vec<Vec<C64>>,
{
    let mut r = residual(&x).ok()?;
    let mut norm = max_norm(&r);
    for _ in 0..MAX_NEWTON_ITERS {
        if norm <= tol {
            return Some((x, norm));
        }
        let dx = solve_linear(jacobian(&x), r.iter().map(|v| -v).collect())?;
        let mut step = 1.0;
        let mut accepted = false;
        for _ in 0..MAX_LINE_SEARCH {
            let trial: Vec<C64> = x.iter().zip(&dx).map(|(a, d)| a + d * step).collect();
            if let Ok(rt) = residual(&trial) {
                let nt = max_norm(&rt);
                if nt.is_finite() && nt < norm {
                    x = trial;
                    r = rt;
                    norm = nt;
                    accepted = true;
                    break;
                }
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    (norm <= tol).then_some((x, norm))
}

/// Extra Newton iterations at the target coupling, kept only while they
/// lower the residual.
fn polish<R, J>(mut x: Vec<C64>, residual: &R, jacobian: &J) -> Vec<C64>
where
    R: Fn(&[C64]) -> Result<Vec<C64>>,
    J: Fn(&[C64]) -> Vec<Vec<C64>>,
{
    let Ok(mut r) = residual(&x) else { return x };
    let mut norm = max_norm(&r);
    for _ in 0..8 {
        let Some(dx) = solve_linear(jacobian(&x), r.iter().map(|v| -v).collect()) else { break };
        let trial: Vec<C64> = x.iter().zip(&dx).map(|(a, d)| a + d).collect();
        match residual(&trial) {
            Ok(rt) if max_norm(&rt) < norm => {
                norm = max_norm(&rt);
                x = trial;
                r = rt;
            }
            _ => break,
        }
    }
    x
}

/// Continues a solution along `g(s)`, `s ∈ [0, 1]`, starting from `x0`
/// (a guess at `g(0)`). Each accepted step is Newton-converged; a failed
/// step halves the increment.
fn continue_along<P, R, J, S>(
    x0: Vec<C64>,
    path: P,
    doublings: u32,
    residual: R,
    jacobian: J,
    scale: S,
) -> Result<Vec<C64>>
where
    P: Fn(f64) -> C64,
    R: Fn(&[C64], C64) -> Result<Vec<C64>>,
    J: Fn(&[C64], C64) -> Vec<Vec<C64>>,
    S: Fn(&[C64], C64) -> f64,
{
    let solve_at = |x: Vec<C64>, g: C64| {
        let tol = NEWTON_TOL * scale(&x, g).max(1.0);
        newton(x, &|y: &[C64]| residual(y, g), &|y: &[C64]| jacobian(y, g), tol)
    };
    let no_convergence = |g: C64, detail: &str| Error::NoConvergence {
        g_reached: format!("{g}"),
        detail: detail.to_string(),
    };

    let (mut x, _) = solve_at(x0, path(0.0)).ok_or_else(|| no_convergence(path(0.0), "initial Newton solve failed"))?;
    let base = 1.0 / (STEPS_PER_DOUBLING * doublings.max(1) as f64);
    let mut s = 0.0;
    let mut ds = base;
    let mut halvings = 0;
    while s < 1.0 {
        let s_next = (s + ds).min(1.0);
        match solve_at(x.clone(), path(s_next)) {
            Some((xn, _)) => {
                x = xn;
                s = s_next;
                halvings = 0;
                ds = (ds * 2.0).min(base);
            }
            None => {
                halvings += 1;
                if halvings > MAX_HALVINGS {
                    return Err(no_convergence(path(s), "step size underflow in coupling continuation"));
                }
                ds *= 0.5;
            }
        }
    }
    let g = path(1.0);
    Ok(polish(x, &|y: &[C64]| residual(y, g), &|y: &[C64]| jacobian(y, g)))
}

/// Solves the quadratic equations for the state whose weak-coupling limit
/// occupies the levels flagged in `occupation`.
///
/// Starts at `g₀ = g/2^k` with `|g₀| ≤ 0.05 ×` the smallest level spacing,
/// seeded at `Λ_i = (2/g₀) n_i`, and follows the ray from g₀ to g.
pub fn solve_quadratic_bethe(model: &CouplingModel, occupation: &[bool]) -> Result<LambdaVars> {
    check_len(occupation.len(), model.n())?;
    let m = occupation.iter().filter(|&&o| o).count();
    check_len(m, model.m)?;
    if m == 0 {
        return Ok(LambdaVars(vec![C64::zero(); model.n()]));
    }
    let k = model.weak_coupling_doublings();
    let g0 = model.g / 2f64.powi(k as i32);
    let seed: Vec<C64> = occupation.iter().map(|&o| if o { 2.0 / g0 } else { C64::zero() }).collect();
    let eps = model.eps.clone();
    let path = |s: f64| g0 * 2f64.powf(k as f64 * s);
    let x = continue_along(
        seed,
        path,
        k,
        |x, g| Ok(quad_residuals_at(x, g, &eps)),
        |x, g| quad_jacobian_at(x, g, &eps),
        |x, g| {
            let l = max_norm(x);
            (l * l).max(2.0 * l / g.norm())
        },
    )?;
    Ok(LambdaVars(x))
}

/// Solves the Richardson equations for rapidities that start next to the
/// levels `initial_levels` (seeds `ε_i − g₀/2`).
///
/// The coupling follows `g(s) = g₀ (g/g₀)^s e^{iθ sin πs}`: the same
/// endpoints as the ray, bent into the complex plane so that rapidity
/// collisions at real g (where real pairs turn complex) are stepped around.
pub fn solve_richardson(model: &CouplingModel, initial_levels: &[usize]) -> Result<RapidityState> {
    check_len(initial_levels.len(), model.m)?;
    for (a, &i) in initial_levels.iter().enumerate() {
        if i >= model.n() || initial_levels[..a].contains(&i) {
            return Err(Error::InvalidInput(format!("bad initial level list {initial_levels:?}")));
        }
    }
    if model.m == 0 {
        return Ok(RapidityState(Vec::new()));
    }
    let k = model.weak_coupling_doublings();
    let g0 = model.g / 2f64.powi(k as i32);
    let seed: Vec<C64> = initial_levels.iter().map(|&i| model.eps[i] - g0 / 2.0).collect();
    let eps = model.eps.clone();
    let detour = if k == 0 { 0.0 } else { DETOUR_ANGLE };
    let path = |s: f64| {
        g0 * 2f64.powf(k as f64 * s) * C64::from_polar(1.0, detour * (std::f64::consts::PI * s).sin())
    };
    let x = continue_along(
        seed,
        path,
        k,
        |x, g| richardson_residuals_at(x, g, &eps),
        |x, _| richardson_jacobian_at(x, &eps),
        |_, g| 2.0 / g.norm(),
    )?;
    Ok(RapidityState(x))
}
