//! Subcommand execution. Each command turns a canonical [`JobSpec`] into an
//! output document.

use dwpf_core::bethe::{
    dual_transform, lambdas_from_rapidities, quad_residuals, richardson_residuals, solve_quadratic_bethe,
    solve_richardson, CouplingModel,
};
use dwpf_core::checks::{run_sweep, CheckReport, SweepConfig};
use dwpf_core::numerics::{BigRational, Complex64, Mode, Scalar, Value};
use dwpf_core::{
    gamma_explicit, gamma_recursive, lambda_derivatives, structure_coefficients, z_determinant,
    z_permanent, Error, RapiditySet, SpinSystem,
};
use serde_json::{json, Value as Json};

use crate::job::{Command, Format, JobSpec, MethodChoice};
use crate::number::parse_number;

/// Result of a successful run. `checks_failed` maps to a non-zero exit.
pub struct Outcome {
    pub document: Json,
    pub csv: Option<String>,
    pub checks_failed: bool,
}

impl Outcome {
    fn ok(document: Json) -> Self {
        Outcome { document, csv: None, checks_failed: false }
    }
}

fn required<T: Clone>(v: &Option<T>, flag: &str) -> Result<T, Error> {
    v.clone().ok_or_else(|| Error::InvalidInput(format!("missing --{flag}")))
}

fn scalars<T: Scalar>(literals: &[String], mode: Mode) -> Result<Vec<T>, Error> {
    literals.iter().map(|s| T::from_value(&parse_number(s, mode)?)).collect()
}

fn finite<T: Scalar>(what: &str, xs: &[T]) -> Result<(), Error> {
    match xs.iter().position(|x| !x.is_finite()) {
        Some(k) => Err(Error::NonFiniteEntry(format!("{what}[{k}] = {}", xs[k].to_value()))),
        None => Ok(()),
    }
}

fn values<T: Scalar>(xs: &[T]) -> Vec<Value> {
    xs.iter().map(Scalar::to_value).collect()
}

pub fn execute(job: &JobSpec) -> Result<Outcome, Error> {
    match (job.command, job.mode) {
        (Command::Pf, Mode::Exact) => pf::<BigRational>(job),
        (Command::Pf, Mode::F64) => pf::<Complex64>(job),
        (Command::Gamma, Mode::Exact) => gamma::<BigRational>(job),
        (Command::Gamma, Mode::F64) => gamma::<Complex64>(job),
        (Command::Coeffs, Mode::Exact) => coeffs::<BigRational>(job),
        (Command::Coeffs, Mode::F64) => coeffs::<Complex64>(job),
        (Command::Verify, _) => verify(job),
        (Command::Bethe, _) => bethe(job),
    }
}

fn system<T: Scalar>(job: &JobSpec) -> Result<SpinSystem<T>, Error> {
    SpinSystem::new(required(&job.two_s, "two-s")?, scalars(&job.epsilons, job.mode)?)
}

fn pf<T: Scalar>(job: &JobSpec) -> Result<Outcome, Error> {
    let system = system::<T>(job)?;
    let nu = RapiditySet::new(scalars(&job.rapidities, job.mode)?)?;
    let choice = job.method.unwrap_or(MethodChoice::Det);
    let single = |z: dwpf_core::PartitionValue<T>| -> Result<Outcome, Error> {
        finite("value", std::slice::from_ref(&z.value))?;
        Ok(Outcome::ok(json!({ "value": z.value.to_value(), "method": z.method })))
    };
    Ok(match choice {
        MethodChoice::Det => single(z_determinant(&system, &nu)?)?,
        MethodChoice::Perm => single(z_permanent(&system, &nu)?)?,
        MethodChoice::Both => {
            let det = z_determinant(&system, &nu)?.value;
            let perm = z_permanent(&system, &nu)?.value;
            finite("value", &[det.clone(), perm.clone()])?;
            let agree = det.agrees_with(&perm);
            Outcome {
                document: json!({
                    "value": det.to_value(),
                    "method": "both",
                    "determinant": det.to_value(),
                    "permanent": perm.to_value(),
                    "agree": agree,
                }),
                csv: None,
                checks_failed: !agree,
            }
        }
    })
}

fn gamma<T: Scalar>(job: &JobSpec) -> Result<Outcome, Error> {
    let nu = RapiditySet::new(scalars(&job.rapidities, job.mode)?)?;
    let z = T::from_value(&parse_number(&required(&job.z, "z")?, job.mode)?)?;
    let order = job.order.unwrap_or(2);
    let lam = lambda_derivatives(&nu, &z, order)?;
    let recursive = gamma_recursive(&lam, order)?;
    let explicit = (0..=order).map(|n| gamma_explicit(&lam, n)).collect::<Result<Vec<T>, Error>>()?;
    finite("lambda", lam.values())?;
    finite("gamma", &recursive)?;
    finite("gamma_explicit", &explicit)?;
    let agree = recursive.iter().zip(&explicit).all(|(a, b)| a.agrees_with(b));
    Ok(Outcome {
        document: json!({
            "lambda": values(lam.values()),
            "gamma": values(&recursive),
            "gamma_explicit": values(&explicit),
            "agree": agree,
        }),
        csv: None,
        checks_failed: !agree,
    })
}

fn coeffs<T: Scalar>(job: &JobSpec) -> Result<Outcome, Error> {
    let system = system::<T>(job)?;
    let c = structure_coefficients(&system);
    let two_s = system.two_s() as usize;
    let n = system.n();
    // spins are numbered from 1 in the output
    let first_row: Vec<Json> = (1..n)
        .map(|j| json!({ "j": j + 1, "c": values(&(0..two_s).map(|k| c.c1j(j, k).clone()).collect::<Vec<_>>()) }))
        .collect();
    let diag: Vec<Json> = (1..n).map(|i| json!({ "i": i + 1, "c0": c.c0_diag(i).to_value() })).collect();
    let off: Vec<Json> = (1..n)
        .flat_map(|i| (1..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| json!({ "i": i + 1, "j": j + 1, "c0": c.c0_off(i, j).to_value() }))
        .collect();
    Ok(Outcome::ok(json!({
        "c11": values(&(0..=two_s).map(|k| c.c11(k).clone()).collect::<Vec<_>>()),
        "c1j": first_row,
        "c0_diag": diag,
        "c0_off": off,
    })))
}

fn csv(reports: &[CheckReport]) -> String {
    let mut out = String::from("check,two_s,n,trial,holds\n");
    for r in reports {
        let trial = r.instance.trial.map(|t| t.to_string()).unwrap_or_default();
        out.push_str(&format!("{},{},{},{},{}\n", r.check, r.instance.two_s, r.instance.n, trial, r.holds));
    }
    out
}

fn verify(job: &JobSpec) -> Result<Outcome, Error> {
    let config = SweepConfig {
        suite: required(&job.suite, "suite")?,
        grid: vec![(job.two_s.unwrap_or(1), required(&job.n, "n")?)],
        extra: job.m.unwrap_or(0),
        trials: job.trials.unwrap_or(20),
        seed: job.seed.unwrap_or(0),
        mode: job.mode,
    };
    let reports = run_sweep(&config)?;
    let passed = reports.iter().filter(|r| r.holds).count();
    let failed = reports.len() - passed;
    Ok(Outcome {
        document: json!({ "suite": config.suite, "passed": passed, "failed": failed, "reports": reports }),
        csv: (job.format == Some(Format::Csv)).then(|| csv(&reports)),
        checks_failed: failed > 0,
    })
}

fn complex(s: &str, mode: Mode) -> Result<Complex64, Error> {
    Complex64::from_value(&parse_number(s, mode)?)
}

fn max_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

/// The solvers are floating-point only; exact mode just restricts the
/// inputs to real rationals.
fn bethe(job: &JobSpec) -> Result<Outcome, Error> {
    let g = complex(&required(&job.g, "g")?, job.mode)?;
    let eps = job.epsilons.iter().map(|s| complex(s, job.mode)).collect::<Result<Vec<_>, _>>()?;
    let occupation = required(&job.occupation, "occupation")?;
    if occupation.len() != eps.len() {
        return Err(Error::CardinalityMismatch { expected: eps.len(), found: occupation.len() });
    }
    let m = occupation.iter().filter(|&&o| o).count();
    let model = CouplingModel::new(g, eps, m)?;

    let quad = solve_quadratic_bethe(&model, &occupation)?;
    let levels: Vec<usize> = (0..occupation.len()).filter(|&i| occupation[i]).collect();
    let roots = solve_richardson(&model, &levels)?;
    let induced = lambdas_from_rapidities(&roots, model.eps())?;
    let route_gap = induced.values().iter().zip(quad.values()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    let dual = dual_transform(&quad, &model);
    let shift = dual.values().first().zip(quad.values().first()).map(|(d, q)| d - q).unwrap_or(-2.0 / g);

    let floats = |v: &[Complex64]| v.iter().map(|z| Value::Float(*z)).collect::<Vec<_>>();
    Ok(Outcome::ok(json!({
        "m": m,
        "lambda_vars": floats(quad.values()),
        "quadratic_residual_max": max_norm(&quad_residuals(&quad, &model)?),
        "rapidities": floats(roots.values()),
        "richardson_residual_max": max_norm(&richardson_residuals(&roots, &model)?),
        "route_gap": route_gap,
        "dual": {
            "g": Value::Float(-g),
            "occupation": occupation.iter().map(|o| !o).collect::<Vec<_>>(),
            "shift": Value::Float(shift),
            "lambda_vars": floats(dual.values()),
        },
    })))
}
