//! `verify`: the identity and invariance suite over seeded random states.

use std::f64::consts::FRAC_PI_2;
use std::io::Write;

use mtangle::generators::{apply_local, random_mixed_with, random_pure_with, random_sl2_with, Seed};
use mtangle::lorentz_invariant::verify_identities;
use mtangle::phase_povm::{check_povm_normalization, delta_multi, PovmMode};
use mtangle::spin_flip::{m_tangle, sigma_y_power};
use mtangle::{Density, MultiPhases, Operator, Phases, State};
use rayon::prelude::*;

use crate::args::VerifyArgs;
use crate::commands::{map_lib, MAX_DENSE_QUBITS};
use crate::error::{usage, CliError, CliResult};

/// Fixed threshold for the odd-m vanishing of τ_m.
pub const ODD_TANGLE_THRESHOLD: f64 = 1e-20;
/// Grid points per phase used for the normalization check.
pub const NORMALIZATION_GRID: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub worst: f64,
    pub threshold: f64,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.worst < self.threshold
    }
}

#[derive(Clone, Copy)]
enum Section {
    Pure = 1,
    Mixed = 2,
    Sl2 = 3,
}

fn stream(section: Section, m: usize, trial: usize) -> u64 {
    ((section as u64) << 48) | ((m as u64) << 32) | trial as u64
}

fn worst_over(trials: usize, f: impl Fn(usize) -> mtangle::Result<f64> + Sync) -> CliResult<f64> {
    (0..trials)
        .into_par_iter()
        .map(&f)
        .try_reduce(|| 0.0, |a, b| Ok(a.max(b)))
        .map_err(map_lib)
}

/// Runs every check and returns the results in report order.
pub fn run_suite(args: &VerifyArgs) -> CliResult<Vec<CheckResult>> {
    if args.trials == 0 {
        return Err(usage("--trials: must be at least 1"));
    }
    if args.m.is_empty() {
        return Err(usage("--m: no qubit counts given"));
    }
    if let Some(&bad) = args.m.iter().find(|&&m| m == 0 || m > MAX_DENSE_QUBITS) {
        return Err(usage(format!("--m: {bad} is not in 1..={MAX_DENSE_QUBITS}")));
    }
    if args.tolerance.is_nan() || args.tolerance <= 0.0 {
        return Err(usage("--tolerance: must be positive"));
    }
    let seed = Seed(args.seed);
    let trials = args.trials;
    let tol = args.tolerance;
    let mut results = Vec::new();
    let mut push = |name: String, worst: f64, threshold: f64| {
        results.push(CheckResult { name, worst, threshold });
    };

    for &m in &args.m {
        let pure = |t: usize| -> mtangle::Result<State> {
            random_pure_with(m, &mut seed.stream(stream(Section::Pure, m, t)))
        };
        let chain = worst_over(trials, |t| Ok(verify_identities("trial", &pure(t)?)?.worst_residual()))?;
        push(format!("pure-state identity chain   m={m}"), chain, tol);
        if m % 2 == 1 {
            let tau = worst_over(trials, |t| m_tangle(&pure(t)?))?;
            push(format!("odd-m tangle vanishes       m={m}"), tau, ODD_TANGLE_THRESHOLD);
        }

        let mixed = worst_over(trials, |t| {
            let rank = 1 + t % (1 << m);
            let rho: Density = random_mixed_with(m, rank, &mut seed.stream(stream(Section::Mixed, m, t)))?;
            Ok(verify_identities("trial", &rho)?.worst_residual())
        })?;
        push(format!("mixed-state chain           m={m}"), mixed, tol);

        let sl2 = worst_over(trials, |t| {
            let mut rng = seed.stream(stream(Section::Sl2, m, t));
            let psi: State = random_pure_with(m, &mut rng)?;
            let ops: Vec<Operator> = (0..m).map(|_| random_sl2_with(&mut rng)).collect::<Result<_, _>>()?;
            let moved = apply_local(&ops, &psi)?;
            Ok((m_tangle(&moved)? - m_tangle(&psi)?).abs())
        })?;
        push(format!("SL(2,C) invariance of tau   m={m}"), sl2, tol);

        let specs = MultiPhases::uniform_qubits(m, FRAC_PI_2).map_err(map_lib)?;
        let comp = delta_multi(&specs, PovmMode::Complement).map_err(map_lib)?;
        let reduction = comp
            .max_abs_diff(&*sigma_y_power::<f64>(m).map_err(map_lib)?)
            .map_err(map_lib)?;
        push(format!("pi/2 reduction to sigma_y   m={m}"), reduction, tol);
    }

    for n in [2, 3] {
        let spec = Phases::uniform(n, 0.0).map_err(map_lib)?;
        let dev = check_povm_normalization(&spec, NORMALIZATION_GRID).map_err(map_lib)?;
        push(format!("POVM normalization          N={n}"), dev, tol);
    }
    Ok(results)
}

pub fn verify(args: &VerifyArgs, out: &mut dyn Write) -> CliResult<()> {
    let results = run_suite(args)?;
    writeln!(out, "trials {} seed {} tolerance {:e}", args.trials, args.seed, args.tolerance)?;
    for r in &results {
        let tag = if r.passed() { "PASS" } else { "FAIL" };
        writeln!(out, "{tag}  {}  worst {:.3e}  (< {:e})", r.name, r.worst, r.threshold)?;
    }
    let failed = results.iter().filter(|r| !r.passed()).count();
    if failed > 0 {
        return Err(CliError::Verification(format!("{failed} of {} checks failed", results.len())));
    }
    writeln!(out, "all {} checks passed", results.len())?;
    Ok(())
}
