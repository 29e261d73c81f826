//! Subcommand implementations. Each writes its report to `out`.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};
use std::fs::File;
use std::io::Write;

use mtangle::generators::{self, Seed};
use mtangle::lorentz_invariant::verify_identities;
use mtangle::phase_povm::{
    check_povm_normalization, delta_single, gamma_mixed, gamma_pure, gamma_sweep, phase_count,
    povm_min_eigenvalue,
};
use mtangle::tensor_core::min_eigenvalue;
use mtangle::{Complex64, MultiPhases, Phases, Report, State};
use serde::Serialize;

use crate::angle::parse_angles;
use crate::args::{ComputeArgs, GenerateArgs, Measure, PovmCheckArgs, StateName, SweepArgs};
use crate::error::{input, usage, CliError, CliResult};
use crate::statefile::{load_path, LoadedState, StateFile};

/// Largest `m` accepted for generated pure states.
pub const MAX_PURE_QUBITS: usize = 16;
/// Largest `m` accepted where a `2^m x 2^m` matrix is materialized.
pub const MAX_DENSE_QUBITS: usize = 10;
/// Threshold below which a POVM eigenvalue is flagged negative.
pub const NEGATIVE_FLAG: f64 = -1e-12;

fn require<T: Copy>(value: Option<T>, flag: &str, name: StateName) -> CliResult<T> {
    value.ok_or_else(|| usage(format!("{flag} is required for {name:?}")))
}

fn qubits(m: usize, max: usize) -> CliResult<usize> {
    if m == 0 || m > max {
        return Err(usage(format!("--m: {m} is not in 1..={max}")));
    }
    Ok(m)
}

fn factor(label: &str) -> CliResult<[Complex64; 2]> {
    let h = FRAC_1_SQRT_2;
    let (a, b) = match label.trim() {
        "0" => ((1.0, 0.0), (0.0, 0.0)),
        "1" => ((0.0, 0.0), (1.0, 0.0)),
        "+" => ((h, 0.0), (h, 0.0)),
        "-" => ((h, 0.0), (-h, 0.0)),
        "+i" | "i" => ((h, 0.0), (0.0, h)),
        "-i" => ((h, 0.0), (0.0, -h)),
        other => return Err(usage(format!("--factors: unknown single-qubit label {other:?}"))),
    };
    Ok([Complex64::new(a.0, a.1), Complex64::new(b.0, b.1)])
}

fn build_state(args: &GenerateArgs) -> CliResult<LoadedState> {
    let name = args.name;
    let seed = Seed(args.seed.unwrap_or(0));
    let flag = |f: &'static str| move |e: mtangle::Error| usage(format!("{f}: {e}"));
    let state = match name {
        StateName::Ghz => {
            let m = qubits(require(args.m, "--m", name)?, MAX_PURE_QUBITS)?;
            LoadedState::Pure(generators::ghz(m).map_err(flag("--m"))?)
        }
        StateName::W => {
            let m = qubits(require(args.m, "--m", name)?, MAX_PURE_QUBITS)?;
            LoadedState::Pure(generators::w_state(m).map_err(flag("--m"))?)
        }
        StateName::Bell => {
            let index = require(args.index, "--index", name)?;
            LoadedState::Pure(generators::bell(index).map_err(flag("--index"))?)
        }
        StateName::Product => {
            let list = args
                .factors
                .as_deref()
                .ok_or_else(|| usage("--factors is required for Product"))?;
            let factors = list.split(',').map(factor).collect::<CliResult<Vec<_>>>()?;
            if let Some(m) = args.m {
                if m != factors.len() {
                    return Err(usage(format!("--m: {m} does not match {} factors", factors.len())));
                }
            }
            qubits(factors.len(), MAX_PURE_QUBITS)?;
            LoadedState::Pure(generators::product(&factors).map_err(flag("--factors"))?)
        }
        StateName::Basis => {
            let bits = args.bits.as_deref().ok_or_else(|| usage("--bits is required for Basis"))?;
            qubits(bits.len(), MAX_PURE_QUBITS).map_err(|_| usage(format!("--bits: {bits:?} has the wrong length")))?;
            LoadedState::Pure(generators::basis(bits).map_err(flag("--bits"))?)
        }
        StateName::RandomPure => {
            let m = qubits(require(args.m, "--m", name)?, MAX_PURE_QUBITS)?;
            LoadedState::Pure(generators::random_pure(m, seed).map_err(flag("--m"))?)
        }
        StateName::RandomMixed => {
            let m = qubits(require(args.m, "--m", name)?, MAX_DENSE_QUBITS)?;
            let rank = args.rank.unwrap_or(1 << m);
            LoadedState::Mixed(generators::random_mixed(m, rank, seed).map_err(flag("--rank"))?)
        }
    };
    Ok(state)
}

/// `generate`: writes the state file and prints basic invariant checks.
pub fn generate(args: &GenerateArgs, out: &mut dyn Write) -> CliResult<()> {
    let state = build_state(args)?;
    let file = match &state {
        LoadedState::Pure(s) => StateFile::from_pure(s),
        LoadedState::Mixed(r) => StateFile::from_mixed(r),
    };
    let text = file.to_text();
    let mut checks = String::new();
    match &state {
        LoadedState::Pure(s) => {
            checks += &format!("kind      pure\nm         {}\n", s.num_qubits());
            checks += &format!("norm^2    {:.17}\n", s.norm_sqr());
            if s.num_qubits() <= MAX_DENSE_QUBITS {
                let product = s.is_product(1e-10);
                checks += &format!("product   {product}\n");
            }
        }
        LoadedState::Mixed(r) => {
            let tr = r.matrix().trace().map_err(input)?;
            checks += &format!("kind      mixed\nm         {}\n", r.num_qubits());
            checks += &format!("trace     {:.17}\n", tr.re);
            checks += &format!("purity    {:.17}\n", r.purity());
            checks += &format!("hermitian {}\n", r.matrix().is_hermitian(1e-10));
        }
    }
    match &args.out {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| input(format!("cannot write {}: {e}", path.display())))?;
            writeln!(out, "wrote {}", path.display())?;
            write!(out, "{checks}")?;
        }
        None => {
            write!(out, "{text}")?;
            eprint!("{checks}");
        }
    }
    Ok(())
}

fn phase_specs(text: Option<&str>, m: usize) -> CliResult<MultiPhases> {
    let angles = match text {
        None => vec![FRAC_PI_2],
        Some(t) => parse_angles(t).map_err(|e| usage(format!("--phases: {e}")))?,
    };
    let specs = match angles.len() {
        1 => MultiPhases::uniform_qubits(m, angles[0]),
        n if n == m => MultiPhases::qubits(&angles),
        n => return Err(usage(format!("--phases: {n} angles for {m} qubits"))),
    };
    specs.map_err(|e| usage(format!("--phases: {e}")))
}

/// Builds the report `compute` prints.
pub fn compute_report(
    id: &str,
    state: &LoadedState,
    measures: &[Measure],
    phases: Option<&str>,
) -> CliResult<Report> {
    let wanted = |m: Measure| measures.is_empty() || measures.contains(&m);
    let m = state.num_qubits();
    if m > MAX_DENSE_QUBITS {
        return Err(input(format!("m = {m} exceeds the dense limit of {MAX_DENSE_QUBITS} qubits")));
    }
    let specs = phase_specs(phases, m)?;
    let mut report = match state {
        LoadedState::Pure(s) => verify_identities(id, s),
        LoadedState::Mixed(r) => verify_identities(id, r),
    }
    .map_err(input)?;
    report.gamma = Some(
        match state {
            LoadedState::Pure(s) => gamma_pure(s, &specs),
            LoadedState::Mixed(r) => gamma_mixed(r, &specs),
        }
        .map_err(input)?,
    );
    if wanted(Measure::Tangle) {
        match state {
            LoadedState::Pure(_) if m % 2 == 1 => {
                eprintln!("warning: m = {m} is odd; the m-tangle vanishes identically");
            }
            LoadedState::Mixed(_) => eprintln!("note: tangle is defined for pure input only"),
            _ => {}
        }
    } else {
        report.tau_m = None;
    }
    let keep = |flag: bool, v: &mut Option<f64>| {
        if !flag {
            *v = None;
        }
    };
    keep(wanted(Measure::S2), &mut report.s2);
    keep(wanted(Measure::Purity), &mut report.purity);
    keep(wanted(Measure::Hs), &mut report.hs_dist_sq);
    keep(wanted(Measure::Symmetry), &mut report.symmetry_measure);
    keep(wanted(Measure::Gamma), &mut report.gamma);
    Ok(report)
}

fn render_table(report: &Report) -> String {
    let mut s = format!("state             {} (m = {})\n", report.state, report.m);
    let rows = [
        ("tangle", report.tau_m),
        ("s2", report.s2),
        ("purity", report.purity),
        ("hs", report.hs_dist_sq),
        ("symmetry", report.symmetry_measure),
        ("gamma", report.gamma),
    ];
    for (name, value) in rows {
        if let Some(v) = value {
            s += &format!("{name:<17} {v:.15}\n");
        }
    }
    s += "residuals (uniform pi/2 phases)\n";
    for (name, v) in &report.residuals {
        s += &format!("  {name:<38} {v:.3e}\n");
    }
    s
}

/// `compute`: prints a measure report as a table or JSON.
pub fn compute(args: &ComputeArgs, out: &mut dyn Write) -> CliResult<()> {
    let state = load_path(&args.input)?;
    let id = args.input.display().to_string();
    let report = compute_report(&id, &state, &args.measures, args.phases.as_deref())?;
    if args.json {
        let json = serde_json::to_string_pretty(&report).map_err(input)?;
        writeln!(out, "{json}")?;
    } else {
        write!(out, "{}", render_table(&report))?;
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct SweepRow {
    phase: f64,
    gamma: f64,
}

/// `sweep`: CSV of Γ_m at uniform phases `2πj/grid`.
pub fn sweep(args: &SweepArgs, out: &mut dyn Write) -> CliResult<()> {
    if args.grid < 2 {
        return Err(usage(format!("--grid: {} is below the minimum of 2", args.grid)));
    }
    let psi: State = match load_path(&args.input)? {
        LoadedState::Pure(s) => s,
        LoadedState::Mixed(_) => return Err(input("sweep needs a pure state file")),
    };
    if psi.num_qubits() > MAX_DENSE_QUBITS {
        return Err(input(format!("m = {} exceeds the dense limit", psi.num_qubits())));
    }
    let rows = gamma_sweep(&psi, args.grid).map_err(input)?;
    let sink: Box<dyn Write + '_> = match &args.out {
        Some(path) => Box::new(
            File::create(path).map_err(|e| input(format!("cannot write {}: {e}", path.display())))?,
        ),
        None => Box::new(&mut *out),
    };
    let mut writer = csv::Writer::from_writer(sink);
    for (phase, gamma) in rows {
        writer.serialize(SweepRow { phase, gamma }).map_err(input)?;
    }
    writer.flush()?;
    drop(writer);
    if let Some(path) = &args.out {
        writeln!(out, "wrote {} rows to {}", args.grid, path.display())?;
    }
    Ok(())
}

/// Points per phase for the positivity sample, keeping the grid near 4096 points.
fn sample_points(num_phases: usize, grid: usize) -> usize {
    if num_phases == 0 {
        return 1;
    }
    let fits = |p: usize| p.checked_pow(num_phases as u32).is_some_and(|t| t <= 4096);
    let cap = (2..=16).take_while(|&p| fits(p)).last().unwrap_or(2);
    grid.min(cap).max(2)
}

/// `povm-check`: normalization, hermiticity and positivity diagnostics for Δ.
pub fn povm_check(args: &PovmCheckArgs, out: &mut dyn Write) -> CliResult<()> {
    let n = args.n;
    if n < 2 {
        return Err(usage(format!("--n: {n} is below the minimum of 2")));
    }
    if args.grid < 2 {
        return Err(usage(format!("--grid: {} is below the minimum of 2", args.grid)));
    }
    let num_phases = phase_count(n);
    let zero = Phases::uniform(n, 0.0).map_err(|e| usage(format!("--n: {e}")))?;
    let deviation = check_povm_normalization(&zero, args.grid).map_err(|e| usage(format!("--grid: {e}")))?;

    let per = sample_points(num_phases, args.grid);
    let total = per.pow(num_phases as u32);
    let step = std::f64::consts::TAU / per as f64;
    let mut herm_err = 0.0f64;
    let mut min_sample = f64::INFINITY;
    let mut angles = vec![0.0; num_phases];
    for flat in 0..total {
        let mut rest = flat;
        for a in angles.iter_mut() {
            *a = step * (rest % per) as f64;
            rest /= per;
        }
        let delta = delta_single(&Phases::from_upper(n, &angles).map_err(input)?);
        herm_err = herm_err.max(delta.max_abs_diff(&delta.dagger()).map_err(input)?);
        min_sample = min_sample.min(min_eigenvalue(&delta).map_err(input)?);
    }
    let min_pi2 = povm_min_eigenvalue(&Phases::uniform(n, FRAC_PI_2).map_err(input)?).map_err(input)?;
    let flag = |v: f64| if v < NEGATIVE_FLAG { "  NEGATIVE (not positive semidefinite)" } else { "" };

    writeln!(out, "N                                 {n}")?;
    writeln!(out, "phases per element                {num_phases}")?;
    writeln!(out, "normalization deviation           {deviation:.3e}  (grid {}^{num_phases})", args.grid)?;
    writeln!(out, "hermiticity max error             {herm_err:.3e}  ({total} samples)")?;
    writeln!(out, "min eigenvalue, uniform pi/2      {min_pi2:.15}{}", flag(min_pi2))?;
    writeln!(out, "min eigenvalue, sampled phases    {min_sample:.15}{}", flag(min_sample))?;
    Ok(())
}

pub(crate) fn map_lib(e: mtangle::Error) -> CliError {
    input(e)
}
