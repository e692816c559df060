//! Verification suites and solvers driven by the CLI.

use std::collections::BTreeMap;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;
use serde_json::{json, Value};

use purespin::bilinear::{theorem_audit, PairingMode};
use purespin::clifford::{build_gamma_rep, Signature, MAX_HALF_DIM};
use purespin::constants::{monte_carlo_volume, wyler_alpha_with, Domain, WylerInputs, EXPERIMENTAL_INVERSE_ALPHA};
use purespin::field::{
    divergence_residuals, em_tensor, maxwell_residuals, minkowski_rep, quad_tensor, two_spinor_momentum,
    weyl_solutions, ResidualRecord, Sign,
};
use purespin::fock::{
    balmer_limit, balmer_ratios, levels_from_lambdas, nystrom_spectrum, self_consistency, solve_levels,
    solve_levels_quadrature, LambdaPath, NystromConfig, PhysicalConstants, SpectralResult,
};
use purespin::linalg::{max_abs, C64};
use purespin::seeds::{stream, SeedSplitter};
use purespin::spinor::{
    is_pure, null_plane_of, purity_constraint_count, random_chiral_spinor, random_pure_spinor, Chirality, Spinor,
};
use purespin::tolerance::{Tolerances, RANK_TOL};
use purespin::Momentum;

use crate::config::RunConfig;
use crate::output::csv_number;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Clifford,
    Purity,
    NullTheorem,
    Maxwell,
    Gravity,
    Fock,
    Wyler,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Clifford => "verify-clifford",
            Suite::Purity => "verify-purity",
            Suite::NullTheorem => "verify-null-theorem",
            Suite::Maxwell => "verify-maxwell",
            Suite::Gravity => "verify-gravity",
            Suite::Fock => "fock",
            Suite::Wyler => "wyler",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub suite: &'static str,
    pub passed: bool,
    pub config: Value,
    pub results: Value,
    pub failures: Vec<String>,
    pub csv: Option<String>,
}

pub const MAXWELL_TOL: f64 = 1e-10;
pub const COUNTEREXAMPLE_TOL: f64 = 1e-6;
pub const COUNTEREXAMPLE_FRACTION: f64 = 0.99;
pub const EIGENVALUE_TOL: f64 = 1e-8;
pub const NYSTROM_TOL: f64 = 1e-3;
pub const CONSISTENCY_TOL: f64 = 1e-10;
pub const WYLER_TOL: f64 = 1e-4;
pub const MONTE_CARLO_AGREEMENT: f64 = 1e-2;
pub const ROUND_TRIP_TOL: f64 = 1e-12;

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn require_range(n: usize, lo: usize, hi: usize) -> Result<usize, CliError> {
    if (lo..=hi).contains(&n) {
        Ok(n)
    } else {
        Err(CliError::Config(format!("n out of supported range {lo}..={hi}, got {n}")))
    }
}

fn required_count(trials: usize, fraction: f64) -> usize {
    (fraction * trials as f64).ceil() as usize
}

pub fn run(suite: Suite, cfg: &RunConfig) -> Result<SuiteOutcome, CliError> {
    let (results, failures, csv) = match suite {
        Suite::Clifford => clifford(cfg)?,
        Suite::Purity => purity(cfg)?,
        Suite::NullTheorem => null_theorem(cfg)?,
        Suite::Maxwell => maxwell(cfg)?,
        Suite::Gravity => gravity(cfg)?,
        Suite::Fock => fock(cfg)?,
        Suite::Wyler => wyler(cfg)?,
    };
    Ok(SuiteOutcome {
        suite: suite.name(),
        passed: failures.is_empty(),
        config: to_value(cfg),
        results,
        failures,
        csv,
    })
}

type Parts = (Value, Vec<String>, Option<String>);

fn clifford(cfg: &RunConfig) -> Result<Parts, CliError> {
    let tol = cfg.tol.unwrap_or(cfg.tolerances.identity);
    let ns: Vec<usize> = match cfg.n {
        Some(n) => vec![require_range(n, 1, MAX_HALF_DIM)?],
        None => (1..=5).collect(),
    };
    let mut reps = Vec::new();
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    for &n in &ns {
        for sig in [Signature::euclidean(n), Signature::lorentzian(n), Signature::mostly_plus(n)] {
            let r = build_gamma_rep(n, sig)?.residuals();
            let ok = r.passes(tol, n);
            worst = worst.max(r.max_residual());
            if !ok {
                failures.push(format!("n={n} signature {sig}: max residual {:e}", r.max_residual()));
            }
            reps.push(json!({
                "n": n,
                "signature": sig.to_string(),
                "residuals": r,
                "max_residual": r.max_residual(),
                "passed": ok,
            }));
        }
    }
    Ok((
        json!({ "tolerance": tol, "max_residual": worst, "representations": reps }),
        failures,
        None,
    ))
}

fn purity(cfg: &RunConfig) -> Result<Parts, CliError> {
    let n = require_range(cfg.n.unwrap_or(4), 1, 5)?;
    let trials = cfg.trials.unwrap_or(1000);
    let tol = cfg.tol.unwrap_or(cfg.tolerances.rank);
    let rep = build_gamma_rep(n, Signature::euclidean(n))?;
    let splitter = SeedSplitter::new(cfg.seed);
    let (mut orbit_pure, mut generic_pure, mut generic_non_pure, mut ambiguous) = (0, 0, 0, 0);
    let mut dims: BTreeMap<String, usize> = BTreeMap::new();
    for t in 0..trials as u64 {
        let ch = if t % 2 == 0 { Chirality::Plus } else { Chirality::Minus };
        let orbit = random_pure_spinor(&rep, ch, splitter.seed(stream::PURE_SPINOR, t))?;
        match is_pure(&orbit, &rep, tol) {
            Ok(v) if v.pure => orbit_pure += 1,
            Ok(_) => {}
            Err(_) => ambiguous += 1,
        }
        let generic = random_chiral_spinor(&rep, ch, splitter.seed(stream::GENERIC_SPINOR, t));
        match null_plane_of(&generic, &rep, tol) {
            Ok(plane) => {
                *dims.entry(plane.dim.to_string()).or_default() += 1;
                if plane.dim == n {
                    generic_pure += 1;
                } else {
                    generic_non_pure += 1;
                }
            }
            Err(_) => ambiguous += 1,
        }
    }
    let constraints = purity_constraint_count(n)?;
    let mut failures = Vec::new();
    if orbit_pure != trials {
        failures.push(format!("spin-orbit samples pure {orbit_pure}/{trials}"));
    }
    if constraints == 0 && generic_pure != trials {
        failures.push(format!("generic samples pure {generic_pure}/{trials}, expected all"));
    }
    if constraints > 0 && generic_non_pure < required_count(trials, 0.99) {
        failures.push(format!("generic samples non-pure {generic_non_pure}/{trials}, expected at least 99%"));
    }
    Ok((
        json!({
            "n": n,
            "trials": trials,
            "rank_tolerance": tol,
            "constraint_count": constraints,
            "orbit_pure": orbit_pure,
            "generic_pure": generic_pure,
            "generic_non_pure": generic_non_pure,
            "ambiguous": ambiguous,
            "generic_null_dimensions": dims,
        }),
        failures,
        None,
    ))
}

fn null_theorem(cfg: &RunConfig) -> Result<Parts, CliError> {
    let n = require_range(cfg.n.unwrap_or(4), 1, 5)?;
    let trials = cfg.trials.unwrap_or(1000);
    let tol = Tolerances {
        null: cfg.tol.unwrap_or(cfg.tolerances.null),
        ..cfg.tolerances
    };
    let audits = PairingMode::ALL
        .into_iter()
        .map(|mode| theorem_audit(n, trials, cfg.seed, mode, &tol))
        .collect::<Result<Vec<_>, _>>()?;
    let passed_modes: Vec<&str> = audits.iter().filter(|a| a.passed()).map(|a| a.pairing_mode.as_str()).collect();
    let mut failures = Vec::new();
    if passed_modes.is_empty() {
        for audit in &audits {
            for arm in audit.arms.iter().filter(|a| !a.verdict) {
                failures.push(format!(
                    "{} {}: null {}/{}, non-null {}/{}",
                    audit.pairing_mode.as_str(),
                    serde_json::to_value(arm.arm).unwrap().as_str().unwrap_or("?"),
                    arm.pass_count,
                    trials,
                    arm.fail_count,
                    trials
                ));
            }
        }
    }
    Ok((
        json!({
            "n": n,
            "trials": trials,
            "null_tolerance": tol.null,
            "non_null_tolerance": tol.non_null,
            "passing_pairings": passed_modes,
            "pairings": audits,
        }),
        failures,
        None,
    ))
}

fn gaussian<R: Rng>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// A unit-energy null momentum and `count` normalized members of its
/// Weyl solution space.
fn null_case(seed: u64, count: usize) -> Result<(Momentum, Vec<Spinor>), CliError> {
    let mut rng = purespin::seeds::rng_from(seed);
    let phi = [gaussian(&mut rng), gaussian(&mut rng)];
    let norm = (phi[0].norm_sqr() + phi[1].norm_sqr()).sqrt();
    let p = two_spinor_momentum([phi[0] / norm, phi[1] / norm])?;
    let sol = weyl_solutions(&p, &minkowski_rep(), RANK_TOL)?;
    let spinors = (0..count)
        .map(|_| {
            let coeffs: Vec<C64> = sol.spinors.iter().map(|_| gaussian(&mut rng)).collect();
            sol.combination(&coeffs).normalized()
        })
        .collect();
    Ok((p, spinors))
}

fn require_n2(cfg: &RunConfig, suite: &str) -> Result<(), CliError> {
    match cfg.n {
        None | Some(2) => Ok(()),
        Some(n) => Err(CliError::Config(format!("{suite} requires n = 2 (four dimensions), got {n}"))),
    }
}

fn record(equation: &str, p: &Momentum, seed: u64, norm: f64, tol: f64) -> ResidualRecord {
    ResidualRecord {
        equation: equation.to_string(),
        p: p.components().to_vec(),
        seed,
        residual_norm: norm,
        pass: norm <= tol,
    }
}

fn maxwell(cfg: &RunConfig) -> Result<Parts, CliError> {
    require_n2(cfg, "maxwell")?;
    let trials = cfg.trials.unwrap_or(100);
    let tol = cfg.tol.unwrap_or(MAXWELL_TOL);
    let rep = minkowski_rep();
    let splitter = SeedSplitter::new(cfg.seed);
    let mut records = Vec::new();
    let (mut vacuum, mut rank_two, mut counter_plus, mut counter_minus) = (0, 0, 0, 0);
    for t in 0..trials as u64 {
        let seed = splitter.seed(stream::MOMENTUM, t);
        let (p, psi) = null_case(seed, 1)?;
        let r = maxwell_residuals(&psi[0], &p, &rep, tol)?;
        vacuum += usize::from(r.vacuum);
        rank_two += usize::from(em_tensor(&psi[0], &rep, Sign::Plus)?.rank(cfg.tolerances.rank) == 2);
        records.push(record("maxwell_plus", &p, seed, r.plus_norm, tol));
        records.push(record("maxwell_minus", &p, seed, r.minus_norm, tol));
        let generic = random_chiral_spinor(&rep, Chirality::None, splitter.seed(stream::GENERIC_SPINOR, t));
        let g = maxwell_residuals(&generic, &p, &rep, tol)?;
        counter_plus += usize::from(g.plus_norm > COUNTEREXAMPLE_TOL);
        counter_minus += usize::from(g.minus_norm > COUNTEREXAMPLE_TOL);
    }
    let mut failures: Vec<String> = records
        .iter()
        .filter(|r| !r.pass)
        .map(|r| format!("{} seed {}: residual {:e}", r.equation, r.seed, r.residual_norm))
        .collect();
    if vacuum != trials {
        failures.push(format!("Weyl precondition held in {vacuum}/{trials} trials"));
    }
    let need = required_count(trials, COUNTEREXAMPLE_FRACTION);
    if counter_plus < need || counter_minus < need {
        failures.push(format!(
            "non-solutions exceeded {COUNTEREXAMPLE_TOL:e} in {counter_plus}/{trials} (+) and {counter_minus}/{trials} (-)"
        ));
    }
    let max = records.iter().map(|r| r.residual_norm).fold(0.0, f64::max);
    Ok((
        json!({
            "trials": trials,
            "tolerance": tol,
            "max_residual": max,
            "vacuum_count": vacuum,
            "rank_two_count": rank_two,
            "counterexample_tolerance": COUNTEREXAMPLE_TOL,
            "counterexample_plus": counter_plus,
            "counterexample_minus": counter_minus,
            "records": records,
        }),
        failures,
        None,
    ))
}

fn gravity(cfg: &RunConfig) -> Result<Parts, CliError> {
    require_n2(cfg, "gravity")?;
    let trials = cfg.trials.unwrap_or(100);
    let tol = cfg.tol.unwrap_or(MAXWELL_TOL);
    let swap_tol = cfg.tolerances.identity;
    let rep = minkowski_rep();
    let splitter = SeedSplitter::new(cfg.seed);
    let mut records = Vec::new();
    let (mut swap, mut max_rank, mut symmetric_rank_defect): (f64, usize, f64) = (0.0, 0, 0.0);
    for t in 0..trials as u64 {
        let seed = splitter.seed(stream::MOMENTUM, t);
        let (p, s) = null_case(seed, 4)?;
        let j = quad_tensor([&s[0], &s[1], &s[2], &s[3]], &rep)?;
        let d = divergence_residuals(&j, &p)?;
        records.push(record("divergence_first", &p, seed, d.first_norm, tol));
        records.push(record("divergence_second", &p, seed, d.second_norm, tol));
        let k = quad_tensor([&s[2], &s[3], &s[0], &s[1]], &rep)?;
        swap = swap.max(max_abs(&(&j.j - k.j.transpose())));
        max_rank = max_rank.max(j.rank(cfg.tolerances.rank));
        symmetric_rank_defect = symmetric_rank_defect.max(j.rank_one_defect());
        let g: Vec<Spinor> = (0..4u64)
            .map(|q| random_chiral_spinor(&rep, Chirality::None, splitter.seed(stream::GENERIC_SPINOR, 4 * t + q)))
            .collect();
        let jg = quad_tensor([&g[0], &g[1], &g[2], &g[3]], &rep)?;
        let kg = quad_tensor([&g[2], &g[3], &g[0], &g[1]], &rep)?;
        swap = swap.max(max_abs(&(&jg.j - kg.j.transpose())));
        max_rank = max_rank.max(jg.rank(cfg.tolerances.rank));
    }
    let mut failures: Vec<String> = records
        .iter()
        .filter(|r| !r.pass)
        .map(|r| format!("{} seed {}: residual {:e}", r.equation, r.seed, r.residual_norm))
        .collect();
    if swap > swap_tol {
        failures.push(format!("swap symmetry defect {swap:e} above {swap_tol:e}"));
    }
    if max_rank > 1 {
        failures.push(format!("tensor rank {max_rank} above 1"));
    }
    let max = records.iter().map(|r| r.residual_norm).fold(0.0, f64::max);
    Ok((
        json!({
            "trials": trials,
            "tolerance": tol,
            "max_residual": max,
            "swap_defect": swap,
            "swap_tolerance": swap_tol,
            "max_rank": max_rank,
            "max_rank_one_defect": symmetric_rank_defect,
            "labels": ["neutron", "proton", "lepton", "neutrino"],
            "records": records,
        }),
        failures,
        None,
    ))
}

fn spectrum_csv(result: &SpectralResult) -> String {
    let mut s = String::from("n,lambda_n,degeneracy,p0,E_n_eV\n");
    for l in &result.levels {
        s.push_str(&format!(
            "{},{},{},{},{}\n",
            l.n,
            csv_number(l.lambda_n),
            l.degeneracy,
            csv_number(l.p0),
            csv_number(l.energy_ev)
        ));
    }
    s
}

fn fock(cfg: &RunConfig) -> Result<Parts, CliError> {
    let consts = PhysicalConstants::codata(cfg.vintage, cfg.mass);
    let analytic = solve_levels(cfg.nmax, &consts)?;
    let quadrature = solve_levels_quadrature(cfg.nmax, &consts, cfg.quad_points)?;
    let eig_tol = cfg.tol.unwrap_or(EIGENVALUE_TOL);
    let eig_err = quadrature
        .levels
        .iter()
        .map(|l| (l.lambda_n * l.n as f64 - 1.0).abs())
        .fold(0.0, f64::max);
    let mut failures = Vec::new();
    if eig_err > eig_tol {
        failures.push(format!("max |n lambda_n - 1| = {eig_err:e} above {eig_tol:e}"));
    }
    if !quadrature.is_monotone() {
        failures.push("quadrature eigenvalues are not decreasing".into());
    }

    let balmer = if cfg.nmax >= 3 {
        let lines = balmer_ratios(&analytic)?;
        if lines.iter().any(|l| l.exact.is_none()) {
            failures.push("analytic Balmer ratios lost exactness".into());
        }
        to_value(&lines)
    } else {
        Value::Null
    };

    let ny_cfg = NystromConfig::new(cfg.grid, cfg.nprobe);
    let ny = nystrom_spectrum(&ny_cfg)?;
    let ny_levels = levels_from_lambdas(&ny.eigenvalues(), &consts, LambdaPath::Supplied)?;
    if ny.max_relative_error() > NYSTROM_TOL {
        failures.push(format!(
            "Nystrom eigenvalues off by {:e} relative (grid {})",
            ny.max_relative_error(),
            cfg.grid
        ));
    }
    if !ny.multiplicities_match() {
        let m: Vec<usize> = ny.clusters.iter().map(|c| c.multiplicity).collect();
        failures.push(format!("Nystrom cluster multiplicities {m:?} differ from n^2"));
    }
    if ny_levels.scaling_defect() > NYSTROM_TOL {
        failures.push(format!("Nystrom E_n n^2 spread {:e}", ny_levels.scaling_defect()));
    }

    let consistency = (1..=cfg.nmax.min(6))
        .map(|n| self_consistency(n, &consts, cfg.seed, cfg.quad_points))
        .collect::<Result<Vec<_>, _>>()?;
    for c in consistency.iter().filter(|c| c.max_error > CONSISTENCY_TOL) {
        failures.push(format!("self-consistency at n={} off by {:e}", c.n, c.max_error));
    }
    let consistency_summary: Vec<Value> = consistency
        .iter()
        .map(|c| json!({ "n": c.n, "samples": c.samples.len(), "coupling": c.coupling, "max_error": c.max_error }))
        .collect();
    let limit = balmer_limit();

    let csv = spectrum_csv(&analytic);
    Ok((
        json!({
            "constants": consts,
            "vintage": consts.vintage.as_str(),
            "analytic": {
                "levels": analytic.levels,
                "scaling_defect": analytic.scaling_defect(),
            },
            "quadrature": {
                "quad_points": cfg.quad_points,
                "max_eigenvalue_error": eig_err,
                "tolerance": eig_tol,
                "levels": quadrature.levels,
            },
            "balmer": balmer,
            "balmer_limit": format!("{}/{}", limit.numer(), limit.denom()),
            "nystrom": {
                "grid_size": ny.config.grid_size,
                "n_probe": ny.config.n_probe,
                "subtraction_order": ny.config.subtraction_order,
                "points": ny.points,
                "azimuth_points": ny.azimuth_points,
                "chi_rule": "gauss-legendre in cos(chi)",
                "theta_rule": "gauss-legendre in cos(theta)",
                "clusters": ny.clusters,
                "separator": ny.separator,
                "lambda1_error": ny.lambda1_error(),
                "scaling_defect": ny_levels.scaling_defect(),
            },
            "self_consistency": consistency_summary,
        }),
        failures,
        Some(csv),
    ))
}

fn wyler(cfg: &RunConfig) -> Result<Parts, CliError> {
    let mut inputs = WylerInputs::default();
    for (k, v) in &cfg.volume_overrides {
        inputs = inputs.with_override(k, *v)?;
    }
    let report = wyler_alpha_with(&inputs);
    let tol = cfg.tol.unwrap_or(WYLER_TOL);
    let splitter = SeedSplitter::new(cfg.seed);
    let mc = monte_carlo_volume(Domain::S4, cfg.mc_samples, splitter.seed(stream::MONTE_CARLO, 0))?;
    let agreement = (mc.value / Domain::S4.closed_form() - 1.0).abs();
    let mut failures = Vec::new();
    if !report.in_expected_range {
        failures.push(format!("1/alpha = {} outside [137.0, 137.1]", report.inverse_alpha));
    }
    if report.delta_vs_experiment.relative.abs() > tol {
        failures.push(format!(
            "relative deviation from {EXPERIMENTAL_INVERSE_ALPHA} is {:e}",
            report.delta_vs_experiment.relative
        ));
    }
    if report.round_trip_residual > ROUND_TRIP_TOL {
        failures.push(format!("round trip residual {:e}", report.round_trip_residual));
    }
    if agreement > MONTE_CARLO_AGREEMENT {
        failures.push(format!("Monte Carlo S4 volume disagrees by {agreement:e}"));
    }
    let mut results = to_value(&report);
    let obj = results.as_object_mut().expect("report is an object");
    obj.insert("tolerance".into(), json!(tol));
    obj.insert(
        "monte_carlo".into(),
        json!({ "volume": mc, "relative_agreement": agreement, "tolerance": MONTE_CARLO_AGREEMENT }),
    );
    Ok((results, failures, None))
}
