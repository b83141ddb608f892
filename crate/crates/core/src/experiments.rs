//! Monte-Carlo harness: single protocol runs, parameter sweeps, and
//! replication of the reference experiment's summary table.
//!
//! Determinism contract: every randomized entry point takes an explicit
//! seed, per-trial seeds derive from (master seed, axis value, trial index),
//! and parallel aggregation is order-independent, so identical inputs give
//! byte-identical outputs at any thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::adversary::{certify_no_instance, resolve_phases, AdversaryStrategy};
use crate::error::{Error, Result};
use crate::photonics::{click_probabilities, ClickProbabilities, OpticalParams};
use crate::protocol::{
    arthur_assign, arthur_measure, arthur_measure_vacuum, arthur_verdict, chernoff_bounds,
    classical_cost, merlin_encode, p_no_bound, p_yes, thresholds, PartialAssignment,
    ProtocolParams, Provenance,
};
use crate::satgen::Formula;

/// Interferometer visibility of the reference experiment's typical row.
pub const NOMINAL_NU: f64 = 0.93;
/// Mean photon number used for the gap-vs-N analysis.
pub const NOMINAL_MU: f64 = 1.31;
/// Trials per sweep grid point unless the caller says otherwise.
pub const DEFAULT_TRIALS_PER_POINT: usize = 100;
/// Trials per row for table replication.
pub const DEFAULT_TABLE1_TRIALS: usize = 1000;

/// Derives an independent per-trial seed from the master seed, the sweep
/// axis value, and the trial index (splitmix64-style finalizer chain).
pub fn derive_seed(master: u64, axis: u64, trial: u64) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9e3779b97f4a7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }
    mix(master ^ mix(axis ^ mix(trial)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Honest,
    Adversary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Accept,
    Reject,
}

/// One protocol run, shaped like a row of the reference experiment's table.
/// The Chernoff fields are absent when the parameter point has no advantage
/// ordering (T_C ≤ T_S).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub n: usize,
    pub nu: f64,
    pub mu: f64,
    pub total_single_clicks: usize,
    pub correct_clicks: usize,
    pub double_clicks: usize,
    /// n − total_single_clicks: bits the verifier still lacks.
    pub missing_bits: usize,
    pub threshold: f64,
    pub satisfied_clauses: usize,
    pub verdict: Verdict,
    pub completeness_lb: Option<f64>,
    pub soundness_ub: Option<f64>,
    pub gap: Option<f64>,
    pub log2_classical_ops: f64,
    pub seed: u64,
    pub role: Role,
}

/// How a trial gets its satisfied-clause count.
#[derive(Debug, Clone, Copy)]
pub enum RunMode<'a> {
    /// Full pipeline on a planted instance: encode, measure, assign, verdict.
    Instance(&'a Formula),
    /// No instance: a uniform random proof is measured and the satisfied
    /// count is estimated from the observed click rates.
    AssignmentLevel,
}

/// Expected satisfied-clause count from observed click counts: the clause
/// probability evaluated at rates p_c = c_clk/n, p_w = (s_clk−c_clk)/n,
/// p_dc = dc_clk/n, scaled by m and rounded.
pub fn assignment_level_satisfied(
    n: usize,
    m: usize,
    s_clk: usize,
    c_clk: usize,
    dc_clk: usize,
) -> Result<usize> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidInput("n and m must be at least 1".into()));
    }
    if c_clk > s_clk {
        return Err(Error::InvalidInput(format!(
            "correct clicks {c_clk} exceed single clicks {s_clk}"
        )));
    }
    if s_clk + dc_clk > n {
        return Err(Error::InvalidInput(format!(
            "click counts {s_clk} + {dc_clk} exceed n = {n}"
        )));
    }
    let nf = n as f64;
    let p_c = c_clk as f64 / nf;
    let p_w = (s_clk - c_clk) as f64 / nf;
    let p_dc = dc_clk as f64 / nf;
    let rates = ClickProbabilities {
        p_c,
        p_w,
        p_dc,
        p_none: 1.0 - p_c - p_w - p_dc,
        p_h: p_c + p_w + p_dc,
        p_d: 0.0,
    };
    Ok((m as f64 * p_yes(&rates)).round() as usize)
}

struct TrialAnalytics {
    t: f64,
    completeness_lb: Option<f64>,
    soundness_ub: Option<f64>,
    gap: Option<f64>,
}

fn trial_analytics(params: &ProtocolParams<f64>) -> Result<TrialAnalytics> {
    let clicks = click_probabilities(&params.optical)?;
    let p_y = p_yes(&clicks);
    let p_n = p_no_bound(&clicks, params.delta)?;
    let (t_c, t_s, t) = thresholds(p_y, p_n, params.m)?;
    let (completeness_lb, soundness_ub, gap) = match chernoff_bounds(t_c, t_s) {
        Ok((c, s)) => (Some(c), Some(s), Some(c - s)),
        Err(Error::NoAdvantage(_)) => (None, None, None),
        Err(e) => return Err(e),
    };
    Ok(TrialAnalytics {
        t,
        completeness_lb,
        soundness_ub,
        gap,
    })
}

struct ClickTally {
    singles: usize,
    correct: usize,
    doubles: usize,
}

fn tally(pa: &PartialAssignment, phases: Option<&[bool]>) -> ClickTally {
    let mut t = ClickTally {
        singles: 0,
        correct: 0,
        doubles: 0,
    };
    for (k, p) in pa.provenance.iter().enumerate() {
        match p {
            Provenance::SingleClick => {
                t.singles += 1;
                if let Some(ph) = phases {
                    if pa.values[k] == Some(ph[k]) {
                        t.correct += 1;
                    }
                }
            }
            Provenance::DoubleRandom => t.doubles += 1,
            Provenance::Undefined => {}
        }
    }
    t
}

fn build_report(
    params: &ProtocolParams<f64>,
    analytics: &TrialAnalytics,
    tally: &ClickTally,
    satisfied: usize,
    seed: u64,
    role: Role,
) -> Result<RunReport> {
    let cost = classical_cost(params.n, tally.singles, params.gamma)?;
    Ok(RunReport {
        n: params.n,
        nu: params.optical.nu,
        mu: params.optical.mu,
        total_single_clicks: tally.singles,
        correct_clicks: tally.correct,
        double_clicks: tally.doubles,
        missing_bits: params.n - tally.singles,
        threshold: analytics.t,
        satisfied_clauses: satisfied,
        verdict: if satisfied as f64 >= analytics.t {
            Verdict::Accept
        } else {
            Verdict::Reject
        },
        completeness_lb: analytics.completeness_lb,
        soundness_ub: analytics.soundness_ub,
        gap: analytics.gap,
        log2_classical_ops: cost.log2_ops,
        seed,
        role,
    })
}

/// Runs one honest trial. Instance mode requires the formula's planted
/// witness (the honest prover knows the solution) and matching sizes;
/// assignment-level mode draws a uniform random proof.
pub fn run_trial(params: &ProtocolParams<f64>, mode: RunMode, seed: u64) -> Result<RunReport> {
    params.validate()?;
    let analytics = trial_analytics(params)?;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    match mode {
        RunMode::Instance(f) => {
            if f.n() != params.n || f.m() != params.m {
                return Err(Error::InvalidInput(format!(
                    "instance is ({}, {}) but params expect (n, m) = ({}, {})",
                    f.n(),
                    f.m(),
                    params.n,
                    params.m
                )));
            }
            let planted = f.planted().ok_or_else(|| {
                Error::InvalidInput(
                    "instance mode runs the honest prover and needs a planted witness".into(),
                )
            })?;
            let phases = merlin_encode(planted, params.n)?;
            let trace = arthur_measure(&phases, &params.optical, &mut rng)?;
            let pa = arthur_assign(&trace, &mut rng);
            let verdict = arthur_verdict(&pa, f, analytics.t)?;
            let tally = tally(&pa, Some(&phases));
            build_report(params, &analytics, &tally, verdict.satisfied, seed, Role::Honest)
        }
        RunMode::AssignmentLevel => {
            let phases: Vec<bool> = (0..params.n).map(|_| rng.gen()).collect();
            let trace = arthur_measure(&phases, &params.optical, &mut rng)?;
            let pa = arthur_assign(&trace, &mut rng);
            let tally = tally(&pa, Some(&phases));
            let satisfied = assignment_level_satisfied(
                params.n,
                params.m,
                tally.singles,
                tally.correct,
                tally.doubles,
            )?;
            build_report(params, &analytics, &tally, satisfied, seed, Role::Honest)
        }
    }
}

/// Runs one dishonest trial against a NO instance (same promise checks as
/// `empirical_soundness`). Correct clicks count agreement with the phases
/// the adversary actually sent; the vacuum strategy sends none, so there
/// its correct-click count is zero.
pub fn run_trial_adversary(
    params: &ProtocolParams<f64>,
    f: &Formula,
    strategy: &AdversaryStrategy,
    seed: u64,
) -> Result<RunReport> {
    params.validate()?;
    if f.n() != params.n || f.m() != params.m {
        return Err(Error::InvalidInput(format!(
            "instance is ({}, {}) but params expect (n, m) = ({}, {})",
            f.n(),
            f.m(),
            params.n,
            params.m
        )));
    }
    certify_no_instance(f, params.delta)?;
    let analytics = trial_analytics(params)?;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let phases = resolve_phases(f, strategy, params.n, &mut rng)?;
    let trace = match &phases {
        Some(p) => arthur_measure(p, &params.optical, &mut rng)?,
        None => arthur_measure_vacuum(params.n, &params.optical, &mut rng)?,
    };
    let pa = arthur_assign(&trace, &mut rng);
    let verdict = arthur_verdict(&pa, f, analytics.t)?;
    let tally = tally(&pa, phases.as_deref());
    build_report(
        params,
        &analytics,
        &tally,
        verdict.satisfied,
        seed,
        Role::Adversary,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepAxis {
    /// Mean photon number; grid values replace `fixed.optical.mu`.
    Mu,
    /// Instance size; grid values replace n and m together (m = n).
    N,
}

/// A sweep: assignment-level trials at each grid value of one axis, with the
/// analytic bounds evaluated alongside.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    /// Strictly increasing, nonempty.
    pub grid: Vec<f64>,
    /// Parameters shared by every point; the swept field is overwritten.
    pub fixed: ProtocolParams<f64>,
    pub trials: usize,
    pub seed: u64,
}

/// One sweep grid point: analytic curves plus empirical means with the
/// 2·√clicks error-bar convention. Chernoff fields are absent where the
/// point has no advantage ordering.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub axis_value: f64,
    #[serde(rename = "p_Y")]
    pub p_y: f64,
    #[serde(rename = "p_N")]
    pub p_n: f64,
    #[serde(rename = "T_C")]
    pub t_c: f64,
    #[serde(rename = "T_S")]
    pub t_s: f64,
    #[serde(rename = "T")]
    pub t: f64,
    pub completeness_lb: Option<f64>,
    pub soundness_ub: Option<f64>,
    pub gap: Option<f64>,
    pub mean_single_clicks: f64,
    pub err_single_clicks: f64,
    pub mean_double_clicks: f64,
    pub err_double_clicks: f64,
    pub mean_satisfied_clauses: f64,
    pub accept_frequency: f64,
}

fn sweep_point_params(spec: &SweepSpec, value: f64) -> Result<ProtocolParams<f64>> {
    let mut p = spec.fixed;
    match spec.axis {
        SweepAxis::Mu => {
            if value.is_nan() || value <= 0.0 {
                return Err(Error::InvalidInput(format!(
                    "mu grid values must be positive, got {value}"
                )));
            }
            p.optical.mu = value;
        }
        SweepAxis::N => {
            if value < 1.0 || value.fract() != 0.0 {
                return Err(Error::InvalidInput(format!(
                    "n grid values must be positive integers, got {value}"
                )));
            }
            p.n = value as usize;
            p.m = value as usize;
        }
    }
    p.validate()?;
    Ok(p)
}

fn axis_bits(axis: SweepAxis, value: f64) -> u64 {
    match axis {
        SweepAxis::Mu => value.to_bits(),
        SweepAxis::N => value as u64,
    }
}

/// Runs the sweep: one row per grid value, `spec.trials` assignment-level
/// trials each, seeded by `derive_seed(spec.seed, axis value, trial)`.
pub fn sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    if spec.grid.is_empty() {
        return Err(Error::InvalidInput("sweep grid is empty".into()));
    }
    if !spec.grid.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::InvalidInput(
            "sweep grid must be strictly increasing".into(),
        ));
    }
    if spec.trials == 0 {
        return Err(Error::InvalidInput("trials must be at least 1".into()));
    }
    spec.grid
        .iter()
        .map(|&value| {
            let params = sweep_point_params(spec, value)?;
            let clicks = click_probabilities(&params.optical)?;
            let p_y = p_yes(&clicks);
            let p_n = p_no_bound(&clicks, params.delta)?;
            let (t_c, t_s, t) = thresholds(p_y, p_n, params.m)?;
            let (completeness_lb, soundness_ub, gap) = match chernoff_bounds(t_c, t_s) {
                Ok((c, s)) => (Some(c), Some(s), Some(c - s)),
                Err(Error::NoAdvantage(_)) => (None, None, None),
                Err(e) => return Err(e),
            };
            let seeds: Vec<u64> = (0..spec.trials)
                .map(|trial| derive_seed(spec.seed, axis_bits(spec.axis, value), trial as u64))
                .collect();
            let reports: Vec<RunReport> = seeds
                .par_iter()
                .map(|&seed| run_trial(&params, RunMode::AssignmentLevel, seed))
                .collect::<Result<_>>()?;
            let tf = spec.trials as f64;
            let mean_single_clicks =
                reports.iter().map(|r| r.total_single_clicks as f64).sum::<f64>() / tf;
            let mean_double_clicks =
                reports.iter().map(|r| r.double_clicks as f64).sum::<f64>() / tf;
            let mean_satisfied_clauses =
                reports.iter().map(|r| r.satisfied_clauses as f64).sum::<f64>() / tf;
            let accept_frequency = reports
                .iter()
                .filter(|r| r.verdict == Verdict::Accept)
                .count() as f64
                / tf;
            Ok(SweepRow {
                axis_value: value,
                p_y,
                p_n,
                t_c,
                t_s,
                t,
                completeness_lb,
                soundness_ub,
                gap,
                mean_single_clicks,
                err_single_clicks: 2.0 * mean_single_clicks.sqrt(),
                mean_double_clicks,
                err_double_clicks: 2.0 * mean_double_clicks.sqrt(),
                mean_satisfied_clauses,
                accept_frequency,
            })
        })
        .collect()
}

const SWEEP_CSV_HEADER: &str = "axis_value,p_Y,p_N,T_C,T_S,T,completeness_lb,soundness_ub,gap,\
mean_single_clicks,err_single_clicks,mean_double_clicks,err_double_clicks,\
mean_satisfied_clauses,accept_frequency";

fn opt_cell(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Renders sweep rows as CSV: header row, one line per grid point, LF
/// endings, shortest round-trip decimals, absent Chernoff fields as empty
/// cells.
pub fn sweep_to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.axis_value,
            r.p_y,
            r.p_n,
            r.t_c,
            r.t_s,
            r.t,
            opt_cell(r.completeness_lb),
            opt_cell(r.soundness_ub),
            opt_cell(r.gap),
            r.mean_single_clicks,
            r.err_single_clicks,
            r.mean_double_clicks,
            r.err_double_clicks,
            r.mean_satisfied_clauses,
            r.accept_frequency,
        ));
    }
    out
}

/// Parses `sweep_to_csv` output. Errors carry 1-based line numbers.
pub fn sweep_from_csv(text: &str) -> Result<Vec<SweepRow>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h == SWEEP_CSV_HEADER => {}
        Some((_, h)) => {
            return Err(Error::Parse {
                line: 1,
                msg: format!("unexpected sweep CSV header: {h}"),
            })
        }
        None => {
            return Err(Error::Parse {
                line: 1,
                msg: "empty sweep CSV".into(),
            })
        }
    }
    let mut rows = Vec::new();
    for (idx, raw) in lines {
        let line = idx + 1;
        let cells: Vec<&str> = raw.split(',').collect();
        if cells.len() != 15 {
            return Err(Error::Parse {
                line,
                msg: format!("expected 15 cells, got {}", cells.len()),
            });
        }
        let req = |cell: &str| -> Result<f64> {
            cell.parse::<f64>().map_err(|e| Error::Parse {
                line,
                msg: format!("bad number {cell:?}: {e}"),
            })
        };
        let opt = |cell: &str| -> Result<Option<f64>> {
            if cell.is_empty() {
                Ok(None)
            } else {
                req(cell).map(Some)
            }
        };
        rows.push(SweepRow {
            axis_value: req(cells[0])?,
            p_y: req(cells[1])?,
            p_n: req(cells[2])?,
            t_c: req(cells[3])?,
            t_s: req(cells[4])?,
            t: req(cells[5])?,
            completeness_lb: opt(cells[6])?,
            soundness_ub: opt(cells[7])?,
            gap: opt(cells[8])?,
            mean_single_clicks: req(cells[9])?,
            err_single_clicks: req(cells[10])?,
            mean_double_clicks: req(cells[11])?,
            err_double_clicks: req(cells[12])?,
            mean_satisfied_clauses: req(cells[13])?,
            accept_frequency: req(cells[14])?,
        });
    }
    Ok(rows)
}

/// One row of the reference experiment's summary table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Table1Row {
    pub n: usize,
    pub nu: f64,
    pub mu: f64,
    pub single_clicks: usize,
    pub correct_clicks: usize,
    pub double_clicks: usize,
    pub missing_bits: usize,
    pub threshold: usize,
    pub satisfied_clauses: usize,
}

/// The reference experiment's published per-N rows (N = 5000..14000).
pub const TABLE1: [Table1Row; 10] = [
    Table1Row { n: 5000, nu: 0.87, mu: 1.29, single_clicks: 3657, correct_clicks: 3505, double_clicks: 964, missing_bits: 1343, threshold: 2254, satisfied_clauses: 2227 },
    Table1Row { n: 6000, nu: 0.93, mu: 1.30, single_clicks: 4834, correct_clicks: 4741, double_clicks: 719, missing_bits: 1166, threshold: 2717, satisfied_clauses: 3231 },
    Table1Row { n: 7000, nu: 0.94, mu: 1.34, single_clicks: 5670, correct_clicks: 5582, double_clicks: 848, missing_bits: 1330, threshold: 3232, satisfied_clauses: 3904 },
    Table1Row { n: 8000, nu: 0.92, mu: 1.29, single_clicks: 6203, correct_clicks: 6062, double_clicks: 1195, missing_bits: 1797, threshold: 3613, satisfied_clauses: 4030 },
    Table1Row { n: 9000, nu: 0.92, mu: 1.30, single_clicks: 6974, correct_clicks: 6813, double_clicks: 1363, missing_bits: 2026, threshold: 4088, satisfied_clauses: 4546 },
    Table1Row { n: 10000, nu: 0.95, mu: 1.15, single_clicks: 8045, correct_clicks: 7929, double_clicks: 947, missing_bits: 1955, threshold: 4111, satisfied_clauses: 5082 },
    Table1Row { n: 11000, nu: 0.93, mu: 1.30, single_clicks: 8675, correct_clicks: 8524, double_clicks: 1515, missing_bits: 2325, threshold: 4996, satisfied_clauses: 5789 },
    Table1Row { n: 12000, nu: 0.93, mu: 1.30, single_clicks: 9632, correct_clicks: 9466, double_clicks: 1476, missing_bits: 2368, threshold: 5437, satisfied_clauses: 6471 },
    Table1Row { n: 13000, nu: 0.95, mu: 1.30, single_clicks: 10636, correct_clicks: 10496, double_clicks: 1405, missing_bits: 2364, threshold: 5902, satisfied_clauses: 7320 },
    Table1Row { n: 14000, nu: 0.94, mu: 1.29, single_clicks: 11135, correct_clicks: 10950, double_clicks: 1807, missing_bits: 2865, threshold: 6801, satisfied_clauses: 7437 },
];

/// Replication of one table row: analytic predictions at the row's (ν, μ),
/// simulated means, and the comparison against the published counts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Table1Replication {
    pub row: Table1Row,
    /// n·(p_c + p_w) at the row's stated optics.
    pub analytic_single_clicks: f64,
    /// n·p_dc at the row's stated optics.
    pub analytic_double_clicks: f64,
    /// Satisfied-clause count recomputed from the row's published click
    /// counts (the per-row estimator the published column uses).
    pub satisfied_from_reported_clicks: usize,
    pub mean_single_clicks: f64,
    pub mean_correct_clicks: f64,
    pub mean_double_clicks: f64,
    pub mean_satisfied_clauses: f64,
    pub accept_frequency: f64,
    /// |published − analytic| / published for single clicks.
    pub single_clicks_rel_error: f64,
    /// Published single clicks within 10% of the analytic prediction; the
    /// worst published row sits at 8.5%.
    pub within_reference_tolerance: bool,
}

/// Reference-comparison tolerance on single clicks: worst published row is 8.5%
/// off its own stated (ν, μ).
pub const TABLE1_SINGLE_CLICK_TOLERANCE: f64 = 0.10;

/// Replays each row at its stated (n, ν, μ) with δ = 0.15 and m = n,
/// running `trials` assignment-level trials per row.
pub fn table1_replication(
    rows: &[Table1Row],
    trials: usize,
    seed: u64,
) -> Result<Vec<Table1Replication>> {
    if rows.is_empty() {
        return Err(Error::InvalidInput("no table rows supplied".into()));
    }
    if trials == 0 {
        return Err(Error::InvalidInput("trials must be at least 1".into()));
    }
    rows.iter()
        .map(|&row| {
            let params = ProtocolParams::new(
                row.n,
                row.n,
                OpticalParams::clean(row.mu, row.nu)?,
                0.15,
            )?;
            let clicks = click_probabilities(&params.optical)?;
            let analytic_single_clicks = row.n as f64 * (clicks.p_c + clicks.p_w);
            let analytic_double_clicks = row.n as f64 * clicks.p_dc;
            let satisfied_from_reported_clicks = assignment_level_satisfied(
                row.n,
                row.n,
                row.single_clicks,
                row.correct_clicks,
                row.double_clicks,
            )?;
            let seeds: Vec<u64> = (0..trials)
                .map(|t| derive_seed(seed, row.n as u64, t as u64))
                .collect();
            let reports: Vec<RunReport> = seeds
                .par_iter()
                .map(|&s| run_trial(&params, RunMode::AssignmentLevel, s))
                .collect::<Result<_>>()?;
            let tf = trials as f64;
            let mean_single_clicks =
                reports.iter().map(|r| r.total_single_clicks as f64).sum::<f64>() / tf;
            let mean_correct_clicks =
                reports.iter().map(|r| r.correct_clicks as f64).sum::<f64>() / tf;
            let mean_double_clicks =
                reports.iter().map(|r| r.double_clicks as f64).sum::<f64>() / tf;
            let mean_satisfied_clauses =
                reports.iter().map(|r| r.satisfied_clauses as f64).sum::<f64>() / tf;
            let accept_frequency = reports
                .iter()
                .filter(|r| r.verdict == Verdict::Accept)
                .count() as f64
                / tf;
            let single_clicks_rel_error = (row.single_clicks as f64 - analytic_single_clicks)
                .abs()
                / row.single_clicks as f64;
            Ok(Table1Replication {
                row,
                analytic_single_clicks,
                analytic_double_clicks,
                satisfied_from_reported_clicks,
                mean_single_clicks,
                mean_correct_clicks,
                mean_double_clicks,
                mean_satisfied_clauses,
                accept_frequency,
                single_clicks_rel_error,
                within_reference_tolerance: single_clicks_rel_error < TABLE1_SINGLE_CLICK_TOLERANCE,
            })
        })
        .collect()
}
