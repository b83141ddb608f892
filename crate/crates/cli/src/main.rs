//! Command-line front end wiring the library modules together: instance
//! generation, analytic advantage bounds, photon-number windows, protocol
//! runs, parameter sweeps, gap certification, and classical-cost reports.
//!
//! Exit codes: 0 success, 2 validation or usage error, 3 promise violation
//! (an instance presented as a NO instance turned out satisfiable). Data goes
//! to standard output or `--out`; human-readable notes go to standard error.
//! Every command is deterministic given its full flag set including `--seed`.

mod config;

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use config::{opt, pick, Config, Format};
use smverify_core::{
    analytic_bounds, brute_force_delta, classical_cost, decimal_digits, gen_balanced_planted,
    log2_to_decimal_string, mu_window, parse, run_trial, run_trial_adversary, serialize, sweep,
    table1_replication, AdversaryStrategy, Assignment, Error as CoreError, OpticalParams,
    ProtocolParams, RunMode, RunReport, SweepAxis, SweepSpec, Table1Replication, Verdict,
    DEFAULT_TABLE1_TRIALS, DEFAULT_TRIALS_PER_POINT, NOMINAL_MU, NOMINAL_NU, TABLE1,
};

#[derive(Debug)]
pub enum AppError {
    Core(CoreError),
    Json(serde_json::Error),
    Io(std::io::Error),
    Usage(String),
}

impl AppError {
    fn exit_code(&self) -> u8 {
        match self {
            AppError::Core(CoreError::PromiseViolation(_)) => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for AppError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AppError::Core(e) => e.fmt(f),
            AppError::Json(e) => write!(f, "json error: {e}"),
            AppError::Io(e) => write!(f, "io error: {e}"),
            AppError::Usage(msg) => f.write_str(msg),
        }
    }
}

impl From<CoreError> for AppError {
    fn from(e: CoreError) -> Self {
        AppError::Core(e)
    }
}

impl From<serde_json::Error> for AppError {
    fn from(e: serde_json::Error) -> Self {
        AppError::Json(e)
    }
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> Self {
        AppError::Io(e)
    }
}

#[derive(Parser)]
#[command(
    name = "smverify",
    version,
    about = "Coherent-state verification of 2-out-of-4 SAT: instance generation, \
             analytic advantage bounds, Monte-Carlo protocol runs, parameter sweeps, \
             and classical-cost reports"
)]
struct Cli {
    /// JSON file supplying defaults for omitted flags (flag > config > default).
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a balanced planted instance and write it in the instance format.
    GenInstance(GenInstanceArgs),
    /// Evaluate the closed-form advantage bounds at one parameter point (JSON).
    Analyze(AnalyzeArgs),
    /// Find the photon-number window where both advantage targets hold (JSON).
    MuWindow(MuWindowArgs),
    /// Simulate one full protocol run and emit its report (JSON).
    Run(RunArgs),
    /// Sweep the mean photon number at fixed size.
    SweepMu(SweepArgs),
    /// Sweep the instance size at fixed optics.
    SweepN(SweepArgs),
    /// Turn missing bits into a classical-search cost estimate (JSON).
    ClassicalCost(ClassicalCostArgs),
    /// Certify an instance's unsatisfied-fraction gap by exhaustive scan (JSON).
    Delta(DeltaArgs),
    /// Replicate the reference experiment's per-size table.
    Table1(Table1Args),
}

/// Optics and protocol flags shared by the analytic and simulation commands.
#[derive(Args, Debug, Clone, Copy)]
struct ProtocolFlags {
    /// Mean photon number per pulse [default: 1.31].
    #[arg(long)]
    mu: Option<f64>,

    /// Interferometer visibility in (1/2, 1] [default: 0.93].
    #[arg(long)]
    nu: Option<f64>,

    /// Dark-count probability per detector per pulse [default: 0].
    #[arg(long)]
    dark: Option<f64>,

    /// Promise gap: unsatisfied clause fraction of NO instances [default: 0.15,
    /// or the instance file's stored gap].
    #[arg(long)]
    delta: Option<f64>,

    /// Classical-cost exponent prefactor [default: 0.4].
    #[arg(long)]
    gamma: Option<f64>,

    /// Completeness target the lower bound must exceed [default: 0.9].
    #[arg(long)]
    c_min: Option<f64>,

    /// Soundness target the upper bound must stay below [default: 0.6].
    #[arg(long)]
    s_max: Option<f64>,

    /// Missing-bit margin for the classical-hardness check [default: 1000].
    #[arg(long)]
    advantage_margin: Option<usize>,
}

impl ProtocolFlags {
    /// Resolves flags against the config and builds validated parameters.
    /// `delta_default` lets instance-file commands default to the stored gap.
    fn params(
        &self,
        n: usize,
        m: usize,
        cfg: &Config,
        delta_default: f64,
    ) -> Result<ProtocolParams<f64>, AppError> {
        let mu = pick(self.mu, cfg.mu, NOMINAL_MU);
        let nu = pick(self.nu, cfg.nu, NOMINAL_NU);
        let dark = pick(self.dark, cfg.dark, 0.0);
        let delta = pick(self.delta, cfg.delta, delta_default);
        let mut p = ProtocolParams::new(n, m, OpticalParams::new(mu, nu, dark)?, delta)?;
        if let Some(g) = opt(self.gamma, cfg.gamma) {
            p = p.with_gamma(g)?;
        }
        let c_min = opt(self.c_min, cfg.c_min);
        let s_max = opt(self.s_max, cfg.s_max);
        if c_min.is_some() || s_max.is_some() {
            p = p.with_targets(
                c_min.unwrap_or(p.targets.c_min),
                s_max.unwrap_or(p.targets.s_max),
            )?;
        }
        if let Some(margin) = opt(self.advantage_margin, cfg.advantage_margin) {
            p = p.with_margin(margin);
        }
        Ok(p)
    }
}

#[derive(Args)]
struct GenInstanceArgs {
    /// Variable count (even, at least 8; n*degree divisible by 4).
    #[arg(long)]
    n: usize,

    /// Clauses per variable; the clause count becomes n*degree/4.
    #[arg(long)]
    degree: u32,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Promise gap to store with the instance, in thousandths.
    #[arg(long)]
    delta_milli: Option<u32>,

    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Variable count (pulses per proof).
    #[arg(long)]
    n: usize,

    /// Clause count [default: n].
    #[arg(long)]
    m: Option<usize>,

    #[command(flatten)]
    protocol: ProtocolFlags,

    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MuWindowArgs {
    #[arg(long)]
    n: usize,

    /// Clause count [default: n].
    #[arg(long)]
    m: Option<usize>,

    #[command(flatten)]
    protocol: ProtocolFlags,

    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RoleArg {
    /// Honest prover encoding a planted satisfying assignment.
    Honest,
    /// Optimizing prover attacking a NO instance.
    Adversary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    /// Best assignment by exhaustive scan (instances up to 26 variables).
    Exhaustive,
    /// Best assignment found by restarted local search.
    LocalSearch,
    /// A caller-chosen assignment (requires --assignment).
    Fixed,
    /// Send no light; only the verifier's own pulses click.
    Vacuum,
}

#[derive(Args)]
struct RunArgs {
    /// Instance file produced by gen-instance.
    #[arg(long)]
    instance: Option<PathBuf>,

    /// Honest run without an instance: draw a uniformly random proof string
    /// and estimate satisfied clauses from the measured click rates.
    #[arg(long, conflicts_with = "instance")]
    assignment_level: bool,

    /// Variable count (assignment-level mode only).
    #[arg(long)]
    n: Option<usize>,

    /// Clause count (assignment-level mode only) [default: n].
    #[arg(long)]
    m: Option<usize>,

    #[arg(long, value_enum, default_value_t = RoleArg::Honest)]
    role: RoleArg,

    /// Adversary strategy [default: local-search].
    #[arg(long, value_enum)]
    strategy: Option<StrategyArg>,

    /// Local-search restarts [default: 8].
    #[arg(long)]
    restarts: Option<usize>,

    /// Bitstring like 010011 for --strategy fixed.
    #[arg(long)]
    assignment: Option<String>,

    #[command(flatten)]
    protocol: ProtocolFlags,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Variable count (sweep-mu only; sweep-n takes sizes from the grid).
    #[arg(long)]
    n: Option<usize>,

    /// Clause count (sweep-mu only) [default: n].
    #[arg(long)]
    m: Option<usize>,

    #[command(flatten)]
    protocol: ProtocolFlags,

    /// First grid value.
    #[arg(long)]
    grid_start: Option<f64>,

    /// Last grid value (inclusive up to rounding).
    #[arg(long)]
    grid_stop: Option<f64>,

    /// Grid spacing (> 0).
    #[arg(long)]
    grid_step: Option<f64>,

    /// Monte-Carlo trials per grid point [default: 100].
    #[arg(long)]
    trials: Option<usize>,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Output encoding [default: csv].
    #[arg(long, value_enum)]
    format: Option<Format>,

    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ClassicalCostArgs {
    /// Missing-bit count, used directly as the search-space exponent base.
    #[arg(long, conflicts_with_all = ["n", "single_clicks"])]
    missing: Option<usize>,

    /// Variable count; missing bits become n - single_clicks.
    #[arg(long, requires = "single_clicks")]
    n: Option<usize>,

    /// Observed single-click count.
    #[arg(long, requires = "n")]
    single_clicks: Option<usize>,

    /// Cost-exponent prefactor [default: 0.4].
    #[arg(long)]
    gamma: Option<f64>,

    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DeltaArgs {
    /// Instance file to certify (exhaustive scan, up to 26 variables).
    #[arg(long)]
    instance: PathBuf,

    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Table1Args {
    /// Monte-Carlo trials per table row [default: 1000].
    #[arg(long)]
    trials: Option<usize>,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Output encoding [default: csv].
    #[arg(long, value_enum)]
    format: Option<Format>,

    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), AppError> {
    let cfg = Config::load(cli.config.as_deref())?;
    match cli.cmd {
        Cmd::GenInstance(a) => cmd_gen_instance(a, &cfg),
        Cmd::Analyze(a) => cmd_analyze(a, &cfg),
        Cmd::MuWindow(a) => cmd_mu_window(a, &cfg),
        Cmd::Run(a) => cmd_run(a, &cfg),
        Cmd::SweepMu(a) => cmd_sweep(a, &cfg, SweepAxis::Mu),
        Cmd::SweepN(a) => cmd_sweep(a, &cfg, SweepAxis::N),
        Cmd::ClassicalCost(a) => cmd_classical_cost(a, &cfg),
        Cmd::Delta(a) => cmd_delta(a, &cfg),
        Cmd::Table1(a) => cmd_table1(a, &cfg),
    }
}

/// Writes `data` to standard output, or to `--out` resolved against the
/// config's out_dir when the path is relative.
fn emit(data: &str, out: Option<&Path>, cfg: &Config) -> Result<(), AppError> {
    match out {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(data.as_bytes())?;
            if !data.ends_with('\n') {
                stdout.write_all(b"\n")?;
            }
        }
        Some(p) => {
            let path = if p.is_absolute() {
                p.to_path_buf()
            } else {
                match &cfg.out_dir {
                    Some(dir) => dir.join(p),
                    None => p.to_path_buf(),
                }
            };
            if let Some(dir) = path.parent() {
                if !dir.as_os_str().is_empty() {
                    fs::create_dir_all(dir)?;
                }
            }
            fs::write(&path, data)?;
            eprintln!("wrote {}", path.display());
        }
    }
    Ok(())
}

fn cmd_gen_instance(a: GenInstanceArgs, cfg: &Config) -> Result<(), AppError> {
    let mut f = gen_balanced_planted(a.n, a.degree, a.seed)?;
    if let Some(dm) = a.delta_milli {
        f = f.with_delta_milli(dm)?;
    }
    let mut counts = vec![0u32; f.n()];
    for c in f.clauses() {
        for v in c.vars() {
            counts[v as usize - 1] += 1;
        }
    }
    if counts.iter().any(|&k| k != f.degree()) {
        return Err(AppError::Usage(
            "internal error: generated instance is not balanced".into(),
        ));
    }
    eprintln!(
        "generated n={} m={} seed={}; balanced: every variable appears in exactly {} clauses",
        f.n(),
        f.m(),
        a.seed,
        f.degree()
    );
    emit(&serialize(&f), a.out.as_deref(), cfg)
}

fn cmd_analyze(a: AnalyzeArgs, cfg: &Config) -> Result<(), AppError> {
    let p = a.protocol.params(a.n, a.m.unwrap_or(a.n), cfg, 0.15)?;
    let b = analytic_bounds(&p)?;
    eprintln!(
        "completeness >= {:.6}, soundness <= {:.6}, gap {:.6}",
        b.completeness_lb, b.soundness_ub, b.gap
    );
    emit(&serde_json::to_string_pretty(&b)?, a.out.as_deref(), cfg)
}

#[derive(Serialize)]
struct WindowOut {
    mu_min: f64,
    mu_max: f64,
}

fn cmd_mu_window(a: MuWindowArgs, cfg: &Config) -> Result<(), AppError> {
    let p = a.protocol.params(a.n, a.m.unwrap_or(a.n), cfg, 0.15)?;
    let text = match mu_window(&p)? {
        Some((lo, hi)) => {
            eprintln!("feasible photon-number window [{lo:.4}, {hi:.4}]");
            serde_json::to_string_pretty(&WindowOut {
                mu_min: lo,
                mu_max: hi,
            })?
        }
        None => {
            eprintln!("no photon number meets both targets at these parameters");
            "null".to_string()
        }
    };
    emit(&text, a.out.as_deref(), cfg)
}

fn run_report(a: &RunArgs, cfg: &Config) -> Result<RunReport, AppError> {
    match a.role {
        RoleArg::Honest => {
            if let Some(path) = &a.instance {
                let f = parse(&fs::read_to_string(path)?)?;
                let p = a.protocol.params(f.n(), f.m(), cfg, f.delta())?;
                Ok(run_trial(&p, RunMode::Instance(&f), a.seed)?)
            } else if a.assignment_level {
                let n = a.n.ok_or_else(|| {
                    AppError::Usage("--assignment-level needs --n".into())
                })?;
                let p = a.protocol.params(n, a.m.unwrap_or(n), cfg, 0.15)?;
                Ok(run_trial(&p, RunMode::AssignmentLevel, a.seed)?)
            } else {
                Err(AppError::Usage(
                    "pass --instance <file> or --assignment-level --n <N>".into(),
                ))
            }
        }
        RoleArg::Adversary => {
            let path = a.instance.as_ref().ok_or_else(|| {
                AppError::Usage("--role adversary needs --instance <file>".into())
            })?;
            let f = parse(&fs::read_to_string(path)?)?;
            let strategy = match a.strategy.unwrap_or(StrategyArg::LocalSearch) {
                StrategyArg::Exhaustive => AdversaryStrategy::BestAssignmentExhaustive,
                StrategyArg::LocalSearch => AdversaryStrategy::BestAssignmentLocalSearch {
                    restarts: a.restarts.unwrap_or(8),
                },
                StrategyArg::Fixed => {
                    let s = a.assignment.as_ref().ok_or_else(|| {
                        AppError::Usage("--strategy fixed needs --assignment <bits>".into())
                    })?;
                    AdversaryStrategy::FixedAssignment(Assignment::from_bitstring(s)?)
                }
                StrategyArg::Vacuum => AdversaryStrategy::VacuumFloor,
            };
            let p = a.protocol.params(f.n(), f.m(), cfg, f.delta())?;
            Ok(run_trial_adversary(&p, &f, &strategy, a.seed)?)
        }
    }
}

fn cmd_run(a: RunArgs, cfg: &Config) -> Result<(), AppError> {
    let report = run_report(&a, cfg)?;
    let word = match report.verdict {
        Verdict::Accept => "accept",
        Verdict::Reject => "reject",
    };
    eprintln!(
        "verdict {word}: {} satisfied clauses vs threshold {:.1}; {} missing bits (~2^{:.1} classical ops)",
        report.satisfied_clauses, report.threshold, report.missing_bits, report.log2_classical_ops
    );
    emit(
        &serde_json::to_string_pretty(&report)?,
        a.out.as_deref(),
        cfg,
    )
}

fn build_grid(a: &SweepArgs, cfg: &Config, axis: SweepAxis) -> Result<Vec<f64>, AppError> {
    let start = opt(a.grid_start, cfg.grid_start)
        .ok_or_else(|| AppError::Usage("--grid-start needed (flag or config)".into()))?;
    let stop = opt(a.grid_stop, cfg.grid_stop)
        .ok_or_else(|| AppError::Usage("--grid-stop needed (flag or config)".into()))?;
    let step = opt(a.grid_step, cfg.grid_step)
        .ok_or_else(|| AppError::Usage("--grid-step needed (flag or config)".into()))?;
    if !step.is_finite() || step <= 0.0 {
        return Err(AppError::Usage(format!("grid step must be > 0, got {step}")));
    }
    if stop < start {
        return Err(AppError::Usage(format!(
            "grid stop {stop} is below grid start {start}"
        )));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    let grid = (0..count).map(|i| {
        let v = start + i as f64 * step;
        match axis {
            SweepAxis::Mu => v,
            SweepAxis::N => v.round(),
        }
    });
    Ok(grid.collect())
}

fn cmd_sweep(a: SweepArgs, cfg: &Config, axis: SweepAxis) -> Result<(), AppError> {
    let grid = build_grid(&a, cfg, axis)?;
    let (n, m) = match axis {
        SweepAxis::Mu => {
            let n = a
                .n
                .ok_or_else(|| AppError::Usage("sweep-mu needs --n".into()))?;
            (n, a.m.unwrap_or(n))
        }
        // Size comes from the grid; the fixed params just need a valid shape.
        SweepAxis::N => {
            let n = grid[0] as usize;
            (n.max(1), n.max(1))
        }
    };
    let fixed = a.protocol.params(n, m, cfg, 0.15)?;
    let trials = pick(a.trials, cfg.trials, DEFAULT_TRIALS_PER_POINT);
    let spec = SweepSpec {
        axis,
        grid,
        fixed,
        trials,
        seed: a.seed,
    };
    let rows = sweep(&spec)?;
    eprintln!("swept {} points x {} trials", rows.len(), trials);
    let text = match pick(a.format, cfg.format, Format::Csv) {
        Format::Csv => smverify_core::sweep_to_csv(&rows),
        Format::Json => serde_json::to_string_pretty(&rows)?,
    };
    emit(&text, a.out.as_deref(), cfg)
}

#[derive(Serialize)]
struct CostOut {
    missing_bits: usize,
    log2_ops: f64,
    ops_decimal: String,
    decimal_digits: u64,
}

fn cmd_classical_cost(a: ClassicalCostArgs, cfg: &Config) -> Result<(), AppError> {
    let gamma = pick(a.gamma, cfg.gamma, 0.4);
    let cost = match (a.missing, a.n, a.single_clicks) {
        (Some(k), None, None) => classical_cost(k, 0, gamma)?,
        (None, Some(n), Some(s)) => classical_cost(n, s, gamma)?,
        _ => {
            return Err(AppError::Usage(
                "pass --missing <bits>, or --n <N> with --single-clicks <count>".into(),
            ))
        }
    };
    let out = CostOut {
        missing_bits: cost.missing_bits,
        log2_ops: cost.log2_ops,
        ops_decimal: log2_to_decimal_string(cost.log2_ops),
        decimal_digits: decimal_digits(cost.log2_ops),
    };
    eprintln!(
        "{} missing bits -> about {} brute-force operations (a {}-digit number)",
        out.missing_bits, out.ops_decimal, out.decimal_digits
    );
    emit(&serde_json::to_string_pretty(&out)?, a.out.as_deref(), cfg)
}

#[derive(Serialize)]
struct DeltaOut {
    n: usize,
    m: usize,
    delta: f64,
    satisfiable: bool,
}

fn cmd_delta(a: DeltaArgs, cfg: &Config) -> Result<(), AppError> {
    let f = parse(&fs::read_to_string(&a.instance)?)?;
    let d = brute_force_delta(&f)?;
    let out = DeltaOut {
        n: f.n(),
        m: f.m(),
        delta: d,
        satisfiable: d == 0.0,
    };
    eprintln!(
        "best assignment leaves a {:.4} fraction of the {} clauses unsatisfied",
        d,
        f.m()
    );
    emit(&serde_json::to_string_pretty(&out)?, a.out.as_deref(), cfg)
}

const TABLE1_CSV_HEADER: &str = "n,nu,mu,single_clicks,correct_clicks,double_clicks,\
missing_bits,threshold,satisfied_clauses,analytic_single_clicks,analytic_double_clicks,\
satisfied_from_reported_clicks,mean_single_clicks,mean_correct_clicks,mean_double_clicks,\
mean_satisfied_clauses,accept_frequency,single_clicks_rel_error,within_reference_tolerance";

fn table1_csv(reps: &[Table1Replication]) -> String {
    let mut out = String::from(TABLE1_CSV_HEADER);
    out.push('\n');
    for r in reps {
        let row = r.row;
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            row.n,
            row.nu,
            row.mu,
            row.single_clicks,
            row.correct_clicks,
            row.double_clicks,
            row.missing_bits,
            row.threshold,
            row.satisfied_clauses,
            r.analytic_single_clicks,
            r.analytic_double_clicks,
            r.satisfied_from_reported_clicks,
            r.mean_single_clicks,
            r.mean_correct_clicks,
            r.mean_double_clicks,
            r.mean_satisfied_clauses,
            r.accept_frequency,
            r.single_clicks_rel_error,
            r.within_reference_tolerance
        ));
    }
    out
}

fn cmd_table1(a: Table1Args, cfg: &Config) -> Result<(), AppError> {
    let trials = pick(a.trials, cfg.trials, DEFAULT_TABLE1_TRIALS);
    let reps = table1_replication(&TABLE1, trials, a.seed)?;
    let worst = reps
        .iter()
        .map(|r| r.single_clicks_rel_error)
        .fold(0.0_f64, f64::max);
    eprintln!(
        "{} rows x {} trials; worst single-click deviation from the reference counts {:.2}%",
        reps.len(),
        trials,
        worst * 100.0
    );
    let text = match pick(a.format, cfg.format, Format::Csv) {
        Format::Csv => table1_csv(&reps),
        Format::Json => serde_json::to_string_pretty(&reps)?,
    };
    emit(&text, a.out.as_deref(), cfg)
}
