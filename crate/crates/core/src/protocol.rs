//! Roles and analytics of the verification protocol.
//!
//! The prover encodes an assignment into pulse phases; the verifier measures
//! each pulse, assigns variable values from the clicks, and accepts iff the
//! number of satisfied measured clauses reaches a threshold T. The analytic
//! side turns click probabilities into per-clause probabilities for YES
//! instances (p_Y) and an upper bound for NO instances (p_N), then into
//! expected counts T_C = m·p_Y and T_S = m·p_N with T their midpoint, and
//! finally into Chernoff completeness/soundness bounds
//! C ≥ 1 − exp(−(T_C−T_S)²/(4T_C)) and S ≤ exp(−(T_C−T_S)²/(4T_S)).

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::photonics::{
    click_probabilities, sample_click, ClickOutcome, ClickProbabilities, ClickTrace,
    OpticalParams,
};
use crate::satgen::{Assignment, Formula};
use crate::scalar::Real;

/// Advantage targets: the window requires completeness above `c_min` and
/// soundness below `s_max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Targets<F: Real> {
    pub c_min: F,
    pub s_max: F,
}

impl<F: Real> Default for Targets<F> {
    fn default() -> Self {
        Self {
            c_min: F::of(0.9),
            s_max: F::of(0.6),
        }
    }
}

/// Everything a protocol run or analysis needs: instance size, optics,
/// promise gap, classical-cost exponent, and advantage targets.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProtocolParams<F: Real> {
    /// Variable count (pulses per proof).
    pub n: usize,
    /// Clause count.
    pub m: usize,
    pub optical: OpticalParams<F>,
    /// Promise gap δ ∈ (0, 1].
    pub delta: F,
    /// Classical-cost exponent prefactor γ ∈ (0, 1].
    pub gamma: F,
    pub targets: Targets<F>,
    /// Minimum missing bits for a run to count as classically hard.
    pub advantage_margin: usize,
}

impl<F: Real> ProtocolParams<F> {
    /// Builds params with defaults γ = 0.4, targets (0.9, 0.6), margin 1000.
    pub fn new(n: usize, m: usize, optical: OpticalParams<F>, delta: F) -> Result<Self> {
        let p = Self {
            n,
            m,
            optical,
            delta,
            gamma: F::of(0.4),
            targets: Targets::default(),
            advantage_margin: 1000,
        };
        p.validate()?;
        Ok(p)
    }

    /// Dark-count-free convenience constructor with m = n (degree-4 balance).
    pub fn clean(n: usize, mu: F, nu: F, delta: F) -> Result<Self> {
        Self::new(n, n, OpticalParams::clean(mu, nu)?, delta)
    }

    pub fn with_gamma(mut self, gamma: F) -> Result<Self> {
        self.gamma = gamma;
        self.validate()?;
        Ok(self)
    }

    pub fn with_targets(mut self, c_min: F, s_max: F) -> Result<Self> {
        self.targets = Targets { c_min, s_max };
        self.validate()?;
        Ok(self)
    }

    pub fn with_margin(mut self, advantage_margin: usize) -> Self {
        self.advantage_margin = advantage_margin;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidInput("n must be at least 1".into()));
        }
        if self.m == 0 {
            return Err(Error::InvalidInput("m must be at least 1".into()));
        }
        self.optical.validate()?;
        if !(self.delta > F::zero() && self.delta <= F::one()) {
            return Err(Error::InvalidInput(format!(
                "delta must lie in (0, 1], got {}",
                self.delta
            )));
        }
        if !(self.gamma > F::zero() && self.gamma <= F::one()) {
            return Err(Error::InvalidInput(format!(
                "gamma must lie in (0, 1], got {}",
                self.gamma
            )));
        }
        for (name, v) in [("c_min", self.targets.c_min), ("s_max", self.targets.s_max)] {
            if !(v > F::zero() && v < F::one()) {
                return Err(Error::InvalidInput(format!(
                    "target {name} must lie in (0, 1), got {v}"
                )));
            }
        }
        Ok(())
    }
}

/// Full analytic picture at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnalyticBounds<F: Real> {
    pub clicks: ClickProbabilities<F>,
    /// Probability of measuring a satisfied clause on a YES instance.
    #[serde(rename = "p_Y")]
    pub p_y: F,
    /// Upper bound on that probability for any NO-instance proof.
    #[serde(rename = "p_N")]
    pub p_n: F,
    #[serde(rename = "T_C")]
    pub t_c: F,
    #[serde(rename = "T_S")]
    pub t_s: F,
    /// Acceptance threshold, midpoint of T_C and T_S.
    #[serde(rename = "T")]
    pub t: F,
    pub completeness_lb: F,
    pub soundness_ub: F,
    /// completeness_lb − soundness_ub (may be negative).
    pub gap: F,
}

/// Probability that a clause is measured and satisfied on a YES instance:
/// p_Y = a⁴ + b⁴ + 4a²b² with a = p_c + p_dc/2 and b = p_w + p_dc/2.
///
/// Per variable, "reads correctly" happens with a and "reads flipped" with b
/// (a double click resolves to either value with probability 1/2); of the six
/// two-flip patterns on a satisfied clause, four preserve satisfaction.
pub fn p_yes<F: Real>(clicks: &ClickProbabilities<F>) -> F {
    let half = F::of(0.5);
    let a = clicks.p_c + half * clicks.p_dc;
    let b = clicks.p_w + half * clicks.p_dc;
    let (a2, b2) = (a * a, b * b);
    a2 * a2 + b2 * b2 + F::of(4.0) * a2 * b2
}

/// Upper bound on the satisfied-measured-clause probability for a NO
/// instance with promise gap δ:
/// p_N = p_h⁴ − δ·p_Y − (1−δ)(p_h⁴ − p_Y), equivalently δ·p_h⁴ + (1−2δ)·p_Y.
///
/// δ = 0 is the degenerate no-gap case and returns p_Y exactly.
pub fn p_no_bound<F: Real>(clicks: &ClickProbabilities<F>, delta: F) -> Result<F> {
    if !(delta >= F::zero() && delta <= F::one()) {
        return Err(Error::InvalidInput(format!(
            "delta must lie in [0, 1], got {delta}"
        )));
    }
    let ph4 = clicks.p_h.powi(4);
    let py = p_yes(clicks);
    Ok(ph4 - delta * py - (F::one() - delta) * (ph4 - py))
}

/// Expected satisfied-clause counts and the acceptance threshold:
/// T_C = m·p_Y, T_S = m·p_N, T = (T_C + T_S)/2.
pub fn thresholds<F: Real>(p_y: F, p_n: F, m: usize) -> Result<(F, F, F)> {
    if m == 0 {
        return Err(Error::InvalidInput("m must be at least 1".into()));
    }
    let m = F::of(m as f64);
    let t_c = m * p_y;
    let t_s = m * p_n;
    Ok((t_c, t_s, (t_c + t_s) * F::of(0.5)))
}

/// Chernoff bounds at the midpoint threshold:
/// completeness ≥ 1 − exp(−(T_C−T_S)²/(4T_C)),
/// soundness ≤ exp(−(T_C−T_S)²/(4T_S)).
/// Requires the advantage ordering T_C > T_S > 0.
pub fn chernoff_bounds<F: Real>(t_c: F, t_s: F) -> Result<(F, F)> {
    if t_s.is_nan() || t_s <= F::zero() {
        return Err(Error::InvalidInput(format!(
            "T_S must be positive, got {t_s}"
        )));
    }
    if t_c.is_nan() || t_c <= t_s {
        return Err(Error::NoAdvantage(format!(
            "T_C = {t_c} does not exceed T_S = {t_s}; YES and NO are not separated"
        )));
    }
    let four = F::of(4.0);
    let gap2 = (t_c - t_s) * (t_c - t_s);
    let completeness_lb = F::one() - (-gap2 / (four * t_c)).exp();
    let soundness_ub = (-gap2 / (four * t_s)).exp();
    Ok((completeness_lb, soundness_ub))
}

/// Composite analysis: click probabilities through Chernoff bounds.
pub fn analytic_bounds<F: Real>(params: &ProtocolParams<F>) -> Result<AnalyticBounds<F>> {
    params.validate()?;
    let clicks = click_probabilities(&params.optical)?;
    let p_y = p_yes(&clicks);
    let p_n = p_no_bound(&clicks, params.delta)?;
    let (t_c, t_s, t) = thresholds(p_y, p_n, params.m)?;
    let (completeness_lb, soundness_ub) = chernoff_bounds(t_c, t_s)?;
    Ok(AnalyticBounds {
        clicks,
        p_y,
        p_n,
        t_c,
        t_s,
        t,
        completeness_lb,
        soundness_ub,
        gap: completeness_lb - soundness_ub,
    })
}

/// Ideal-device completeness lower bound 1 − (1 − p_h⁴)^m with
/// p_h = 1 − e^{−2μ}.
pub fn ideal_completeness_bound<F: Real>(mu: F, m: usize) -> Result<F> {
    if !(mu.is_finite() && mu >= F::zero()) {
        return Err(Error::InvalidInput(format!(
            "mu must be finite and nonnegative, got {mu}"
        )));
    }
    if m == 0 {
        return Err(Error::InvalidInput("m must be at least 1".into()));
    }
    let p_h = F::one() - (-F::of(2.0) * mu).exp();
    Ok(F::one() - (F::one() - p_h.powi(4)).powf(F::of(m as f64)))
}

/// Ideal-device soundness upper bound (1 − δ·p_d⁴)^m with p_d = 1 − e^{−μ}.
pub fn ideal_soundness_bound<F: Real>(mu: F, delta: F, m: usize) -> Result<F> {
    if !(mu.is_finite() && mu >= F::zero()) {
        return Err(Error::InvalidInput(format!(
            "mu must be finite and nonnegative, got {mu}"
        )));
    }
    if !(delta > F::zero() && delta <= F::one()) {
        return Err(Error::InvalidInput(format!(
            "delta must lie in (0, 1], got {delta}"
        )));
    }
    if m == 0 {
        return Err(Error::InvalidInput("m must be at least 1".into()));
    }
    let p_d = F::one() - (-mu).exp();
    Ok((F::one() - delta * p_d.powi(4)).powf(F::of(m as f64)))
}

/// Upper end of the μ search domain. Leaky interferometers close their window
/// far below this; near-ideal ones (ν → 1) never close, and the reported
/// right edge clamps here.
pub const MU_SEARCH_CAP: f64 = 8.0;

const MU_GRID_POINTS: usize = 2048;
const MU_BISECT_TOL: f64 = 1e-4;

/// Finds the μ interval where the Chernoff bounds meet the targets
/// (completeness_lb > c_min and soundness_ub < s_max), scanning a coarse grid
/// over (0, MU_SEARCH_CAP] and bisecting each boundary to 1e−4. Returns the
/// first (and in practice only) feasible run; `None` when no μ qualifies.
/// The μ in `params.optical` is ignored.
pub fn mu_window<F: Real>(params: &ProtocolParams<F>) -> Result<Option<(F, F)>> {
    params.validate()?;
    let feasible = |mu: F| -> bool {
        let optical = OpticalParams {
            mu,
            ..params.optical
        };
        let Ok(clicks) = click_probabilities(&optical) else {
            return false;
        };
        let p_y = p_yes(&clicks);
        let Ok(p_n) = p_no_bound(&clicks, params.delta) else {
            return false;
        };
        let Ok((t_c, t_s, _)) = thresholds(p_y, p_n, params.m) else {
            return false;
        };
        match chernoff_bounds(t_c, t_s) {
            Ok((c, s)) => c > params.targets.c_min && s < params.targets.s_max,
            Err(_) => false,
        }
    };
    let cap = F::of(MU_SEARCH_CAP);
    let grid_mu = |i: usize| cap * F::of(i as f64 / MU_GRID_POINTS as f64);
    let tol = F::of(MU_BISECT_TOL);
    // Bisects a bracket with exactly one feasibility change, returning the
    // boundary to within tol.
    let bisect = |mut lo: F, mut hi: F, lo_feasible: bool| -> F {
        while hi - lo > tol {
            let mid = (lo + hi) * F::of(0.5);
            if feasible(mid) == lo_feasible {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (lo + hi) * F::of(0.5)
    };

    let Some(first) = (1..=MU_GRID_POINTS).find(|&i| feasible(grid_mu(i))) else {
        return Ok(None);
    };
    let mu_min = bisect(grid_mu(first - 1), grid_mu(first), false);
    let mu_max = match (first + 1..=MU_GRID_POINTS).find(|&i| !feasible(grid_mu(i))) {
        Some(after) => bisect(grid_mu(after - 1), grid_mu(after), true),
        None => cap,
    };
    Ok(Some((mu_min, mu_max)))
}

/// Classical hardness left after a run: the verifier still lacks
/// `missing_bits = n − s_clk` variable values, and completing the solution
/// classically costs about 2^(γ·missing) operations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassicalCost<F: Real> {
    pub missing_bits: usize,
    pub log2_ops: F,
}

pub fn classical_cost<F: Real>(n: usize, s_clk: usize, gamma: F) -> Result<ClassicalCost<F>> {
    if s_clk > n {
        return Err(Error::InvalidInput(format!(
            "single-click count {s_clk} exceeds n = {n}"
        )));
    }
    if !(gamma > F::zero() && gamma <= F::one()) {
        return Err(Error::InvalidInput(format!(
            "gamma must lie in (0, 1], got {gamma}"
        )));
    }
    let missing_bits = n - s_clk;
    Ok(ClassicalCost {
        missing_bits,
        log2_ops: gamma * F::of(missing_bits as f64),
    })
}

/// Renders 2^log2_ops as a short decimal like "1.43e45".
pub fn log2_to_decimal_string(log2_ops: f64) -> String {
    let log10 = log2_ops * std::f64::consts::LOG10_2;
    let mut exp = log10.floor();
    let mut mantissa = 10f64.powf(log10 - exp);
    if mantissa >= 9.995 {
        mantissa /= 10.0;
        exp += 1.0;
    }
    format!("{mantissa:.2}e{exp}")
}

/// Number of decimal digits of 2^log2_ops.
pub fn decimal_digits(log2_ops: f64) -> u64 {
    (log2_ops * std::f64::consts::LOG10_2).floor() as u64 + 1
}

/// Turns a proof assignment into the per-pulse phase bits (−1)^{x_k},
/// represented by the bits themselves. Fails when the proof length does not
/// match the declared variable count.
pub fn merlin_encode(proof: &Assignment, n: usize) -> Result<Vec<bool>> {
    if proof.len() != n {
        return Err(Error::InvalidInput(format!(
            "proof has {} bits, protocol expects {n}",
            proof.len()
        )));
    }
    Ok(proof.bits.clone())
}

/// Measures one pulse per phase bit. Pulses are independent (the
/// unentanglement promise), so the trace is an independent categorical draw
/// per slot.
pub fn arthur_measure<F: Real, R: Rng + ?Sized>(
    phases: &[bool],
    optical: &OpticalParams<F>,
    rng: &mut R,
) -> Result<ClickTrace> {
    let clicks64 = click_probabilities(&OpticalParams {
        mu: optical.mu.as_f64(),
        nu: optical.nu.as_f64(),
        p_dark: optical.p_dark.as_f64(),
    })?;
    Ok(phases
        .iter()
        .map(|&bit| sample_click(&clicks64, Some(bit), rng))
        .collect())
}

/// Measures `n` pulses against a prover who sends vacuum: only the
/// verifier's own click floor applies.
pub fn arthur_measure_vacuum<R: Rng + ?Sized>(
    n: usize,
    optical: &OpticalParams<f64>,
    rng: &mut R,
) -> Result<ClickTrace> {
    let clicks = click_probabilities(optical)?;
    Ok((0..n).map(|_| sample_click(&clicks, None, rng)).collect())
}

/// How a variable value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Undefined,
    /// Exactly one detector fired; its label is the value.
    SingleClick,
    /// Both detectors fired; the value is a fresh uniform bit.
    DoubleRandom,
}

/// Verifier-side variable values after one measurement pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialAssignment {
    pub values: Vec<Option<bool>>,
    pub provenance: Vec<Provenance>,
}

impl PartialAssignment {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Variables valued from a single detector click.
    pub fn single_clicks(&self) -> usize {
        self.provenance
            .iter()
            .filter(|p| **p == Provenance::SingleClick)
            .count()
    }

    /// Variables valued by coin flip after a double click.
    pub fn double_clicks(&self) -> usize {
        self.provenance
            .iter()
            .filter(|p| **p == Provenance::DoubleRandom)
            .count()
    }

    /// All valued variables: singles plus doubles.
    pub fn total_clicks(&self) -> usize {
        self.values.iter().filter(|v| v.is_some()).count()
    }

    /// Unvalued variables, n − single clicks − double clicks.
    pub fn undefined(&self) -> usize {
        self.values.iter().filter(|v| v.is_none()).count()
    }
}

/// Turns a click trace into variable values: D0 → 0, D1 → 1, double click →
/// uniform random bit, no click → undefined.
pub fn arthur_assign<R: Rng + ?Sized>(trace: &[ClickOutcome], rng: &mut R) -> PartialAssignment {
    let mut values = Vec::with_capacity(trace.len());
    let mut provenance = Vec::with_capacity(trace.len());
    for outcome in trace {
        let (v, p) = match outcome {
            ClickOutcome::None => (None, Provenance::Undefined),
            ClickOutcome::D0 => (Some(false), Provenance::SingleClick),
            ClickOutcome::D1 => (Some(true), Provenance::SingleClick),
            ClickOutcome::Both => (Some(rng.gen::<bool>()), Provenance::DoubleRandom),
        };
        values.push(v);
        provenance.push(p);
    }
    PartialAssignment { values, provenance }
}

/// Verdict of one run: clause tallies and the accept decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub accept: bool,
    /// Measured clauses (all four variables valued) that are satisfied.
    pub satisfied: usize,
    /// Measured clauses that are unsatisfied.
    pub unsatisfied: usize,
    /// Clauses with at least one unvalued variable; these count for neither side.
    pub unmeasured: usize,
}

/// Tallies clauses on the valued variables and accepts iff the number of
/// satisfied measured clauses reaches the threshold.
pub fn arthur_verdict(pa: &PartialAssignment, f: &Formula, t: f64) -> Result<VerdictReport> {
    if pa.len() != f.n() {
        return Err(Error::InvalidInput(format!(
            "partial assignment covers {} variables, formula has n = {}",
            pa.len(),
            f.n()
        )));
    }
    if !t.is_finite() {
        return Err(Error::InvalidInput(format!("threshold must be finite, got {t}")));
    }
    let mut satisfied = 0usize;
    let mut unsatisfied = 0usize;
    let mut unmeasured = 0usize;
    for c in f.clauses() {
        let mut trues = 0u32;
        let mut measured = true;
        for v in c.vars() {
            match pa.values[v as usize - 1] {
                Some(true) => trues += 1,
                Some(false) => {}
                None => {
                    measured = false;
                    break;
                }
            }
        }
        if !measured {
            unmeasured += 1;
        } else if trues == 2 {
            satisfied += 1;
        } else {
            unsatisfied += 1;
        }
    }
    Ok(VerdictReport {
        accept: satisfied as f64 >= t,
        satisfied,
        unsatisfied,
        unmeasured,
    })
}
