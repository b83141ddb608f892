//! Simulation and analysis library for a coherent-state Sampling-Matching
//! verification protocol over 2-out-of-4 SAT.
//!
//! The protocol verifies claimed solutions to balanced 2-out-of-4 SAT
//! instances with a promise gap: a prover encodes its assignment into the
//! phases of weak coherent pulses, and the verifier interferes each pulse
//! with a local reference, reads variable values from which detector
//! clicks, and accepts when enough measured clauses come out satisfied.
//! The verifier receives far fewer bits than the full assignment, which is
//! what leaves the classical completion cost exponential.
//!
//! The crate covers both sides of that story:
//!
//! - [`satgen`]: balanced planted instance generation, brute-force gap
//!   certification at small n, instance (de)serialization.
//! - [`photonics`]: click probabilities of the interferometric measurement
//!   under visibility and dark-count imperfections, click sampling,
//!   visibility calibration, trace (de)serialization.
//! - [`protocol`]: prover/verifier halves of a run, the per-clause YES/NO
//!   probabilities, thresholds, Chernoff completeness/soundness bounds,
//!   feasible photon-number windows, and the classical-cost estimate.
//! - [`adversary`]: dishonest-prover strategies and empirical soundness.
//! - [`experiments`]: deterministic Monte-Carlo harness, parameter sweeps,
//!   and replication of the reference experiment's summary table.
//!
//! Analytic formulas are generic over the floating-point scalar through
//! [`scalar::Real`] (instantiated at `f32` and `f64`; see the `*F64`/`*F32`
//! aliases at the crate root). Samplers and combinatorics stay concrete.

pub mod adversary;
pub mod error;
pub mod experiments;
pub mod photonics;
pub mod protocol;
pub mod satgen;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Real;

pub use adversary::{
    best_assignment_exhaustive, best_assignment_local_search, certify_no_instance,
    empirical_soundness, AdversaryStrategy,
};
pub use experiments::{
    assignment_level_satisfied, derive_seed, run_trial, run_trial_adversary, sweep,
    sweep_from_csv, sweep_to_csv, table1_replication, Role, RunMode, RunReport, SweepAxis,
    SweepRow, SweepSpec, Table1Replication, Table1Row, Verdict, DEFAULT_TABLE1_TRIALS,
    DEFAULT_TRIALS_PER_POINT, NOMINAL_MU, NOMINAL_NU, TABLE1,
};
pub use photonics::{
    calibrate_visibility, click_probabilities, ideal_detect_prob, sample_click, trace_from_csv,
    trace_to_csv, ClickOutcome, ClickProbabilities, ClickTrace, OpticalParams,
};
pub use protocol::{
    analytic_bounds, arthur_assign, arthur_measure, arthur_measure_vacuum, arthur_verdict,
    chernoff_bounds, classical_cost, decimal_digits, ideal_completeness_bound,
    ideal_soundness_bound, log2_to_decimal_string, merlin_encode, mu_window, p_no_bound, p_yes,
    thresholds, AnalyticBounds, ClassicalCost, PartialAssignment, ProtocolParams, Provenance,
    Targets, VerdictReport, MU_SEARCH_CAP,
};
pub use satgen::{
    brute_force_delta, check_clause, count_satisfied, gen_balanced_planted, parse,
    rewire_entries, serialize, Assignment, Clause, Formula, BRUTE_FORCE_MAX_N,
};

/// Double-precision optical parameters.
pub type OpticalParamsF64 = OpticalParams<f64>;
/// Single-precision optical parameters.
pub type OpticalParamsF32 = OpticalParams<f32>;
/// Double-precision click probabilities.
pub type ClickProbabilitiesF64 = ClickProbabilities<f64>;
/// Single-precision click probabilities.
pub type ClickProbabilitiesF32 = ClickProbabilities<f32>;
/// Double-precision protocol parameters.
pub type ProtocolParamsF64 = ProtocolParams<f64>;
/// Single-precision protocol parameters.
pub type ProtocolParamsF32 = ProtocolParams<f32>;
/// Double-precision analytic bounds bundle.
pub type AnalyticBoundsF64 = AnalyticBounds<f64>;
/// Single-precision analytic bounds bundle.
pub type AnalyticBoundsF32 = AnalyticBounds<f32>;
/// Double-precision advantage targets.
pub type TargetsF64 = Targets<f64>;
/// Single-precision advantage targets.
pub type TargetsF32 = Targets<f32>;
/// Double-precision classical-cost estimate.
pub type ClassicalCostF64 = ClassicalCost<f64>;
/// Single-precision classical-cost estimate.
pub type ClassicalCostF32 = ClassicalCost<f32>;
