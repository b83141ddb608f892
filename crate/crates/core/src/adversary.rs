//! Dishonest-prover strategies and empirical soundness estimation.
//!
//! The modeled adversary is classical within the protocol's assumptions: it
//! sends unentangled pulses with the correct mean photon number and can only
//! choose the phase assignment (or send vacuum and lean on the verifier's own
//! click floor). Entangled or photon-number cheating is out of scope; the
//! analytic p_N bound covers the general unentangled case.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::photonics::click_probabilities;
use crate::protocol::{
    arthur_assign, arthur_measure, arthur_measure_vacuum, arthur_verdict, merlin_encode,
    p_no_bound, p_yes, thresholds, ProtocolParams,
};
use crate::satgen::{brute_force_delta, Assignment, Formula, BRUTE_FORCE_MAX_N};

/// What the dishonest prover sends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AdversaryStrategy {
    /// The optimal assignment by exhaustive scan (n ≤ 26 only).
    BestAssignmentExhaustive,
    /// Hill-climbing heuristic; never claimed optimal.
    BestAssignmentLocalSearch { restarts: usize },
    /// A caller-chosen assignment.
    FixedAssignment(Assignment),
    /// No light at all; only the verifier's local pulses can click.
    VacuumFloor,
}

/// Finds an assignment maximizing the satisfied-clause count by scanning all
/// assignments, ties broken toward the lowest binary value (x_1 = least
/// significant bit). Satisfaction counts are complement-invariant, so the
/// scan covers the half with x_n = 0, which also contains the lower value of
/// every complement pair.
pub fn best_assignment_exhaustive(f: &Formula) -> Result<Assignment> {
    let n = f.n();
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::Refusal(format!(
            "exhaustive assignment search is capped at n = {BRUTE_FORCE_MAX_N}, got n = {n}"
        )));
    }
    let masks: Vec<u32> = f
        .clauses()
        .iter()
        .map(|c| c.vars().iter().fold(0u32, |m, &v| m | (1u32 << (v - 1))))
        .collect();
    let half = 1u64 << (n - 1);
    // (count, value): prefer higher count, then lower value. The comparator
    // is a total order, so the parallel reduce is deterministic.
    let better = |x: (usize, u64), y: (usize, u64)| {
        if y.0 > x.0 || (y.0 == x.0 && y.1 < x.1) {
            y
        } else {
            x
        }
    };
    let best = (0..half)
        .into_par_iter()
        .fold(
            || (0usize, u64::MAX),
            |acc, a| {
                let count = masks
                    .iter()
                    .filter(|&&m| (a as u32 & m).count_ones() == 2)
                    .count();
                better(acc, (count, a))
            },
        )
        .reduce(|| (0usize, u64::MAX), better);
    Ok(Assignment::from_index(best.1, n))
}

/// Flip budget per climb, per variable. Exactly-2-of-4 clauses are locked
/// (any single flip breaks a satisfied clause), so plain steepest ascent
/// stalls on plateaus; the focused walk below needs room to drift.
const CLIMB_FLIPS_PER_VAR: usize = 250;

/// Probability a repair flips a random clause member instead of the best one.
const CLIMB_NOISE: f64 = 0.3;

/// Single-bit-flip local search with random restarts. Each climb is a
/// focused walk: pick a random unsatisfied clause, flip one of its four
/// variables (the best-gain one, or a random one with small probability),
/// and remember the best assignment seen. `restarts` counts climbs; zero
/// returns a single random start untouched. The result is the best over all
/// starts and carries no optimality claim.
pub fn best_assignment_local_search<R: Rng + ?Sized>(
    f: &Formula,
    restarts: usize,
    rng: &mut R,
) -> Assignment {
    let n = f.n();
    let mut touching: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (ci, c) in f.clauses().iter().enumerate() {
        for v in c.vars() {
            touching[v as usize - 1].push(ci as u32);
        }
    }
    let random = |rng: &mut R| Assignment {
        bits: (0..n).map(|_| rng.gen()).collect(),
    };
    if restarts == 0 {
        return random(rng);
    }
    let mut best: Option<(usize, Assignment)> = None;
    for _ in 0..restarts {
        let mut a = random(rng);
        let count = climb(f, &touching, &mut a, rng);
        if best.as_ref().is_none_or(|(c, _)| count > *c) {
            best = Some((count, a));
        }
        if best.as_ref().map(|(c, _)| *c) == Some(f.m()) {
            break;
        }
    }
    best.expect("at least one restart ran").1
}

/// Tracks which clauses are unsatisfied with O(1) membership updates
/// (swap-remove list plus a position index).
struct UnsatSet {
    ids: Vec<u32>,
    pos: Vec<usize>,
}

impl UnsatSet {
    const SATISFIED: usize = usize::MAX;

    fn new(sat: &[bool]) -> Self {
        let mut s = Self {
            ids: Vec::new(),
            pos: vec![Self::SATISFIED; sat.len()],
        };
        for (ci, ok) in sat.iter().enumerate() {
            if !ok {
                s.insert(ci as u32);
            }
        }
        s
    }

    fn insert(&mut self, ci: u32) {
        if self.pos[ci as usize] == Self::SATISFIED {
            self.pos[ci as usize] = self.ids.len();
            self.ids.push(ci);
        }
    }

    fn remove(&mut self, ci: u32) {
        let p = self.pos[ci as usize];
        if p != Self::SATISFIED {
            let last = *self.ids.last().expect("nonempty when removing");
            self.ids[p] = last;
            self.pos[last as usize] = p;
            self.ids.pop();
            self.pos[ci as usize] = Self::SATISFIED;
        }
    }
}

/// One focused-walk climb, mutating `a` to the best assignment seen and
/// returning its satisfied count. Monotone versus the start by construction.
fn climb<R: Rng + ?Sized>(
    f: &Formula,
    touching: &[Vec<u32>],
    a: &mut Assignment,
    rng: &mut R,
) -> usize {
    let m = f.m();
    let clauses = f.clauses();
    let is_sat = |bits: &[bool], ci: u32| {
        clauses[ci as usize]
            .vars()
            .iter()
            .filter(|&&v| bits[v as usize - 1])
            .count()
            == 2
    };
    let sat_init: Vec<bool> = (0..m as u32).map(|ci| is_sat(&a.bits, ci)).collect();
    let mut count = sat_init.iter().filter(|s| **s).count();
    let mut sat = sat_init;
    let mut unsat = UnsatSet::new(&sat);
    let mut best_count = count;
    let mut best_bits = a.bits.clone();
    for _ in 0..CLIMB_FLIPS_PER_VAR * f.n() {
        if count == m {
            return m;
        }
        let ci = unsat.ids[rng.gen_range(0..unsat.ids.len())];
        let vars = clauses[ci as usize].vars();
        let v = if rng.gen_bool(CLIMB_NOISE) {
            vars[rng.gen_range(0..4)] as usize - 1
        } else {
            let mut best_gain = i64::MIN;
            let mut cands: Vec<usize> = Vec::with_capacity(4);
            for &vv in &vars {
                let v0 = vv as usize - 1;
                a.bits[v0] = !a.bits[v0];
                let mut gain = 0i64;
                for &cj in &touching[v0] {
                    gain += i64::from(is_sat(&a.bits, cj)) - i64::from(sat[cj as usize]);
                }
                a.bits[v0] = !a.bits[v0];
                if gain > best_gain {
                    best_gain = gain;
                    cands.clear();
                    cands.push(v0);
                } else if gain == best_gain {
                    cands.push(v0);
                }
            }
            cands[rng.gen_range(0..cands.len())]
        };
        a.bits[v] = !a.bits[v];
        for &cj in &touching[v] {
            let now = is_sat(&a.bits, cj);
            if now != sat[cj as usize] {
                sat[cj as usize] = now;
                if now {
                    count += 1;
                    unsat.remove(cj);
                } else {
                    count -= 1;
                    unsat.insert(cj);
                }
            }
        }
        if count > best_count {
            best_count = count;
            best_bits.clone_from(&a.bits);
        }
    }
    a.bits = best_bits;
    best_count
}

/// Checks that `f` can stand in for a NO instance with promise gap `delta`.
/// A planted witness is an immediate violation. At n ≤ 26 the gap is
/// certified by exhaustive scan; larger unplanted instances are taken on
/// trust, since certification is exactly the intractable step.
pub fn certify_no_instance(f: &Formula, delta: f64) -> Result<()> {
    if f.planted().is_some() {
        return Err(Error::PromiseViolation(
            "instance carries a planted satisfying assignment; soundness needs a NO instance"
                .into(),
        ));
    }
    if f.n() <= BRUTE_FORCE_MAX_N {
        let measured = brute_force_delta(f)?;
        if measured < delta {
            return Err(Error::PromiseViolation(format!(
                "exhaustive scan certifies gap {measured}, below the promised delta {delta}"
            )));
        }
    }
    Ok(())
}

/// Fraction of `trials` protocol runs the verifier accepts when the prover
/// plays `strategy` on NO instance `f`. Assignment-choosing strategies are
/// resolved once and replayed; per-trial randomness is the measurement.
pub fn empirical_soundness<R: Rng + ?Sized>(
    f: &Formula,
    strategy: &AdversaryStrategy,
    params: &ProtocolParams<f64>,
    trials: usize,
    rng: &mut R,
) -> Result<f64> {
    params.validate()?;
    if trials == 0 {
        return Err(Error::InvalidInput("trials must be at least 1".into()));
    }
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
    let clicks = click_probabilities(&params.optical)?;
    let (_, _, t) = thresholds(p_yes(&clicks), p_no_bound(&clicks, params.delta)?, params.m)?;
    let phases = resolve_phases(f, strategy, params.n, rng)?;
    let seeds: Vec<u64> = (0..trials).map(|_| rng.gen()).collect();
    let accepts = seeds
        .par_iter()
        .filter(|&&seed| {
            let mut trial_rng = ChaCha12Rng::seed_from_u64(seed);
            // Lengths and params were validated above, so the pipeline
            // cannot fail.
            let trace = match &phases {
                Some(p) => arthur_measure(p, &params.optical, &mut trial_rng),
                None => arthur_measure_vacuum(params.n, &params.optical, &mut trial_rng),
            }
            .expect("validated optics measure any phase sequence");
            let pa = arthur_assign(&trace, &mut trial_rng);
            arthur_verdict(&pa, f, t)
                .expect("assignment length matches the formula")
                .accept
        })
        .count();
    Ok(accepts as f64 / trials as f64)
}

/// Resolves a strategy into the phase sequence it sends, `None` for vacuum.
pub(crate) fn resolve_phases<R: Rng + ?Sized>(
    f: &Formula,
    strategy: &AdversaryStrategy,
    n: usize,
    rng: &mut R,
) -> Result<Option<Vec<bool>>> {
    match strategy {
        AdversaryStrategy::BestAssignmentExhaustive => {
            Ok(Some(merlin_encode(&best_assignment_exhaustive(f)?, n)?))
        }
        AdversaryStrategy::BestAssignmentLocalSearch { restarts } => Ok(Some(merlin_encode(
            &best_assignment_local_search(f, *restarts, rng),
            n,
        )?)),
        AdversaryStrategy::FixedAssignment(a) => Ok(Some(merlin_encode(a, n)?)),
        AdversaryStrategy::VacuumFloor => Ok(None),
    }
}
