//! Balanced 2-out-of-4 SAT instances: model, generation, certification, text format.
//!
//! A clause holds four distinct variables and is satisfied iff exactly two of
//! them are true. Instances here are *balanced*: every variable occurs in the
//! same number `r` of clauses, so `M = N·r/4`. YES instances carry a planted
//! satisfying assignment; NO instances are characterized by a promised gap δ
//! (every assignment leaves at least a δ fraction of clauses unsatisfied),
//! certified by brute force at small `n` only.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Truth values for all `n` variables; `bits[k]` is x_{k+1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub bits: Vec<bool>,
}

impl Assignment {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn true_count(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    /// Flips every bit. Exactly-two-true clauses are complement-invariant.
    pub fn complement(&self) -> Self {
        Self {
            bits: self.bits.iter().map(|b| !b).collect(),
        }
    }

    /// Packs the low `n` bits of `value` with x_1 as the least-significant bit.
    ///
    /// This is the enumeration order used by the exhaustive oracles, and it
    /// defines the "lowest binary value" tie-break.
    pub fn from_index(value: u64, n: usize) -> Self {
        assert!(n <= 64, "index encoding holds at most 64 variables");
        Self {
            bits: (0..n).map(|k| (value >> k) & 1 == 1).collect(),
        }
    }

    pub fn to_bitstring(&self) -> String {
        self.bits.iter().map(|b| if *b { '1' } else { '0' }).collect()
    }

    pub fn from_bitstring(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidInput(format!(
                    "bitstring may contain only 0 and 1, found {other:?}"
                ))),
            })
            .collect::<Result<Vec<bool>>>()?;
        Ok(Self { bits })
    }
}

/// Four distinct 1-based variable indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Clause {
    vars: [u32; 4],
}

impl Clause {
    pub fn new(vars: [u32; 4]) -> Result<Self> {
        for i in 0..4 {
            if vars[i] == 0 {
                return Err(Error::InvalidInput(
                    "clause indices are 1-based; 0 is not a variable".into(),
                ));
            }
            for j in (i + 1)..4 {
                if vars[i] == vars[j] {
                    return Err(Error::InvalidInput(format!(
                        "clause has duplicate variable {}",
                        vars[i]
                    )));
                }
            }
        }
        Ok(Self { vars })
    }

    pub fn vars(&self) -> [u32; 4] {
        self.vars
    }
}

/// Balanced 2-out-of-4 SAT formula with an optional planted solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Formula {
    n: usize,
    clauses: Vec<Clause>,
    degree: u32,
    /// Promise gap in thousandths, 1..=1000. Stored as an integer so the text
    /// format round-trips exactly.
    delta_milli: u32,
    planted: Option<Assignment>,
}

impl Formula {
    /// Validates all structural invariants: arity and index ranges, exact
    /// balance (every variable occurs `degree` times), M = N·r/4, δ range,
    /// and plantedness when a solution is attached.
    pub fn new(
        n: usize,
        clauses: Vec<Clause>,
        degree: u32,
        delta_milli: u32,
        planted: Option<Assignment>,
    ) -> Result<Self> {
        if n < 4 {
            return Err(Error::InvalidInput(format!(
                "need at least 4 variables for one clause, got n={n}"
            )));
        }
        if degree == 0 {
            return Err(Error::InvalidInput("degree must be at least 1".into()));
        }
        if !(1..=1000).contains(&delta_milli) {
            return Err(Error::InvalidInput(format!(
                "delta_milli must be in 1..=1000, got {delta_milli}"
            )));
        }
        let expected_m = n
            .checked_mul(degree as usize)
            .filter(|t| t % 4 == 0)
            .map(|t| t / 4)
            .ok_or_else(|| {
                Error::InvalidInput(format!("n*degree = {n}*{degree} is not divisible by 4"))
            })?;
        if clauses.len() != expected_m {
            return Err(Error::InvalidInput(format!(
                "balanced formula needs M = n*degree/4 = {expected_m} clauses, got {}",
                clauses.len()
            )));
        }
        let mut occurrences = vec![0u32; n];
        for c in &clauses {
            for v in c.vars() {
                let idx = v as usize;
                if idx > n {
                    return Err(Error::InvalidInput(format!(
                        "clause variable {v} exceeds n={n}"
                    )));
                }
                occurrences[idx - 1] += 1;
            }
        }
        if let Some(bad) = occurrences.iter().position(|&c| c != degree) {
            return Err(Error::InvalidInput(format!(
                "variable {} occurs {} times, expected degree {}",
                bad + 1,
                occurrences[bad],
                degree
            )));
        }
        if let Some(a) = &planted {
            if a.len() != n {
                return Err(Error::InvalidInput(format!(
                    "planted assignment has {} bits, expected {n}",
                    a.len()
                )));
            }
            for (i, c) in clauses.iter().enumerate() {
                if !check_clause(a, c)? {
                    return Err(Error::InvalidInput(format!(
                        "planted assignment violates clause {}",
                        i + 1
                    )));
                }
            }
        }
        Ok(Self {
            n,
            clauses,
            degree,
            delta_milli,
            planted,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Clause count M.
    pub fn m(&self) -> usize {
        self.clauses.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn delta_milli(&self) -> u32 {
        self.delta_milli
    }

    /// Promise gap δ as a float.
    pub fn delta(&self) -> f64 {
        f64::from(self.delta_milli) / 1000.0
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn planted(&self) -> Option<&Assignment> {
        self.planted.as_ref()
    }

    /// Returns the same formula with the given promise gap.
    pub fn with_delta_milli(mut self, delta_milli: u32) -> Result<Self> {
        if !(1..=1000).contains(&delta_milli) {
            return Err(Error::InvalidInput(format!(
                "delta_milli must be in 1..=1000, got {delta_milli}"
            )));
        }
        self.delta_milli = delta_milli;
        Ok(self)
    }
}

/// True iff exactly two of the clause's four variables are true under `a`.
pub fn check_clause(a: &Assignment, c: &Clause) -> Result<bool> {
    let mut trues = 0;
    for v in c.vars() {
        let idx = v as usize;
        if idx == 0 || idx > a.len() {
            return Err(Error::InvalidInput(format!(
                "clause variable {v} outside assignment of length {}",
                a.len()
            )));
        }
        if a.bits[idx - 1] {
            trues += 1;
        }
    }
    Ok(trues == 2)
}

/// Number of clauses of `f` satisfied by `a`.
pub fn count_satisfied(f: &Formula, a: &Assignment) -> Result<usize> {
    if a.len() != f.n() {
        return Err(Error::InvalidInput(format!(
            "assignment has {} bits, formula has n={}",
            a.len(),
            f.n()
        )));
    }
    let mut sat = 0;
    for c in f.clauses() {
        if check_clause(a, c)? {
            sat += 1;
        }
    }
    Ok(sat)
}

/// Attempt budget for the generation repair loop, in proposed swaps.
const REPAIR_BUDGET_PER_CLAUSE: usize = 100;

/// Generates a balanced formula with a planted satisfying assignment.
///
/// The planted assignment is uniform over strings with exactly n/2 true bits:
/// balance forces the true count (each clause consumes exactly two true slots
/// and each variable occurs `degree` times, so T·degree = 2M = n·degree/2).
/// Consequently odd `n` is infeasible even when n·degree is divisible by 4.
///
/// Construction: concatenate `degree` random permutations of the variables,
/// chunk into 4-tuples, then repair duplicates and off-count clauses by
/// bounded random swaps (budget 100·M proposals). Deterministic given `seed`.
pub fn gen_balanced_planted(n: usize, degree: u32, seed: u64) -> Result<Formula> {
    if degree == 0 {
        return Err(Error::InvalidInput("degree must be at least 1".into()));
    }
    let slots_total = n
        .checked_mul(degree as usize)
        .ok_or_else(|| Error::InvalidInput("n*degree overflows".into()))?;
    if slots_total % 4 != 0 {
        return Err(Error::Generation(format!(
            "n*degree = {n}*{degree} = {slots_total} is not divisible by 4"
        )));
    }
    if n < 8 {
        return Err(Error::InvalidInput(format!(
            "generation needs n >= 8, got {n}"
        )));
    }
    if !n.is_multiple_of(2) {
        return Err(Error::Generation(format!(
            "odd n = {n} admits no balanced planted instance (true count must be n/2)"
        )));
    }
    let m = slots_total / 4;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);

    let mut bits = vec![false; n];
    for b in bits.iter_mut().take(n / 2) {
        *b = true;
    }
    bits.shuffle(&mut rng);
    let planted = Assignment::new(bits);

    let mut slots: Vec<u32> = Vec::with_capacity(slots_total);
    for _ in 0..degree {
        let mut perm: Vec<u32> = (1..=n as u32).collect();
        perm.shuffle(&mut rng);
        slots.extend(perm);
    }
    let mut clauses: Vec<[u32; 4]> = slots
        .chunks_exact(4)
        .map(|c| [c[0], c[1], c[2], c[3]])
        .collect();

    let budget = REPAIR_BUDGET_PER_CLAUSE * m;
    repair_clauses(&mut clauses, &planted, budget, &mut rng)?;

    let clauses = clauses
        .into_iter()
        .map(Clause::new)
        .collect::<Result<Vec<Clause>>>()?;
    Formula::new(n, clauses, degree, 150, Some(planted))
}

fn planted_true_count(c: &[u32; 4], planted: &Assignment) -> usize {
    c.iter()
        .filter(|&&v| planted.bits[v as usize - 1])
        .count()
}

fn contains_var(c: &[u32; 4], v: u32) -> bool {
    c.contains(&v)
}

fn has_duplicate(c: &[u32; 4]) -> bool {
    (0..4).any(|i| (i + 1..4).any(|j| c[i] == c[j]))
}

/// Swap-repairs `clauses` until every clause has four distinct variables and
/// exactly two planted-true slots. All swaps preserve balance (variables only
/// relocate) and the total planted-true slot count.
fn repair_clauses(
    clauses: &mut [[u32; 4]],
    planted: &Assignment,
    mut budget: usize,
    rng: &mut ChaCha12Rng,
) -> Result<()> {
    let m = clauses.len();
    loop {
        // Duplicate phase: swap one copy of a duplicated variable into another
        // clause, exchanging slots of equal planted value so true counts are
        // untouched.
        let mut dups: Vec<usize> = (0..m).filter(|&i| has_duplicate(&clauses[i])).collect();
        while let Some(&ci) = dups.last() {
            if budget == 0 {
                return Err(Error::Generation(
                    "repair budget exhausted while removing duplicate variables".into(),
                ));
            }
            let c = clauses[ci];
            let slot = (0..4)
                .find(|&i| (0..i).any(|j| c[j] == c[i]))
                .expect("clause listed as duplicated");
            let v = c[slot];
            let bit_v = planted.bits[v as usize - 1];
            let cj = rng.gen_range(0..m);
            budget -= 1;
            if cj == ci {
                continue;
            }
            let other = clauses[cj];
            let candidate = (0..4).find(|&j| {
                let w = other[j];
                planted.bits[w as usize - 1] == bit_v
                    && !contains_var(&clauses[ci], w)
                    && !contains_var(&other, v)
            });
            if let Some(j) = candidate {
                clauses[ci][slot] = other[j];
                clauses[cj][j] = v;
                if !has_duplicate(&clauses[ci]) {
                    dups.pop();
                }
            }
        }

        // True-count phase: move a planted-true slot from a surplus clause to
        // a deficit clause in exchange for a false slot, guarding against new
        // duplicates. Surplus and deficit totals always match because the
        // planted-true slot count is exactly 2M.
        let mut surplus: Vec<usize> = (0..m)
            .filter(|&i| planted_true_count(&clauses[i], planted) > 2)
            .collect();
        let mut deficit: Vec<usize> = (0..m)
            .filter(|&i| planted_true_count(&clauses[i], planted) < 2)
            .collect();
        while let (Some(&ci), Some(&cj)) = (surplus.last(), deficit.last()) {
            if budget == 0 {
                return Err(Error::Generation(
                    "repair budget exhausted while balancing planted true counts".into(),
                ));
            }
            let (a, b) = (clauses[ci], clauses[cj]);
            let mut swapped = false;
            'combos: for i in 0..4 {
                let v = a[i];
                if !planted.bits[v as usize - 1] || contains_var(&b, v) {
                    continue;
                }
                for j in 0..4 {
                    let w = b[j];
                    budget = budget.saturating_sub(1);
                    if planted.bits[w as usize - 1] || contains_var(&a, w) {
                        continue;
                    }
                    clauses[ci][i] = w;
                    clauses[cj][j] = v;
                    swapped = true;
                    break 'combos;
                }
            }
            if !swapped {
                // Blocked pair: rotate the deficit queue to find another partner.
                let last = deficit.pop().expect("deficit nonempty");
                deficit.insert(0, last);
                budget = budget.saturating_sub(1);
                if budget == 0 {
                    return Err(Error::Generation(
                        "repair budget exhausted on blocked swap pairs".into(),
                    ));
                }
                continue;
            }
            if planted_true_count(&clauses[ci], planted) <= 2 {
                surplus.pop();
            }
            if planted_true_count(&clauses[cj], planted) >= 2 {
                deficit.pop();
            }
        }

        let clean = clauses
            .iter()
            .all(|c| !has_duplicate(c) && planted_true_count(c, planted) == 2);
        if clean {
            return Ok(());
        }
        if budget == 0 {
            return Err(Error::Generation("repair budget exhausted".into()));
        }
    }
}

/// Balance-preserving random entry swaps between clauses. The planted
/// assignment is dropped; the result is a candidate NO instance whose actual
/// gap must be certified (small n) with [`brute_force_delta`] or taken on
/// promise (large n).
pub fn rewire_entries(f: &Formula, swaps: usize, seed: u64) -> Result<Formula> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let m = f.m();
    if m < 2 {
        return Err(Error::InvalidInput(
            "rewiring needs at least two clauses".into(),
        ));
    }
    let mut clauses: Vec<[u32; 4]> = f.clauses().iter().map(|c| c.vars()).collect();
    let mut done = 0;
    let mut attempts = 0usize;
    let budget = REPAIR_BUDGET_PER_CLAUSE * swaps.max(1);
    while done < swaps {
        attempts += 1;
        if attempts > budget {
            return Err(Error::Generation(format!(
                "rewire budget exhausted after {done} of {swaps} swaps"
            )));
        }
        let ci = rng.gen_range(0..m);
        let cj = rng.gen_range(0..m);
        if ci == cj {
            continue;
        }
        let si = rng.gen_range(0..4);
        let sj = rng.gen_range(0..4);
        let v = clauses[ci][si];
        let w = clauses[cj][sj];
        if v == w || contains_var(&clauses[ci], w) || contains_var(&clauses[cj], v) {
            continue;
        }
        clauses[ci][si] = w;
        clauses[cj][sj] = v;
        done += 1;
    }
    let clauses = clauses
        .into_iter()
        .map(Clause::new)
        .collect::<Result<Vec<Clause>>>()?;
    Formula::new(f.n(), clauses, f.degree(), f.delta_milli(), None)
}

/// Largest variable count the exhaustive oracles accept.
pub const BRUTE_FORCE_MAX_N: usize = 26;

/// Minimum unsatisfied-clause fraction over all 2^n assignments.
///
/// Returns 0 iff the formula is satisfiable. Exactly-two-true clauses are
/// complement-invariant, so only assignments with x_n = 0 are scanned; the
/// other half mirrors them.
pub fn brute_force_delta(f: &Formula) -> Result<f64> {
    let n = f.n();
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::Refusal(format!(
            "exhaustive scan limited to n <= {BRUTE_FORCE_MAX_N}, got n = {n}"
        )));
    }
    let masks: Vec<u32> = f
        .clauses()
        .iter()
        .map(|c| c.vars().iter().map(|&v| 1u32 << (v - 1)).sum())
        .collect();
    let half: u64 = 1u64 << (n - 1);
    const CHUNK: u64 = 1 << 16;
    let chunks = half.div_ceil(CHUNK);
    let min_unsat = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let lo = chunk * CHUNK;
            let hi = (lo + CHUNK).min(half);
            let mut best = usize::MAX;
            for a in lo..hi {
                let a = a as u32;
                let unsat = masks
                    .iter()
                    .filter(|&&mask| (a & mask).count_ones() != 2)
                    .count();
                if unsat < best {
                    best = unsat;
                }
            }
            best
        })
        .min()
        .expect("at least one chunk");
    Ok(min_unsat as f64 / f.m() as f64)
}

/// Renders the instance text format:
/// header `p 2in4 <N> <M> <r> <delta-milli>`, an optional planted line
/// `a <bitstring>`, and one `c i j k l` line per clause. LF endings.
pub fn serialize(f: &Formula) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "p 2in4 {} {} {} {}\n",
        f.n(),
        f.m(),
        f.degree(),
        f.delta_milli()
    ));
    if let Some(a) = f.planted() {
        out.push_str(&format!("a {}\n", a.to_bitstring()));
    }
    for c in f.clauses() {
        let [i, j, k, l] = c.vars();
        out.push_str(&format!("c {i} {j} {k} {l}\n"));
    }
    out
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parses the instance text format produced by [`serialize`].
/// Errors carry the 1-based offending line.
pub fn parse(text: &str) -> Result<Formula> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty instance file"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 6 || tokens[0] != "p" || tokens[1] != "2in4" {
        return Err(parse_err(
            1,
            "header must be `p 2in4 <N> <M> <r> <delta-milli>`",
        ));
    }
    let n: usize = tokens[2]
        .parse()
        .map_err(|_| parse_err(1, format!("bad variable count {:?}", tokens[2])))?;
    let m: usize = tokens[3]
        .parse()
        .map_err(|_| parse_err(1, format!("bad clause count {:?}", tokens[3])))?;
    let degree: u32 = tokens[4]
        .parse()
        .map_err(|_| parse_err(1, format!("bad degree {:?}", tokens[4])))?;
    let delta_milli: u32 = tokens[5]
        .parse()
        .map_err(|_| parse_err(1, format!("bad delta-milli {:?}", tokens[5])))?;

    let mut planted: Option<Assignment> = None;
    let mut clauses: Vec<Clause> = Vec::with_capacity(m);
    for (idx, line) in lines {
        let lineno = idx + 1;
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("a") => {
                if planted.is_some() {
                    return Err(parse_err(lineno, "duplicate planted-assignment line"));
                }
                let bitstring = parts
                    .next()
                    .ok_or_else(|| parse_err(lineno, "planted line needs a bitstring"))?;
                if parts.next().is_some() {
                    return Err(parse_err(lineno, "trailing tokens after bitstring"));
                }
                let a = Assignment::from_bitstring(bitstring)
                    .map_err(|e| parse_err(lineno, e.to_string()))?;
                if a.len() != n {
                    return Err(parse_err(
                        lineno,
                        format!("bitstring has {} bits, header says n={}", a.len(), n),
                    ));
                }
                planted = Some(a);
            }
            Some("c") => {
                let vars: Vec<u32> = parts
                    .map(|t| {
                        t.parse::<u32>()
                            .map_err(|_| parse_err(lineno, format!("bad variable index {t:?}")))
                    })
                    .collect::<Result<Vec<u32>>>()?;
                if vars.len() != 4 {
                    return Err(parse_err(
                        lineno,
                        format!("clause needs exactly 4 indices, found {}", vars.len()),
                    ));
                }
                for &v in &vars {
                    if v == 0 || v as usize > n {
                        return Err(parse_err(
                            lineno,
                            format!("variable index {v} outside 1..={n}"),
                        ));
                    }
                }
                let clause = Clause::new([vars[0], vars[1], vars[2], vars[3]])
                    .map_err(|e| parse_err(lineno, e.to_string()))?;
                clauses.push(clause);
            }
            Some(tag) => {
                return Err(parse_err(lineno, format!("unknown line tag {tag:?}")));
            }
            None => {
                return Err(parse_err(lineno, "blank line not allowed"));
            }
        }
    }
    if clauses.len() != m {
        return Err(parse_err(
            1,
            format!("header declares M={m} clauses, found {}", clauses.len()),
        ));
    }
    Formula::new(n, clauses, degree, delta_milli, planted)
        .map_err(|e| parse_err(0, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clause(v: [u32; 4]) -> Clause {
        Clause::new(v).unwrap()
    }

    #[test]
    fn check_clause_counts_exactly_two() {
        let c = clause([1, 2, 3, 4]);
        let two = Assignment::from_bitstring("1100").unwrap();
        let three = Assignment::from_bitstring("1110").unwrap();
        let zero = Assignment::from_bitstring("0000").unwrap();
        assert!(check_clause(&two, &c).unwrap());
        assert!(!check_clause(&three, &c).unwrap());
        assert!(!check_clause(&zero, &c).unwrap());
    }

    #[test]
    fn check_clause_is_complement_invariant() {
        let c = clause([1, 3, 4, 6]);
        for value in 0..64u64 {
            let a = Assignment::from_index(value, 6);
            assert_eq!(
                check_clause(&a, &c).unwrap(),
                check_clause(&a.complement(), &c).unwrap()
            );
        }
    }

    #[test]
    fn check_clause_rejects_out_of_range() {
        let c = clause([1, 2, 3, 9]);
        let a = Assignment::from_bitstring("1100").unwrap();
        assert!(matches!(
            check_clause(&a, &c),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn generation_smallest_case() {
        let f = gen_balanced_planted(8, 1, 7).unwrap();
        assert_eq!(f.m(), 2);
        assert_eq!(f.degree(), 1);
        let planted = f.planted().unwrap();
        assert_eq!(planted.true_count(), 4);
        for c in f.clauses() {
            assert!(check_clause(planted, c).unwrap());
        }
    }

    #[test]
    fn generation_large_balanced() {
        let f = gen_balanced_planted(10000, 4, 42).unwrap();
        assert_eq!(f.m(), 10000);
        let mut occ = vec![0u32; f.n()];
        for c in f.clauses() {
            for v in c.vars() {
                occ[v as usize - 1] += 1;
            }
        }
        assert!(occ.iter().all(|&o| o == 4));
        let planted = f.planted().unwrap();
        assert_eq!(planted.true_count(), 5000);
    }

    #[test]
    fn generation_rejects_infeasible() {
        // 7*1 is not divisible by 4.
        assert!(matches!(gen_balanced_planted(7, 1, 0), Err(Error::Generation(_))));
        assert!(matches!(gen_balanced_planted(10, 1, 0), Err(Error::Generation(_))));
        // 9*4 is divisible by 4, but odd n has no balanced planted solution.
        assert!(matches!(gen_balanced_planted(9, 4, 0), Err(Error::Generation(_))));
        assert!(matches!(gen_balanced_planted(4, 4, 0), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn generation_is_deterministic() {
        let a = gen_balanced_planted(64, 4, 3);
        let b = gen_balanced_planted(64, 4, 3);
        assert_eq!(a.unwrap(), b.unwrap());
    }

    #[test]
    fn brute_force_zero_on_planted() {
        let f = gen_balanced_planted(16, 4, 11).unwrap();
        assert_eq!(brute_force_delta(&f).unwrap(), 0.0);
    }

    #[test]
    fn brute_force_single_clause() {
        let f = Formula::new(4, vec![clause([1, 2, 3, 4])], 1, 150, None).unwrap();
        assert_eq!(brute_force_delta(&f).unwrap(), 0.0);
    }

    #[test]
    fn brute_force_refuses_large_n() {
        let f = gen_balanced_planted(28, 1, 0).unwrap();
        assert!(matches!(brute_force_delta(&f), Err(Error::Refusal(_))));
    }

    /// Independent oracle: plain serial scan over all 2^n assignments with no
    /// masking or symmetry tricks.
    fn naive_delta(f: &Formula) -> f64 {
        let mut best = usize::MAX;
        for value in 0..(1u64 << f.n()) {
            let a = Assignment::from_index(value, f.n());
            let unsat = f.m() - count_satisfied(f, &a).unwrap();
            best = best.min(unsat);
        }
        best as f64 / f.m() as f64
    }

    #[test]
    fn brute_force_matches_naive_scan_on_rewired_instance() {
        let f = gen_balanced_planted(16, 4, 5).unwrap();
        let no = rewire_entries(&f, 24, 99).unwrap();
        let fast = brute_force_delta(&no).unwrap();
        assert_eq!(fast, naive_delta(&no));
        assert!(fast > 0.0, "rewired instance unexpectedly satisfiable");
    }

    #[test]
    fn rewire_preserves_balance_and_drops_planted() {
        let f = gen_balanced_planted(24, 4, 1).unwrap();
        let no = rewire_entries(&f, 30, 2).unwrap();
        assert!(no.planted().is_none());
        assert_eq!(no.m(), f.m());
        let mut occ = vec![0u32; no.n()];
        for c in no.clauses() {
            for v in c.vars() {
                occ[v as usize - 1] += 1;
            }
        }
        assert!(occ.iter().all(|&o| o == 4));
    }

    #[test]
    fn serialize_parse_roundtrip() {
        let f = gen_balanced_planted(32, 2, 9).unwrap();
        let text = serialize(&f);
        let parsed = parse(&text).unwrap();
        assert_eq!(parsed, f);
    }

    #[test]
    fn parse_rejects_wrong_arity() {
        let text = "p 2in4 8 2 1 150\nc 1 2 3\nc 4 5 6 7\n";
        match parse(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn parse_rejects_duplicate_index() {
        let text = "p 2in4 8 2 1 150\nc 1 2 3 3\nc 4 5 6 7\n";
        match parse(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn parse_rejects_header_clause_mismatch() {
        let text = "p 2in4 8 3 1 150\nc 1 2 3 4\nc 5 6 7 8\n";
        match parse(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn parse_reports_unbalanced_formula() {
        // Structure is well-formed line by line, but variable 1 occurs twice
        // and variable 8 never, so whole-file validation fails.
        let text = "p 2in4 8 2 1 150\nc 1 2 3 4\nc 1 5 6 7\n";
        assert!(matches!(parse(text), Err(Error::Parse { line: 0, .. })));
    }

    #[test]
    fn delta_milli_roundtrips_exactly() {
        let f = gen_balanced_planted(16, 4, 3)
            .unwrap()
            .with_delta_milli(137)
            .unwrap();
        let parsed = parse(&serialize(&f)).unwrap();
        assert_eq!(parsed.delta_milli(), 137);
        assert_eq!(parsed.delta(), 0.137);
    }
}
