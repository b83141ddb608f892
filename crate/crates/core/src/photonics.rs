//! Detection-probability model and per-pulse click sampling.
//!
//! The measurement interferes the prover's coherent pulse with the verifier's
//! local pulse on a balanced beam splitter and watches two threshold detectors
//! D0/D1. For a pulse of mean photon number μ and interferometer visibility ν,
//! the detector matching the encoded bit receives mean 2νμ photons and the
//! other 2(1−ν)μ, so with dark probability d per detector per gate each fires
//! independently with q = 1 − (1−q_optical)(1−d). The four click categories
//! form an exact product measure; no amplitude-level state is ever
//! represented because the click statistics of coherent light on threshold
//! detectors are closed-form.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Physical knobs of one pulse-and-measure step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OpticalParams<F: Real> {
    /// Mean photon number per pulse, μ = |α|² ≥ 0. Losses are modeled as
    /// pre-compensation: μ is the post-loss effective value.
    pub mu: F,
    /// Interference visibility ν ∈ [0, 1]; 1 is ideal, lower values leak
    /// light into the wrong detector.
    pub nu: F,
    /// Dark-count probability per detector per pulse gate, in [0, 1).
    pub p_dark: F,
}

impl<F: Real> OpticalParams<F> {
    pub fn new(mu: F, nu: F, p_dark: F) -> Result<Self> {
        let p = Self { mu, nu, p_dark };
        p.validate()?;
        Ok(p)
    }

    /// Dark-count-free parameters.
    pub fn clean(mu: F, nu: F) -> Result<Self> {
        Self::new(mu, nu, F::zero())
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mu.is_finite() && self.mu >= F::zero()) {
            return Err(Error::InvalidInput(format!(
                "mu must be finite and nonnegative, got {}",
                self.mu
            )));
        }
        if !(self.nu >= F::zero() && self.nu <= F::one()) {
            return Err(Error::InvalidInput(format!(
                "nu must lie in [0, 1], got {}",
                self.nu
            )));
        }
        if !(self.p_dark >= F::zero() && self.p_dark < F::one()) {
            return Err(Error::InvalidInput(format!(
                "p_dark must lie in [0, 1), got {}",
                self.p_dark
            )));
        }
        Ok(())
    }
}

/// Closed-form per-pulse click probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClickProbabilities<F: Real> {
    /// Only the detector matching the encoded bit fires.
    pub p_c: F,
    /// Only the opposite detector fires.
    pub p_w: F,
    /// Both detectors fire.
    pub p_dc: F,
    /// No detector fires.
    pub p_none: F,
    /// Any click: p_c + p_w + p_dc.
    pub p_h: F,
    /// Prover-independent click floor 1 − e^{−μ}: the verifier's own pulse
    /// guarantees this much even against a vacuum input.
    pub p_d: F,
}

/// Detector record for one pulse slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClickOutcome {
    None,
    D0,
    D1,
    Both,
}

/// Per-pulse outcomes of one protocol run.
pub type ClickTrace = Vec<ClickOutcome>;

/// Ideal (ν = 1, no dark counts) per-detector click probabilities for an
/// honest pulse encoding `x_k`: the matching detector fires with 1 − e^{−2μ},
/// the other never. Returned as (D0, D1).
pub fn ideal_detect_prob<F: Real>(mu: F, x_k: bool) -> Result<(F, F)> {
    if !(mu.is_finite() && mu >= F::zero()) {
        return Err(Error::InvalidInput(format!(
            "mu must be finite and nonnegative, got {mu}"
        )));
    }
    let hit = F::one() - (-F::of(2.0) * mu).exp();
    Ok(if x_k {
        (F::zero(), hit)
    } else {
        (hit, F::zero())
    })
}

/// Click probabilities under visibility ν and per-detector dark probability.
///
/// Optical fire probabilities are 1 − e^{−2νμ} (matching detector) and
/// 1 − e^{−2(1−ν)μ} (wrong detector); a detector fires iff its optical or
/// dark event happens. The four categories sum to one.
pub fn click_probabilities<F: Real>(p: &OpticalParams<F>) -> Result<ClickProbabilities<F>> {
    p.validate()?;
    let two = F::of(2.0);
    let a_opt = F::one() - (-two * p.nu * p.mu).exp();
    let b_opt = F::one() - (-two * (F::one() - p.nu) * p.mu).exp();
    let qa = F::one() - (F::one() - a_opt) * (F::one() - p.p_dark);
    let qb = F::one() - (F::one() - b_opt) * (F::one() - p.p_dark);
    let p_c = qa * (F::one() - qb);
    let p_w = qb * (F::one() - qa);
    let p_dc = qa * qb;
    let p_none = (F::one() - qa) * (F::one() - qb);
    Ok(ClickProbabilities {
        p_c,
        p_w,
        p_dc,
        p_none,
        p_h: p_c + p_w + p_dc,
        p_d: F::one() - (-p.mu).exp(),
    })
}

/// Samples one pulse.
///
/// `honest_bit = Some(b)` draws from the four click categories with the
/// matching detector D_b. `None` models a prover sending vacuum: the
/// verifier's own pulse splits evenly, so each detector independently fires
/// with 1 − √(1 − p_d) = 1 − e^{−μ/2} and the total click probability is
/// exactly p_d. Dark counts are not folded into the vacuum branch; the click
/// floor is a lower bound either way.
pub fn sample_click<R: Rng + ?Sized>(
    p: &ClickProbabilities<f64>,
    honest_bit: Option<bool>,
    rng: &mut R,
) -> ClickOutcome {
    match honest_bit {
        Some(bit) => {
            let u: f64 = rng.gen();
            let (correct, wrong) = if bit {
                (ClickOutcome::D1, ClickOutcome::D0)
            } else {
                (ClickOutcome::D0, ClickOutcome::D1)
            };
            if u < p.p_c {
                correct
            } else if u < p.p_c + p.p_w {
                wrong
            } else if u < p.p_c + p.p_w + p.p_dc {
                ClickOutcome::Both
            } else {
                ClickOutcome::None
            }
        }
        None => {
            let q = 1.0 - (1.0 - p.p_d).sqrt();
            let d0 = rng.gen::<f64>() < q;
            let d1 = rng.gen::<f64>() < q;
            match (d0, d1) {
                (false, false) => ClickOutcome::None,
                (true, false) => ClickOutcome::D0,
                (false, true) => ClickOutcome::D1,
                (true, true) => ClickOutcome::Both,
            }
        }
    }
}

/// Estimates visibility from a calibration trace taken with a known all-zeros
/// proof, by inverting the wrong-detector single-click rate
/// p_w(ν) = e^{−2μν} − e^{−2μ} (strictly decreasing in ν):
/// ν̂ = −ln(r_w + e^{−2μ}) / (2μ), clamped to [0, 1].
///
/// A trace with zero wrong clicks returns exactly 1.0.
pub fn calibrate_visibility(trace: &[ClickOutcome], mu: f64) -> Result<f64> {
    if trace.is_empty() {
        return Err(Error::InvalidInput(
            "calibration needs a nonempty trace".into(),
        ));
    }
    if !(mu.is_finite() && mu > 0.0) {
        return Err(Error::InvalidInput(format!(
            "calibration needs mu > 0, got {mu}"
        )));
    }
    let wrong = trace
        .iter()
        .filter(|o| matches!(o, ClickOutcome::D1))
        .count();
    if wrong == 0 {
        return Ok(1.0);
    }
    let rate = wrong as f64 / trace.len() as f64;
    let nu = -(rate + (-2.0 * mu).exp()).ln() / (2.0 * mu);
    Ok(nu.clamp(0.0, 1.0))
}

impl ClickOutcome {
    /// Single-letter code used by the trace CSV format.
    pub fn code(&self) -> char {
        match self {
            ClickOutcome::None => 'N',
            ClickOutcome::D0 => '0',
            ClickOutcome::D1 => '1',
            ClickOutcome::Both => 'B',
        }
    }

    pub fn from_code(c: char) -> Result<Self> {
        match c {
            'N' => Ok(ClickOutcome::None),
            '0' => Ok(ClickOutcome::D0),
            '1' => Ok(ClickOutcome::D1),
            'B' => Ok(ClickOutcome::Both),
            other => Err(Error::InvalidInput(format!(
                "unknown outcome code {other:?}, expected N, 0, 1, or B"
            ))),
        }
    }
}

/// Renders a trace as CSV: header `pulse_index,outcome`, one row per pulse.
pub fn trace_to_csv(trace: &[ClickOutcome]) -> String {
    let mut out = String::from("pulse_index,outcome\n");
    for (i, o) in trace.iter().enumerate() {
        out.push_str(&format!("{i},{}\n", o.code()));
    }
    out
}

/// Parses the CSV format written by [`trace_to_csv`]. Rows must be in pulse
/// order starting at 0; errors carry the 1-based offending line.
pub fn trace_from_csv(text: &str) -> Result<ClickTrace> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, "pulse_index,outcome")) => {}
        _ => {
            return Err(Error::Parse {
                line: 1,
                msg: "expected header `pulse_index,outcome`".into(),
            })
        }
    }
    let mut trace = Vec::new();
    for (idx, line) in lines {
        let lineno = idx + 1;
        let (index_str, code_str) = line.split_once(',').ok_or_else(|| Error::Parse {
            line: lineno,
            msg: "expected `index,outcome`".into(),
        })?;
        let index: usize = index_str.parse().map_err(|_| Error::Parse {
            line: lineno,
            msg: format!("bad pulse index {index_str:?}"),
        })?;
        if index != trace.len() {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("pulse index {index} out of order, expected {}", trace.len()),
            });
        }
        let mut chars = code_str.chars();
        let (code, rest) = (chars.next(), chars.next());
        if rest.is_some() {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("outcome must be a single letter, got {code_str:?}"),
            });
        }
        let code = code.ok_or_else(|| Error::Parse {
            line: lineno,
            msg: "missing outcome code".into(),
        })?;
        trace.push(ClickOutcome::from_code(code).map_err(|e| Error::Parse {
            line: lineno,
            msg: e.to_string(),
        })?);
    }
    Ok(trace)
}


#[cfg(test)]
mod properties {
    use super::*;
    use proptest::prelude::*;

    fn params() -> impl Strategy<Value = OpticalParams<f64>> {
        (0.0..10.0f64, 0.0..=1.0f64, 0.0..0.01f64)
            .prop_map(|(mu, nu, p_dark)| OpticalParams { mu, nu, p_dark })
    }

    proptest! {
        #[test]
        fn categories_form_a_simplex(p in params()) {
            let c = click_probabilities(&p).unwrap();
            prop_assert!((c.p_c + c.p_w + c.p_dc + c.p_none - 1.0).abs() < 1e-12);
            prop_assert!((c.p_h - (c.p_c + c.p_w + c.p_dc)).abs() < 1e-12);
            for v in [c.p_c, c.p_w, c.p_dc, c.p_none, c.p_h, c.p_d] {
                prop_assert!((0.0..=1.0).contains(&v));
            }
        }

        #[test]
        fn correct_clicks_increase_with_visibility(
            mu in 0.01..8.0f64,
            nu1 in 0.0..=1.0f64,
            nu2 in 0.0..=1.0f64,
        ) {
            let (lo, hi) = if nu1 <= nu2 { (nu1, nu2) } else { (nu2, nu1) };
            let a = click_probabilities(&OpticalParams::clean(mu, lo).unwrap()).unwrap();
            let b = click_probabilities(&OpticalParams::clean(mu, hi).unwrap()).unwrap();
            prop_assert!(b.p_c >= a.p_c - 1e-12);
            prop_assert!(b.p_w <= a.p_w + 1e-12);
        }

        #[test]
        fn total_clicks_increase_with_power(
            nu in 0.0..=1.0f64,
            mu1 in 0.0..8.0f64,
            mu2 in 0.0..8.0f64,
        ) {
            let (lo, hi) = if mu1 <= mu2 { (mu1, mu2) } else { (mu2, mu1) };
            let a = click_probabilities(&OpticalParams::clean(lo, nu).unwrap()).unwrap();
            let b = click_probabilities(&OpticalParams::clean(hi, nu).unwrap()).unwrap();
            prop_assert!(b.p_h >= a.p_h - 1e-12);
        }

        #[test]
        fn honest_clicks_never_drop_below_the_floor(p in params()) {
            let c = click_probabilities(&p).unwrap();
            prop_assert!(c.p_h >= c.p_d - 1e-12);
        }
    }
}
