//! Generalization and Rademacher complexity bound calculators.
//!
//! These are diagnostics: they evaluate closed-form bound expressions for
//! user-supplied inputs. `r` is an assumed second-moment radius, not an
//! estimate, and nothing checks the unit-spectral-norm assumption on `W`.
//! Logarithms are natural.

use crate::error::{Error, Result};
use crate::matrix::{svd, tail_sum, DenseMatrix};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundInputs {
    pub n: usize,
    pub delta: f64,
    pub r: f64,
    pub theta: usize,
    pub tail_sum: f64,
    pub rademacher: f64,
    pub trace_bound: f64,
}

impl BoundInputs {
    /// Inputs with every real term zeroed.
    pub fn new(n: usize, delta: f64) -> Self {
        Self {
            n,
            delta,
            r: 0.0,
            theta: 0,
            tail_sum: 0.0,
            rademacher: 0.0,
            trace_bound: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Usage("n must be at least 1".into()));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::Usage(format!(
                "delta must lie in (0, 1), got {}",
                self.delta
            )));
        }
        for (name, v) in [
            ("r", self.r),
            ("tail_sum", self.tail_sum),
            ("rademacher", self.rademacher),
            ("trace_bound", self.trace_bound),
        ] {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(Error::Usage(format!(
                    "{name} must be finite and non-negative, got {v}"
                )));
            }
        }
        Ok(())
    }

    fn log_term(&self) -> f64 {
        (2.0 / self.delta).ln()
    }
}

/// `4·R_n + √(2·ln(2/δ)/n)`.
pub fn global_bound_gap(inputs: &BoundInputs) -> Result<f64> {
    inputs.validate()?;
    let n = inputs.n as f64;
    Ok(4.0 * inputs.rademacher + (2.0 * inputs.log_term() / n).sqrt())
}

/// `8·R_n + √(8·r·ln(2/δ)/n) + 3·ln(2/δ)/n`.
pub fn local_bound_gap(inputs: &BoundInputs) -> Result<f64> {
    inputs.validate()?;
    let n = inputs.n as f64;
    let log = inputs.log_term();
    Ok(8.0 * inputs.rademacher + (8.0 * inputs.r * log / n).sqrt() + 3.0 * log / n)
}

/// `r·√(θ/n) + tail_sum/√n`.
pub fn local_rademacher_bound(inputs: &BoundInputs) -> Result<f64> {
    inputs.validate()?;
    let n = inputs.n as f64;
    Ok(inputs.r * (inputs.theta as f64 / n).sqrt() + inputs.tail_sum / n.sqrt())
}

/// `λ/√n` for a trace-norm radius `λ`.
pub fn trace_rademacher_bound(inputs: &BoundInputs) -> Result<f64> {
    inputs.validate()?;
    Ok(inputs.trace_bound / (inputs.n as f64).sqrt())
}

/// All four bounds evaluated for a trained predictor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub n: usize,
    pub delta: f64,
    pub r: f64,
    pub theta: usize,
    pub trace: f64,
    pub tail_sum: f64,
    /// Global complexity bound from the trace norm of `W`.
    pub trace_bound_value: f64,
    /// Local complexity bound from the tail singular sum of `W`.
    pub local_rc_value: f64,
    /// Global excess-risk gap fed with `trace_bound_value`.
    pub global_gap: f64,
    /// Local excess-risk gap fed with `local_rc_value`.
    pub local_gap: f64,
}

impl BoundReport {
    /// Flat `key=value` lines.
    pub fn to_key_values(&self) -> String {
        format!(
            "n={}\ndelta={}\nr={}\ntheta={}\ntrace_norm={}\ntail_sum={}\n\
             trace_bound_value={}\nlocal_rc_value={}\nglobal_gap={}\nlocal_gap={}\n",
            self.n,
            self.delta,
            self.r,
            self.theta,
            self.trace,
            self.tail_sum,
            self.trace_bound_value,
            self.local_rc_value,
            self.global_gap,
            self.local_gap
        )
    }
}

pub fn bound_report(
    w: &DenseMatrix,
    n: usize,
    delta: f64,
    r: f64,
    theta: usize,
) -> Result<BoundReport> {
    let sigma = svd(w)?.sigma;
    let trace = tail_sum(&sigma, 0);
    let tail = tail_sum(&sigma, theta);

    let base = BoundInputs {
        r,
        theta,
        ..BoundInputs::new(n, delta)
    };
    let trace_bound_value = trace_rademacher_bound(&BoundInputs {
        trace_bound: trace,
        ..base
    })?;
    let local_rc_value = local_rademacher_bound(&BoundInputs {
        tail_sum: tail,
        ..base
    })?;
    let global_gap = global_bound_gap(&BoundInputs {
        rademacher: trace_bound_value,
        ..base
    })?;
    let local_gap = local_bound_gap(&BoundInputs {
        rademacher: local_rc_value,
        ..base
    })?;
    Ok(BoundReport {
        n,
        delta,
        r,
        theta,
        trace,
        tail_sum: tail,
        trace_bound_value,
        local_rc_value,
        global_gap,
        local_gap,
    })
}
