//! Squared-loss multi-label ERM trained by proximal gradient steps.
//!
//! Examples are rows: `X` is `n x d`, `Y` is `n x L` and the predictor `W` is
//! `d x L`, so the data-fit term is `‖Y − XW‖_F²` summed over examples (no
//! `1/n` factor; `C` absorbs the scale).
//!
//! Each iteration grows the step parameter `t_k = γ·t_{k−1}`, takes a gradient
//! step `G = W − ∇f(W)/t_k` and applies the prox of the configured penalty at
//! `G` with threshold `C/t_k`.

use crate::error::{Error, Result};
use crate::matrix::{frobenius_norm, spectral_norm, svd, tail_sum, DenseMatrix};
use crate::prox::{conditional_svt_from, ProxParams};

/// Penalty applied to the predictor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regularizer {
    /// Sum of singular values beyond the `theta` largest.
    Tail {
        theta: usize,
    },
    /// Nuclear norm.
    Trace,
    /// Squared Frobenius norm.
    Frobenius,
    None,
}

impl Regularizer {
    pub fn name(&self) -> &'static str {
        match self {
            Regularizer::Tail { .. } => "tail",
            Regularizer::Trace => "trace",
            Regularizer::Frobenius => "frobenius",
            Regularizer::None => "none",
        }
    }

    pub fn penalty(&self, w: &DenseMatrix) -> Result<f64> {
        Ok(match *self {
            Regularizer::Tail { theta } => {
                if theta >= w.rows().min(w.cols()) {
                    0.0
                } else {
                    tail_sum(&svd(w)?.sigma, theta)
                }
            }
            Regularizer::Trace => tail_sum(&svd(w)?.sigma, 0),
            Regularizer::Frobenius => w.frobenius_sq(),
            Regularizer::None => 0.0,
        })
    }
}

/// Resolves a fractional `θ/L` into a count, rounding to nearest and
/// clamping to `[0, min(d, L)]`.
pub fn theta_from_fraction(frac: f64, d: usize, l: usize) -> usize {
    let raw = (frac * l as f64).round();
    if raw.is_nan() || raw <= 0.0 {
        0
    } else {
        (raw as usize).min(d.min(l))
    }
}

pub const DEFAULT_GAMMA: f64 = 1.1;
pub const DEFAULT_MAX_ITERS: usize = 500;
pub const DEFAULT_REL_TOL: f64 = 1e-6;
/// `t_k` never grows beyond this multiple of `t_0`.
pub const STEP_CAP_FACTOR: f64 = 1e12;

#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub regularizer: Regularizer,
    pub c: f64,
    /// Initial step parameter; `None` uses the Lipschitz constant `2·σ_max(X)²`.
    pub t0: Option<f64>,
    pub gamma: f64,
    pub max_iters: usize,
    pub rel_tol: f64,
    pub w0: Option<DenseMatrix>,
}

impl SolverConfig {
    pub fn new(regularizer: Regularizer, c: f64) -> Self {
        Self {
            regularizer,
            c,
            t0: None,
            gamma: DEFAULT_GAMMA,
            max_iters: DEFAULT_MAX_ITERS,
            rel_tol: DEFAULT_REL_TOL,
            w0: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma > 1.0) || !self.gamma.is_finite() {
            return Err(Error::Usage(format!(
                "gamma must exceed 1, got {}",
                self.gamma
            )));
        }
        if !(self.c >= 0.0) || !self.c.is_finite() {
            return Err(Error::Usage(format!(
                "C must be non-negative, got {}",
                self.c
            )));
        }
        if let Some(t0) = self.t0 {
            if !(t0 > 0.0) || !t0.is_finite() {
                return Err(Error::Usage(format!("t0 must be positive, got {t0}")));
            }
        }
        if self.max_iters == 0 {
            return Err(Error::Usage("max_iters must be at least 1".into()));
        }
        if !(self.rel_tol > 0.0) {
            return Err(Error::Usage(format!(
                "rel_tol must be positive, got {}",
                self.rel_tol
            )));
        }
        Ok(())
    }
}

/// Objective history of a run. Entry 0 is the starting point `W₀`, entry `k`
/// the iterate after step `k`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SolverTrace {
    pub objectives: Vec<f64>,
    pub loss_terms: Vec<f64>,
    pub reg_terms: Vec<f64>,
    /// `t_k` used to produce each entry (`t_0` for entry 0).
    pub step_params: Vec<f64>,
    pub iterations_run: usize,
    pub converged: bool,
}

impl SolverTrace {
    fn push(&mut self, loss: f64, reg: f64, c: f64, t: f64) {
        self.loss_terms.push(loss);
        self.reg_terms.push(reg);
        self.objectives.push(loss + c * reg);
        self.step_params.push(t);
    }

    /// CSV with header `iteration,objective,loss,penalty,t`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("iteration,objective,loss,penalty,t\n");
        for k in 0..self.objectives.len() {
            out.push_str(&format!(
                "{k},{},{},{},{}\n",
                self.objectives[k], self.loss_terms[k], self.reg_terms[k], self.step_params[k]
            ));
        }
        out
    }
}

fn check_shapes(w: &DenseMatrix, x: &DenseMatrix, y: &DenseMatrix) -> Result<()> {
    if x.rows() != y.rows() || w.rows() != x.cols() || w.cols() != y.cols() {
        return Err(Error::DimensionMismatch(format!(
            "X {}x{}, Y {}x{}, W {}x{} are inconsistent",
            x.rows(),
            x.cols(),
            y.rows(),
            y.cols(),
            w.rows(),
            w.cols()
        )));
    }
    Ok(())
}

/// `‖Y − XW‖_F²`.
pub fn data_loss(w: &DenseMatrix, x: &DenseMatrix, y: &DenseMatrix) -> Result<f64> {
    check_shapes(w, x, y)?;
    Ok(y.sub(&x.matmul(w)?)?.frobenius_sq())
}

/// `‖Y − XW‖_F² + C·penalty(W)`.
pub fn objective(
    w: &DenseMatrix,
    x: &DenseMatrix,
    y: &DenseMatrix,
    config: &SolverConfig,
) -> Result<f64> {
    let loss = data_loss(w, x, y)?;
    let pen = if config.c == 0.0 {
        0.0
    } else {
        config.regularizer.penalty(w)?
    };
    Ok(loss + config.c * pen)
}

/// Gradient of the data-fit term, `2·Xᵀ(XW − Y)`.
pub fn gradient(w: &DenseMatrix, x: &DenseMatrix, y: &DenseMatrix) -> Result<DenseMatrix> {
    check_shapes(w, x, y)?;
    let residual = x.matmul(w)?.sub(y)?;
    Ok(x.t_matmul(&residual)?.scale(2.0))
}

/// Scores `XW`.
pub fn predict(w: &DenseMatrix, x: &DenseMatrix) -> Result<DenseMatrix> {
    if x.cols() != w.rows() {
        return Err(Error::DimensionMismatch(format!(
            "features have {} columns but the model expects {}",
            x.cols(),
            w.rows()
        )));
    }
    x.matmul(w)
}

/// Lipschitz constant `2·σ_max(X)²` of the data-fit gradient.
pub fn lipschitz_constant(x: &DenseMatrix) -> Result<f64> {
    let s = spectral_norm(x)?;
    Ok(2.0 * s * s)
}

/// Applies the prox of `reg` with weight `c / t` at `g`.
fn prox_step(reg: Regularizer, c: f64, t: f64, g: DenseMatrix) -> Result<DenseMatrix> {
    if c == 0.0 {
        return Ok(g);
    }
    let thr = c / t;
    match reg {
        Regularizer::None => Ok(g),
        Regularizer::Frobenius => Ok(g.scale(t / (t + 2.0 * c))),
        Regularizer::Trace => Ok(conditional_svt_from(&svd(&g)?, ProxParams::new(thr, 0)?)),
        Regularizer::Tail { theta } => {
            if theta >= g.rows().min(g.cols()) {
                Ok(g)
            } else {
                Ok(conditional_svt_from(
                    &svd(&g)?,
                    ProxParams::new(thr, theta)?,
                ))
            }
        }
    }
}

/// Runs the proximal-gradient loop and returns the final predictor with the
/// full objective trace.
pub fn fit(
    x: &DenseMatrix,
    y: &DenseMatrix,
    config: &SolverConfig,
) -> Result<(DenseMatrix, SolverTrace)> {
    config.validate()?;
    let mut w = match &config.w0 {
        Some(w0) => w0.clone(),
        None => DenseMatrix::zeros(x.cols(), y.cols()),
    };
    check_shapes(&w, x, y)?;

    let t0 = match config.t0 {
        Some(t0) => t0,
        None => {
            let l = lipschitz_constant(x)?;
            // All-zero features: any positive step works.
            if l > 0.0 {
                l
            } else {
                1.0
            }
        }
    };
    let t_cap = STEP_CAP_FACTOR * t0;
    let c = config.c;
    let penalty = |w: &DenseMatrix| -> Result<f64> {
        if c == 0.0 {
            Ok(0.0)
        } else {
            config.regularizer.penalty(w)
        }
    };

    let mut trace = SolverTrace::default();
    trace.push(data_loss(&w, x, y)?, penalty(&w)?, c, t0);
    let mut t = t0;
    for k in 1..=config.max_iters {
        t = (config.gamma * t).min(t_cap);
        let grad = gradient(&w, x, y)?;
        let g = w.add_scaled(-1.0 / t, &grad)?;
        w = prox_step(config.regularizer, c, t, g)?;

        let loss = data_loss(&w, x, y)?;
        let reg = penalty(&w)?;
        let obj = loss + c * reg;
        if !obj.is_finite() {
            return Err(Error::Diverged {
                iteration: k,
                value: obj,
            });
        }
        let prev = *trace.objectives.last().expect("trace starts non-empty");
        trace.push(loss, reg, c, t);
        trace.iterations_run = k;
        if (obj - prev).abs() / prev.max(1e-12) < config.rel_tol {
            trace.converged = true;
            break;
        }
    }
    Ok((w, trace))
}

/// Exact minimizer of `‖Y − XW‖_F² + C‖W‖_F²`, computed from the SVD of `X`
/// as `V·diag(s / (s² + C))·UᵀY`.
pub fn ridge_closed_form(x: &DenseMatrix, y: &DenseMatrix, c: f64) -> Result<DenseMatrix> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::Usage(format!(
            "ridge weight must be positive, got {c}"
        )));
    }
    if x.rows() != y.rows() {
        return Err(Error::DimensionMismatch(format!(
            "X has {} rows, Y has {}",
            x.rows(),
            y.rows()
        )));
    }
    let dec = svd(x)?;
    let mut uty = dec.u.t_matmul(y)?;
    for (k, &s) in dec.sigma.iter().enumerate() {
        let f = s / (s * s + c);
        for j in 0..uty.cols() {
            uty[(k, j)] *= f;
        }
    }
    dec.v.matmul(&uty)
}

/// Relative fit error `‖XW − Y‖_F / ‖Y‖_F`.
pub fn relative_fit_error(w: &DenseMatrix, x: &DenseMatrix, y: &DenseMatrix) -> Result<f64> {
    Ok(data_loss(w, x, y)?.sqrt() / frobenius_norm(y))
}
