//! Spectral-norm completion of a matrix with one or two unknown entries by
//! exhaustive grid search.
//!
//! The default problem is the 3x4 matrix
//!
//! ```text
//! 2 1 2 1
//! 1 1 ? 2
//! 1 1 2 ?
//! ```
//!
//! whose rank-2 completion is (2, 2). Minimizing the trace norm over the two
//! holes lands elsewhere, while the tail sum with `θ = 2` (the smallest
//! singular value) recovers the rank-2 completion.

use crate::error::{Error, Result};
use crate::matrix::{svd, tail_sum, DenseMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompletionNorm {
    Trace,
    Tail { theta: usize },
}

impl CompletionNorm {
    fn apply(&self, sigma: &[f64]) -> f64 {
        match *self {
            CompletionNorm::Trace => tail_sum(sigma, 0),
            CompletionNorm::Tail { theta } => tail_sum(sigma, theta),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CompletionProblem {
    pub base: DenseMatrix,
    /// 0-based `(row, col)` positions of the unknown entries.
    pub holes: Vec<(usize, usize)>,
    /// Inclusive search interval per hole.
    pub bounds: Vec<(f64, f64)>,
    pub norm: CompletionNorm,
}

impl CompletionProblem {
    /// The 3x4 example with holes at (1, 2) and (2, 3) searched over `[lo, hi]²`.
    pub fn motivating_example(norm: CompletionNorm, lo: f64, hi: f64) -> Self {
        let base = DenseMatrix::from_rows(&[
            [2.0, 1.0, 2.0, 1.0],
            [1.0, 1.0, 0.0, 2.0],
            [1.0, 1.0, 2.0, 0.0],
        ])
        .expect("static matrix is valid");
        Self {
            base,
            holes: vec![(1, 2), (2, 3)],
            bounds: vec![(lo, hi); 2],
            norm,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.holes.is_empty() || self.holes.len() > 2 {
            return Err(Error::Usage(format!(
                "completion search supports 1 or 2 holes, got {}",
                self.holes.len()
            )));
        }
        if self.bounds.len() != self.holes.len() {
            return Err(Error::Usage(format!(
                "{} holes but {} search intervals",
                self.holes.len(),
                self.bounds.len()
            )));
        }
        for &(r, c) in &self.holes {
            if r >= self.base.rows() || c >= self.base.cols() {
                return Err(Error::Usage(format!(
                    "hole ({r}, {c}) outside {}x{} matrix",
                    self.base.rows(),
                    self.base.cols()
                )));
            }
        }
        for &(lo, hi) in &self.bounds {
            if !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
                return Err(Error::Usage(format!(
                    "invalid search interval [{lo}, {hi}]"
                )));
            }
        }
        Ok(())
    }

    /// The base matrix with `values` written into the holes.
    pub fn complete(&self, values: &[f64]) -> DenseMatrix {
        let mut m = self.base.clone();
        for (&(r, c), &v) in self.holes.iter().zip(values) {
            m[(r, c)] = v;
        }
        m
    }

    /// Singular values and norm of the completion at `values`.
    pub fn evaluate(&self, values: &[f64]) -> Result<(Vec<f64>, f64)> {
        let sigma = svd(&self.complete(values))?.sigma;
        let norm = self.norm.apply(&sigma);
        Ok((sigma, norm))
    }
}

/// One grid point of a norm surface.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfacePoint {
    pub values: Vec<f64>,
    pub norm: f64,
}

/// Grid coordinates `lo, lo + h, …` not exceeding `hi` (by more than rounding).
fn axis(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let count = ((hi - lo) / step + 1e-9).floor() as usize;
    (0..=count).map(|k| lo + k as f64 * step).collect()
}

fn check_step(step: f64) -> Result<()> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::Usage(format!(
            "grid step must be positive, got {step}"
        )));
    }
    Ok(())
}

fn grid_search(
    problem: &CompletionProblem,
    bounds: &[(f64, f64)],
    step: f64,
) -> Result<Vec<SurfacePoint>> {
    let axes: Vec<Vec<f64>> = bounds.iter().map(|&(lo, hi)| axis(lo, hi, step)).collect();
    let mut points = Vec::new();
    let mut values = vec![0.0; axes.len()];
    let mut idx = vec![0usize; axes.len()];
    // Row-major: the last hole varies fastest.
    loop {
        for (v, (a, &i)) in values.iter_mut().zip(axes.iter().zip(&idx)) {
            *v = a[i];
        }
        let (_, norm) = problem.evaluate(&values)?;
        points.push(SurfacePoint {
            values: values.clone(),
            norm,
        });
        let mut dim = axes.len();
        loop {
            if dim == 0 {
                return Ok(points);
            }
            dim -= 1;
            idx[dim] += 1;
            if idx[dim] < axes[dim].len() {
                break;
            }
            idx[dim] = 0;
        }
    }
}

/// Evaluates the configured norm at every point of the grid over the holes'
/// search intervals, in row-major order.
pub fn norm_surface(problem: &CompletionProblem, grid_step: f64) -> Result<Vec<SurfacePoint>> {
    problem.validate()?;
    check_step(grid_step)?;
    grid_search(problem, &problem.bounds, grid_step)
}

/// Contour CSV with header `v1,v2,norm` (or `v1,norm` for a single hole).
pub fn surface_csv(points: &[SurfacePoint]) -> String {
    let dims = points.first().map(|p| p.values.len()).unwrap_or(2);
    let mut out: String = (1..=dims).map(|i| format!("v{i},")).collect();
    out.push_str("norm\n");
    for p in points {
        for v in &p.values {
            out.push_str(&format!("{v},"));
        }
        out.push_str(&format!("{}\n", p.norm));
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompletionMinimum {
    pub values: Vec<f64>,
    pub norm: f64,
    pub sigma: Vec<f64>,
}

impl CompletionMinimum {
    /// `v1=…`, `norm=…`, `sigma1=…` lines.
    pub fn to_key_values(&self) -> String {
        let mut out = String::new();
        for (i, v) in self.values.iter().enumerate() {
            out.push_str(&format!("v{}={v}\n", i + 1));
        }
        out.push_str(&format!("norm={}\n", self.norm));
        for (i, s) in self.sigma.iter().enumerate() {
            out.push_str(&format!("sigma{}={s}\n", i + 1));
        }
        out
    }
}

fn argmin(points: &[SurfacePoint]) -> &SurfacePoint {
    // First strict minimum in grid order.
    points.iter().fold(
        &points[0],
        |best, p| if p.norm < best.norm { p } else { best },
    )
}

/// Coarse grid search followed by `refine_rounds` rounds that each shrink the
/// window to ±2 cells around the incumbent (clipped to the search box) and
/// divide the step by 10.
pub fn find_minimizer(
    problem: &CompletionProblem,
    coarse_step: f64,
    refine_rounds: usize,
) -> Result<CompletionMinimum> {
    problem.validate()?;
    check_step(coarse_step)?;
    let mut step = coarse_step;
    let coarse = grid_search(problem, &problem.bounds, step)?;
    let mut best = argmin(&coarse).clone();
    for _ in 0..refine_rounds {
        let window: Vec<(f64, f64)> = best
            .values
            .iter()
            .zip(&problem.bounds)
            .map(|(&v, &(lo, hi))| ((v - 2.0 * step).max(lo), (v + 2.0 * step).min(hi)))
            .collect();
        step /= 10.0;
        let local = grid_search(problem, &window, step)?;
        let cand = argmin(&local);
        if cand.norm < best.norm {
            best = cand.clone();
        }
    }
    let (sigma, norm) = problem.evaluate(&best.values)?;
    Ok(CompletionMinimum {
        values: best.values,
        norm,
        sigma,
    })
}
