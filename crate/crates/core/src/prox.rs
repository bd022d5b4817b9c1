//! Proximal maps of spectral penalties.
//!
//! [`conditional_svt`] solves `min_W ½‖W − Q‖_F² + C·Σ_{j>θ} σ_j(W)`: the
//! leading `θ` singular values of `Q` are kept untouched and every other one
//! is soft-thresholded by `C`. With `θ = 0` this is the ordinary singular
//! value thresholding map [`svt`].
//!
//! The protected values are kept even when they do not exceed `C`. Zeroing
//! such a value `σ_i ≤ C` (as a keep-only-if-`σ_i > C` rule would) costs
//! `½σ_i²` in the fit term and saves nothing, because the top `θ` values
//! carry no penalty.

use crate::error::{Error, Result};
use crate::matrix::{frobenius_norm, svd, tail_sum, DenseMatrix, SvdResult};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProxParams {
    threshold: f64,
    theta: usize,
}

impl ProxParams {
    pub fn new(threshold: f64, theta: usize) -> Result<Self> {
        if !(threshold >= 0.0) || !threshold.is_finite() {
            return Err(Error::Usage(format!(
                "prox threshold must be finite and non-negative, got {threshold}"
            )));
        }
        Ok(Self { threshold, theta })
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn theta(&self) -> usize {
        self.theta
    }
}

/// Applies the conditional thresholding rule to descending singular values:
/// index `i` (0-based) keeps its value when `i < θ` and otherwise becomes
/// `max(0, σ_i − C)`. The output stays sorted.
pub fn conditional_threshold(sigma: &[f64], params: ProxParams) -> Vec<f64> {
    let c = params.threshold;
    sigma
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            if i < params.theta {
                s
            } else {
                (s - c).max(0.0)
            }
        })
        .collect()
}

/// Conditional singular value thresholding of `q`.
pub fn conditional_svt(q: &DenseMatrix, params: ProxParams) -> Result<DenseMatrix> {
    let dec = svd(q)?;
    Ok(conditional_svt_from(&dec, params))
}

/// Same as [`conditional_svt`] for a precomputed decomposition.
pub fn conditional_svt_from(dec: &SvdResult, params: ProxParams) -> DenseMatrix {
    dec.recompose_with(&conditional_threshold(&dec.sigma, params))
}

/// Soft-thresholds every singular value of `q` by `threshold`.
pub fn svt(q: &DenseMatrix, threshold: f64) -> Result<DenseMatrix> {
    conditional_svt(q, ProxParams::new(threshold, 0)?)
}

/// `½‖W − Q‖_F² + C·Σ_{j>θ} σ_j(W)`.
pub fn prox_objective(w: &DenseMatrix, q: &DenseMatrix, params: ProxParams) -> Result<f64> {
    let diff = w.sub(q)?;
    let tail = tail_sum(&svd(w)?.sigma, params.theta);
    Ok(0.5 * diff.frobenius_sq() + params.threshold * tail)
}

const ORACLE_MAX_DIM: usize = 6;

/// Brute-force minimizer of the prox objective over matrices sharing `q`'s
/// singular vectors.
///
/// Each singular value ranges over the grid `{0, h, 2h, …}` up to
/// `σ_max + C` plus its two analytic candidates `σ_i` and `max(0, σ_i − C)`.
/// The search is exact over the full product of these per-index candidate
/// sets: writing the tail sum of the re-sorted values as
/// `Σ w − max_{|S|=θ} Σ_{i∈S} w_i` turns the joint minimum into a minimum
/// over index sets `S`, and for fixed `S` the objective separates by index.
///
/// Returns the minimizer and its objective value.
pub fn prox_oracle(
    q: &DenseMatrix,
    params: ProxParams,
    grid_step: f64,
) -> Result<(DenseMatrix, f64)> {
    if q.rows() > ORACLE_MAX_DIM || q.cols() > ORACLE_MAX_DIM {
        return Err(Error::Usage(format!(
            "prox oracle supports at most {ORACLE_MAX_DIM}x{ORACLE_MAX_DIM}, got {}x{}",
            q.rows(),
            q.cols()
        )));
    }
    if !(grid_step > 0.0) || !grid_step.is_finite() {
        return Err(Error::Usage(format!(
            "grid step must be positive, got {grid_step}"
        )));
    }
    let dec = svd(q)?;
    let c = params.threshold;
    let sigma_max = dec.sigma[0];
    let steps = ((sigma_max + c) / grid_step).floor() as usize;

    // (best cost, arg) per index when treated as a protected (in S) or
    // penalized (not in S) value.
    let mut protected = Vec::with_capacity(dec.sigma.len());
    let mut penalized = Vec::with_capacity(dec.sigma.len());
    for &s in &dec.sigma {
        let candidates = (0..=steps)
            .map(|k| k as f64 * grid_step)
            .chain([s, (s - c).max(0.0)]);
        let mut best_in = (f64::INFINITY, 0.0);
        let mut best_out = (f64::INFINITY, 0.0);
        for w in candidates {
            let fit = 0.5 * (w - s) * (w - s);
            if fit < best_in.0 {
                best_in = (fit, w);
            }
            let pen = fit + c * w;
            if pen < best_out.0 {
                best_out = (pen, w);
            }
        }
        protected.push(best_in);
        penalized.push(best_out);
    }

    let r = dec.sigma.len();
    let mut order: Vec<usize> = (0..r).collect();
    // Largest savings from protecting an index go into S first.
    order.sort_by(|&i, &j| {
        let gain_i = penalized[i].0 - protected[i].0;
        let gain_j = penalized[j].0 - protected[j].0;
        gain_j.total_cmp(&gain_i).then(i.cmp(&j))
    });
    let mut values = vec![0.0; r];
    for (rank, &i) in order.iter().enumerate() {
        values[i] = if rank < params.theta {
            protected[i].1
        } else {
            penalized[i].1
        };
    }

    let minimizer = dec.recompose_with(&values);
    let fit: f64 = values
        .iter()
        .zip(&dec.sigma)
        .map(|(w, s)| 0.5 * (w - s) * (w - s))
        .sum();
    let mut sorted = values;
    sorted.sort_by(|a, b| b.total_cmp(a));
    let minimum = fit + c * tail_sum(&sorted, params.theta);
    Ok((minimizer, minimum))
}

/// Frobenius distance between two matrices of equal shape.
pub fn frobenius_distance(a: &DenseMatrix, b: &DenseMatrix) -> Result<f64> {
    Ok(frobenius_norm(&a.sub(b)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(v: &[f64]) -> DenseMatrix {
        DenseMatrix::from_diag(v).unwrap()
    }

    fn params(c: f64, theta: usize) -> ProxParams {
        ProxParams::new(c, theta).unwrap()
    }

    #[test]
    fn rejects_negative_threshold() {
        assert!(ProxParams::new(-0.1, 0).is_err());
        assert!(ProxParams::new(f64::NAN, 0).is_err());
    }

    #[test]
    fn conditional_rule_on_diagonal() {
        let out = conditional_svt(&diag(&[3.0, 2.0, 1.0]), params(0.5, 1)).unwrap();
        assert!(out.max_abs_diff(&diag(&[3.0, 1.5, 0.5])) < 1e-12);
    }

    #[test]
    fn protected_value_below_threshold_is_kept() {
        let q = diag(&[0.3, 0.2]);
        let p = params(0.5, 1);
        let out = conditional_svt(&q, p).unwrap();
        assert!(out.max_abs_diff(&diag(&[0.3, 0.0])) < 1e-15);
        assert!((prox_objective(&out, &q, p).unwrap() - 0.02).abs() < 1e-12);
        assert_eq!(
            conditional_threshold(&[2.0, 1.0], params(2.0, 1)),
            vec![2.0, 0.0]
        );
    }

    /// Keeping a protected value only when it exceeds C is beaten by the
    /// oracle as soon as a protected value falls to C or below.
    #[test]
    fn keep_only_above_threshold_is_suboptimal() {
        let literal = |sigma: &[f64], c: f64, theta: usize| -> Vec<f64> {
            sigma
                .iter()
                .enumerate()
                .map(|(i, &s)| {
                    if i < theta && s > c {
                        s
                    } else {
                        (s - c).max(0.0)
                    }
                })
                .collect()
        };
        let q = diag(&[0.3, 0.2]);
        let p = params(0.5, 1);
        let literal_w = diag(&literal(&[0.3, 0.2], 0.5, 1));
        assert!(literal_w.is_zero());
        let literal_obj = prox_objective(&literal_w, &q, p).unwrap();
        let (_, oracle_min) = prox_oracle(&q, p, 0.01).unwrap();
        assert!((literal_obj - 0.065).abs() < 1e-12);
        assert!((oracle_min - 0.02).abs() < 1e-12);
    }

    #[test]
    fn zero_threshold_is_identity() {
        let q = DenseMatrix::from_rows(&[[1.0, -2.0, 0.5], [0.3, 0.7, -1.1]]).unwrap();
        for theta in 0..3 {
            let out = conditional_svt(&q, params(0.0, theta)).unwrap();
            assert!(frobenius_distance(&out, &q).unwrap() < 1e-12);
        }
    }

    #[test]
    fn svt_examples() {
        let out = svt(&diag(&[3.0, 2.0, 1.0]), 0.5).unwrap();
        assert!(out.max_abs_diff(&diag(&[2.5, 1.5, 0.5])) < 1e-12);
        assert!(svt(&diag(&[1.0]), 2.0).unwrap().is_zero());
    }

    #[test]
    fn oracle_examples() {
        let (w, min) = prox_oracle(&diag(&[3.0, 2.0, 1.0]), params(0.5, 1), 0.01).unwrap();
        assert!(w.max_abs_diff(&diag(&[3.0, 1.5, 0.5])) < 1e-9);
        assert!((min - (0.5 * (0.25 + 0.25) + 0.5 * 2.0)).abs() < 1e-12);

        let q = DenseMatrix::from_rows(&[[1.0, 2.0], [0.5, -1.0]]).unwrap();
        let (w, min) = prox_oracle(&q, params(0.0, 1), 0.1).unwrap();
        assert!(w.max_abs_diff(&q) < 1e-12);
        assert!(min.abs() < 1e-20);

        let (w, min) = prox_oracle(&diag(&[0.3, 0.2]), params(0.5, 1), 0.01).unwrap();
        assert!(w.max_abs_diff(&diag(&[0.3, 0.0])) < 1e-15);
        assert!((min - 0.02).abs() < 1e-12);
    }

    #[test]
    fn oracle_rejects_large_or_bad_inputs() {
        assert!(prox_oracle(&DenseMatrix::zeros(7, 2), params(0.1, 0), 0.1).is_err());
        assert!(prox_oracle(&DenseMatrix::zeros(2, 2), params(0.1, 0), 0.0).is_err());
    }

    /// Literal enumeration of the candidate product grid for a 2x2 input.
    #[test]
    fn oracle_matches_literal_enumeration() {
        let q = DenseMatrix::from_rows(&[[1.3, -0.4], [0.2, 0.9]]).unwrap();
        let dec = svd(&q).unwrap();
        let step = 0.05;
        for &(c, theta) in &[(0.3, 0usize), (0.3, 1), (0.8, 1), (1.5, 1), (0.2, 2)] {
            let p = params(c, theta);
            let steps = ((dec.sigma[0] + c) / step).floor() as usize;
            let cands = |s: f64| -> Vec<f64> {
                (0..=steps)
                    .map(|k| k as f64 * step)
                    .chain([s, (s - c).max(0.0)])
                    .collect()
            };
            let mut best = f64::INFINITY;
            for &a in &cands(dec.sigma[0]) {
                for &b in &cands(dec.sigma[1]) {
                    let fit = 0.5 * ((a - dec.sigma[0]).powi(2) + (b - dec.sigma[1]).powi(2));
                    let mut sorted = [a, b];
                    sorted.sort_by(|x, y| y.total_cmp(x));
                    best = best.min(fit + c * tail_sum(&sorted, theta));
                }
            }
            let (_, min) = prox_oracle(&q, p, step).unwrap();
            assert!(
                (min - best).abs() < 1e-12,
                "c={c} theta={theta}: {min} vs {best}"
            );
        }
    }
}
