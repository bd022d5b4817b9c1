//! Planted low-rank multi-label instances.
//!
//! All randomness comes from one `ChaCha8Rng` seeded with the caller's
//! 64-bit seed. Draws happen in a fixed order: X (row-major), A, B, then the
//! noise matrix.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::MultiLabelDataset;
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthSpec {
    pub n: usize,
    pub d: usize,
    pub l: usize,
    pub rank: usize,
    pub noise: f64,
    pub seed: u64,
}

fn gaussian(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> DenseMatrix {
    let data = (0..rows * cols)
        .map(|_| StandardNormal.sample(rng))
        .collect();
    DenseMatrix::new(rows, cols, data).expect("gaussian entries are finite")
}

/// Draws `X ~ N(0,1)^{n×d}`, `W* = A·Bᵀ` with Gaussian `A` (`d×rank`) and
/// `B` (`l×rank`), scores `S = XW* + noise·N`, and labels each example with
/// the labels whose score reaches the row median of `S`.
///
/// Returns the dataset and `W*`.
pub fn synth_low_rank(spec: &SynthSpec) -> Result<(MultiLabelDataset, DenseMatrix)> {
    let SynthSpec {
        n,
        d,
        l,
        rank,
        noise,
        seed,
    } = *spec;
    if n == 0 || d == 0 || l == 0 {
        return Err(Error::Usage(format!(
            "n, d, l must be positive (got {n}, {d}, {l})"
        )));
    }
    if rank == 0 || rank > d.min(l) {
        return Err(Error::Usage(format!(
            "rank must lie in 1..={} for d={d}, l={l}, got {rank}",
            d.min(l)
        )));
    }
    if !(noise >= 0.0) || !noise.is_finite() {
        return Err(Error::Usage(format!(
            "noise must be non-negative, got {noise}"
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = gaussian(&mut rng, n, d);
    let a = gaussian(&mut rng, d, rank);
    let b = gaussian(&mut rng, l, rank);
    let w_star = a.matmul(&b.transpose())?;
    let mut scores = x.matmul(&w_star)?;
    if noise > 0.0 {
        scores = scores.add_scaled(noise, &gaussian(&mut rng, n, l))?;
    }

    let mut labels = DenseMatrix::zeros(n, l);
    for i in 0..n {
        let row = scores.row(i);
        let median = median(row);
        for (j, &s) in row.iter().enumerate() {
            labels[(i, j)] = if s >= median { 1.0 } else { 0.0 };
        }
    }

    let feature_names = (1..=d).map(|j| format!("x{j}")).collect();
    let label_names = (1..=l).map(|j| format!("y{j}")).collect();
    let ds = MultiLabelDataset::new(x, labels, feature_names, label_names)?;
    Ok((ds, w_star))
}

fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    if v.len() % 2 == 1 {
        v[mid]
    } else {
        0.5 * (v[mid - 1] + v[mid])
    }
}
