#![allow(dead_code)]

use lrml::DenseMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform(rng: &mut ChaCha8Rng, rows: usize, cols: usize, lo: f64, hi: f64) -> DenseMatrix {
    let data = (0..rows * cols).map(|_| rng.random_range(lo..hi)).collect();
    DenseMatrix::new(rows, cols, data).unwrap()
}

pub fn gaussian(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> DenseMatrix {
    let data = (0..rows * cols)
        .map(|_| StandardNormal.sample(rng))
        .collect();
    DenseMatrix::new(rows, cols, data).unwrap()
}

/// Random orthogonal matrix from Gram-Schmidt on a Gaussian matrix.
pub fn orthogonal(rng: &mut ChaCha8Rng, n: usize) -> DenseMatrix {
    let g = gaussian(rng, n, n);
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v = g.column(j);
        for _ in 0..2 {
            for q in &cols {
                let dot: f64 = v.iter().zip(q).map(|(a, b)| a * b).sum();
                for (x, y) in v.iter_mut().zip(q) {
                    *x -= dot * y;
                }
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        cols.push(v.into_iter().map(|x| x / norm).collect());
    }
    let mut q = DenseMatrix::zeros(n, n);
    for (j, c) in cols.iter().enumerate() {
        for (i, &v) in c.iter().enumerate() {
            q[(i, j)] = v;
        }
    }
    q
}

/// `rows x cols` matrix `U·diag(sigma)·Vᵀ` with random orthonormal factors.
pub fn with_singular_values(
    rng: &mut ChaCha8Rng,
    rows: usize,
    cols: usize,
    sigma: &[f64],
) -> DenseMatrix {
    let u = orthogonal(rng, rows);
    let v = orthogonal(rng, cols);
    let d = DenseMatrix::rect_diag(rows, cols, sigma).unwrap();
    u.matmul(&d).unwrap().matmul(&v.transpose()).unwrap()
}

pub fn fro(a: &DenseMatrix) -> f64 {
    lrml::matrix::frobenius_norm(a)
}

/// Noise-free planted instance `Y = X·A·Bᵀ` with Gaussian `X` (`n x d`) and a
/// rank-`rank` predictor (`d x l`).
pub fn planted(
    seed: u64,
    n: usize,
    d: usize,
    l: usize,
    rank: usize,
) -> (DenseMatrix, DenseMatrix, DenseMatrix) {
    let mut g = rng(seed);
    let x = gaussian(&mut g, n, d);
    let a = gaussian(&mut g, d, rank);
    let b = gaussian(&mut g, l, rank);
    let w = a.matmul(&b.transpose()).unwrap();
    let y = x.matmul(&w).unwrap();
    (x, y, w)
}

pub fn fixture(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

/// `yeast-train.arff` and `yeast-test.arff` from `$LRML_YEAST_DIR`, falling
/// back to `data/yeast` at the workspace root.
pub fn yeast_files() -> Option<(std::path::PathBuf, std::path::PathBuf)> {
    let dir = match std::env::var_os("LRML_YEAST_DIR") {
        Some(d) => std::path::PathBuf::from(d),
        None => std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/yeast"),
    };
    let train = dir.join("yeast-train.arff");
    let test = dir.join("yeast-test.arff");
    (train.is_file() && test.is_file()).then_some((train, test))
}
