mod common;

use common::{rng, uniform};
use lrml::metrics::{average_auc, average_precision, hamming_loss, top_k_accuracy, EvalPair};
use lrml::DenseMatrix;
use rand::Rng;

fn random_labels(seed: u64, rows: usize, cols: usize) -> DenseMatrix {
    let mut g = rng(seed);
    let data = (0..rows * cols)
        .map(|_| if g.random_bool(0.4) { 1.0 } else { 0.0 })
        .collect();
    DenseMatrix::new(rows, cols, data).unwrap()
}

#[test]
fn ranking_metrics_ignore_increasing_transforms() {
    for seed in 0..30 {
        let labels = random_labels(seed, 12, 6);
        let scores = uniform(&mut rng(seed + 1000), 12, 6, -1.0, 1.0);
        let moved = scores.map(|s| 2.0 * s + 1.0);
        let a = EvalPair::new(&scores, &labels).unwrap();
        let b = EvalPair::new(&moved, &labels).unwrap();
        for k in 1..=6 {
            assert_eq!(
                top_k_accuracy(&a, k).unwrap(),
                top_k_accuracy(&b, k).unwrap()
            );
        }
        if let (Ok(x), Ok(y)) = (average_auc(&a), average_auc(&b)) {
            assert!((x.value - y.value).abs() < 1e-12);
        }
        if let (Ok(x), Ok(y)) = (average_precision(&a), average_precision(&b)) {
            assert!((x.value - y.value).abs() < 1e-12);
        }
    }
}

#[test]
fn flipped_labels_complement_hamming_loss() {
    for seed in 0..30 {
        let labels = random_labels(seed, 9, 5);
        let flipped = labels.map(|v| 1.0 - v);
        let scores = uniform(&mut rng(seed + 77), 9, 5, 0.0, 1.0);
        let h = hamming_loss(&EvalPair::new(&scores, &labels).unwrap());
        let hf = hamming_loss(&EvalPair::new(&scores, &flipped).unwrap());
        assert!((h + hf - 1.0).abs() < 1e-12);
        assert!((0.0..=1.0).contains(&h));
    }
}

#[test]
fn top_k_is_non_increasing_when_relevant_labels_lead() {
    for seed in 0..30 {
        let labels = random_labels(seed, 8, 7);
        // Relevant labels score above every irrelevant one.
        let noise = uniform(&mut rng(seed + 5), 8, 7, 0.0, 0.5);
        let scores = labels.add(&noise).unwrap();
        let pair = EvalPair::new(&scores, &labels).unwrap();
        let values: Vec<f64> = (1..=7).map(|k| top_k_accuracy(&pair, k).unwrap()).collect();
        assert!(
            values.windows(2).all(|w| w[1] <= w[0] + 1e-12),
            "{values:?}"
        );
    }
}

#[test]
fn perfect_and_inverted_rankings() {
    let labels = random_labels(3, 10, 5);
    let inverted = labels.map(|v| -v);
    let perfect = EvalPair::new(&labels, &labels).unwrap();
    let worst = EvalPair::new(&inverted, &labels).unwrap();
    assert_eq!(average_auc(&perfect).unwrap().value, 1.0);
    assert_eq!(average_auc(&worst).unwrap().value, 0.0);
    assert_eq!(average_precision(&perfect).unwrap().value, 1.0);
    assert_eq!(hamming_loss(&perfect), 0.0);
}
