//! Multi-label evaluation from real-valued scores and binary labels.
//!
//! Rankings sort by descending score with ties going to the lower label
//! index. Rows on which a ranking metric is undefined (no relevant label, or
//! no irrelevant one for AUC) are skipped and reported in the skip count.

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

/// Scores paired with binary ground truth of the same shape.
#[derive(Debug, Clone, Copy)]
pub struct EvalPair<'a> {
    scores: &'a DenseMatrix,
    labels: &'a DenseMatrix,
}

impl<'a> EvalPair<'a> {
    pub fn new(scores: &'a DenseMatrix, labels: &'a DenseMatrix) -> Result<Self> {
        if scores.shape() != labels.shape() {
            return Err(Error::DimensionMismatch(format!(
                "scores are {}x{} but labels are {}x{}",
                scores.rows(),
                scores.cols(),
                labels.rows(),
                labels.cols()
            )));
        }
        if let Some(v) = labels.as_slice().iter().find(|&&v| v != 0.0 && v != 1.0) {
            return Err(Error::Usage(format!("label value {v} is not binary")));
        }
        Ok(Self { scores, labels })
    }

    pub fn scores(&self) -> &DenseMatrix {
        self.scores
    }

    pub fn labels(&self) -> &DenseMatrix {
        self.labels
    }

    fn rows(&self) -> impl Iterator<Item = (&'a [f64], &'a [f64])> + 'a {
        let (s, l) = (self.scores, self.labels);
        (0..s.rows()).map(move |i| (s.row(i), l.row(i)))
    }
}

/// Mean of a per-row metric together with the number of rows skipped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RowAverage {
    pub value: f64,
    pub skipped: usize,
}

/// Label indices ordered by descending score, ties by ascending index.
fn ranking(scores: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..scores.len()).collect();
    idx.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
    idx
}

/// Fraction of cells where the prediction (score ≥ 0.5) disagrees with the label.
pub fn hamming_loss(pair: &EvalPair) -> f64 {
    let wrong = pair
        .scores
        .as_slice()
        .iter()
        .zip(pair.labels.as_slice())
        .filter(|(&s, &y)| (s >= 0.5) != (y == 1.0))
        .count();
    wrong as f64 / pair.scores.as_slice().len() as f64
}

/// Precision@k averaged over examples.
pub fn top_k_accuracy(pair: &EvalPair, k: usize) -> Result<f64> {
    let l = pair.scores.cols();
    if k == 0 || k > l {
        return Err(Error::Usage(format!("k must lie in 1..={l}, got {k}")));
    }
    let total: f64 = pair
        .rows()
        .map(|(s, y)| {
            let hits = ranking(s).iter().take(k).filter(|&&j| y[j] == 1.0).count();
            hits as f64 / k as f64
        })
        .sum();
    Ok(total / pair.scores.rows() as f64)
}

/// Per-example ROC AUC (ties count ½), averaged over examples with at least
/// one relevant and one irrelevant label.
pub fn average_auc(pair: &EvalPair) -> Result<RowAverage> {
    let mut sum = 0.0;
    let mut used = 0usize;
    for (s, y) in pair.rows() {
        let pos: Vec<f64> = s
            .iter()
            .zip(y)
            .filter(|(_, &t)| t == 1.0)
            .map(|(&v, _)| v)
            .collect();
        let neg: Vec<f64> = s
            .iter()
            .zip(y)
            .filter(|(_, &t)| t == 0.0)
            .map(|(&v, _)| v)
            .collect();
        if pos.is_empty() || neg.is_empty() {
            continue;
        }
        let mut wins = 0.0;
        for &p in &pos {
            for &q in &neg {
                if p > q {
                    wins += 1.0;
                } else if p == q {
                    wins += 0.5;
                }
            }
        }
        sum += wins / (pos.len() * neg.len()) as f64;
        used += 1;
    }
    if used == 0 {
        return Err(Error::UndefinedMetric(
            "average AUC needs an example with both relevant and irrelevant labels".into(),
        ));
    }
    Ok(RowAverage {
        value: sum / used as f64,
        skipped: pair.scores.rows() - used,
    })
}

/// Label-ranking average precision over examples with a relevant label.
pub fn average_precision(pair: &EvalPair) -> Result<RowAverage> {
    let mut sum = 0.0;
    let mut used = 0usize;
    for (s, y) in pair.rows() {
        let relevant = y.iter().filter(|&&t| t == 1.0).count();
        if relevant == 0 {
            continue;
        }
        // Walking the ranking, the h-th relevant label at 1-based rank r
        // contributes h / r.
        let mut hits = 0usize;
        let mut ap = 0.0;
        for (pos, &j) in ranking(s).iter().enumerate() {
            if y[j] == 1.0 {
                hits += 1;
                ap += hits as f64 / (pos + 1) as f64;
            }
        }
        sum += ap / relevant as f64;
        used += 1;
    }
    if used == 0 {
        return Err(Error::UndefinedMetric(
            "average precision needs an example with a relevant label".into(),
        ));
    }
    Ok(RowAverage {
        value: sum / used as f64,
        skipped: pair.scores.rows() - used,
    })
}

/// Every evaluation criterion for one score/label pair.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricReport {
    pub top_k: Vec<(usize, f64)>,
    pub hamming_loss: f64,
    pub average_auc: RowAverage,
    pub average_precision: RowAverage,
}

impl MetricReport {
    pub fn compute(pair: &EvalPair, ks: &[usize]) -> Result<Self> {
        let top_k = ks
            .iter()
            .map(|&k| Ok((k, top_k_accuracy(pair, k)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            top_k,
            hamming_loss: hamming_loss(pair),
            average_auc: average_auc(pair)?,
            average_precision: average_precision(pair)?,
        })
    }

    /// Metric values as `(name, value)` in report order.
    pub fn entries(&self) -> Vec<(String, f64)> {
        let mut out: Vec<(String, f64)> = self
            .top_k
            .iter()
            .map(|&(k, v)| (format!("top{k}_accuracy"), v))
            .collect();
        out.push(("hamming_loss".into(), self.hamming_loss));
        out.push(("average_auc".into(), self.average_auc.value));
        out.push(("average_precision".into(), self.average_precision.value));
        out
    }

    /// One `key=value` line per metric; skipped-row counts go on `#` lines.
    pub fn to_key_values(&self) -> String {
        let mut out = String::new();
        for (k, v) in self.entries() {
            out.push_str(&format!("{k}={v}\n"));
        }
        out.push_str(&format!(
            "# average_auc_skipped_rows={}\n",
            self.average_auc.skipped
        ));
        out.push_str(&format!(
            "# average_precision_skipped_rows={}\n",
            self.average_precision.skipped
        ));
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("metric,value\n");
        for (k, v) in self.entries() {
            out.push_str(&format!("{k},{v}\n"));
        }
        out
    }
}
