//! Multi-label datasets: ARFF ingestion, synthetic generation, model files.

mod arff;
mod model;
mod synth;

use std::collections::HashSet;

pub use arff::{
    load_arff, load_arff_with_xml, parse_arff, parse_mulan_xml, write_arff, LabelPosition,
};
pub use model::{load_model, parse_model, save_model, write_model};
pub use synth::{synth_low_rank, SynthSpec};

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

#[derive(Debug, Clone, PartialEq)]
pub struct MultiLabelDataset {
    features: DenseMatrix,
    labels: DenseMatrix,
    feature_names: Vec<String>,
    label_names: Vec<String>,
}

impl MultiLabelDataset {
    pub fn new(
        features: DenseMatrix,
        labels: DenseMatrix,
        feature_names: Vec<String>,
        label_names: Vec<String>,
    ) -> Result<Self> {
        if features.rows() != labels.rows() {
            return Err(Error::DimensionMismatch(format!(
                "{} feature rows but {} label rows",
                features.rows(),
                labels.rows()
            )));
        }
        if feature_names.len() != features.cols() || label_names.len() != labels.cols() {
            return Err(Error::DimensionMismatch(format!(
                "{} feature names for {} columns, {} label names for {} columns",
                feature_names.len(),
                features.cols(),
                label_names.len(),
                labels.cols()
            )));
        }
        if let Some(v) = labels.as_slice().iter().find(|&&v| v != 0.0 && v != 1.0) {
            return Err(Error::InvalidMatrix(format!(
                "label value {v} is not binary"
            )));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = feature_names
            .iter()
            .chain(&label_names)
            .find(|n| !seen.insert(n.as_str()))
        {
            return Err(Error::InvalidMatrix(format!(
                "duplicate attribute name '{dup}'"
            )));
        }
        Ok(Self {
            features,
            labels,
            feature_names,
            label_names,
        })
    }

    pub fn features(&self) -> &DenseMatrix {
        &self.features
    }

    pub fn labels(&self) -> &DenseMatrix {
        &self.labels
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn label_names(&self) -> &[String] {
        &self.label_names
    }

    pub fn n(&self) -> usize {
        self.features.rows()
    }

    /// Appends the rows of `other`, which must have identical attributes.
    pub fn concat(&self, other: &MultiLabelDataset) -> Result<Self> {
        if self.feature_names != other.feature_names || self.label_names != other.label_names {
            return Err(Error::DimensionMismatch(
                "datasets have different attributes".into(),
            ));
        }
        Ok(Self {
            features: self.features.vstack(&other.features)?,
            labels: self.labels.vstack(&other.labels)?,
            feature_names: self.feature_names.clone(),
            label_names: self.label_names.clone(),
        })
    }
}

/// Label statistics in the layout of the usual dataset summary tables.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetStats {
    pub n: usize,
    pub d: usize,
    pub l: usize,
    pub cardinality: f64,
    pub density: f64,
    pub distinct: usize,
}

impl DatasetStats {
    pub fn to_key_values(&self) -> String {
        format!(
            "n={}\nd={}\nl={}\ncardinality={}\ndensity={}\ndistinct={}\n",
            self.n, self.d, self.l, self.cardinality, self.density, self.distinct
        )
    }
}

pub fn stats(ds: &MultiLabelDataset) -> DatasetStats {
    let labels = ds.labels();
    let (n, l) = labels.shape();
    let total: f64 = labels.as_slice().iter().sum();
    let cardinality = total / n as f64;
    let distinct = (0..n)
        .map(|i| {
            labels
                .row(i)
                .iter()
                .map(|&v| v == 1.0)
                .collect::<Vec<bool>>()
        })
        .collect::<HashSet<_>>()
        .len();
    DatasetStats {
        n,
        d: ds.features().cols(),
        l,
        cardinality,
        density: cardinality / l as f64,
        distinct,
    }
}
