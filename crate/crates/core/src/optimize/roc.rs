use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Scalar;

/// Criteria the objective trades off.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Criterion {
    Cost,
    Area,
    Payload,
}

/// Weights of the cost, area, and payload terms.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveWeights {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

#[derive(Debug, Error, PartialEq)]
pub enum WeightError {
    #[error("weights must be finite and non-negative")]
    Negative,
    #[error("at least one weight must be positive")]
    AllZero,
    #[error("criterion {0:?} ranked twice")]
    Duplicate(Criterion),
    #[error("ranking is empty")]
    EmptyRanking,
    #[error("cannot parse weights `{0}`; expected three comma-separated numbers")]
    Parse(String),
}

impl ObjectiveWeights {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self, WeightError> {
        let w = [alpha, beta, gamma];
        if w.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(WeightError::Negative);
        }
        if w.iter().all(|v| *v == 0.0) {
            return Err(WeightError::AllZero);
        }
        Ok(ObjectiveWeights { alpha, beta, gamma })
    }

    /// Rank-order-centroid weights for cost > area > payload.
    pub fn roc_default() -> Self {
        roc_weights(&[Criterion::Cost, Criterion::Area, Criterion::Payload]).expect("static ranking")
    }

    pub fn sum(&self) -> f64 {
        self.alpha + self.beta + self.gamma
    }

    /// Same direction, rescaled to sum to one.
    pub fn normalized(&self) -> Self {
        let s = self.sum();
        ObjectiveWeights { alpha: self.alpha / s, beta: self.beta / s, gamma: self.gamma / s }
    }

    pub fn parse(text: &str) -> Result<Self, WeightError> {
        let parts: Vec<f64> = text
            .split(',')
            .map(|p| p.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|_| WeightError::Parse(text.to_string()))?;
        match parts.as_slice() {
            [a, b, g] => ObjectiveWeights::new(*a, *b, *g),
            _ => Err(WeightError::Parse(text.to_string())),
        }
    }
}

impl Default for ObjectiveWeights {
    fn default() -> Self {
        ObjectiveWeights::roc_default()
    }
}

impl fmt::Display for ObjectiveWeights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.3},{:.3},{:.3}", self.alpha, self.beta, self.gamma)
    }
}

/// Centroid weights for `n` ranked criteria, most important first:
/// `w_k = (1/n) * sum_{j=k..n} 1/j`.
pub fn roc_centroid<T: Scalar>(n: usize) -> Vec<T> {
    let n_t = T::from_usize(n).expect("rank count fits scalar");
    (1..=n)
        .map(|k| {
            let tail = (k..=n).fold(T::zero(), |acc, j| acc + T::one() / T::from_usize(j).expect("fits"));
            tail / n_t.clone()
        })
        .collect()
}

/// Weights from a ranking of distinct criteria, most important first.
/// Unranked criteria get weight zero.
pub fn roc_weights(ranking: &[Criterion]) -> Result<ObjectiveWeights, WeightError> {
    if ranking.is_empty() {
        return Err(WeightError::EmptyRanking);
    }
    for (i, c) in ranking.iter().enumerate() {
        if ranking[..i].contains(c) {
            return Err(WeightError::Duplicate(*c));
        }
    }
    let w = roc_centroid::<f64>(ranking.len());
    let mut out = ObjectiveWeights { alpha: 0.0, beta: 0.0, gamma: 0.0 };
    for (c, w) in ranking.iter().zip(w) {
        match c {
            Criterion::Cost => out.alpha = w,
            Criterion::Area => out.beta = w,
            Criterion::Payload => out.gamma = w,
        }
    }
    Ok(out)
}
