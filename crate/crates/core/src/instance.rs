//! JSON instance files: `{"m", "n", "p", "q", "R", "C"}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::{BinaryMatrix, MatrixError, Period, ProjectionPair};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Instance {
    pub m: usize,
    pub n: usize,
    pub p: usize,
    pub q: usize,
    #[serde(rename = "R")]
    pub rows: Vec<usize>,
    #[serde(rename = "C")]
    pub cols: Vec<usize>,
}

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("malformed instance: {0}")]
    Json(#[from] serde_json::Error),
    #[error("R has {found} entries but m = {expected}")]
    RowLength { expected: usize, found: usize },
    #[error("C has {found} entries but n = {expected}")]
    ColLength { expected: usize, found: usize },
    #[error("m and n must be positive")]
    EmptyGrid,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

impl Instance {
    pub fn from_matrix(a: &BinaryMatrix, period: Period) -> Self {
        Self {
            m: a.rows(),
            n: a.cols(),
            p: period.p,
            q: period.q,
            rows: a.row_sums(),
            cols: a.col_sums(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, InstanceError> {
        let inst: Instance = serde_json::from_str(text)?;
        inst.check_shape()?;
        Ok(inst)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("instances always serialize")
    }

    fn check_shape(&self) -> Result<(), InstanceError> {
        if self.m == 0 || self.n == 0 {
            return Err(InstanceError::EmptyGrid);
        }
        if self.rows.len() != self.m {
            return Err(InstanceError::RowLength {
                expected: self.m,
                found: self.rows.len(),
            });
        }
        if self.cols.len() != self.n {
            return Err(InstanceError::ColLength {
                expected: self.n,
                found: self.cols.len(),
            });
        }
        Ok(())
    }

    pub fn period(&self) -> Result<Period, MatrixError> {
        Period::new(self.p, self.q)
    }

    /// The sums as a pair. Fails when a sum exceeds the other dimension,
    /// which no matrix of this shape can realize.
    pub fn pair(&self) -> Result<ProjectionPair, MatrixError> {
        ProjectionPair::new(self.rows.clone(), self.cols.clone())
    }
}
