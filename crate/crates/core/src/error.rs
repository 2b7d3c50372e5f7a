use thiserror::Error;

use crate::matrix::Period;

/// Why an instance has no periodic realization.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Infeasibility {
    #[error("row sums total {rows} but column sums total {cols}")]
    Unbalanced { rows: usize, cols: usize },
    #[error("sums {a} and {b} at indices {i} and {j} differ by more than one")]
    BoxOverflow { i: usize, j: usize, a: usize, b: usize },
    #[error("cell ({0},{1}) forced twice")]
    DoubleFix(usize, usize),
    #[error("residual sum went negative while propagating through ({0},{1})")]
    NegativeResidual(usize, usize),
    #[error("residual sums are not consistent with complete loops")]
    LoopArithmetic,
    #[error("only {free} loops avoid the fixed part, {needed} are needed")]
    NotEnoughLoops { free: usize, needed: usize },
    #[error("no bar arrangement matches the residual column sums")]
    NoBarArrangement,
    #[error("residue class {class} cannot place its lines without meeting the fixed part")]
    StartsBlocked { class: usize },
    #[error("row sums within a residue class differ after preprocessing")]
    NotHomogeneous,
    #[error("exhaustive search found no realization")]
    Exhausted,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("infeasible: {0}")]
    Infeasible(Infeasibility),
    #[error("period {period} is not supported for a {m}x{n} matrix")]
    UnsupportedPeriod { period: Period, m: usize, n: usize },
    #[error("search budget exhausted after {explored} nodes without a decision")]
    IncompleteSearch { explored: u64 },
    #[error("anchor {anchor}: satisfying assignment decodes to an invalid bar matrix: {detail}")]
    EncodingMismatch { anchor: usize, detail: String },
}

impl From<Infeasibility> for SolveError {
    fn from(reason: Infeasibility) -> Self {
        SolveError::Infeasible(reason)
    }
}

impl SolveError {
    pub fn is_infeasible(&self) -> bool {
        matches!(self, SolveError::Infeasible(_))
    }
}
