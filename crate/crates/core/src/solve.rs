//! Entry point that picks a solver from the period.

use crate::cylinder::{self, SolveOptions};
use crate::error::{Infeasibility, SolveError};
use crate::matrix::{BinaryMatrix, Period, ProjectionPair};
use crate::ryser;
use crate::torus;

/// Which algorithm handles a period on a given grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// The period relates no two cells; plain row/column reconstruction.
    Unconstrained,
    Diagonal,
    RowStep(usize),
    ColumnStep(usize),
}

pub fn strategy(m: usize, n: usize, period: Period) -> Result<Strategy, SolveError> {
    let Period { p, q } = period;
    if p >= m || q >= n {
        return Ok(Strategy::Unconstrained);
    }
    match (p, q) {
        (1, 1) => Ok(Strategy::Diagonal),
        (p, 1) if p > 1 => Ok(Strategy::RowStep(p)),
        (1, q) if q > 1 => Ok(Strategy::ColumnStep(q)),
        _ => Err(SolveError::UnsupportedPeriod { period, m, n }),
    }
}

pub fn solve(pair: &ProjectionPair, period: Period) -> Result<BinaryMatrix, SolveError> {
    solve_with(pair, period, &SolveOptions::default())
}

pub fn solve_with(pair: &ProjectionPair, period: Period, opts: &SolveOptions) -> Result<BinaryMatrix, SolveError> {
    match strategy(pair.m(), pair.n(), period)? {
        Strategy::Unconstrained => {
            if !pair.is_balanced() {
                return Err(Infeasibility::Unbalanced {
                    rows: pair.rows().iter().sum(),
                    cols: pair.cols().iter().sum(),
                }
                .into());
            }
            ryser::ryser_reconstruct(pair).map_err(|_| Infeasibility::Exhausted.into())
        }
        Strategy::Diagonal => torus::solve_11(pair),
        Strategy::RowStep(p) => cylinder::solve_p1_with(pair, p, opts).map(|r| r.matrix),
        Strategy::ColumnStep(q) => cylinder::solve_1q_with(pair, q, opts).map(|r| r.matrix),
    }
}
