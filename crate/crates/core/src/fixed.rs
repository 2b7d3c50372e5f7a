//! Box-rule preprocessing: cells forced to 1 by differences of row or column
//! sums, each propagated along its whole line.

use crate::error::Infeasibility;
use crate::matrix::{BinaryMatrix, Period, ProjectionPair};

/// Which box produced a forced cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoxRule {
    /// `r_i = r_{i+p} + 1` forces `(i, n)`.
    Right,
    /// `r_i + 1 = r_{i+p}` forces `(i+p, 1)`.
    Left,
    /// `c_j = c_{j+1} + 1` forces `(m, j)`.
    Lower,
    /// `c_j + 1 = c_{j+1}` forces `(1, j+1)`.
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RuleStep {
    pub rule: BoxRule,
    /// The index `i` (or `j`) whose comparison fired.
    pub index: usize,
    pub cell: (usize, usize),
}

/// Forced part `F` and the sums `(R', C')` left for the mobile part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPartDecomposition {
    pub period: Period,
    pub fixed: BinaryMatrix,
    pub residual: ProjectionPair,
    pub steps: Vec<RuleStep>,
}

struct State {
    period: Period,
    fixed: BinaryMatrix,
    rows: Vec<usize>,
    cols: Vec<usize>,
    steps: Vec<RuleStep>,
}

impl State {
    fn new(pair: &ProjectionPair, period: Period) -> Result<Self, Infeasibility> {
        if !pair.is_balanced() {
            return Err(Infeasibility::Unbalanced {
                rows: pair.rows().iter().sum(),
                cols: pair.cols().iter().sum(),
            });
        }
        Ok(Self {
            period,
            fixed: BinaryMatrix::zeros(pair.m(), pair.n()),
            rows: pair.rows().to_vec(),
            cols: pair.cols().to_vec(),
            steps: Vec::new(),
        })
    }

    /// Fixes the cell and its whole line, charging the residual sums.
    fn fix(&mut self, rule: BoxRule, index: usize, cell: (usize, usize)) -> Result<(), Infeasibility> {
        if self.fixed.get(cell.0, cell.1) {
            return Err(Infeasibility::DoubleFix(cell.0, cell.1));
        }
        let (p, q) = (self.period.p, self.period.q);
        let (mut i, mut j) = cell;
        while i > p && j > q {
            i -= p;
            j -= q;
        }
        let (m, n) = (self.fixed.rows(), self.fixed.cols());
        loop {
            self.fixed.set(i, j, true);
            let r = &mut self.rows[i - 1];
            let c = &mut self.cols[j - 1];
            if *r == 0 || *c == 0 {
                return Err(Infeasibility::NegativeResidual(i, j));
            }
            *r -= 1;
            *c -= 1;
            if i + p > m || j + q > n {
                break;
            }
            i += p;
            j += q;
        }
        self.steps.push(RuleStep { rule, index, cell });
        Ok(())
    }

    /// First rule among sums `k` and `k + step`, as `(rule, index, cell)`.
    fn first_difference(
        sums: &[usize],
        step: usize,
        plus: impl Fn(usize) -> (BoxRule, (usize, usize)),
        minus: impl Fn(usize) -> (BoxRule, (usize, usize)),
    ) -> Option<Result<(BoxRule, usize, (usize, usize)), Infeasibility>> {
        (0..sums.len().saturating_sub(step)).find_map(|k| {
            let (a, b) = (sums[k], sums[k + step]);
            let idx = k + 1;
            if a == b {
                None
            } else if a == b + 1 {
                let (rule, cell) = plus(idx);
                Some(Ok((rule, idx, cell)))
            } else if a + 1 == b {
                let (rule, cell) = minus(idx);
                Some(Ok((rule, idx, cell)))
            } else {
                Some(Err(Infeasibility::BoxOverflow { i: idx, j: idx + step, a, b }))
            }
        })
    }

    fn finish(self) -> FixedPartDecomposition {
        FixedPartDecomposition {
            period: self.period,
            residual: ProjectionPair::new(self.rows, self.cols).expect("residual sums stay within bounds"),
            fixed: self.fixed,
            steps: self.steps,
        }
    }
}

/// Preprocessing for period `(1,1)`: row rules `i = 1..m-1` are scanned
/// before column rules, restarting after every fix, until both residual
/// vectors are constant.
pub fn preprocess_11(pair: &ProjectionPair) -> Result<FixedPartDecomposition, Infeasibility> {
    let mut st = State::new(pair, Period::DIAGONAL)?;
    let (m, n) = (pair.m(), pair.n());
    loop {
        let row = State::first_difference(
            &st.rows,
            1,
            |i| (BoxRule::Right, (i, n)),
            |i| (BoxRule::Left, (i + 1, 1)),
        );
        let next = row.or_else(|| {
            State::first_difference(
                &st.cols,
                1,
                |j| (BoxRule::Lower, (m, j)),
                |j| (BoxRule::Upper, (1, j + 1)),
            )
        });
        match next {
            None => return Ok(st.finish()),
            Some(step) => {
                let (rule, index, cell) = step?;
                st.fix(rule, index, cell)?;
            }
        }
    }
}

/// Preprocessing for period `(p,1)`: fires on the first `i` with
/// `r_i != r_{i+p}` until the row sums are constant on every residue class.
///
/// Panics unless `1 <= p < m`.
pub fn preprocess_p1(pair: &ProjectionPair, p: usize) -> Result<FixedPartDecomposition, Infeasibility> {
    assert!(p >= 1 && p < pair.m(), "row step must satisfy 1 <= p < m");
    let mut st = State::new(pair, Period { p, q: 1 })?;
    let n = pair.n();
    while let Some(step) = State::first_difference(
        &st.rows,
        p,
        |i| (BoxRule::Right, (i, n)),
        |i| (BoxRule::Left, (i + p, 1)),
    ) {
        let (rule, index, cell) = step?;
        st.fix(rule, index, cell)?;
    }
    Ok(st.finish())
}
