//! Binary matrices with prescribed row and column sums.

use thiserror::Error;

use crate::flow::FlowNetwork;
use crate::matrix::{BinaryMatrix, ProjectionPair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("no binary matrix realizes the given sums")]
pub struct Infeasible;

/// Gale–Ryser test: totals agree and the sorted column sums are dominated by
/// the conjugate of the row sums.
pub fn ryser_feasible(pair: &ProjectionPair) -> bool {
    if !pair.is_balanced() {
        return false;
    }
    let mut cols = pair.cols().to_vec();
    cols.sort_unstable_by(|a, b| b.cmp(a));
    let mut prefix = 0;
    for (k, c) in cols.iter().enumerate() {
        prefix += c;
        let bound: usize = pair.rows().iter().map(|&r| r.min(k + 1)).sum();
        if prefix > bound {
            return false;
        }
    }
    true
}

/// Greedy reconstruction. Columns are filled by decreasing sum (ties by index);
/// each column takes the rows with the largest remaining sums (ties by index).
pub fn ryser_reconstruct(pair: &ProjectionPair) -> Result<BinaryMatrix, Infeasible> {
    if !ryser_feasible(pair) {
        return Err(Infeasible);
    }
    let (m, n) = (pair.m(), pair.n());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&j| (std::cmp::Reverse(pair.cols()[j]), j));
    let mut remaining = pair.rows().to_vec();
    let mut out = BinaryMatrix::zeros(m, n);
    let mut rows: Vec<usize> = (0..m).collect();
    for j in order {
        rows.sort_by_key(|&i| (std::cmp::Reverse(remaining[i]), i));
        for &i in &rows[..pair.cols()[j]] {
            if remaining[i] == 0 {
                return Err(Infeasible);
            }
            remaining[i] -= 1;
            out.set(i + 1, j + 1, true);
        }
    }
    if remaining.iter().any(|&r| r != 0) {
        return Err(Infeasible);
    }
    Ok(out)
}

/// Cells that must stay 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenMask {
    cells: BinaryMatrix,
}

impl ForbiddenMask {
    pub fn empty(m: usize, n: usize) -> Self {
        Self {
            cells: BinaryMatrix::zeros(m, n),
        }
    }

    pub fn from_cells(m: usize, n: usize, cells: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut mask = Self::empty(m, n);
        for (i, j) in cells {
            mask.insert(i, j);
        }
        mask
    }

    pub fn insert(&mut self, i: usize, j: usize) {
        self.cells.set(i, j, true);
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.cells.get(i, j)
    }

    pub fn rows(&self) -> usize {
        self.cells.rows()
    }

    pub fn cols(&self) -> usize {
        self.cells.cols()
    }

    pub fn len(&self) -> usize {
        self.cells.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_zero()
    }
}

/// Max-flow reconstruction that keeps every masked cell at 0.
///
/// Panics if the mask dimensions differ from the pair's.
pub fn reconstruct_with_forbidden(pair: &ProjectionPair, mask: &ForbiddenMask) -> Result<BinaryMatrix, Infeasible> {
    assert_eq!((mask.rows(), mask.cols()), (pair.m(), pair.n()), "mask dimensions");
    if !pair.is_balanced() {
        return Err(Infeasible);
    }
    let chosen = fill_bipartite(pair.rows(), pair.cols(), |i, j| !mask.contains(i + 1, j + 1)).ok_or(Infeasible)?;
    let mut out = BinaryMatrix::zeros(pair.m(), pair.n());
    for (i, cols) in chosen.iter().enumerate() {
        if cols.len() != pair.rows()[i] {
            return Err(Infeasible);
        }
        for &j in cols {
            out.set(i + 1, j + 1, true);
        }
    }
    Ok(out)
}

/// Places `col_demand[j]` ones in column `j`, at most `row_cap[i]` in row `i`,
/// one per allowed cell. Returns the 0-based columns used by each row, or
/// `None` when some demand cannot be met.
pub(crate) fn fill_bipartite(
    row_cap: &[usize],
    col_demand: &[usize],
    allowed: impl Fn(usize, usize) -> bool,
) -> Option<Vec<Vec<usize>>> {
    let (m, n) = (row_cap.len(), col_demand.len());
    let demand: usize = col_demand.iter().sum();
    if demand > row_cap.iter().sum() {
        return None;
    }
    let (s, t) = (m + n, m + n + 1);
    let mut g = FlowNetwork::new(m + n + 2);
    for (i, &c) in row_cap.iter().enumerate() {
        if c > 0 {
            g.add_edge(s, i, c as u32);
        }
    }
    for (j, &d) in col_demand.iter().enumerate() {
        if d > 0 {
            g.add_edge(m + j, t, d as u32);
        }
    }
    let mut cell_edges = Vec::new();
    for i in (0..m).filter(|&i| row_cap[i] > 0) {
        for j in (0..n).filter(|&j| col_demand[j] > 0) {
            if allowed(i, j) {
                cell_edges.push((i, j, g.add_edge(i, m + j, 1)));
            }
        }
    }
    if g.max_flow(s, t) != demand as u64 {
        return None;
    }
    let mut rows = vec![Vec::new(); m];
    for (i, j, e) in cell_edges {
        if g.flow_on(e) == 1 {
            rows[i].push(j);
        }
    }
    Some(rows)
}
