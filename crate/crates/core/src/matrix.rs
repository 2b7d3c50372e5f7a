//! Binary matrices, their projections, periods and lattice lines.
//!
//! All public indices are 1-based: `(1, 1)` is the upper-left cell. Conversion
//! to 0-based storage happens inside this module only.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("a matrix needs at least one row and one column")]
    Empty,
    #[error("row {row} has {found} cells, expected {expected}")]
    RaggedRow {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("invalid character {ch:?} at row {row}, column {col}")]
    InvalidCell { row: usize, col: usize, ch: char },
    #[error("expected {expected} cells, got {found}")]
    CellCount { expected: usize, found: usize },
    #[error("row sum r_{index} = {value} exceeds the column count {bound}")]
    RowSumTooLarge {
        index: usize,
        value: usize,
        bound: usize,
    },
    #[error("column sum c_{index} = {value} exceeds the row count {bound}")]
    ColSumTooLarge {
        index: usize,
        value: usize,
        bound: usize,
    },
    #[error("period (0,0) is not a period")]
    ZeroPeriod,
    #[error("direction ({a},{b}) must be nonzero and primitive")]
    BadDirection { a: i64, b: i64 },
}

/// Dense 0/1 matrix with `rows >= 1` and `cols >= 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    cells: Vec<bool>,
}

impl BinaryMatrix {
    /// All-zero matrix. Panics if either dimension is zero.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            cells: vec![false; rows * cols],
        }
    }

    pub fn from_cells(rows: usize, cols: usize, cells: Vec<bool>) -> Result<Self, MatrixError> {
        if rows == 0 || cols == 0 {
            return Err(MatrixError::Empty);
        }
        if cells.len() != rows * cols {
            return Err(MatrixError::CellCount {
                expected: rows * cols,
                found: cells.len(),
            });
        }
        Ok(Self { rows, cols, cells })
    }

    /// Builds a matrix from rows of 0/1 values; any nonzero entry counts as 1.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self, MatrixError> {
        let cols = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        if rows.is_empty() || cols == 0 {
            return Err(MatrixError::Empty);
        }
        let mut cells = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(MatrixError::RaggedRow {
                    row: i + 1,
                    found: row.len(),
                    expected: cols,
                });
            }
            cells.extend(row.iter().map(|&v| v != 0));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            cells,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 1..=rows {
            for j in 1..=cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    fn offset(&self, i: usize, j: usize) -> usize {
        debug_assert!(
            (1..=self.rows).contains(&i) && (1..=self.cols).contains(&j),
            "cell ({i},{j}) outside {}x{}",
            self.rows,
            self.cols
        );
        (i - 1) * self.cols + (j - 1)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.cells[self.offset(i, j)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        let k = self.offset(i, j);
        self.cells[k] = value;
    }

    /// Cell lookup with signed coordinates; `None` outside the grid.
    pub fn get_signed(&self, i: i64, j: i64) -> Option<bool> {
        if self.contains(i, j) {
            Some(self.get(i as usize, j as usize))
        } else {
            None
        }
    }

    pub fn contains(&self, i: i64, j: i64) -> bool {
        i >= 1 && j >= 1 && i <= self.rows as i64 && j <= self.cols as i64
    }

    /// Iterator over the 1-cells in row-major order.
    pub fn ones(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, &v)| v)
            .map(move |(k, _)| (k / self.cols + 1, k % self.cols + 1))
    }

    pub fn count_ones(&self) -> usize {
        self.cells.iter().filter(|&&v| v).count()
    }

    pub fn is_zero(&self) -> bool {
        !self.cells.iter().any(|&v| v)
    }

    pub fn row_sums(&self) -> Vec<usize> {
        self.cells
            .chunks(self.cols)
            .map(|row| row.iter().filter(|&&v| v).count())
            .collect()
    }

    pub fn col_sums(&self) -> Vec<usize> {
        let mut sums = vec![0; self.cols];
        for row in self.cells.chunks(self.cols) {
            for (s, &v) in sums.iter_mut().zip(row) {
                *s += v as usize;
            }
        }
        sums
    }

    /// Row and column sums (the horizontal and vertical X-rays).
    pub fn projections(&self) -> ProjectionPair {
        ProjectionPair {
            rows: self.row_sums(),
            cols: self.col_sums(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Cellwise OR. Panics on a dimension mismatch.
    pub fn union(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            cells: self
                .cells
                .iter()
                .zip(&other.cells)
                .map(|(&a, &b)| a || b)
                .collect(),
        }
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        (self.rows, self.cols) == (other.rows, other.cols)
            && !self.cells.iter().zip(&other.cells).any(|(&a, &b)| a && b)
    }

    /// True iff `a(i,j) = 1` forces `a(i+p, j+q) = 1` and `a(i-p, j-q) = 1`
    /// wherever those cells exist.
    pub fn is_periodic(&self, period: Period) -> bool {
        self.periodicity_violation(period).is_none()
    }

    /// First 1-cell (row-major) whose periodic partner is an in-grid 0.
    pub fn periodicity_violation(&self, period: Period) -> Option<((usize, usize), (usize, usize))> {
        let (p, q) = (period.p as i64, period.q as i64);
        for (i, j) in self.ones() {
            let (si, sj) = (i as i64, j as i64);
            for (ti, tj) in [(si + p, sj + q), (si - p, sj - q)] {
                if self.get_signed(ti, tj) == Some(false) {
                    return Some(((i, j), (ti as usize, tj as usize)));
                }
            }
        }
        None
    }

    /// Discrete X-ray along `dir`: one sum per lattice line meeting the grid,
    /// including zero-sum lines, ordered by the row-major position of each
    /// line's first in-grid cell.
    pub fn xray(&self, dir: Direction) -> Vec<usize> {
        // x runs along columns, y along rows.
        let (di, dj) = (dir.b, dir.a);
        let mut out = Vec::new();
        for i in 1..=self.rows as i64 {
            for j in 1..=self.cols as i64 {
                if self.contains(i - di, j - dj) {
                    continue;
                }
                let (mut ci, mut cj, mut sum) = (i, j, 0);
                while let Some(v) = self.get_signed(ci, cj) {
                    sum += v as usize;
                    ci += di;
                    cj += dj;
                }
                out.push(sum);
            }
        }
        out
    }
}

impl fmt::Display for BinaryMatrix {
    /// Text format: one line per row, characters `0`/`1`, newline-terminated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.cells.chunks(self.cols) {
            let line: String = row.iter().map(|&v| if v { '1' } else { '0' }).collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{}", self.rows, self.cols)?;
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for BinaryMatrix {
    type Err = MatrixError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines: Vec<&str> = s.split('\n').map(|l| l.strip_suffix('\r').unwrap_or(l)).collect();
        if lines.last() == Some(&"") {
            lines.pop();
        }
        if lines.is_empty() {
            return Err(MatrixError::Empty);
        }
        let cols = lines[0].chars().count();
        if cols == 0 {
            return Err(MatrixError::Empty);
        }
        let mut cells = Vec::with_capacity(lines.len() * cols);
        for (i, line) in lines.iter().enumerate() {
            let found = line.chars().count();
            if found != cols {
                return Err(MatrixError::RaggedRow {
                    row: i + 1,
                    found,
                    expected: cols,
                });
            }
            for (j, ch) in line.chars().enumerate() {
                match ch {
                    '0' => cells.push(false),
                    '1' => cells.push(true),
                    _ => {
                        return Err(MatrixError::InvalidCell {
                            row: i + 1,
                            col: j + 1,
                            ch,
                        })
                    }
                }
            }
        }
        Ok(Self {
            rows: lines.len(),
            cols,
            cells,
        })
    }
}

/// Row sums `R` and column sums `C` of an unknown `m x n` matrix.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjectionPair {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl ProjectionPair {
    /// Checks `m, n >= 1`, `r_i <= n` and `c_j <= m`. Balance is not required.
    pub fn new(rows: Vec<usize>, cols: Vec<usize>) -> Result<Self, MatrixError> {
        if rows.is_empty() || cols.is_empty() {
            return Err(MatrixError::Empty);
        }
        let (m, n) = (rows.len(), cols.len());
        if let Some((k, &v)) = rows.iter().enumerate().find(|(_, &v)| v > n) {
            return Err(MatrixError::RowSumTooLarge {
                index: k + 1,
                value: v,
                bound: n,
            });
        }
        if let Some((k, &v)) = cols.iter().enumerate().find(|(_, &v)| v > m) {
            return Err(MatrixError::ColSumTooLarge {
                index: k + 1,
                value: v,
                bound: m,
            });
        }
        Ok(Self { rows, cols })
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.cols.len()
    }

    pub fn is_balanced(&self) -> bool {
        self.rows.iter().sum::<usize>() == self.cols.iter().sum::<usize>()
    }

    pub fn total(&self) -> usize {
        self.rows.iter().sum()
    }

    /// Sums of the transposed matrix.
    pub fn transpose(&self) -> Self {
        Self {
            rows: self.cols.clone(),
            cols: self.rows.clone(),
        }
    }

    pub fn zeros(m: usize, n: usize) -> Self {
        Self {
            rows: vec![0; m],
            cols: vec![0; n],
        }
    }
}

/// Row step `p` and column step `q`; `(0, 0)` is excluded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Period {
    pub p: usize,
    pub q: usize,
}

impl Period {
    pub const DIAGONAL: Period = Period { p: 1, q: 1 };

    pub fn new(p: usize, q: usize) -> Result<Self, MatrixError> {
        if p == 0 && q == 0 {
            return Err(MatrixError::ZeroPeriod);
        }
        Ok(Self { p, q })
    }

    pub fn transpose(self) -> Self {
        Self {
            p: self.q,
            q: self.p,
        }
    }
}

impl fmt::Display for Period {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// Lattice direction `(a, b)`: `a` steps along columns, `b` along rows, so
/// `(1, 0)` is horizontal and `(0, 1)` vertical.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Direction {
    pub a: i64,
    pub b: i64,
}

impl Direction {
    pub fn new(a: i64, b: i64) -> Result<Self, MatrixError> {
        if (a, b) == (0, 0) || gcd(a.unsigned_abs(), b.unsigned_abs()) != 1 {
            return Err(MatrixError::BadDirection { a, b });
        }
        Ok(Self { a, b })
    }
}

impl FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s
            .split_once(',')
            .ok_or_else(|| format!("direction {s:?} is not of the form a,b"))?;
        let parse = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("{t:?}: {e}"));
        Direction::new(parse(a)?, parse(b)?).map_err(|e| e.to_string())
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A maximal run of cells `{(x + k p, y + k q) : 0 <= k < len}` inside the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MaximalLine {
    pub period: Period,
    /// Starting point: the cell whose predecessor `(x - p, y - q)` is outside.
    pub start: (usize, usize),
    pub len: usize,
}

impl MaximalLine {
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let (x, y) = self.start;
        (0..self.len).map(move |k| (x + k * self.period.p, y + k * self.period.q))
    }
}

/// Every maximal line of direction `period` in an `m x n` grid.
///
/// Lines are ordered by their starting points: ascending column, then
/// descending row. Each cell lies on exactly one returned line.
pub fn maximal_lines(m: usize, n: usize, period: Period) -> Vec<MaximalLine> {
    let (p, q) = (period.p, period.q);
    let mut lines = Vec::new();
    for y in 1..=n {
        for x in (1..=m).rev() {
            let has_pred = x > p && y > q;
            if has_pred {
                continue;
            }
            let mut len = 1;
            while x + len * p <= m && y + len * q <= n {
                len += 1;
                if p == 0 && q == 0 {
                    break;
                }
            }
            lines.push(MaximalLine {
                period,
                start: (x, y),
                len,
            });
        }
    }
    lines
}

/// First constraint a candidate solution breaks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("matrix is {found_m}x{found_n} but the projections describe {m}x{n}")]
    Dimensions {
        m: usize,
        n: usize,
        found_m: usize,
        found_n: usize,
    },
    #[error("row {index}: sum is {found}, expected {expected}")]
    RowSum {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("column {index}: sum is {found}, expected {expected}")]
    ColSum {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("period {period}: cell {cell:?} is 1 but {partner:?} is 0")]
    Period {
        period: Period,
        cell: (usize, usize),
        partner: (usize, usize),
    },
}

/// Checks sums and periodicity, reporting the first violation.
pub fn check_solution(matrix: &BinaryMatrix, pair: &ProjectionPair, period: Period) -> Result<(), Violation> {
    if (matrix.rows(), matrix.cols()) != (pair.m(), pair.n()) {
        return Err(Violation::Dimensions {
            m: pair.m(),
            n: pair.n(),
            found_m: matrix.rows(),
            found_n: matrix.cols(),
        });
    }
    for (k, (&found, &expected)) in matrix.row_sums().iter().zip(pair.rows()).enumerate() {
        if found != expected {
            return Err(Violation::RowSum {
                index: k + 1,
                expected,
                found,
            });
        }
    }
    for (k, (&found, &expected)) in matrix.col_sums().iter().zip(pair.cols()).enumerate() {
        if found != expected {
            return Err(Violation::ColSum {
                index: k + 1,
                expected,
                found,
            });
        }
    }
    if let Some((cell, partner)) = matrix.periodicity_violation(period) {
        return Err(Violation::Period {
            period,
            cell,
            partner,
        });
    }
    Ok(())
}

pub fn verify_solution(matrix: &BinaryMatrix, pair: &ProjectionPair, period: Period) -> bool {
    check_solution(matrix, pair, period).is_ok()
}
