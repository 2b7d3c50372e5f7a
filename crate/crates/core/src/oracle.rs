//! Exhaustive enumeration of periodic realizations for small grids.
//!
//! A periodic matrix is exactly a union of maximal lines, so the search picks
//! subsets of lines rather than cells.

use thiserror::Error;

use crate::matrix::{maximal_lines, BinaryMatrix, Period, ProjectionPair};

pub const DEFAULT_CELL_CEILING: usize = 42;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("{cells} cells exceed the enumeration ceiling of {ceiling}")]
pub struct CeilingExceeded {
    pub cells: usize,
    pub ceiling: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationRequest {
    pub pair: ProjectionPair,
    pub period: Period,
    pub limit: Option<usize>,
    /// Largest `m * n` accepted.
    pub ceiling: usize,
}

impl EnumerationRequest {
    pub fn new(pair: ProjectionPair, period: Period) -> Self {
        Self {
            pair,
            period,
            limit: None,
            ceiling: DEFAULT_CELL_CEILING,
        }
    }

    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = Some(limit);
        self
    }

    pub fn with_ceiling(mut self, ceiling: usize) -> Self {
        self.ceiling = ceiling;
        self
    }
}

struct Search<'a> {
    m: usize,
    n: usize,
    lines: Vec<Vec<(usize, usize)>>,
    /// `row_room[k][i]`: cells of row `i` on lines `k..`.
    row_room: Vec<Vec<usize>>,
    col_room: Vec<Vec<usize>>,
    rows: Vec<usize>,
    cols: Vec<usize>,
    chosen: Vec<bool>,
    limit: usize,
    found: usize,
    visit: &'a mut dyn FnMut(&[bool], &[Vec<(usize, usize)>]),
}

impl Search<'_> {
    fn feasible_from(&self, k: usize) -> bool {
        self.rows.iter().zip(&self.row_room[k]).all(|(r, room)| r <= room)
            && self.cols.iter().zip(&self.col_room[k]).all(|(c, room)| c <= room)
    }

    fn run(&mut self, k: usize) {
        if self.found >= self.limit || !self.feasible_from(k) {
            return;
        }
        if k == self.lines.len() {
            // room is zero past the last line, so every sum is met
            self.found += 1;
            (self.visit)(&self.chosen, &self.lines);
            return;
        }
        let fits = self.lines[k].iter().all(|&(i, j)| self.rows[i] > 0 && self.cols[j] > 0);
        if fits {
            for &(i, j) in &self.lines[k] {
                self.rows[i] -= 1;
                self.cols[j] -= 1;
            }
            self.chosen[k] = true;
            self.run(k + 1);
            self.chosen[k] = false;
            for &(i, j) in &self.lines[k] {
                self.rows[i] += 1;
                self.cols[j] += 1;
            }
        }
        self.run(k + 1);
    }
}

fn search(req: &EnumerationRequest, visit: &mut dyn FnMut(&[bool], &[Vec<(usize, usize)>])) -> Result<usize, CeilingExceeded> {
    let (m, n) = (req.pair.m(), req.pair.n());
    if m * n > req.ceiling {
        return Err(CeilingExceeded {
            cells: m * n,
            ceiling: req.ceiling,
        });
    }
    if !req.pair.is_balanced() {
        return Ok(0);
    }
    let lines: Vec<Vec<(usize, usize)>> = maximal_lines(m, n, req.period)
        .iter()
        .map(|l| l.cells().map(|(i, j)| (i - 1, j - 1)).collect())
        .collect();
    let mut row_room = vec![vec![0; m]; lines.len() + 1];
    let mut col_room = vec![vec![0; n]; lines.len() + 1];
    for k in (0..lines.len()).rev() {
        row_room[k] = row_room[k + 1].clone();
        col_room[k] = col_room[k + 1].clone();
        for &(i, j) in &lines[k] {
            row_room[k][i] += 1;
            col_room[k][j] += 1;
        }
    }
    let mut s = Search {
        m,
        n,
        chosen: vec![false; lines.len()],
        lines,
        row_room,
        col_room,
        rows: req.pair.rows().to_vec(),
        cols: req.pair.cols().to_vec(),
        limit: req.limit.unwrap_or(usize::MAX),
        found: 0,
        visit,
    };
    s.run(0);
    debug_assert!(s.m * s.n <= req.ceiling);
    Ok(s.found)
}

/// All realizations, in depth-first order over the maximal lines (a line is
/// taken before it is skipped).
pub fn enumerate_periodic(req: &EnumerationRequest) -> Result<Vec<BinaryMatrix>, CeilingExceeded> {
    let (m, n) = (req.pair.m(), req.pair.n());
    let mut out = Vec::new();
    search(req, &mut |chosen, lines| {
        let mut a = BinaryMatrix::zeros(m, n);
        for (line, _) in lines.iter().zip(chosen).filter(|(_, &c)| c) {
            for &(i, j) in line {
                a.set(i + 1, j + 1, true);
            }
        }
        out.push(a);
    })?;
    Ok(out)
}

pub fn count_periodic(req: &EnumerationRequest) -> Result<u64, CeilingExceeded> {
    let req = EnumerationRequest {
        limit: None,
        ..req.clone()
    };
    search(&req, &mut |_, _| {}).map(|c| c as u64)
}

/// First realization, if any.
pub fn find_periodic(pair: &ProjectionPair, period: Period, ceiling: usize) -> Result<Option<BinaryMatrix>, CeilingExceeded> {
    let req = EnumerationRequest::new(pair.clone(), period).with_limit(1).with_ceiling(ceiling);
    Ok(enumerate_periodic(&req)?.pop())
}
