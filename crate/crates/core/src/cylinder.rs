//! Period `(p,1)` with `1 < p < m`, and `(1,q)` by transposition.
//!
//! After preprocessing, the residual is a union of lines on the cylinder made
//! by gluing the left and right borders. A line starts in one of the first `p`
//! rows and visits every row of its residue class, so each class `x` needs
//! `r'(x)` distinct start columns. Lines become bars of a cylinder bar
//! problem, solved through 2-SAT; the bar starts are then handed back to the
//! classes with a flow that avoids the fixed part.

use std::time::{Duration, Instant};

use crate::error::{Infeasibility, SolveError};
use crate::fixed::{preprocess_p1, FixedPartDecomposition};
use crate::matrix::{check_solution, BinaryMatrix, Period, ProjectionPair};
use crate::oracle;
use crate::rhc::{self, build_rhc_formula, Bar, RhcError, RhcFormula, RhcInstance};
use crate::ryser::fill_bipartite;
use crate::twosat::Literal;

/// Residue classes of rows modulo `p` and their common residual row sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowClassStructure {
    pub p: usize,
    pub m: usize,
    /// `L = floor(m / p)`.
    pub short_len: usize,
    /// `n_{L+1} = m mod p`; classes `1..=n_{L+1}` have length `L + 1`.
    pub long_classes: usize,
    /// `n_L = p - n_{L+1}`.
    pub short_classes: usize,
    /// `r'(x)` for `x = 1..=p`.
    pub class_sums: Vec<usize>,
}

impl RowClassStructure {
    /// Fails if the row sums are not constant on some residue class.
    pub fn new(rows: &[usize], p: usize) -> Result<Self, RhcError> {
        let m = rows.len();
        assert!(p >= 1 && p <= m, "row step must satisfy 1 <= p <= m");
        for x in 1..=p {
            if (x..=m).step_by(p).any(|i| rows[i - 1] != rows[x - 1]) {
                return Err(RhcError::NotHomogeneous { class: x });
            }
        }
        Ok(Self {
            p,
            m,
            short_len: m / p,
            long_classes: m % p,
            short_classes: p - m % p,
            class_sums: rows[..p].to_vec(),
        })
    }

    pub fn is_long(&self, x: usize) -> bool {
        x <= self.long_classes
    }

    /// `l(x)`: number of rows in class `x`.
    pub fn class_len(&self, x: usize) -> usize {
        self.short_len + self.is_long(x) as usize
    }

    pub fn short_bars(&self) -> usize {
        self.class_sums[self.long_classes..].iter().sum()
    }

    pub fn long_bars(&self) -> usize {
        self.class_sums[..self.long_classes].iter().sum()
    }

    pub fn bar_count(&self) -> usize {
        self.class_sums.iter().sum()
    }

    fn classes(&self, long: bool) -> std::ops::RangeInclusive<usize> {
        if long {
            1..=self.long_classes
        } else {
            self.long_classes + 1..=self.p
        }
    }
}

/// Cells of the cylinder line of length `len` starting at `(x, y)`.
pub fn cylinder_line(x: usize, y: usize, len: usize, p: usize, n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..len).map(move |k| (x + k * p, (y - 1 + k) % n + 1))
}

/// Builds the bar problem of a class-homogeneous residual, with the default
/// per-column caps.
pub fn reduce_to_rhc(residual: &ProjectionPair, p: usize) -> Result<(RowClassStructure, RhcInstance), RhcError> {
    let classes = RowClassStructure::new(residual.rows(), p)?;
    let inst = RhcInstance::new(
        classes.short_len,
        classes.short_classes,
        classes.long_classes,
        classes.short_bars(),
        classes.long_bars(),
        residual.cols().to_vec(),
    );
    inst.check_arithmetic()?;
    Ok((classes, inst))
}

/// Start cells whose line would meet the fixed part.
#[derive(Debug, Clone)]
pub struct StartMask {
    n: usize,
    blocked: Vec<bool>,
}

impl StartMask {
    pub fn new(classes: &RowClassStructure, fixed: &BinaryMatrix) -> Self {
        let n = fixed.cols();
        let mut blocked = vec![false; classes.p * n];
        for x in 1..=classes.p {
            for y in 1..=n {
                blocked[(x - 1) * n + y - 1] =
                    cylinder_line(x, y, classes.class_len(x), classes.p, n).any(|(i, j)| fixed.get(i, j));
            }
        }
        Self { n, blocked }
    }

    pub fn open(n: usize, p: usize) -> Self {
        Self {
            n,
            blocked: vec![false; p * n],
        }
    }

    pub fn is_blocked(&self, x: usize, y: usize) -> bool {
        self.blocked[(x - 1) * self.n + y - 1]
    }

    /// Caps per column: classes of each length with lines left to place
    /// whose start there is not blocked.
    pub fn caps(&self, classes: &RowClassStructure) -> (Vec<usize>, Vec<usize>) {
        let count = |long: bool, y: usize| {
            classes
                .classes(long)
                .filter(|&x| classes.class_sums[x - 1] > 0 && !self.is_blocked(x, y))
                .count()
        };
        (
            (1..=self.n).map(|y| count(false, y)).collect(),
            (1..=self.n).map(|y| count(true, y)).collect(),
        )
    }
}

/// Hands start counts to classes. With `exact`, every class gets exactly
/// `r'(x)` starts; otherwise classes may stay short of it. Returns the start
/// columns of each class.
fn assign_starts(
    classes: &RowClassStructure,
    mask: &StartMask,
    short_counts: &[usize],
    long_counts: &[usize],
    exact: bool,
) -> Option<Vec<Vec<usize>>> {
    let mut starts = vec![Vec::new(); classes.p];
    for (long, counts) in [(true, long_counts), (false, short_counts)] {
        let block: Vec<usize> = classes.classes(long).collect();
        let caps: Vec<usize> = block.iter().map(|&x| classes.class_sums[x - 1]).collect();
        if exact && caps.iter().sum::<usize>() != counts.iter().sum::<usize>() {
            return None;
        }
        let rows = fill_bipartite(&caps, counts, |k, j| !mask.is_blocked(block[k], j + 1))?;
        for (k, cols) in rows.into_iter().enumerate() {
            starts[block[k] - 1] = cols.into_iter().map(|j| j + 1).collect();
        }
    }
    Some(starts)
}

fn lines_to_matrix(classes: &RowClassStructure, n: usize, starts: &[Vec<usize>]) -> BinaryMatrix {
    let mut a = BinaryMatrix::zeros(classes.m, n);
    for (k, ys) in starts.iter().enumerate() {
        let x = k + 1;
        for &y in ys {
            for (i, j) in cylinder_line(x, y, classes.class_len(x), classes.p, n) {
                a.set(i, j, true);
            }
        }
    }
    a
}

/// A start cell in the first `p` rows with its rank in bar order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StartPoint {
    pub x: usize,
    pub y: usize,
    pub rank: usize,
}

/// Turns the lines of a cylinder-periodic matrix into bars: starts are the
/// 1-cells of rows `1..=p`, ranked by ascending column and then descending
/// row, and rank `o` becomes row `o` holding the line's columns.
///
/// Column sums are preserved when every line is at most `n` long.
pub fn bar_matrix_from_lines(a: &BinaryMatrix, p: usize) -> Result<(BinaryMatrix, Vec<StartPoint>), RhcError> {
    let (m, n) = (a.rows(), a.cols());
    let mut starts: Vec<(usize, usize)> = a.ones().filter(|&(x, _)| x <= p).collect();
    if starts.is_empty() {
        return Err(RhcError::NoBars);
    }
    starts.sort_by_key(|&(x, y)| (y, std::cmp::Reverse(x)));
    let long_classes = m % p;
    let mut bars = BinaryMatrix::zeros(starts.len(), n);
    let mut points = Vec::with_capacity(starts.len());
    for (k, &(x, y)) in starts.iter().enumerate() {
        let len = m / p + (x <= long_classes) as usize;
        for c in 0..len {
            bars.set(k + 1, (y - 1 + c) % n + 1, true);
        }
        points.push(StartPoint { x, y, rank: k + 1 });
    }
    Ok((bars, points))
}

/// Rebuilds the mobile part from bar start counts: `short_starts` (`C1`)
/// are split among the short classes and `long_starts` (`C2`) among the long
/// ones, avoiding starts whose line meets `fixed`, and every start is
/// extended along its cylinder line.
pub fn inverse_reduce(
    short_starts: &[usize],
    long_starts: &[usize],
    residual: &ProjectionPair,
    p: usize,
    fixed: &BinaryMatrix,
) -> Result<BinaryMatrix, Infeasibility> {
    let classes = RowClassStructure::new(residual.rows(), p).map_err(|_| Infeasibility::NotHomogeneous)?;
    let mask = StartMask::new(&classes, fixed);
    let starts = assign_starts(&classes, &mask, short_starts, long_starts, true).ok_or_else(|| {
        let class = (1..=p)
            .find(|&x| (1..=residual.n()).filter(|&y| !mask.is_blocked(x, y)).count() < classes.class_sums[x - 1])
            .unwrap_or(1);
        Infeasibility::StartsBlocked { class }
    })?;
    Ok(lines_to_matrix(&classes, residual.n(), &starts))
}

/// Tuning for the fallback stages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOptions {
    /// 2-SAT calls the guided search may spend.
    pub search_budget: u64,
    /// Largest `m * n` handed to the exhaustive oracle when the search gives up.
    pub oracle_cells: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            search_budget: 20_000,
            oracle_cells: 36,
        }
    }
}

/// How a solution was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// Nothing left after preprocessing.
    Trivial,
    /// First satisfiable anchor whose starts split among the classes.
    Direct { anchor: usize },
    /// Guided search over bar prefixes.
    Search { nodes: u64 },
    Oracle,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StageTimes {
    pub preprocess: Duration,
    pub reduce: Duration,
    pub encode: Duration,
    pub solve: Duration,
    pub inverse: Duration,
    pub search: Duration,
    pub verify: Duration,
}

impl StageTimes {
    pub const NAMES: [&'static str; 7] = ["preprocess", "reduce", "encode", "solve2sat", "inverse", "search", "verify"];

    pub fn as_array(&self) -> [Duration; 7] {
        [
            self.preprocess,
            self.reduce,
            self.encode,
            self.solve,
            self.inverse,
            self.search,
            self.verify,
        ]
    }
}

#[derive(Debug, Clone)]
pub struct P1Report {
    pub matrix: BinaryMatrix,
    pub route: Route,
    pub times: StageTimes,
    pub anchors_tried: usize,
}

fn check_period(pair: &ProjectionPair, p: usize) -> Result<(), SolveError> {
    if p <= 1 || p >= pair.m() {
        return Err(SolveError::UnsupportedPeriod {
            period: Period { p, q: 1 },
            m: pair.m(),
            n: pair.n(),
        });
    }
    Ok(())
}

pub fn solve_p1(pair: &ProjectionPair, p: usize) -> Result<BinaryMatrix, SolveError> {
    solve_p1_with(pair, p, &SolveOptions::default()).map(|r| r.matrix)
}

pub fn solve_1q(pair: &ProjectionPair, q: usize) -> Result<BinaryMatrix, SolveError> {
    solve_1q_with(pair, q, &SolveOptions::default()).map(|r| r.matrix)
}

/// Solves the transposed instance with period `(q,1)` and transposes back.
pub fn solve_1q_with(pair: &ProjectionPair, q: usize, opts: &SolveOptions) -> Result<P1Report, SolveError> {
    let mut report = solve_p1_with(&pair.transpose(), q, opts).map_err(|e| match e {
        SolveError::UnsupportedPeriod { m, n, .. } => SolveError::UnsupportedPeriod {
            period: Period { p: 1, q },
            m: n,
            n: m,
        },
        e => e,
    })?;
    report.matrix = report.matrix.transpose();
    Ok(report)
}

pub fn solve_p1_with(pair: &ProjectionPair, p: usize, opts: &SolveOptions) -> Result<P1Report, SolveError> {
    check_period(pair, p)?;
    let mut times = StageTimes::default();
    let clock = Instant::now();
    let d = preprocess_p1(pair, p)?;
    times.preprocess = clock.elapsed();

    let clock = Instant::now();
    let (classes, mut inst) = reduce_to_rhc(&d.residual, p).map_err(|e| match e {
        RhcError::NotHomogeneous { .. } => Infeasibility::NotHomogeneous,
        _ => Infeasibility::NoBarArrangement,
    })?;
    let mask = StartMask::new(&classes, &d.fixed);
    (inst.short_caps, inst.long_caps) = mask.caps(&classes);
    times.reduce = clock.elapsed();

    let finish = |mobile: BinaryMatrix, route: Route, mut times: StageTimes, anchors_tried: usize| {
        let clock = Instant::now();
        let matrix = d.fixed.union(&mobile);
        let checked = check_solution(&matrix, pair, Period { p, q: 1 });
        times.verify = clock.elapsed();
        match checked {
            Ok(()) => Ok(P1Report {
                matrix,
                route,
                times,
                anchors_tried,
            }),
            Err(v) => Err(SolveError::EncodingMismatch {
                anchor: match route {
                    Route::Direct { anchor } => anchor,
                    _ => 0,
                },
                detail: format!("assembled matrix fails verification: {v}"),
            }),
        }
    };

    if inst.bar_count() == 0 {
        return finish(BinaryMatrix::zeros(pair.m(), pair.n()), Route::Trivial, times, 0);
    }
    for x in 1..=p {
        let open = (1..=pair.n()).filter(|&y| !mask.is_blocked(x, y)).count();
        if open < classes.class_sums[x - 1] {
            return Err(Infeasibility::StartsBlocked { class: x }.into());
        }
    }

    let mut live_anchors = Vec::new();
    let mut anchors_tried = 0;
    for anchor in inst.anchor_candidates().into_iter().rev() {
        anchors_tried += 1;
        let clock = Instant::now();
        let rf = build_rhc_formula(&inst, anchor);
        times.encode += clock.elapsed();
        let clock = Instant::now();
        let model = rf.solve();
        times.solve += clock.elapsed();
        let Ok(model) = model else { continue };
        let sol = rhc::solution_from_model(&inst, &rf, &model).map_err(|e| match e {
            RhcError::EncodingMismatch { anchor, detail } => SolveError::EncodingMismatch { anchor, detail },
            other => SolveError::EncodingMismatch {
                anchor,
                detail: other.to_string(),
            },
        })?;
        let clock = Instant::now();
        let (short, long) = sol.start_columns(inst.cols);
        let starts = assign_starts(&classes, &mask, &short, &long, true);
        times.inverse += clock.elapsed();
        if let Some(starts) = starts {
            let mobile = lines_to_matrix(&classes, pair.n(), &starts);
            return finish(mobile, Route::Direct { anchor }, times, anchors_tried);
        }
        live_anchors.push(anchor);
    }
    if live_anchors.is_empty() {
        return Err(Infeasibility::NoBarArrangement.into());
    }

    let clock = Instant::now();
    let mut search = GuidedSearch {
        inst: &inst,
        classes: &classes,
        mask: &mask,
        formulas: live_anchors.iter().map(|&a| build_rhc_formula(&inst, a)).collect(),
        chosen: Vec::new(),
        calls: 0,
        budget: opts.search_budget,
        nodes: 0,
    };
    let all: Vec<usize> = (0..search.formulas.len()).collect();
    let outcome = search.run(&all);
    let nodes = search.nodes;
    times.search = clock.elapsed();
    match outcome {
        Ok(Some(starts)) => {
            let mobile = lines_to_matrix(&classes, pair.n(), &starts);
            finish(mobile, Route::Search { nodes }, times, anchors_tried)
        }
        Ok(None) => Err(Infeasibility::Exhausted.into()),
        Err(OutOfBudget) if pair.m() * pair.n() <= opts.oracle_cells => {
            let found = oracle::find_periodic(pair, Period { p, q: 1 }, opts.oracle_cells)
                .expect("instance is below the oracle ceiling");
            match found {
                Some(a) => finish(mobile_part(&a, &d), Route::Oracle, times, anchors_tried),
                None => Err(Infeasibility::Exhausted.into()),
            }
        }
        Err(OutOfBudget) => Err(SolveError::IncompleteSearch { explored: nodes }),
    }
}

fn mobile_part(a: &BinaryMatrix, d: &FixedPartDecomposition) -> BinaryMatrix {
    BinaryMatrix::from_fn(a.rows(), a.cols(), |i, j| a.get(i, j) && !d.fixed.get(i, j))
}

struct OutOfBudget;

/// Depth-first search over sorted bar prefixes. Each node asks every anchor
/// formula still consistent with the prefix for a model; the models propose
/// the next bar first, and a flow check keeps only prefixes whose starts can
/// still be split among the classes.
struct GuidedSearch<'a> {
    inst: &'a RhcInstance,
    classes: &'a RowClassStructure,
    mask: &'a StartMask,
    formulas: Vec<RhcFormula>,
    chosen: Vec<Bar>,
    calls: u64,
    budget: u64,
    nodes: u64,
}

impl GuidedSearch<'_> {
    fn assumptions(&self, f: &RhcFormula) -> Vec<Literal> {
        self.chosen
            .iter()
            .enumerate()
            .flat_map(|(o, &b)| f.bar_assumptions(o + 1, b).expect("prefix agrees with live anchors"))
            .collect()
    }

    fn prefix_splits(&self) -> bool {
        let (short, long) = rhc::start_columns_of(&self.chosen, self.inst.cols);
        assign_starts(self.classes, self.mask, &short, &long, false).is_some()
    }

    fn run(&mut self, live: &[usize]) -> Result<Option<Vec<Vec<usize>>>, OutOfBudget> {
        self.nodes += 1;
        let depth = self.chosen.len();
        if depth == self.inst.bar_count() {
            if rhc::validate_bars(self.inst, &self.chosen).is_err() {
                return Ok(None);
            }
            let (short, long) = rhc::start_columns_of(&self.chosen, self.inst.cols);
            return Ok(assign_starts(self.classes, self.mask, &short, &long, true));
        }
        let mut still_live = Vec::new();
        let mut proposals = Vec::new();
        for &k in live {
            self.calls += 1;
            if self.calls > self.budget {
                return Err(OutOfBudget);
            }
            let f = &self.formulas[k];
            if let Ok(model) = f.formula.solve_with(&self.assumptions(f)) {
                still_live.push(k);
                if let Ok(bar) = f.decode_row(&model, depth + 1) {
                    if !proposals.contains(&bar) {
                        proposals.push(bar);
                    }
                }
            }
        }
        if still_live.is_empty() {
            return Ok(None);
        }
        let floor = self.chosen.last().copied().unwrap_or(Bar::short(1));
        let rest = (floor.start..=self.inst.cols)
            .flat_map(|s| [Bar::short(s), Bar::long(s)])
            .filter(|b| *b >= floor && !proposals.contains(b));
        let candidates: Vec<Bar> = proposals.iter().copied().chain(rest).collect();
        for bar in candidates {
            let child: Vec<usize> = still_live
                .iter()
                .copied()
                .filter(|&k| self.formulas[k].bar_assumptions(depth + 1, bar).is_some())
                .collect();
            if child.is_empty() {
                continue;
            }
            self.chosen.push(bar);
            let found = if self.prefix_splits() { self.run(&child)? } else { None };
            self.chosen.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}
