//! Horizontal bars on a cylinder and their 2-SAT encoding.
//!
//! An instance asks for `M` rows, each holding one cyclic bar of length `L`
//! (short) or `L + 1` (long), with prescribed column sums. Rows are sorted by
//! start column, short bars before long bars on ties, and each column may be
//! the start of a bounded number of short and long bars.
//!
//! Bars longer than `n` wind around the cylinder `L / n` times before the
//! remainder; the encoding works on the remainder only, so bar lengths inside
//! the formula are `lambda = L mod n` and `lambda + 1`.
//!
//! Four zone grids describe a sorted bar sequence with starts `y_o` and ends
//! `e_o = y_o + len_o - 1` (ends past `n` wrap):
//!
//! * `Before(o, j)`: `y_o > j`
//! * `Onward(o, j)`: `y_o <= j`
//! * `Wrapped(o, j)`: `e_o >= j + n`
//! * `After(o, j)`: `e_o < j`
//!
//! The anchor row `r` is the first row whose bar wraps (`M + 1` when none do).

use std::fmt;

use thiserror::Error;

use crate::matrix::BinaryMatrix;
use crate::twosat::{Assignment, Literal, TwoSatFormula, Unsat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RhcError {
    #[error("bar lengths cover {bars} cells but the column sums total {cols}")]
    ArithmeticMismatch { bars: usize, cols: usize },
    #[error("row sums differ inside residue class {class}")]
    NotHomogeneous { class: usize },
    #[error("no anchor row admits a bar arrangement")]
    Unsat,
    #[error("row {row} is not a single cyclic bar of a permitted length")]
    MalformedRow { row: usize },
    #[error("anchor {anchor}: {detail}")]
    EncodingMismatch { anchor: usize, detail: String },
    #[error("the instance has no bars")]
    NoBars,
    #[error("bar arrangement is invalid: {0}")]
    Invalid(String),
}

/// Parameters of a cylinder bar problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhcInstance {
    pub cols: usize,
    /// `L`; long bars have length `L + 1`.
    pub short_len: usize,
    /// `n_L`: residue classes whose lines have length `L`.
    pub short_classes: usize,
    /// `n_{L+1}`.
    pub long_classes: usize,
    /// `k_L`.
    pub short_bars: usize,
    /// `k_{L+1}`.
    pub long_bars: usize,
    pub col_sums: Vec<usize>,
    /// Maximum number of short bars starting in each column.
    pub short_caps: Vec<usize>,
    /// Maximum number of long bars starting in each column.
    pub long_caps: Vec<usize>,
}

impl RhcInstance {
    /// Instance with the default per-column caps `n_L` and `n_{L+1}`.
    pub fn new(
        short_len: usize,
        short_classes: usize,
        long_classes: usize,
        short_bars: usize,
        long_bars: usize,
        col_sums: Vec<usize>,
    ) -> Self {
        let n = col_sums.len();
        assert!(n >= 1, "a cylinder needs at least one column");
        Self {
            cols: n,
            short_len,
            short_classes,
            long_classes,
            short_bars,
            long_bars,
            col_sums,
            short_caps: vec![short_classes; n],
            long_caps: vec![long_classes; n],
        }
    }

    /// `m''`, the number of rows of the bar matrix.
    pub fn bar_count(&self) -> usize {
        self.short_bars + self.long_bars
    }

    /// Full turns each bar makes around the cylinder.
    pub fn wraps(&self) -> usize {
        self.short_len / self.cols
    }

    /// Short bar length after removing full turns.
    pub fn reduced_len(&self) -> usize {
        self.short_len % self.cols
    }

    pub fn bar_len(&self, long: bool) -> usize {
        self.short_len + long as usize
    }

    /// Column sums left after removing full turns, `None` if any is negative.
    pub fn reduced_col_sums(&self) -> Option<Vec<usize>> {
        let turn = self.wraps() * self.bar_count();
        self.col_sums.iter().map(|&c| c.checked_sub(turn)).collect()
    }

    pub fn check_arithmetic(&self) -> Result<(), RhcError> {
        let bars = self.short_bars * self.short_len + self.long_bars * (self.short_len + 1);
        let cols = self.col_sums.iter().sum();
        if bars == cols {
            Ok(())
        } else {
            Err(RhcError::ArithmeticMismatch { bars, cols })
        }
    }

    /// Anchors worth trying, ascending. The number of wrapped bars equals the
    /// reduced sum of column 1 minus the bars starting there, which the caps
    /// bound.
    pub fn anchor_candidates(&self) -> Vec<usize> {
        let m = self.bar_count();
        let Some(reduced) = self.reduced_col_sums() else {
            return Vec::new();
        };
        let lambda = self.reduced_len();
        let c1 = reduced[0];
        let cover1 = self.long_caps[0] + if lambda >= 1 { self.short_caps[0] } else { 0 };
        let most = c1.min(m);
        let least = c1.saturating_sub(cover1);
        if least > most {
            return Vec::new();
        }
        // wrapped count w means anchor m + 1 - w
        (least..=most).rev().map(|w| m + 1 - w).collect()
    }
}

/// One bar: start column and whether it has length `L + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bar {
    pub start: usize,
    pub long: bool,
}

impl Bar {
    pub fn short(start: usize) -> Self {
        Bar { start, long: false }
    }

    pub fn long(start: usize) -> Self {
        Bar { start, long: true }
    }
}

/// A bar arrangement found by [`solve_rhc`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhcSolution {
    pub anchor: usize,
    /// Bars in row order.
    pub bars: Vec<Bar>,
    /// Bar matrix after removing full turns (equal to the bar matrix when
    /// every bar is shorter than the cylinder).
    pub matrix: BinaryMatrix,
}

impl RhcSolution {
    /// Start counts per column: `(short, long)`, the vectors `C1` and `C2`.
    pub fn start_columns(&self, n: usize) -> (Vec<usize>, Vec<usize>) {
        start_columns_of(&self.bars, n)
    }
}

pub fn start_columns_of(bars: &[Bar], n: usize) -> (Vec<usize>, Vec<usize>) {
    let mut short = vec![0; n];
    let mut long = vec![0; n];
    for b in bars {
        if b.long {
            long[b.start - 1] += 1;
        } else {
            short[b.start - 1] += 1;
        }
    }
    (short, long)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Zone {
    Before,
    Onward,
    Wrapped,
    After,
}

impl Zone {
    pub const ALL: [Zone; 4] = [Zone::Before, Zone::Onward, Zone::Wrapped, Zone::After];

    pub fn letter(self) -> char {
        match self {
            Zone::Before => 'B',
            Zone::Onward => 'C',
            Zone::Wrapped => 'P',
            Zone::After => 'E',
        }
    }
}

/// Variable naming: zone-major, then row-major over an `M x n` grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZoneLayout {
    pub rows: usize,
    pub cols: usize,
}

impl ZoneLayout {
    pub fn num_vars(&self) -> usize {
        4 * self.rows * self.cols
    }

    pub fn var(&self, zone: Zone, i: usize, j: usize) -> usize {
        debug_assert!((1..=self.rows).contains(&i) && (1..=self.cols).contains(&j));
        let z = Zone::ALL.iter().position(|&z| z == zone).unwrap();
        z * self.rows * self.cols + (i - 1) * self.cols + (j - 1)
    }

    pub fn name(&self, var: usize) -> (Zone, usize, usize) {
        let per = self.rows * self.cols;
        let zone = Zone::ALL[var / per];
        let k = var % per;
        (zone, k / self.cols + 1, k % self.cols + 1)
    }

    /// Prints one zone grid of an assignment as rows of `0`/`1`.
    pub fn render(&self, zone: Zone, a: &Assignment) -> String {
        let mut out = String::new();
        for i in 1..=self.rows {
            for j in 1..=self.cols {
                out.push(if a.value(self.var(zone, i, j)) { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }
}

/// A constant-folded literal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Term {
    True,
    False,
    Lit(Literal),
}

impl std::ops::Not for Term {
    type Output = Term;

    fn not(self) -> Term {
        match self {
            Term::True => Term::False,
            Term::False => Term::True,
            Term::Lit(l) => Term::Lit(!l),
        }
    }
}

/// Clause counts per family, for diagnostics.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FamilyCounts {
    pub corners: usize,
    pub disj: usize,
    pub compl: usize,
    pub anch: usize,
    pub lbc: usize,
    pub ubc: usize,
    pub lbr: usize,
    pub ubr: usize,
    pub bb_short: usize,
    pub bb_long: usize,
}

impl fmt::Display for FamilyCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "corners={} disj={} compl={} anch={} lbc={} ubc={} lbr={} ubr={} bb_short={} bb_long={}",
            self.corners,
            self.disj,
            self.compl,
            self.anch,
            self.lbc,
            self.ubc,
            self.lbr,
            self.ubr,
            self.bb_short,
            self.bb_long
        )
    }
}

/// The formula for one anchor row, with its variable layout.
#[derive(Debug, Clone)]
pub struct RhcFormula {
    pub formula: TwoSatFormula,
    pub layout: ZoneLayout,
    pub anchor: usize,
    pub counts: FamilyCounts,
    lambda: usize,
}

struct Builder<'a> {
    f: TwoSatFormula,
    layout: ZoneLayout,
    anchor: usize,
    counter: &'a mut usize,
}

impl Builder<'_> {
    fn m(&self) -> usize {
        self.layout.rows
    }

    fn n(&self) -> usize {
        self.layout.cols
    }

    fn lit(&self, zone: Zone, i: usize, j: usize) -> Term {
        Term::Lit(Literal::pos(self.layout.var(zone, i, j)))
    }

    /// Zone cell with rows extended past the grid: virtual rows above hold
    /// bars starting and ending before everything, rows below after everything.
    fn zone(&self, zone: Zone, i: i64, j: usize) -> Term {
        debug_assert!((1..=self.n()).contains(&j));
        if i < 1 {
            match zone {
                Zone::Onward | Zone::After => Term::True,
                Zone::Before | Zone::Wrapped => Term::False,
            }
        } else if i > self.m() as i64 {
            match zone {
                Zone::Onward | Zone::After => Term::False,
                Zone::Before | Zone::Wrapped => Term::True,
            }
        } else {
            self.lit(zone, i as usize, j)
        }
    }

    fn wrapped_row(&self, o: usize) -> bool {
        o >= self.anchor
    }

    /// `y_o >= col`.
    fn start_at_least(&self, o: usize, col: i64) -> Term {
        if col <= 1 {
            Term::True
        } else if col > self.n() as i64 + 1 {
            Term::False
        } else {
            self.lit(Zone::Before, o, col as usize - 1)
        }
    }

    /// `e_o >= col`, with `col` up to `2n`.
    fn end_at_least(&self, o: usize, col: i64) -> Term {
        let n = self.n() as i64;
        if col <= 0 {
            return Term::True;
        }
        if self.wrapped_row(o) {
            if col <= n {
                Term::True
            } else if col - n > n {
                Term::False
            } else {
                self.lit(Zone::Wrapped, o, (col - n) as usize)
            }
        } else if col > n {
            Term::False
        } else {
            !self.lit(Zone::After, o, col as usize)
        }
    }

    fn clause(&mut self, terms: &[Term]) {
        if terms.contains(&Term::True) {
            return;
        }
        let lits: Vec<Literal> = terms
            .iter()
            .filter_map(|t| match t {
                Term::Lit(l) => Some(*l),
                _ => None,
            })
            .collect();
        match *lits.as_slice() {
            [] => self.f.add_empty_clause(),
            [a] => self.f.push_unit(a),
            [a, b] => self.f.push_pair(a, b),
            _ => unreachable!("clauses have at most two terms"),
        }
        *self.counter += 1;
    }

    fn implies(&mut self, a: Term, b: Term) {
        self.clause(&[!a, b]);
    }

}

/// Builds the formula for anchor row `anchor` in `1..=M+1`.
///
/// Panics if the instance has no bars.
pub fn build_rhc_formula(inst: &RhcInstance, anchor: usize) -> RhcFormula {
    let m = inst.bar_count();
    let n = inst.cols;
    assert!(m >= 1, "instance has no bars");
    assert!((1..=m + 1).contains(&anchor), "anchor out of range");
    let layout = ZoneLayout { rows: m, cols: n };
    let lambda = inst.reduced_len();
    let mut counts = FamilyCounts::default();
    let mut f = TwoSatFormula::new(layout.num_vars());
    f.reserve(20 * m * n);
    let reduced = inst.reduced_col_sums();

    macro_rules! family {
        ($field:ident, |$b:ident| $body:block) => {{
            let mut $b = Builder {
                f: std::mem::take(&mut f),
                layout,
                anchor,
                counter: &mut counts.$field,
            };
            $body
            f = $b.f;
        }};
    }

    use Zone::*;
    family!(corners, |b| {
        for i in 1..=m {
            for j in 1..=n {
                let (ii, jj) = (i as i64, j);
                if i > 1 {
                    b.implies(b.zone(Onward, ii, jj), b.zone(Onward, ii - 1, jj));
                    b.implies(b.zone(After, ii, jj), b.zone(After, ii - 1, jj));
                }
                if j < n {
                    b.implies(b.zone(Onward, ii, jj), b.zone(Onward, ii, jj + 1));
                    b.implies(b.zone(After, ii, jj), b.zone(After, ii, jj + 1));
                }
                if i < m {
                    b.implies(b.zone(Before, ii, jj), b.zone(Before, ii + 1, jj));
                    b.implies(b.zone(Wrapped, ii, jj), b.zone(Wrapped, ii + 1, jj));
                }
                if j > 1 {
                    b.implies(b.zone(Before, ii, jj), b.zone(Before, ii, jj - 1));
                    b.implies(b.zone(Wrapped, ii, jj), b.zone(Wrapped, ii, jj - 1));
                }
            }
        }
    });
    family!(disj, |b| {
        for i in 1..=m as i64 {
            for j in 1..=n {
                b.implies(b.zone(Before, i, j), !b.zone(Onward, i, j));
                b.implies(b.zone(Wrapped, i, j), b.zone(Before, i, j));
                b.implies(b.zone(After, i, j), b.zone(Onward, i, j));
            }
        }
    });
    family!(compl, |b| {
        for i in 1..=m as i64 {
            for j in 1..=n {
                b.implies(!b.zone(Before, i, j), b.zone(Onward, i, j));
            }
        }
    });
    family!(anch, |b| {
        let mm = m as i64;
        if lambda >= 1 {
            b.clause(&[!b.zone(After, 1, lambda)]);
        }
        b.clause(&[!b.zone(Wrapped, mm, lambda + 1)]);
        // rows from the anchor down wrap, rows above do not
        if anchor <= m {
            b.clause(&[b.zone(Wrapped, anchor as i64, 1)]);
            b.clause(&[!b.zone(After, anchor as i64, n)]);
        }
        if anchor >= 2 {
            b.clause(&[!b.zone(Wrapped, anchor as i64 - 1, 1)]);
        }
        // every bar starts inside the grid
        b.clause(&[!b.zone(Before, mm, n)]);
    });
    match &reduced {
        None => f.add_empty_clause(),
        Some(c) => {
            // column sums: Onward minus After outside the wrap region, Onward
            // plus Wrapped inside it
            let column_sum = |lower: bool, f: &mut TwoSatFormula, counts: &mut FamilyCounts| {
                let mut b = Builder {
                    f: std::mem::take(f),
                    layout,
                    anchor,
                    counter: if lower { &mut counts.lbc } else { &mut counts.ubc },
                };
                for j in 1..=n {
                    let cj = c[j - 1] as i64;
                    let mm = m as i64;
                    if cj > mm {
                        b.f.add_empty_clause();
                        continue;
                    }
                    if j > lambda {
                        for i in (1 - cj)..=mm {
                            let (e, on) = (b.zone(After, i, j), b.zone(Onward, i + cj, j));
                            if lower {
                                b.implies(e, on);
                            } else {
                                b.implies(on, e);
                            }
                        }
                    } else {
                        let d = mm - cj;
                        for i in (1 - d)..=mm {
                            let (bf, w) = (b.zone(Before, i, j), b.zone(Wrapped, i + d, j));
                            if lower {
                                b.implies(w, bf);
                            } else {
                                b.implies(bf, w);
                            }
                        }
                    }
                }
                *f = b.f;
            };
            column_sum(true, &mut f, &mut counts);
            column_sum(false, &mut f, &mut counts);
        }
    }
    family!(lbr, |b| {
        // y_o >= J implies e_o >= J + lambda - 1
        for o in 1..=m {
            for jj in 1..=n as i64 {
                b.implies(b.start_at_least(o, jj), b.end_at_least(o, jj + lambda as i64 - 1));
            }
        }
    });
    family!(ubr, |b| {
        // y_o <= J implies e_o <= J + lambda
        for o in 1..=m {
            for jj in 1..=n {
                b.implies(b.zone(Onward, o as i64, jj), !b.end_at_least(o, (jj + lambda + 1) as i64));
            }
        }
    });
    family!(bb_short, |b| {
        // among any k+1 consecutive bars from a row starting at or after J,
        // the last one is not a short bar starting at J
        for jj in 1..=n {
            let k = inst.short_caps[jj - 1];
            for o in 1..=m.saturating_sub(k) {
                b.implies(b.start_at_least(o, jj as i64), b.end_at_least(o + k, (jj + lambda) as i64));
            }
        }
    });
    family!(bb_long, |b| {
        for jj in 1..=n {
            let k = inst.long_caps[jj - 1];
            for o in 1..=m.saturating_sub(k) {
                b.implies(b.end_at_least(o, (jj + lambda) as i64), b.start_at_least(o + k, jj as i64 + 1));
            }
        }
    });

    RhcFormula {
        formula: f,
        layout,
        anchor,
        counts,
        lambda,
    }
}

impl RhcFormula {
    pub fn solve(&self) -> Result<Assignment, Unsat> {
        self.formula.solve()
    }

    /// Unit literals pinning row `o` to `bar`, or `None` if the bar's wrap
    /// status disagrees with the anchor.
    pub fn bar_assumptions(&self, o: usize, bar: Bar) -> Option<Vec<Literal>> {
        let n = self.layout.cols;
        let v = |z, j| self.layout.var(z, o, j);
        let len = self.lambda + bar.long as usize;
        let end = bar.start + len - 1;
        if (end > n) != (o >= self.anchor) {
            return None;
        }
        let mut lits = vec![Literal::pos(v(Zone::Onward, bar.start))];
        if bar.start > 1 {
            lits.push(Literal::pos(v(Zone::Before, bar.start - 1)));
        }
        if end > n {
            lits.push(Literal::pos(v(Zone::Wrapped, end - n)));
            if end - n < n {
                lits.push(Literal::neg(v(Zone::Wrapped, end - n + 1)));
            }
        } else {
            if end >= 1 {
                lits.push(Literal::neg(v(Zone::After, end)));
            }
            if end < n {
                lits.push(Literal::pos(v(Zone::After, end + 1)));
            }
        }
        Some(lits)
    }

    /// Reads the bar of every row from a model.
    pub fn decode_bars(&self, a: &Assignment) -> Result<Vec<Bar>, RhcError> {
        (1..=self.layout.rows).map(|o| self.decode_row(a, o)).collect()
    }

    /// Reads the bar of row `o` from a model.
    pub fn decode_row(&self, a: &Assignment, o: usize) -> Result<Bar, RhcError> {
        let n = self.layout.cols;
        let val = |z, j| a.value(self.layout.var(z, o, j));
        let malformed = RhcError::MalformedRow { row: o };
        let start = (1..=n).find(|&j| val(Zone::Onward, j)).ok_or(malformed.clone())?;
        let end = if val(Zone::Wrapped, 1) {
            n + (1..=n).take_while(|&j| val(Zone::Wrapped, j)).count()
        } else {
            (1..=n).find(|&j| val(Zone::After, j)).map_or(n, |j| j - 1)
        };
        let len = (end + 1).checked_sub(start).ok_or(malformed.clone())?;
        match len.checked_sub(self.lambda) {
            Some(0) => Ok(Bar::short(start)),
            Some(1) => Ok(Bar::long(start)),
            _ => Err(malformed),
        }
    }
}

/// `a''(i,j) = (Onward and not After) or Wrapped`.
pub fn decode_matrix(a: &Assignment, layout: ZoneLayout) -> BinaryMatrix {
    BinaryMatrix::from_fn(layout.rows, layout.cols, |i, j| {
        let val = |z| a.value(layout.var(z, i, j));
        (val(Zone::Onward) && !val(Zone::After)) || val(Zone::Wrapped)
    })
}

/// Checks the zone shapes: `Before` and `Onward` partition the grid, `Wrapped`
/// lies inside `Before`, `After` inside `Onward`, `Onward` and `After` are
/// closed upward and rightward, `Before` and `Wrapped` downward and leftward,
/// and no column holds both `Wrapped` and `After` cells.
pub fn validate_zones(a: &Assignment, layout: ZoneLayout) -> bool {
    let (m, n) = (layout.rows, layout.cols);
    if a.len() != layout.num_vars() {
        return false;
    }
    let val = |z, i, j| a.value(layout.var(z, i, j));
    for i in 1..=m {
        for j in 1..=n {
            let (b, c, p, e) = (
                val(Zone::Before, i, j),
                val(Zone::Onward, i, j),
                val(Zone::Wrapped, i, j),
                val(Zone::After, i, j),
            );
            if b == c || (p && !b) || (e && !c) {
                return false;
            }
            let up_right = |z| (i == 1 || val(z, i - 1, j)) && (j == n || val(z, i, j + 1));
            let down_left = |z| (i == m || val(z, i + 1, j)) && (j == 1 || val(z, i, j - 1));
            if (c && !up_right(Zone::Onward))
                || (e && !up_right(Zone::After))
                || (b && !down_left(Zone::Before))
                || (p && !down_left(Zone::Wrapped))
            {
                return false;
            }
        }
    }
    (1..=n).all(|j| {
        let any = |z| (1..=m).any(|i| val(z, i, j));
        !(any(Zone::Wrapped) && any(Zone::After))
    })
}

/// Bar matrix (full turns removed) of a bar list.
pub fn bars_to_matrix(inst: &RhcInstance, bars: &[Bar]) -> BinaryMatrix {
    let n = inst.cols;
    let lambda = inst.reduced_len();
    let mut a = BinaryMatrix::zeros(bars.len().max(1), n);
    for (o, bar) in bars.iter().enumerate() {
        for k in 0..lambda + bar.long as usize {
            a.set(o + 1, (bar.start - 1 + k) % n + 1, true);
        }
    }
    a
}

/// Checks a bar list against the instance: bar counts by length, column sums,
/// row order and the per-column start caps.
pub fn validate_bars(inst: &RhcInstance, bars: &[Bar]) -> Result<(), RhcError> {
    let n = inst.cols;
    let bad = |s: String| Err(RhcError::Invalid(s));
    if bars.len() != inst.bar_count() {
        return bad(format!("{} bars, expected {}", bars.len(), inst.bar_count()));
    }
    if let Some(b) = bars.iter().find(|b| !(1..=n).contains(&b.start)) {
        return bad(format!("start column {} outside 1..{n}", b.start));
    }
    let longs = bars.iter().filter(|b| b.long).count();
    if longs != inst.long_bars {
        return bad(format!("{longs} long bars, expected {}", inst.long_bars));
    }
    if let Some(w) = bars.windows(2).position(|w| w[0] > w[1]) {
        return bad(format!("rows {} and {} are out of order", w + 1, w + 2));
    }
    let mut sums = vec![0; n];
    for b in bars {
        for k in 0..inst.bar_len(b.long) {
            sums[(b.start - 1 + k) % n] += 1;
        }
    }
    if sums != inst.col_sums {
        return bad(format!("column sums {sums:?}, expected {:?}", inst.col_sums));
    }
    let (short, long) = start_columns_of(bars, n);
    for j in 0..n {
        if short[j] > inst.short_caps[j] || long[j] > inst.long_caps[j] {
            return bad(format!("too many bars start in column {}", j + 1));
        }
    }
    Ok(())
}

/// Reads the start column of every row of a bar matrix (full turns removed).
///
/// A row's start is the column holding a 1 whose cyclic predecessor is 0; a
/// row of ones starts in column 1. Returns the start counts of short and long
/// bars, `C1` and `C2`.
pub fn extract_start_columns(a: &BinaryMatrix, inst: &RhcInstance) -> Result<(Vec<usize>, Vec<usize>), RhcError> {
    Ok(start_columns_of(&bars_from_matrix(a, inst)?, inst.cols))
}

pub fn bars_from_matrix(a: &BinaryMatrix, inst: &RhcInstance) -> Result<Vec<Bar>, RhcError> {
    let n = a.cols();
    let lambda = inst.reduced_len();
    let mut bars = Vec::with_capacity(a.rows());
    for i in 1..=a.rows() {
        let malformed = RhcError::MalformedRow { row: i };
        let len = (1..=n).filter(|&j| a.get(i, j)).count();
        let long = match len.checked_sub(lambda) {
            Some(0) => false,
            Some(1) => true,
            _ => return Err(malformed),
        };
        let starts: Vec<usize> = (1..=n)
            .filter(|&j| a.get(i, j) && !a.get(i, if j == 1 { n } else { j - 1 }))
            .collect();
        let start = match (starts.as_slice(), len) {
            ([s], _) => *s,
            ([], l) if l == n => 1,
            _ => return Err(malformed),
        };
        bars.push(Bar { start, long });
    }
    Ok(bars)
}

/// Tries the anchors in ascending order and returns the first arrangement.
pub fn solve_rhc(inst: &RhcInstance) -> Result<RhcSolution, RhcError> {
    AnchorSolutions::new(inst)?.next().unwrap_or(Err(RhcError::Unsat))
}

/// Solutions for each satisfiable anchor, in ascending anchor order.
pub struct AnchorSolutions<'a> {
    inst: &'a RhcInstance,
    anchors: std::vec::IntoIter<usize>,
}

impl<'a> AnchorSolutions<'a> {
    pub fn new(inst: &'a RhcInstance) -> Result<Self, RhcError> {
        if inst.bar_count() == 0 {
            return Err(RhcError::NoBars);
        }
        inst.check_arithmetic()?;
        assert_eq!(inst.short_caps.len(), inst.cols);
        assert_eq!(inst.long_caps.len(), inst.cols);
        let mut anchors = inst.anchor_candidates();
        anchors.sort_unstable();
        Ok(Self {
            inst,
            anchors: anchors.into_iter(),
        })
    }
}

impl Iterator for AnchorSolutions<'_> {
    type Item = Result<RhcSolution, RhcError>;

    fn next(&mut self) -> Option<Self::Item> {
        for anchor in self.anchors.by_ref() {
            let rf = build_rhc_formula(self.inst, anchor);
            let Ok(model) = rf.solve() else { continue };
            return Some(solution_from_model(self.inst, &rf, &model));
        }
        None
    }
}

pub(crate) fn solution_from_model(inst: &RhcInstance, rf: &RhcFormula, model: &Assignment) -> Result<RhcSolution, RhcError> {
    let mismatch = |detail: String| RhcError::EncodingMismatch {
        anchor: rf.anchor,
        detail,
    };
    if !validate_zones(model, rf.layout) {
        return Err(mismatch("zone grids violate their shape constraints".into()));
    }
    let bars = rf.decode_bars(model).map_err(|e| mismatch(e.to_string()))?;
    validate_bars(inst, &bars).map_err(|e| mismatch(e.to_string()))?;
    let matrix = decode_matrix(model, rf.layout);
    if matrix != bars_to_matrix(inst, &bars) {
        return Err(mismatch("decoded matrix disagrees with decoded bars".into()));
    }
    Ok(RhcSolution {
        anchor: rf.anchor,
        bars,
        matrix,
    })
}
