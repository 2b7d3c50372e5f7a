//! 2-SAT via strongly connected components of the implication graph.

use std::fmt::{self, Write as _};
use std::ops::Not;

use thiserror::Error;

/// A variable or its negation, packed as `2 * var + negated`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal(u32);

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal((var as u32) << 1)
    }

    pub fn neg(var: usize) -> Self {
        Literal((var as u32) << 1 | 1)
    }

    pub fn new(var: usize, positive: bool) -> Self {
        if positive {
            Self::pos(var)
        } else {
            Self::neg(var)
        }
    }

    pub fn var(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    #[inline]
    fn code(self) -> usize {
        self.0 as usize
    }

    /// DIMACS form: `var + 1`, negative when negated.
    pub fn to_dimacs(self) -> i64 {
        let v = self.var() as i64 + 1;
        if self.is_positive() {
            v
        } else {
            -v
        }
    }
}

impl Not for Literal {
    type Output = Literal;

    fn not(self) -> Literal {
        Literal(self.0 ^ 1)
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_positive() {
            write!(f, "x{}", self.var())
        } else {
            write!(f, "!x{}", self.var())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Clause {
    Unit(Literal),
    Pair(Literal, Literal),
}

impl Clause {
    pub fn literals(&self) -> impl Iterator<Item = Literal> {
        let (a, b) = match *self {
            Clause::Unit(a) => (a, None),
            Clause::Pair(a, b) => (a, Some(b)),
        };
        std::iter::once(a).chain(b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("clause has {0} literals; at most two are allowed")]
    TooWide(usize),
    #[error("literal {0} refers to a variable outside 0..{1}")]
    UnknownVariable(Literal, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("formula is unsatisfiable")]
pub struct Unsat;

/// Conjunction of clauses with at most two literals each.
///
/// An explicitly added empty clause makes the formula trivially false.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TwoSatFormula {
    num_vars: usize,
    clauses: Vec<Clause>,
    empty_clause: bool,
}

impl TwoSatFormula {
    pub fn new(num_vars: usize) -> Self {
        Self {
            num_vars,
            clauses: Vec::new(),
            empty_clause: false,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn has_empty_clause(&self) -> bool {
        self.empty_clause
    }

    pub fn new_var(&mut self) -> usize {
        self.num_vars += 1;
        self.num_vars - 1
    }

    pub fn reserve(&mut self, additional: usize) {
        self.clauses.reserve(additional);
    }

    pub fn add_clause(&mut self, lits: &[Literal]) -> Result<(), FormulaError> {
        if let Some(&bad) = lits.iter().find(|l| l.var() >= self.num_vars) {
            return Err(FormulaError::UnknownVariable(bad, self.num_vars));
        }
        match *lits {
            [] => self.empty_clause = true,
            [a] => self.clauses.push(Clause::Unit(a)),
            [a, b] => self.clauses.push(Clause::Pair(a, b)),
            _ => return Err(FormulaError::TooWide(lits.len())),
        }
        Ok(())
    }

    pub fn add_empty_clause(&mut self) {
        self.empty_clause = true;
    }

    pub(crate) fn push_unit(&mut self, a: Literal) {
        debug_assert!(a.var() < self.num_vars);
        self.clauses.push(Clause::Unit(a));
    }

    pub(crate) fn push_pair(&mut self, a: Literal, b: Literal) {
        debug_assert!(a.var() < self.num_vars && b.var() < self.num_vars);
        self.clauses.push(Clause::Pair(a, b));
    }

    /// Adds `a -> b`, i.e. the clause `!a | b`.
    pub fn implies(&mut self, a: Literal, b: Literal) {
        self.push_pair(!a, b);
    }

    pub fn solve(&self) -> Result<Assignment, Unsat> {
        self.solve_with(&[])
    }

    /// Solves with extra unit clauses that are not stored in the formula.
    pub fn solve_with(&self, assumptions: &[Literal]) -> Result<Assignment, Unsat> {
        if self.empty_clause {
            return Err(Unsat);
        }
        let graph = ImplicationGraph::build(self, assumptions);
        let comp = graph.components();
        let mut values = Vec::with_capacity(self.num_vars);
        for v in 0..self.num_vars {
            let (p, n) = (comp[2 * v], comp[2 * v + 1]);
            if p == n {
                return Err(Unsat);
            }
            // components are numbered in reverse topological order
            values.push(p < n);
        }
        Ok(Assignment { values })
    }

    pub fn is_satisfied_by(&self, assignment: &Assignment) -> bool {
        !self.empty_clause
            && assignment.len() == self.num_vars
            && self.clauses.iter().all(|c| c.literals().any(|l| assignment.literal(l)))
    }

    /// CNF text: a `p cnf V K` header, then one zero-terminated clause per line.
    pub fn to_dimacs(&self) -> String {
        let k = self.clauses.len() + self.empty_clause as usize;
        let mut out = format!("p cnf {} {}\n", self.num_vars, k);
        for c in &self.clauses {
            for l in c.literals() {
                let _ = write!(out, "{} ", l.to_dimacs());
            }
            out.push_str("0\n");
        }
        if self.empty_clause {
            out.push_str("0\n");
        }
        out
    }
}

/// Truth value for every variable of a formula.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    pub fn from_values(values: Vec<bool>) -> Self {
        Self { values }
    }

    pub fn value(&self, var: usize) -> bool {
        self.values[var]
    }

    pub fn literal(&self, lit: Literal) -> bool {
        self.values[lit.var()] == lit.is_positive()
    }

    pub fn set(&mut self, var: usize, value: bool) {
        self.values[var] = value;
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }
}

pub fn solve_2sat(formula: &TwoSatFormula) -> Result<Assignment, Unsat> {
    formula.solve()
}

/// Implication graph in compressed sparse row form over literal codes.
struct ImplicationGraph {
    start: Vec<u32>,
    targets: Vec<u32>,
}

impl ImplicationGraph {
    fn build(formula: &TwoSatFormula, assumptions: &[Literal]) -> Self {
        let nodes = 2 * formula.num_vars;
        let edges = || {
            formula
                .clauses
                .iter()
                .flat_map(|c| {
                    let (first, second) = match *c {
                        Clause::Unit(a) => ((!a, a), None),
                        Clause::Pair(a, b) => ((!a, b), Some((!b, a))),
                    };
                    std::iter::once(first).chain(second)
                })
                .chain(assumptions.iter().map(|&a| (!a, a)))
        };
        let mut start = vec![0u32; nodes + 1];
        for (u, _) in edges() {
            start[u.code() + 1] += 1;
        }
        for k in 0..nodes {
            start[k + 1] += start[k];
        }
        let mut fill = start.clone();
        let mut targets = vec![0u32; start[nodes] as usize];
        for (u, v) in edges() {
            let slot = &mut fill[u.code()];
            targets[*slot as usize] = v.0;
            *slot += 1;
        }
        Self { start, targets }
    }

    /// Tarjan's algorithm without recursion; returns the component of each node.
    fn components(&self) -> Vec<u32> {
        const UNSEEN: u32 = u32::MAX;
        let nodes = self.start.len() - 1;
        let mut index = vec![UNSEEN; nodes];
        let mut low = vec![0u32; nodes];
        let mut comp = vec![UNSEEN; nodes];
        let mut stack: Vec<u32> = Vec::new();
        let mut calls: Vec<(u32, u32)> = Vec::new();
        let mut next_index = 0u32;
        let mut next_comp = 0u32;

        for root in 0..nodes as u32 {
            if index[root as usize] != UNSEEN {
                continue;
            }
            index[root as usize] = next_index;
            low[root as usize] = next_index;
            next_index += 1;
            stack.push(root);
            calls.push((root, self.start[root as usize]));

            while let Some(&mut (v, ref mut pos)) = calls.last_mut() {
                let vu = v as usize;
                if *pos < self.start[vu + 1] {
                    let w = self.targets[*pos as usize];
                    *pos += 1;
                    let wu = w as usize;
                    if index[wu] == UNSEEN {
                        index[wu] = next_index;
                        low[wu] = next_index;
                        next_index += 1;
                        stack.push(w);
                        calls.push((w, self.start[wu]));
                    } else if comp[wu] == UNSEEN {
                        low[vu] = low[vu].min(index[wu]);
                    }
                    continue;
                }
                calls.pop();
                if low[vu] == index[vu] {
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        comp[w as usize] = next_comp;
                        if w == v {
                            break;
                        }
                    }
                    next_comp += 1;
                }
                if let Some(&(parent, _)) = calls.last() {
                    let pu = parent as usize;
                    low[pu] = low[pu].min(low[vu]);
                }
            }
        }
        comp
    }
}
