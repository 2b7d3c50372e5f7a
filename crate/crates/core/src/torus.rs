//! Period `(1,1)`: preprocessing followed by placement of whole loops on the
//! torus obtained by gluing opposite borders.

use crate::error::{Infeasibility, SolveError};
use crate::fixed::{preprocess_11, FixedPartDecomposition};
use crate::matrix::{check_solution, gcd, BinaryMatrix, Period, ProjectionPair};

/// Orbit of the diagonal step on the `m x n` torus:
/// `{(1 + k mod m, 1 + (d + k) mod n) : 0 <= k < lcm(m, n)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TorusOrbit {
    pub offset: usize,
    pub m: usize,
    pub n: usize,
}

impl TorusOrbit {
    pub fn len(&self) -> usize {
        self.m / gcd(self.m as u64, self.n as u64) as usize * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).map(move |k| (1 + k % self.m, 1 + (self.offset + k) % self.n))
    }
}

/// The `gcd(m, n)` orbits, by offset.
pub fn torus_orbits(m: usize, n: usize) -> Vec<TorusOrbit> {
    let g = gcd(m as u64, n as u64) as usize;
    (0..g).map(|offset| TorusOrbit { offset, m, n }).collect()
}

/// Number of loops a homogeneous residual needs: `t = rho * g / n`, which must
/// also equal `gamma * g / m`.
fn loops_needed(rho: usize, gamma: usize, m: usize, n: usize) -> Result<usize, Infeasibility> {
    let g = gcd(m as u64, n as u64) as usize;
    if !(rho * g).is_multiple_of(n) || !(gamma * g).is_multiple_of(m) || rho * g / n != gamma * g / m {
        return Err(Infeasibility::LoopArithmetic);
    }
    Ok(rho * g / n)
}

fn free_orbits(m: usize, n: usize, fixed: &BinaryMatrix) -> Vec<TorusOrbit> {
    torus_orbits(m, n)
        .into_iter()
        .filter(|o| o.cells().all(|(i, j)| !fixed.get(i, j)))
        .collect()
}

/// Mobile part for homogeneous residual sums `rho` (rows) and `gamma`
/// (columns): the union of the `t` lowest-offset loops that avoid `fixed`.
pub fn solve_homogeneous_11(
    rho: usize,
    gamma: usize,
    m: usize,
    n: usize,
    fixed: &BinaryMatrix,
) -> Result<BinaryMatrix, Infeasibility> {
    let t = loops_needed(rho, gamma, m, n)?;
    let free = free_orbits(m, n, fixed);
    if free.len() < t {
        return Err(Infeasibility::NotEnoughLoops { free: free.len(), needed: t });
    }
    let mut out = BinaryMatrix::zeros(m, n);
    for orbit in &free[..t] {
        for (i, j) in orbit.cells() {
            out.set(i, j, true);
        }
    }
    Ok(out)
}

fn homogeneous_values(d: &FixedPartDecomposition) -> Result<(usize, usize), Infeasibility> {
    let (r, c) = (d.residual.rows(), d.residual.cols());
    if r.iter().any(|&x| x != r[0]) || c.iter().any(|&x| x != c[0]) {
        return Err(Infeasibility::NotHomogeneous);
    }
    Ok((r[0], c[0]))
}

/// Reconstructs a `(1,1)`-periodic matrix, or reports why none exists.
pub fn solve_11(pair: &ProjectionPair) -> Result<BinaryMatrix, SolveError> {
    let d = preprocess_11(pair)?;
    let (rho, gamma) = homogeneous_values(&d)?;
    let mobile = solve_homogeneous_11(rho, gamma, pair.m(), pair.n(), &d.fixed)?;
    let out = d.fixed.union(&mobile);
    debug_assert!(check_solution(&out, pair, Period::DIAGONAL).is_ok());
    if check_solution(&out, pair, Period::DIAGONAL).is_err() {
        return Err(Infeasibility::LoopArithmetic.into());
    }
    Ok(out)
}

/// Number of `(1,1)`-periodic realizations: `binomial(f, t)` with `f` free
/// loops, saturating at `u128::MAX`.
pub fn count_solutions_11(pair: &ProjectionPair) -> u128 {
    let Ok(d) = preprocess_11(pair) else { return 0 };
    let Ok((rho, gamma)) = homogeneous_values(&d) else { return 0 };
    let Ok(t) = loops_needed(rho, gamma, pair.m(), pair.n()) else {
        return 0;
    };
    binomial(free_orbits(pair.m(), pair.n(), &d.fixed).len(), t)
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by i + 1; after cancelling the common
        // factor with acc, what is left of i + 1 divides n - i
        let g = gcd_u128(acc, i as u128 + 1);
        let rest = (i as u128 + 1) / g;
        match (acc / g).checked_mul((n - i) as u128 / rest) {
            Some(v) => acc = v,
            None => return u128::MAX,
        }
    }
    acc
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
