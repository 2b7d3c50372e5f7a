//! Seeded random periodic matrices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matrix::{maximal_lines, BinaryMatrix, Period};

/// Each maximal line of `period` is kept independently with probability
/// `density`. The same seed always gives the same matrix.
pub fn random_periodic(m: usize, n: usize, period: Period, density: f64, seed: u64) -> BinaryMatrix {
    assert!((0.0..=1.0).contains(&density), "density must lie in [0, 1]");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = BinaryMatrix::zeros(m, n);
    for line in maximal_lines(m, n, period) {
        if rng.gen_bool(density) {
            for (i, j) in line.cells() {
                a.set(i, j, true);
            }
        }
    }
    a
}
