//! Reconstruction of periodic binary matrices from their row and column sums.
//!
//! A matrix is `(p,q)`-periodic when every 1 at `(i,j)` forces 1s at
//! `(i+p, j+q)` and `(i-p, j-q)` wherever those cells exist. Supported
//! periods are `(1,1)`, `(p,1)` and `(1,q)`.
//!
//! ```
//! use periodic_tomography::{solve, Period, ProjectionPair};
//!
//! let sums = ProjectionPair::new(vec![1, 2, 2, 2], vec![2, 1, 2, 1, 1]).unwrap();
//! let a = solve(&sums, Period::DIAGONAL).unwrap();
//! assert_eq!(a.to_string(), "00100\n10010\n01001\n10100\n");
//! ```

pub mod error;
mod flow;
pub mod matrix;
pub mod ryser;
pub mod twosat;
pub mod rhc;
pub mod fixed;
pub mod torus;
pub mod oracle;
pub mod cylinder;
pub mod solve;
pub mod instance;
pub mod generate;
pub mod cli;

pub use error::{Infeasibility, SolveError};
pub use instance::Instance;
pub use matrix::{BinaryMatrix, Direction, Period, ProjectionPair};
pub use solve::solve;
