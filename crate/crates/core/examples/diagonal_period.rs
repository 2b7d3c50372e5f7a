//! Period (1,1): preprocessing, loop placement and solution counts.

use periodic_tomography::fixed::preprocess_11;
use periodic_tomography::torus::{count_solutions_11, solve_11, torus_orbits};
use periodic_tomography::ProjectionPair;

fn main() {
    let sums = ProjectionPair::new(vec![2, 2, 1, 2], vec![2, 1, 2, 2]).unwrap();
    let d = preprocess_11(&sums).unwrap();
    for step in &d.steps {
        println!("{:?} box at index {} fixes {:?}", step.rule, step.index, step.cell);
    }
    print!("fixed part:\n{}", d.fixed);
    println!("residual rows {:?}, columns {:?}", d.residual.rows(), d.residual.cols());
    println!("{} loops on the 4x4 torus", torus_orbits(4, 4).len());

    let a = solve_11(&sums).unwrap();
    print!("solution:\n{a}");
    println!("solutions in total: {}", count_solutions_11(&sums));

    let bad = ProjectionPair::new(vec![2, 0], vec![1, 1]).unwrap();
    println!("[2,0] / [1,1]: {}", solve_11(&bad).unwrap_err());
}
