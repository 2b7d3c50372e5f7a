//! Exhaustive enumeration for small grids, used to cross-check the solvers.

use periodic_tomography::oracle::{count_periodic, enumerate_periodic, EnumerationRequest};
use periodic_tomography::{solve, Period, ProjectionPair};

fn main() {
    let sums = ProjectionPair::new(vec![2, 2, 1, 2], vec![2, 1, 2, 2]).unwrap();
    let req = EnumerationRequest::new(sums.clone(), Period::DIAGONAL);
    for (k, a) in enumerate_periodic(&req).unwrap().iter().enumerate() {
        print!("solution {}:\n{a}", k + 1);
    }

    let period = Period { p: 2, q: 1 };
    let sums = ProjectionPair::new(vec![2, 3, 2, 3, 2], vec![2, 3, 2, 2, 3]).unwrap();
    let count = count_periodic(&EnumerationRequest::new(sums.clone(), period)).unwrap();
    println!("(2,1) realizations of {:?} / {:?}: {count}", sums.rows(), sums.cols());
    match solve(&sums, period) {
        Ok(a) => print!("solver picks:\n{a}"),
        Err(e) => println!("solver: {e}"),
    }

    let too_big = EnumerationRequest::new(ProjectionPair::zeros(8, 8), Period::DIAGONAL);
    println!("{}", enumerate_periodic(&too_big).unwrap_err());
}
