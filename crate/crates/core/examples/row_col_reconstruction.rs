//! Plain reconstruction from row and column sums, with and without
//! forbidden cells.

use periodic_tomography::ryser::{reconstruct_with_forbidden, ryser_feasible, ryser_reconstruct, ForbiddenMask};
use periodic_tomography::ProjectionPair;

fn main() {
    let sums = ProjectionPair::new(vec![3, 2, 2, 1], vec![2, 2, 2, 1, 1]).unwrap();
    println!("feasible: {}", ryser_feasible(&sums));
    let a = ryser_reconstruct(&sums).unwrap();
    print!("{a}");

    // keep the main diagonal empty
    let mask = ForbiddenMask::from_cells(4, 5, (1..=4).map(|i| (i, i)));
    match reconstruct_with_forbidden(&sums, &mask) {
        Ok(b) => print!("\nwithout the diagonal:\n{b}"),
        Err(_) => println!("\nno realization avoids the diagonal"),
    }

    let hopeless = ProjectionPair::new(vec![3, 0], vec![2, 1, 0]).unwrap();
    println!("\n[3,0] / [2,1,0] feasible: {}", ryser_feasible(&hopeless));
}
