//! Period (1,q) through the general entry point, plus a generated instance.

use periodic_tomography::generate::random_periodic;
use periodic_tomography::matrix::verify_solution;
use periodic_tomography::{solve, Instance, Period, ProjectionPair};

fn main() {
    let period = Period { p: 1, q: 2 };
    let sums = ProjectionPair::new(vec![3, 4, 3, 3, 4, 2, 1], vec![2, 3, 2, 4, 3, 4, 2]).unwrap();
    let a = solve(&sums, period).unwrap();
    print!("{a}");
    println!("verifies: {}", verify_solution(&a, &sums, period));

    let hidden = random_periodic(6, 9, Period { p: 1, q: 3 }, 0.4, 7);
    let inst = Instance::from_matrix(&hidden, Period { p: 1, q: 3 });
    println!("\n{}", inst.to_json());
    let found = solve(&inst.pair().unwrap(), inst.period().unwrap()).unwrap();
    print!("hidden:\n{hidden}found:\n{found}");
}
