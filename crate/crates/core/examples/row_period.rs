//! Period (p,1) end to end, with the route and stage timings of the solver.

use periodic_tomography::cylinder::{solve_p1_with, SolveOptions, StageTimes};
use periodic_tomography::fixed::preprocess_p1;
use periodic_tomography::generate::random_periodic;
use periodic_tomography::{Period, ProjectionPair};

fn main() {
    let sums = ProjectionPair::new(vec![2, 3, 2, 4, 3, 4, 2], vec![3, 4, 3, 3, 4, 2, 1]).unwrap();
    let d = preprocess_p1(&sums, 2).unwrap();
    print!("fixed part:\n{}", d.fixed);
    println!("residual rows {:?}, columns {:?}", d.residual.rows(), d.residual.cols());

    let report = solve_p1_with(&sums, 2, &SolveOptions::default()).unwrap();
    print!("solution ({:?}):\n{}", report.route, report.matrix);

    let big = random_periodic(120, 120, Period { p: 5, q: 1 }, 0.5, 42).projections();
    let report = solve_p1_with(&big, 5, &SolveOptions::default()).unwrap();
    println!("\n120x120, p = 5: {:?}, {} anchors tried", report.route, report.anchors_tried);
    for (name, t) in StageTimes::NAMES.iter().zip(report.times.as_array()) {
        println!("  {name:<10} {t:?}");
    }
}
