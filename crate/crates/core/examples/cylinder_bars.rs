//! The bar problem on its own: lines become bars, bars come back as starts.

use periodic_tomography::cylinder::{bar_matrix_from_lines, inverse_reduce, reduce_to_rhc};
use periodic_tomography::rhc::{build_rhc_formula, extract_start_columns, solve_rhc, validate_bars, Zone};
use periodic_tomography::{BinaryMatrix, ProjectionPair};

fn main() {
    let lines: BinaryMatrix = "101001\n100010\n110100\n010001\n011010\n".parse().unwrap();
    let (bars, starts) = bar_matrix_from_lines(&lines, 2).unwrap();
    for s in &starts {
        println!("start ({}, {}) has rank {}", s.x, s.y, s.rank);
    }
    print!("bar matrix:\n{bars}");

    let residual = lines.projections();
    let (classes, inst) = reduce_to_rhc(&residual, 2).unwrap();
    println!("L = {}, n_L = {}, n_L+1 = {}", classes.short_len, classes.short_classes, classes.long_classes);
    let (c1, c2) = extract_start_columns(&bars, &inst).unwrap();
    println!("short starts {c1:?}, long starts {c2:?}");

    let sol = solve_rhc(&inst).unwrap();
    validate_bars(&inst, &sol.bars).unwrap();
    print!("2-SAT bars (anchor {}):\n{}", sol.anchor, sol.matrix);
    let rf = build_rhc_formula(&inst, sol.anchor);
    println!("{} variables; {}", rf.layout.num_vars(), rf.counts);
    let model = rf.solve().unwrap();
    for zone in Zone::ALL {
        print!("zone {}:\n{}", zone.letter(), rf.layout.render(zone, &model));
    }

    let (c1, c2) = sol.start_columns(inst.cols);
    let back = inverse_reduce(&c1, &c2, &residual, 2, &BinaryMatrix::zeros(5, 6)).unwrap();
    assert_eq!(back.projections(), ProjectionPair::new(residual.rows().to_vec(), residual.cols().to_vec()).unwrap());
    print!("lines rebuilt from the starts:\n{back}");
}
