//! The 2-SAT engine: clauses, assumptions and DIMACS output.

use periodic_tomography::twosat::{Literal, TwoSatFormula};

fn main() {
    let (x, y, z) = (0, 1, 2);
    let mut f = TwoSatFormula::new(3);
    f.add_clause(&[Literal::pos(x), Literal::pos(y)]).unwrap();
    f.add_clause(&[Literal::neg(x), Literal::pos(y)]).unwrap();
    f.add_clause(&[Literal::pos(x), Literal::neg(y)]).unwrap();
    f.implies(Literal::pos(y), Literal::neg(z));
    print!("{}", f.to_dimacs());

    let model = f.solve().unwrap();
    println!("model: {:?}", model.values());
    println!("with z assumed: {:?}", f.solve_with(&[Literal::pos(z)]).map(|m| m.values().to_vec()));

    // a chain x0 -> x1 -> ... -> x99 -> !x0 forces x0 false
    let mut chain = TwoSatFormula::new(100);
    for v in 0..99 {
        chain.implies(Literal::pos(v), Literal::pos(v + 1));
    }
    chain.implies(Literal::pos(99), Literal::neg(0));
    let m = chain.solve().unwrap();
    println!("chain: x0 = {}, satisfied = {}", m.value(0), chain.is_satisfied_by(&m));
}
