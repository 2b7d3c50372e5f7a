//! Discrete X-rays of a matrix along a few lattice directions.

use periodic_tomography::{BinaryMatrix, Direction};

fn main() {
    let a: BinaryMatrix = "00100\n10010\n01001\n10100\n".parse().unwrap();
    print!("{a}");
    for (p, q) in [(1, 0), (0, 1), (1, 1), (-1, 1), (2, 1)] {
        let dir = Direction::new(p, q).unwrap();
        println!("({p},{q}): {:?}", a.xray(dir));
    }
    println!("rows {:?}, columns {:?}", a.row_sums(), a.col_sums());
}
