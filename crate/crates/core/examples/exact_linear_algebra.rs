//! Exact determinants, kernels, Gale duals and reduction on a basis.

use tropfan::arith::{det, gcd_of_maximal_minors, integer_kernel_basis, rank, reduce_on_basis};
use tropfan::cli::parse_matrix;
use tropfan::IntMat;

fn main() {
    let a = parse_matrix(include_str!("../data/disc.txt")).unwrap();
    println!("A is {}x{} of rank {}", a.rows(), a.cols(), rank(&a));
    println!("gcd of maximal minors: {}", gcd_of_maximal_minors(&a));

    let gale = integer_kernel_basis(&a);
    println!("Gale dual ({} rows):\n{gale}", gale.rows());
    println!("A * G^t = 0: {}", a.mul(&gale.transpose()).is_zero());

    let reduced = reduce_on_basis(&a, &[0, 1, 2, 6]).unwrap();
    println!("column 16 over the basis {{1,2,3,7}}:");
    for r in 0..reduced.rows() {
        println!("  {}", reduced[(r, 15)]);
    }

    let small = IntMat::from_rows(&[[6, 3, 2], [3, 2, 1], [2, 1, 1]]);
    println!("det = {}", det(&small));
}
