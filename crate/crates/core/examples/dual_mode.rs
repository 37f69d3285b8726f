//! The fan of a Gale dual computed two ways: from a printed Gale dual, and
//! from `A` itself through the dual matroid.

use tropfan::arith::{integer_kernel_basis, same_rowspace};
use tropfan::cli::parse_matrix;
use tropfan::{cyclic_bergman_fan, Matroid};

fn main() {
    let a = parse_matrix(include_str!("../data/exmixed1.txt")).unwrap();
    let perp = parse_matrix(include_str!("../data/exmixed1_perp.txt")).unwrap();
    assert!(same_rowspace(&perp, &integer_kernel_basis(&a)));

    let direct = Matroid::from_matrix(&perp).unwrap();
    let dual = Matroid::dual_from_matrix(&a).unwrap();
    let f1 = cyclic_bergman_fan(&direct).unwrap();
    let f2 = cyclic_bergman_fan(&dual).unwrap();
    println!("bases: {} and {}", direct.basis_count(), dual.basis_count());
    println!("rays: {} and {}", f1.ray_count(), f2.ray_count());
    println!("maximal cones: {} and {}", f1.cone_count(), f2.cone_count());
    println!("identical: {}", f1.rays() == f2.rays() && f1.cones() == f2.cones());
}
