//! Bases, circuits, cyclic flats and the Tutte polynomial of a 4x7 matrix.

use tropfan::cli::parse_matrix;
use tropfan::{ElementSet, Matroid};

fn main() {
    let a = parse_matrix(include_str!("../data/preference.txt")).unwrap();
    let m = Matroid::from_matrix(&a).unwrap();
    let n = m.ground_size();
    println!("rank {} on {} elements, {} bases", m.rank(), n, m.basis_count());

    println!("circuits:");
    for c in m.circuits() {
        println!("  {}", ElementSet::from_elements(n, c));
    }

    println!("cyclic flats:");
    for mask in 0u64..1 << n {
        let f = ElementSet::from_mask(n, mask);
        if m.is_cyclic_flat(&f) {
            println!("  {f}");
        }
    }

    let t = m.tutte_polynomial();
    print!("Tutte polynomial:\n{t}");
    println!("T(1,1) = {}, T(2,2) = {}", t.eval(1, 1), t.eval(2, 2));
}
