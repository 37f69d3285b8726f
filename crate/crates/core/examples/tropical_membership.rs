//! Tropical membership, the parametrization of a local tropical linear
//! space, and the compatible pair and caterpillar tree a vector induces.

use tropfan::cli::parse_matrix;
use tropfan::fan::{build_tree, cone_from_tree, f_b, induce_pair, is_in_local_trop, is_in_trop};
use tropfan::Matroid;

fn main() {
    let a = parse_matrix(include_str!("../data/preference.txt")).unwrap();
    let m = Matroid::from_matrix(&a).unwrap();
    let n = m.ground_size();
    let basis = vec![0, 1, 2, 3];

    let x = [3, 1, 4, 2];
    let v = f_b(&m, &basis, &x).unwrap();
    println!("f_B(x) = {v:?}");
    println!("in Trop(M): {}", is_in_trop(&m, &v));
    println!("in Trop(M)_B: {}", is_in_local_trop(&m, &basis, &v).unwrap());

    let mut order = basis.clone();
    order.sort_by_key(|&b| (v[b], b));
    let pair = induce_pair(&m, &basis, &v, &order).unwrap();
    for (k, b) in pair.nonbasis.iter().zip(&pair.pref) {
        println!("p({}) = {}", k + 1, b + 1);
    }
    println!("regressive: {}", pair.is_regressive());

    let fc = m.fundamental_circuits(&basis).unwrap();
    let tree = build_tree(&pair, &fc).unwrap();
    println!("tree: {tree:?}");
    for r in cone_from_tree(&tree, n) {
        println!("ray e_{r}");
    }

    let off = [0, 0, 0, 0, 1, 2, 3];
    println!("{off:?} in Trop(M): {}", is_in_trop(&m, &off));
}
