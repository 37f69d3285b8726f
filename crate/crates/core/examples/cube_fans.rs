//! Fans of the vertex configurations of the 3- and 4-dimensional cubes, and
//! how much coarser the Bergman fan is.

use std::time::Instant;

use tropfan::cli::parse_matrix;
use tropfan::fan::compare_with_bergman;
use tropfan::{cyclic_bergman_fan, Matroid};

fn main() {
    for (name, text) in [
        ("3-cube", include_str!("../data/cube3.txt")),
        ("4-cube", include_str!("../data/cube4.txt")),
    ] {
        let t = Instant::now();
        let m = Matroid::from_matrix(&parse_matrix(text).unwrap()).unwrap();
        let fan = cyclic_bergman_fan(&m).unwrap();
        let classes = compare_with_bergman(&fan, &m);
        println!(
            "{name}: {} bases, {} rays, {} maximal cones, {} Bergman cones ({:.2?})",
            m.basis_count(),
            fan.ray_count(),
            fan.cone_count(),
            classes.len(),
            t.elapsed()
        );
    }
}
