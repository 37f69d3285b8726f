//! Which maximal cones of the cyclic Bergman fan lie in the same cone of the
//! Bergman fan, for the graphic matroid.

use tropfan::cli::parse_matrix;
use tropfan::fan::{compare_with_bergman, max_weight_bases};
use tropfan::{cyclic_bergman_fan, Matroid};

fn main() {
    let a = parse_matrix(include_str!("../data/graphical.txt")).unwrap();
    let m = Matroid::from_matrix(&a).unwrap();
    let fan = cyclic_bergman_fan(&m).unwrap();
    for class in compare_with_bergman(&fan, &m) {
        let w = fan.interior_witness(class[0]);
        let face = max_weight_bases(&m, &w).len();
        let cones: Vec<String> = class
            .iter()
            .map(|&c| {
                let rays: Vec<String> = fan.cone_rays(c).map(|r| format!("e_{r}")).collect();
                rays.join("+")
            })
            .collect();
        println!("{:<28} face with {face} bases", cones.join("  |  "));
    }
}
