//! The cyclic Bergman fan of a graphic matroid on six edges, with the
//! compatible pair behind each maximal cone.

use tropfan::cli::parse_matrix;
use tropfan::fan::cyclic_bergman_fan_with;
use tropfan::{FanOptions, Matroid};

fn main() {
    let a = parse_matrix(include_str!("../data/graphical.txt")).unwrap();
    let m = Matroid::from_matrix(&a).unwrap();
    let options = FanOptions {
        keep_pairs: true,
        ..FanOptions::default()
    };
    let fan = cyclic_bergman_fan_with(&m, &options).unwrap();
    println!("{} rays:", fan.ray_count());
    for (i, r) in fan.rays().iter().enumerate() {
        println!("  r{i} = e_{r}");
    }
    println!("{} maximal cones:", fan.cone_count());
    for c in fan.cones() {
        let pair = c.pair.as_ref().unwrap();
        let basis: Vec<usize> = pair.basis.iter().map(|b| b + 1).collect();
        let order: Vec<usize> = pair.order.iter().map(|b| b + 1).collect();
        let rays: Vec<String> = c.rays.iter().map(|r| format!("r{r}")).collect();
        println!("  B = {basis:?}, image order {order:?}: cone({})", rays.join(", "));
    }
}
