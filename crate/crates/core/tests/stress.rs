//! Large runs kept out of the default test pass. Run with
//! `cargo test --release --test stress -- --ignored --nocapture`.

mod common;

use std::time::Instant;

use tropfan::fan::fan_rays;
use tropfan::{FanOptions, Matroid};

#[test]
#[ignore = "hours of single-core work"]
fn exmixed3_dual_fan_counts() {
    let a = common::load("exmixed3");
    let m = Matroid::dual_from_matrix(&a).unwrap();
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    let t = Instant::now();
    let options = FanOptions {
        threads,
        keep_pairs: false,
        check_duplicates: false,
    };
    let (rays, cones) = fan_rays(&m, &options).unwrap();
    println!("{} bases, {} rays, {cones} cones in {:.1?}", m.basis_count(), rays.len(), t.elapsed());
    assert_eq!(rays.len(), 929);
    assert_eq!(cones, 154_495_683);
}
