//! Random vertices of the Newton polytope of the discriminant of a quadric
//! and a cubic in two variables.
//!
//! `cargo run --release --example discriminant_vertices -- 10 7` shoots 10
//! rays with seed 7.

use num_bigint::BigInt;
use tropfan::cli::parse_matrix;
use tropfan::discriminant::DiscriminantProblem;

fn main() {
    let mut args = std::env::args().skip(1);
    let count = args.next().map_or(5, |s| s.parse().unwrap());
    let seed = args.next().map_or(1, |s| s.parse().unwrap());

    let a = parse_matrix(include_str!("../data/disc.txt")).unwrap();
    let prob = DiscriminantProblem::setup(&a).unwrap();
    println!(
        "{} maximal cones, {} of codimension 1 after adding rowspace(A)",
        prob.fan().cone_count(),
        prob.codim1_cones().len()
    );
    for v in prob.random_vertices(count, seed).unwrap() {
        let total: BigInt = v.u.iter().sum();
        let u: Vec<String> = v.u.iter().map(|x| x.to_string()).collect();
        let deg: Vec<String> = v.a_degree.iter().map(|x| x.to_string()).collect();
        let dup = v.duplicate_of.map_or(String::new(), |j| format!(" (= vertex {j})"));
        println!("u = ({})  A-degree ({})  degree {total}{dup}", u.join(","), deg.join(","));
    }
}
