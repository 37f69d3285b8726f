//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any failed.

mod common;

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use clap::Parser;
use num_bigint::BigInt;
use tropfan::arith;
use tropfan::cli::{run_with_writer, Args, RunConfig, EXIT_OK};
use tropfan::discriminant::DiscriminantProblem;

use common::{data_path, load, property_suite};

type Check = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Check);

fn cli(name: &str, flags: &[&str]) -> Result<String, String> {
    let path = data_path(name);
    let mut argv = vec!["tropfan", path.to_str().unwrap()];
    argv.extend_from_slice(flags);
    let config = RunConfig::from_args(Args::try_parse_from(argv).map_err(|e| e.to_string())?)?;
    let mut out = Vec::new();
    let mut log = Vec::new();
    let code = run_with_writer(&config, &mut out, &mut log);
    if code != EXIT_OK {
        return Err(format!("exit {code}: {}", String::from_utf8_lossy(&log)));
    }
    String::from_utf8(out).map_err(|e| e.to_string())
}

fn header(out: &str, key: &str) -> Result<usize, String> {
    out.lines()
        .find_map(|l| l.strip_prefix(key)?.trim().parse().ok())
        .ok_or_else(|| format!("no {key} line"))
}

fn section<'a>(out: &'a str, start: &str) -> Vec<&'a str> {
    let mut lines = out.lines().skip_while(|l| *l != start);
    if lines.next().is_none() {
        return Vec::new();
    }
    lines
        .take_while(|l| !l.chars().next().is_some_and(|c| c == '#' || c.is_ascii_uppercase()))
        .collect()
}

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn within(what: &str, t: Duration, limit: Duration) -> Result<(), String> {
    if t <= limit {
        Ok(())
    } else {
        Err(format!("{what} took {t:.2?}, limit {limit:?}"))
    }
}

fn fan_counts(out: &str) -> Result<(usize, usize), String> {
    Ok((header(out, "NUM_RAYS")?, header(out, "NUM_MAXCONES")?))
}

fn criterion_1() -> Check {
    let t = Instant::now();
    let out = cli("cube3", &["--compare"])?;
    within("cube3", t.elapsed(), Duration::from_secs(1))?;
    expect("rays, cones", fan_counts(&out)?, (20, 80))?;
    let classes = section(&out, "BERGMAN");
    expect("classes", classes.len(), 80)?;
    expect("singleton classes", classes.iter().all(|c| !c.contains(' ')), true)?;
    Ok("20 rays, 80 cones, 80 singleton classes".into())
}

fn criterion_2() -> Check {
    let t = Instant::now();
    let out = cli("cube4", &["--compare"])?;
    within("cube4", t.elapsed(), Duration::from_secs(30))?;
    expect("rays, cones", fan_counts(&out)?, (176, 2720))?;
    expect("classes", header(&out, "NUM_BERGMAN_CLASSES")?, 2600)?;
    Ok("176 rays, 2720 cones, 2600 classes".into())
}

fn criterion_3() -> Check {
    let a = load("exmixed1");
    let perp = load("exmixed1_perp");
    expect("A * perp^t = 0", a.mul(&perp.transpose()).is_zero(), true)?;
    expect("rank of perp", arith::rank(&perp), 9)?;
    let t = Instant::now();
    let direct = cli("exmixed1_perp", &["--bases", "--counts-only"])?;
    let full_direct = cli("exmixed1_perp", &[])?;
    let full_dual = cli("exmixed1", &["--dual"])?;
    within("exmixed1", t.elapsed(), Duration::from_secs(10))?;
    expect("bases", header(&direct, "BASES")?, 430)?;
    expect("rays, cones", fan_counts(&full_direct)?, (29, 2466))?;
    expect("--dual output identical", full_dual == full_direct, true)?;
    Ok("430 bases, 29 rays, 2466 cones; direct and --dual identical".into())
}

fn criterion_4() -> Check {
    let t = Instant::now();
    let dual = cli("exmixed2", &["--dual", "--counts-only"])?;
    let dual_time = t.elapsed();
    within("exmixed2 --dual", dual_time, Duration::from_secs(600))?;
    expect("rays, cones (--dual)", fan_counts(&dual)?, (172, 475_722))?;
    let t = Instant::now();
    let direct = cli("exmixed2_perp", &["--counts-only"])?;
    let direct_time = t.elapsed();
    expect("rays, cones (A-perp)", fan_counts(&direct)?, (172, 475_722))?;
    Ok(format!(
        "172 rays, 475722 cones (--dual {dual_time:.1?}, printed A-perp {direct_time:.1?})"
    ))
}

fn criterion_5() -> Check {
    let a = load("disc");
    let t = Instant::now();
    let prob = DiscriminantProblem::setup(&a).map_err(|e| e.to_string())?;
    let setup = t.elapsed();
    within("fan and filter", setup, Duration::from_secs(300))?;
    expect("maximal cones", prob.fan().cone_count(), 18_045)?;
    expect("codimension 1", prob.codim1_cones().len(), 6_675)?;
    expect("lattice spanned", prob.lattice_spanned(), true)?;
    let t = Instant::now();
    let vs = prob.random_vertices(100, 1).map_err(|e| e.to_string())?;
    let shoot = t.elapsed();
    within("100 vertices", shoot, Duration::from_secs(1800))?;
    expect("vertex count", vs.len(), 100)?;
    let degree: Vec<BigInt> = [24, 22, -6, -6].iter().map(|&x| BigInt::from(x)).collect();
    for (k, v) in vs.iter().enumerate() {
        expect(&format!("A-degree of vertex {k}"), &v.a_degree, &degree)?;
        expect(&format!("sum of vertex {k}"), v.u.iter().sum::<BigInt>(), BigInt::from(46))?;
    }
    let dot = |u: &[BigInt], w: &[BigInt]| -> BigInt { u.iter().zip(w).map(|(x, y)| x * y).sum() };
    for x in &vs {
        for y in &vs {
            if dot(&x.u, &x.w) > dot(&y.u, &x.w) {
                return Err("a vertex does not minimize its own objective".into());
            }
        }
    }
    let distinct: HashSet<&Vec<BigInt>> = vs.iter().map(|v| &v.u).collect();
    Ok(format!(
        "18045 cones, 6675 codim 1, A-degree (24,22,-6,-6), degree 46; {} distinct vertices (setup {setup:.1?}, shooting {shoot:.1?})",
        distinct.len()
    ))
}

fn criterion_6() -> Check {
    let out = cli("graphical", &["--compare"])?;
    let rays = section(&out, "RAYS");
    let expected = [
        "1 1 0 0 0 0",
        "0 0 1 1 0 0",
        "0 0 0 0 1 0",
        "0 0 0 0 0 1",
        "1 1 1 1 0 0",
    ];
    let got: HashSet<&str> = rays.iter().copied().collect();
    expect("rays", got, expected.iter().copied().collect())?;
    let cones: Vec<Vec<usize>> = section(&out, "MAXCONES")
        .iter()
        .map(|l| l.split(' ').map(|x| x.parse().unwrap()).collect())
        .collect();
    expect("cones", cones.len(), 7)?;
    let classes: Vec<Vec<usize>> = section(&out, "BERGMAN")
        .iter()
        .map(|l| l.split(' ').map(|x| x.parse().unwrap()).collect())
        .collect();
    expect("classes", classes.len(), 6)?;
    let big: Vec<&Vec<usize>> = classes.iter().filter(|c| c.len() > 1).collect();
    expect("class sizes", big.iter().map(|c| c.len()).collect::<Vec<_>>(), vec![2])?;
    let (x, y) = (&cones[big[0][0]], &cones[big[0][1]]);
    let shared: Vec<&str> = x.iter().filter(|r| y.contains(r)).map(|&r| rays[r]).collect();
    expect("shared ray", shared, vec!["1 1 1 1 0 0"])?;
    Ok("rays e12 e34 e5 e6 e1234, 7 cones, 6 classes, one pair split by e1234".into())
}

fn criterion_7() -> Check {
    let t = Instant::now();
    let (checked, failures) = property_suite();
    within("property suite", t.elapsed(), Duration::from_secs(300))?;
    if !failures.is_empty() {
        return Err(failures.join("; "));
    }
    Ok(format!("{checked} matroids, zero failures ({:.1?})", t.elapsed()))
}

fn criterion_8() -> Check {
    let runs: [(&str, &[&str]); 7] = [
        ("cube3", &["--compare"]),
        ("cube4", &["--compare"]),
        ("exmixed1_perp", &["--bases"]),
        ("exmixed1", &["--dual"]),
        ("exmixed2", &["--dual"]),
        ("disc", &["--random", "100", "--seed", "1"]),
        ("graphical", &["--compare", "--circuits", "--tutte"]),
    ];
    let mut bytes = 0;
    for (name, flags) in runs {
        let first = cli(name, flags)?;
        let second = cli(name, flags)?;
        if first != second {
            return Err(format!("{name}: two runs differ"));
        }
        let mut threaded = flags.to_vec();
        threaded.extend(["--threads", "4"]);
        if cli(name, &threaded)? != first {
            return Err(format!("{name}: --threads 4 differs from --threads 0"));
        }
        bytes += first.len();
    }
    Ok(format!("7 runs byte-identical twice and with 4 threads ({bytes} bytes each pass)"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        (1, "3-cube", criterion_1),
        (2, "4-cube", criterion_2),
        (3, "exmixed1", criterion_3),
        (4, "exmixed2", criterion_4),
        (5, "discriminant", criterion_5),
        (6, "graphical", criterion_6),
        (7, "properties", criterion_7),
        (8, "determinism", criterion_8),
    ];
    let mut failed = 0;
    for (id, name, f) in criteria {
        let t = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f))
            .unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match result {
            Ok(msg) => println!("PASS criterion {id} ({name}): {msg} [{secs:.2} s]"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {id} ({name}): {msg} [{secs:.2} s]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
