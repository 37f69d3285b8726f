//! Shared helpers for the integration tests: corpus loading and brute-force
//! oracles that only use ranks of column subsets.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};
use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tropfan::arith::{self, IntMat};
use tropfan::cli::parse_matrix;
use tropfan::fan::{
    cones_meet_in_common_face, cone_contains, cyclic_bergman_fan_with, enumerate_pairs, f_b,
    induce_pair, is_in_local_trop, is_simplicial, CompatiblePair,
};
use tropfan::{ElementSet, Fan, FanOptions, Matroid};

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(format!("{name}.txt"))
}

pub fn load(name: &str) -> IntMat {
    let text = std::fs::read_to_string(data_path(name)).expect("corpus file");
    parse_matrix(&text).expect("corpus matrix")
}

/// Ranks of all column subsets, by bitmask.
pub struct Brute {
    pub n: usize,
    pub rank: Vec<usize>,
}

impl Brute {
    /// `dual` gives the rank function of the dual matroid.
    pub fn new(a: &IntMat, dual: bool) -> Self {
        let n = a.cols();
        assert!(n <= 12);
        let full = (1usize << n) - 1;
        let prim: Vec<usize> = (0..=full)
            .map(|mask| {
                let cols: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                if cols.is_empty() {
                    0
                } else {
                    arith::rank(&a.select_columns(&cols))
                }
            })
            .collect();
        let rank = if dual {
            let r = prim[full];
            (0..=full)
                .map(|s: usize| s.count_ones() as usize + prim[full ^ s] - r)
                .collect()
        } else {
            prim
        };
        Self { n, rank }
    }

    pub fn full(&self) -> usize {
        (1 << self.n) - 1
    }

    pub fn r(&self) -> usize {
        self.rank[self.full()]
    }

    pub fn bases(&self) -> Vec<usize> {
        let r = self.r();
        (0..=self.full())
            .filter(|&s| s.count_ones() as usize == r && self.rank[s] == r)
            .collect()
    }

    pub fn circuits(&self) -> Vec<usize> {
        let dependent = |s: usize| self.rank[s] < s.count_ones() as usize;
        (1..=self.full())
            .filter(|&s| dependent(s) && (0..self.n).all(|i| s >> i & 1 == 0 || !dependent(s ^ (1 << i))))
            .collect()
    }

    pub fn is_flat(&self, f: usize) -> bool {
        (0..self.n).all(|e| f >> e & 1 == 1 || self.rank[f | 1 << e] > self.rank[f])
    }

    /// Proper nonempty flats that are unions of circuits, or singletons.
    pub fn ray_supports(&self) -> BTreeSet<usize> {
        let circuits = self.circuits();
        (1..self.full())
            .filter(|&f| self.is_flat(f))
            .filter(|&f| {
                let union = circuits
                    .iter()
                    .filter(|&&c| c & f == c)
                    .fold(0, |u, &c| u | c);
                union == f || f.count_ones() == 1
            })
            .collect()
    }

    pub fn in_trop(&self, circuits: &[usize], v: &[i64]) -> bool {
        circuits.iter().all(|&c| {
            let vals: Vec<i64> = (0..self.n).filter(|&i| c >> i & 1 == 1).map(|i| v[i]).collect();
            let min = *vals.iter().min().unwrap();
            vals.iter().filter(|&&x| x == min).count() >= 2
        })
    }

    /// `T(x, y)` from the rank generating function.
    pub fn tutte(&self, x: i64, y: i64) -> BigInt {
        let r = self.r() as u32;
        let mut total = BigInt::from(0);
        for s in 0..=self.full() {
            let rs = self.rank[s] as u32;
            let size = s.count_ones();
            total += BigInt::from(x - 1).pow(r - rs) * BigInt::from(y - 1).pow(size - rs);
        }
        total
    }

    /// `C(k, B) - {k}` as a sorted list.
    pub fn fundamental_part(&self, circuits: &[usize], basis: usize, k: usize) -> Vec<usize> {
        let c = circuits
            .iter()
            .copied()
            .find(|&c| c >> k & 1 == 1 && c & !(basis | 1 << k) == 0)
            .expect("fundamental circuit");
        (0..self.n).filter(|&i| i != k && c >> i & 1 == 1).collect()
    }
}

pub fn mask_of(s: &ElementSet, n: usize) -> usize {
    (0..n).filter(|&i| s.contains(i)).fold(0, |m, i| m | 1 << i)
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Regressive compatible pairs over `basis`, generated from every total
/// order `J` of the basis: `p(k)` is the `J`-smallest element of `F_k` and
/// the order is `J` restricted to the image.
pub fn pairs_from_total_orders(parts: &[Vec<usize>], nonbasis: &[usize], basis: &[usize]) -> BTreeSet<(Vec<usize>, Vec<usize>)> {
    let mut out = BTreeSet::new();
    for j in permutations(basis) {
        let rank = |b: usize| j.iter().position(|&x| x == b).unwrap();
        let pref: Vec<usize> = parts
            .iter()
            .map(|p| *p.iter().min_by_key(|&&b| rank(b)).unwrap())
            .collect();
        if pref.iter().zip(nonbasis).any(|(&b, &k)| b >= k) {
            continue;
        }
        let order: Vec<usize> = j.iter().copied().filter(|b| pref.contains(b)).collect();
        out.insert((pref, order));
    }
    out
}

/// Enumeration with the loop order of the textbook recursion: at each
/// non-basis `k`, reuse the smallest image element of `F_k`, or, for each
/// position of the chain and then each new `b`, insert `b` there.
pub fn pairs_literal(parts: &[Vec<usize>], nonbasis: &[usize]) -> BTreeSet<(Vec<usize>, Vec<usize>)> {
    fn go(
        t: usize,
        parts: &[Vec<usize>],
        nonbasis: &[usize],
        pref: &mut Vec<usize>,
        order: &mut Vec<usize>,
        out: &mut BTreeSet<(Vec<usize>, Vec<usize>)>,
    ) {
        if t == nonbasis.len() {
            out.insert((pref.clone(), order.clone()));
            return;
        }
        let k = nonbasis[t];
        let part = &parts[t];
        if let Some(&b) = order.iter().find(|b| part.contains(b)) {
            pref.push(b);
            go(t + 1, parts, nonbasis, pref, order, out);
            pref.pop();
        }
        for q in 0..=order.len() {
            for &b in part {
                if b >= k || order.contains(&b) {
                    continue;
                }
                order.insert(q, b);
                let rank = |x: usize| order.iter().position(|&y| y == x);
                // earlier preferences must stay order-minimal in their part
                let earlier_ok = (0..t).all(|l| !parts[l].contains(&b) || rank(pref[l]) < rank(b));
                // and `b` must be order-minimal among image elements of F_k
                let own_ok = part
                    .iter()
                    .filter_map(|&x| rank(x))
                    .all(|r| r >= q);
                if earlier_ok && own_ok {
                    pref.push(b);
                    go(t + 1, parts, nonbasis, pref, order, out);
                    pref.pop();
                }
                order.remove(q);
            }
        }
    }
    let mut out = BTreeSet::new();
    go(0, parts, nonbasis, &mut Vec::new(), &mut Vec::new(), &mut out);
    out
}

pub fn pair_key(p: &CompatiblePair) -> (Vec<usize>, Vec<usize>) {
    (p.pref.clone(), p.order.clone())
}

/// A seeded list of loopless, coloopless integer matrices with `m <= 4`
/// and `n <= 8`.
pub fn random_matrices(count: usize, seed: u64) -> Vec<IntMat> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let m = rng.gen_range(2..=4);
        let n = rng.gen_range(m + 2..=8);
        let rows: Vec<Vec<i64>> = (0..m)
            .map(|_| (0..n).map(|_| rng.gen_range(-2..=2)).collect())
            .collect();
        let a = IntMat::from_rows(&rows);
        if arith::rank(&a) == m && Matroid::from_matrix(&a).is_ok() {
            out.push(a);
        }
    }
    out
}

pub struct PropertyReport {
    pub cones: usize,
    pub pair_checks: usize,
    pub intersection_checks: usize,
}

fn q(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

/// Runs the structural checks on the fan of `M(a)` (or its dual).
pub fn check_fan_properties(a: &IntMat, dual: bool, seed: u64) -> Result<PropertyReport, String> {
    let m = if dual {
        Matroid::dual_from_matrix(a)
    } else {
        Matroid::from_matrix(a)
    }
    .map_err(|e| e.to_string())?;
    let brute = Brute::new(a, dual);
    let n = brute.n;
    let circuits = brute.circuits();
    let options = FanOptions {
        threads: 0,
        keep_pairs: true,
        check_duplicates: true,
    };
    // (c) duplicates are refused while building
    let fan: Fan = cyclic_bergman_fan_with(&m, &options).map_err(|e| e.to_string())?;
    let seen: HashSet<Vec<u32>> = fan.cones().iter().map(|c| c.rays.clone()).collect();
    if seen.len() != fan.cone_count() {
        return Err("duplicate cones".into());
    }

    // (a) ray supports
    let supports: BTreeSet<usize> = fan.rays().iter().map(|r| mask_of(r, n)).collect();
    if supports != brute.ray_supports() {
        return Err(format!(
            "ray supports differ: fan has {}, oracle {}",
            supports.len(),
            brute.ray_supports().len()
        ));
    }

    let bases = brute.bases();
    if bases.len() != m.basis_count() {
        return Err("basis count".into());
    }

    let mut pair_checks = 0;
    for c in 0..fan.cone_count() {
        let v = fan.interior_witness(c);
        // (b) witnesses lie in Trop(M)
        if !brute.in_trop(&circuits, &v) {
            return Err(format!("witness of cone {c} is not tropical"));
        }
        if !is_simplicial(&fan, c) {
            return Err(format!("cone {c} is not simplicial"));
        }
        // (d) round trip through induce_pair
        let cone = &fan.cones()[c];
        let pair = cone.pair.as_ref().expect("pairs kept");
        if !is_in_local_trop(&m, &pair.basis, &v).map_err(|e| e.to_string())? {
            return Err(format!("witness of cone {c} is not in its local piece"));
        }
        for descending_ties in [false, true] {
            let mut order = pair.basis.clone();
            order.sort_by_key(|&b| (v[b], if descending_ties { n - b } else { b }));
            let back = induce_pair(&m, &pair.basis, &v, &order).map_err(|e| e.to_string())?;
            if &back != pair {
                return Err(format!("cone {c}: induced pair differs from its source"));
            }
            pair_checks += 1;
        }
    }

    // pair enumeration against both oracles, basis by basis
    for (bi, basis) in m.bases().iter().enumerate() {
        let bmask = basis.iter().fold(0, |s, &b| s | 1 << b);
        if !bases.contains(&bmask) {
            return Err(format!("{basis:?} is not a basis"));
        }
        let nonbasis: Vec<usize> = (0..n).filter(|&k| bmask >> k & 1 == 0).collect();
        let parts: Vec<Vec<usize>> = nonbasis
            .iter()
            .map(|&k| brute.fundamental_part(&circuits, bmask, k))
            .collect();
        let enumerated = enumerate_pairs(&m, basis).map_err(|e| e.to_string())?;
        let keys: Vec<(Vec<usize>, Vec<usize>)> = enumerated.iter().map(pair_key).collect();
        let key_set: BTreeSet<_> = keys.iter().cloned().collect();
        if key_set.len() != keys.len() {
            return Err(format!("basis {bi}: a pair was produced twice"));
        }
        if key_set != pairs_from_total_orders(&parts, &nonbasis, basis) {
            return Err(format!("basis {bi}: pairs differ from the total-order oracle"));
        }
        if key_set != pairs_literal(&parts, &nonbasis) {
            return Err(format!("basis {bi}: pairs differ from the literal recursion"));
        }
    }

    // (e) cones meet along common faces
    let mut intersection_checks = 0;
    if fan.cone_count() <= 500 {
        for x in 0..fan.cone_count() {
            for y in x + 1..fan.cone_count() {
                if !cones_meet_in_common_face(&fan, x, y) || !cones_meet_in_common_face(&fan, y, x) {
                    return Err(format!("cones {x} and {y} overlap"));
                }
                intersection_checks += 1;
            }
        }
    }

    // support sampling: points of Trop(M) lie in some cone
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..10 {
        let basis = &m.bases()[rng.gen_range(0..m.basis_count())];
        let x: Vec<i64> = (0..basis.len()).map(|_| rng.gen_range(-5..=5)).collect();
        let v = f_b(&m, basis, &x).map_err(|e| e.to_string())?;
        if !brute.in_trop(&circuits, &v) {
            return Err("f_B produced a non-tropical point".into());
        }
        let point: Vec<BigRational> = v.iter().map(|&t| q(t)).collect();
        if !(0..fan.cone_count()).any(|c| cone_contains(&fan, c, &point)) {
            return Err(format!("tropical point {v:?} is in no cone"));
        }
    }

    // (f) Tutte polynomial
    let t = m.tutte_polynomial();
    for (x, y) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
        if t.eval(x, y) != brute.tutte(x, y) {
            return Err(format!("T({x},{y}) differs"));
        }
    }
    let independent = (0..=brute.full())
        .filter(|&s| brute.rank[s] == s.count_ones() as usize)
        .count();
    let spanning = (0..=brute.full()).filter(|&s| brute.rank[s] == brute.r()).count();
    if t.eval(1, 1) != BigInt::from(bases.len())
        || t.eval(2, 1) != BigInt::from(independent)
        || t.eval(1, 2) != BigInt::from(spanning)
        || t.eval(2, 2) != BigInt::from(1u64 << n)
    {
        return Err("Tutte specializations do not count bases/independent/spanning sets".into());
    }
    for x in 0..=n as i64 {
        for y in 0..=n as i64 {
            if t.eval(x, y) != brute.tutte(x, y) {
                return Err(format!("T({x},{y}) differs from the rank generating function"));
            }
        }
    }

    Ok(PropertyReport {
        cones: fan.cone_count(),
        pair_checks,
        intersection_checks,
    })
}

/// Matrices of the corpus with at most nine columns.
pub const SMALL_CORPUS: [&str; 3] = ["graphical", "preference", "cube3"];

/// The whole property suite: small corpus (each matroid and its dual) and
/// fifty random matrices. Returns one error line per failure.
pub fn property_suite() -> (usize, Vec<String>) {
    let mut failures = Vec::new();
    let mut checked = 0;
    for name in SMALL_CORPUS {
        let a = load(name);
        for dual in [false, true] {
            checked += 1;
            if let Err(e) = check_fan_properties(&a, dual, 7) {
                failures.push(format!("{name} (dual {dual}): {e}"));
            }
        }
    }
    for (i, a) in random_matrices(50, 2024).iter().enumerate() {
        checked += 1;
        if let Err(e) = check_fan_properties(a, false, i as u64) {
            failures.push(format!("random matrix {i}: {e}\n{a}"));
        }
    }
    (checked, failures)
}
