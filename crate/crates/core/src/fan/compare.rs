//! Checks and comparisons on a computed fan: grouping into Bergman fan
//! cones, the ray characterization, simpliciality and cone intersections.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, lp, solve_unique, IntMat};
use crate::matroid::Matroid;
use crate::set::ElementSet;

use super::{Fan, FanError};

/// Indices (into `m.bases()`) of the bases of maximal `v`-weight.
pub fn max_weight_bases(m: &Matroid, v: &[i64]) -> Vec<usize> {
    let weights: Vec<i64> = m
        .bases()
        .iter()
        .map(|b| b.iter().map(|&i| v[i]).sum())
        .collect();
    let best = weights.iter().copied().max().unwrap_or(0);
    (0..weights.len()).filter(|&i| weights[i] == best).collect()
}

/// Groups the maximal cones of `fan` by the maximal cone of the Bergman fan
/// containing them. Two cones are grouped when their interior witnesses
/// select the same face of the matroid polytope. Classes are ordered by their
/// smallest cone index.
pub fn compare_with_bergman(fan: &Fan, m: &Matroid) -> Vec<Vec<usize>> {
    let mut class_of: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for c in 0..fan.cone_count() {
        let key = max_weight_bases(m, &fan.interior_witness(c));
        match class_of.get(&key) {
            Some(&k) => classes[k].push(c),
            None => {
                class_of.insert(key, classes.len());
                classes.push(vec![c]);
            }
        }
    }
    classes
}

const FLAT_LIMIT: usize = 16;

/// Nonempty proper flats that are cyclic or singletons, by brute force over
/// all subsets, sorted like fan rays.
pub fn expected_ray_supports(m: &Matroid) -> Result<Vec<ElementSet>, FanError> {
    let n = m.ground_size();
    if n > FLAT_LIMIT {
        return Err(FanError::TooLarge {
            n,
            limit: FLAT_LIMIT,
        });
    }
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << n) - 1 {
        let f = ElementSet::from_mask(n, mask);
        if !m.is_flat(&f) {
            continue;
        }
        if f.len() == 1 || m.is_cyclic_flat(&f) {
            out.push(f);
        }
    }
    out.sort_by(ElementSet::cmp_indicator);
    Ok(out)
}

/// Ray supports of `fan` are exactly the proper flats that are cyclic or
/// singletons.
pub fn fan_rays_are_cyclic_flats(fan: &Fan, m: &Matroid) -> Result<bool, FanError> {
    Ok(expected_ray_supports(m)? == fan.rays())
}

fn indicator(n: usize, s: &ElementSet) -> Vec<BigInt> {
    (0..n)
        .map(|i| if s.contains(i) { BigInt::one() } else { BigInt::zero() })
        .collect()
}

fn generator_matrix(fan: &Fan, cone: usize, with_ones: bool) -> IntMat {
    let n = fan.ambient_dim();
    let mut cols: Vec<Vec<BigInt>> = fan.cone_rays(cone).map(|r| indicator(n, r)).collect();
    if with_ones {
        cols.push(vec![BigInt::one(); n]);
    }
    IntMat::from_big_rows(cols, n).transpose()
}

/// Rays together with the all-ones vector are linearly independent, and
/// there are `rank - 1` of them.
pub fn is_simplicial(fan: &Fan, cone: usize) -> bool {
    let g = generator_matrix(fan, cone, true);
    g.cols() == fan.rank() && arith::rank(&g) == fan.rank()
}

/// Exact membership of `point` in a maximal cone (lineality included).
pub fn cone_contains(fan: &Fan, cone: usize, point: &[BigRational]) -> bool {
    let g = generator_matrix(fan, cone, true);
    match solve_unique(&g, point) {
        Some(x) => x[..x.len() - 1].iter().all(|c| !c.is_negative()),
        None => false,
    }
}

/// The intersection of two maximal cones is the cone over their common rays.
/// Decided by an exact feasibility problem: is there a point of both cones
/// whose representation in the first uses the non-shared rays with total
/// weight one?
pub fn cones_meet_in_common_face(fan: &Fan, a: usize, b: usize) -> bool {
    let n = fan.ambient_dim();
    let ra = &fan.cones()[a].rays;
    let rb = &fan.cones()[b].rays;
    let only_a: Vec<bool> = ra.iter().map(|r| !rb.contains(r)).collect();
    if !only_a.iter().any(|&x| x) {
        return true;
    }
    let q = |x: i64| BigRational::from_integer(x.into());
    let mut cols: Vec<Vec<BigRational>> = Vec::new();
    let mut nonneg = Vec::new();
    for &r in ra {
        let s = &fan.rays()[r as usize];
        cols.push((0..n).map(|i| q(s.contains(i) as i64)).collect());
        nonneg.push(true);
    }
    for &r in rb {
        let s = &fan.rays()[r as usize];
        cols.push((0..n).map(|i| q(-(s.contains(i) as i64))).collect());
        nonneg.push(true);
    }
    cols.push(vec![q(1); n]);
    nonneg.push(false);
    let mut rows: Vec<Vec<BigRational>> = (0..n)
        .map(|i| cols.iter().map(|c| c[i].clone()).collect())
        .collect();
    let mut rhs = vec![q(0); n];
    let mut norm = vec![q(0); cols.len()];
    for (j, &x) in only_a.iter().enumerate() {
        if x {
            norm[j] = q(1);
        }
    }
    rows.push(norm);
    rhs.push(q(1));
    lp::find_feasible(&rows, &rhs, &nonneg).is_none()
}
