//! Membership in tropical linear spaces, local tropical linear spaces, the
//! parametrization `f_B`, and the compatible pair induced by a vector.

use crate::matroid::{FundamentalCircuits, Matroid};

use super::{CompatiblePair, FanError};

/// Minimum of `v` over `elements` is attained at least twice.
fn min_attained_twice<T: Ord>(elements: impl IntoIterator<Item = usize>, v: &[T]) -> bool {
    let mut best: Option<&T> = None;
    let mut hits = 0;
    for i in elements {
        match best {
            Some(b) if v[i] > *b => {}
            Some(b) if v[i] == *b => hits += 1,
            _ => {
                best = Some(&v[i]);
                hits = 1;
            }
        }
    }
    hits >= 2
}

/// Full-circuit membership test for `Trop(M)`; caches the circuit list.
pub struct TropOracle {
    circuits: Vec<Vec<usize>>,
    n: usize,
}

impl TropOracle {
    pub fn new(m: &Matroid) -> Self {
        Self {
            circuits: m.circuits(),
            n: m.ground_size(),
        }
    }

    pub fn contains<T: Ord>(&self, v: &[T]) -> bool {
        assert_eq!(v.len(), self.n);
        self.circuits
            .iter()
            .all(|c| min_attained_twice(c.iter().copied(), v))
    }
}

pub fn is_in_trop<T: Ord>(m: &Matroid, v: &[T]) -> bool {
    TropOracle::new(m).contains(v)
}

/// `B` has maximal `v`-weight among all bases. Uses the exchange criterion:
/// `v_b >= v_e` whenever `b` lies in the fundamental circuit of `e`.
pub fn is_max_weight_basis<T: Ord>(fc: &FundamentalCircuits, v: &[T]) -> bool {
    fc.nonbasis
        .iter()
        .zip(&fc.parts)
        .all(|(&k, part)| part.iter().all(|&b| v[b] >= v[k]))
}

/// Membership in `Trop(M)_B` via the fundamental circuits over `B` only.
pub fn is_in_local_trop<T: Ord>(m: &Matroid, basis: &[usize], v: &[T]) -> Result<bool, FanError> {
    let fc = m.fundamental_circuits(basis)?;
    if !is_max_weight_basis(&fc, v) {
        return Err(FanError::NotMaxWeightBasis);
    }
    Ok(fc
        .nonbasis
        .iter()
        .zip(&fc.parts)
        .all(|(&k, part)| min_attained_twice(part.iter().copied().chain([k]), v)))
}

/// `f_B(x)`: `x_j` on the `j`-th basis element (sorted order), and the
/// minimum of `x` over `C(i, B) - {i}` elsewhere.
pub fn f_b<T: Ord + Clone>(m: &Matroid, basis: &[usize], x: &[T]) -> Result<Vec<T>, FanError> {
    let fc = m.fundamental_circuits(basis)?;
    assert_eq!(x.len(), fc.basis.len());
    let mut out: Vec<Option<T>> = vec![None; m.ground_size()];
    for (j, &b) in fc.basis.iter().enumerate() {
        out[b] = Some(x[j].clone());
    }
    for (&k, part) in fc.nonbasis.iter().zip(&fc.parts) {
        let j_min = part
            .iter()
            .map(|b| fc.basis.binary_search(b).expect("in basis"))
            .min_by(|&a, &b| x[a].cmp(&x[b]))
            .expect("no loops");
        out[k] = Some(x[j_min].clone());
    }
    Ok(out.into_iter().map(|o| o.expect("every coordinate set")).collect())
}

/// The compatible pair induced by `v` and a total order `order` on the basis
/// (listed from smallest to largest) respecting `v`.
pub fn induce_pair<T: Ord>(
    m: &Matroid,
    basis: &[usize],
    v: &[T],
    order: &[usize],
) -> Result<CompatiblePair, FanError> {
    if !is_in_local_trop(m, basis, v)? {
        return Err(FanError::NotInLocalTrop);
    }
    let fc = m.fundamental_circuits(basis)?;
    let mut sorted_order = order.to_vec();
    sorted_order.sort_unstable();
    if sorted_order != fc.basis {
        return Err(FanError::OrderIncompatible);
    }
    if order.windows(2).any(|w| v[w[0]] > v[w[1]]) {
        return Err(FanError::OrderIncompatible);
    }
    let rank = |b: usize| order.iter().position(|&x| x == b).expect("basis element");
    let pref: Vec<usize> = fc
        .parts
        .iter()
        .map(|part| *part.iter().min_by_key(|&&b| rank(b)).expect("no loops"))
        .collect();
    let induced: Vec<usize> = order.iter().copied().filter(|b| pref.contains(b)).collect();
    Ok(CompatiblePair {
        basis: fc.basis,
        nonbasis: fc.nonbasis,
        pref,
        order: induced,
    })
}
