//! The cyclic Bergman fan of a matroid without loops or coloops.
//!
//! Maximal cones are produced basis by basis, one per regressive compatible
//! pair. Distinct pairs give distinct cones, so cones are never compared or
//! deduplicated; only the ray table is shared.

mod compare;
mod pairs;
mod trop;

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use thiserror::Error;

use crate::matroid::{Matroid, MatroidError};
use crate::set::ElementSet;

pub use compare::{
    compare_with_bergman, cone_contains, cones_meet_in_common_face, expected_ray_supports,
    fan_rays_are_cyclic_flats, is_simplicial, max_weight_bases,
};
pub use pairs::{build_tree, cone_from_tree, CaterpillarTree, CompatiblePair};
pub use trop::{f_b, induce_pair, is_in_local_trop, is_in_trop, is_max_weight_basis, TropOracle};

use pairs::PairEnumerator;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanError {
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error("basis element {} lies in no fundamental circuit", .0 + 1)]
    Unattached(usize),
    #[error("maximal cones {first} and {second} have the same rays")]
    DuplicateCone { first: usize, second: usize },
    #[error("the vector is not in the cone of maximal-weight vectors of the basis")]
    NotMaxWeightBasis,
    #[error("the vector is not in the local tropical linear space")]
    NotInLocalTrop,
    #[error("the total order does not respect the vector")]
    OrderIncompatible,
    #[error("brute-force flat enumeration is limited to {limit} elements, got {n}")]
    TooLarge { n: usize, limit: usize },
}

#[derive(Clone, Debug)]
pub struct FanOptions {
    /// Worker threads for the per-basis phase; 0 runs everything on the
    /// calling thread. Output does not depend on this value.
    pub threads: usize,
    /// Keep the compatible pair behind every cone.
    pub keep_pairs: bool,
    /// Verify that no two cones share a ray set.
    pub check_duplicates: bool,
}

impl Default for FanOptions {
    fn default() -> Self {
        Self {
            threads: 0,
            keep_pairs: false,
            check_duplicates: true,
        }
    }
}

/// Cones produced over one basis. `rays` holds `rank - 1` generators per
/// cone, cone after cone.
#[derive(Clone, Debug)]
pub struct BasisCones {
    pub basis_index: usize,
    pub rays: Vec<ElementSet>,
    pub pairs: Vec<CompatiblePair>,
    pub cone_count: usize,
}

/// Regressive compatible pairs over `basis`, in enumeration order.
pub fn enumerate_pairs(m: &Matroid, basis: &[usize]) -> Result<Vec<CompatiblePair>, FanError> {
    let fc = m.fundamental_circuits(basis)?;
    let mut out = Vec::new();
    PairEnumerator::new(&fc, m.ground_size()).run(&mut |s| out.push(s.pair()));
    Ok(out)
}

fn cones_over_basis(
    m: &Matroid,
    basis_index: usize,
    keep_pairs: bool,
) -> Result<BasisCones, FanError> {
    let basis = &m.bases()[basis_index];
    let fc = m.fundamental_circuits(basis)?;
    let mut e = PairEnumerator::new(&fc, m.ground_size());
    if let Some(c) = e.unattached() {
        return Err(FanError::Unattached(c));
    }
    let mut rays = Vec::new();
    let mut pairs = Vec::new();
    let mut cone_count = 0;
    e.run(&mut |s| {
        s.push_rays(&mut rays);
        if keep_pairs {
            pairs.push(s.pair());
        }
        cone_count += 1;
    });
    Ok(BasisCones {
        basis_index,
        rays,
        pairs,
        cone_count,
    })
}

const CHUNK: usize = 512;

/// Runs the per-basis enumeration and hands results to `sink` in basis
/// order, whatever the thread count.
pub fn for_each_basis(
    m: &Matroid,
    options: &FanOptions,
    mut sink: impl FnMut(BasisCones) -> Result<(), FanError>,
) -> Result<(), FanError> {
    m.check_loopless_coloopless()?;
    let count = m.basis_count();
    if options.threads == 0 {
        for i in 0..count {
            sink(cones_over_basis(m, i, options.keep_pairs)?)?;
        }
        return Ok(());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.threads)
        .build()
        .expect("thread pool");
    let mut start = 0;
    while start < count {
        let end = (start + CHUNK * options.threads).min(count);
        let chunk: Vec<Result<BasisCones, FanError>> = pool.install(|| {
            (start..end)
                .into_par_iter()
                .map(|i| cones_over_basis(m, i, options.keep_pairs))
                .collect()
        });
        for r in chunk {
            sink(r?)?;
        }
        start = end;
    }
    Ok(())
}

/// A maximal cone: sorted indices into [`Fan::rays`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    pub rays: Vec<u32>,
    pub basis_index: u32,
    pub pair: Option<CompatiblePair>,
}

/// Rays are 0/1 vectors `e_F` sorted lexicographically; the lineality space
/// is always spanned by the all-ones vector and is not stored.
#[derive(Clone, Debug)]
pub struct Fan {
    n: usize,
    rank: usize,
    rays: Vec<ElementSet>,
    cones: Vec<Cone>,
}

impl Fan {
    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    /// Rank of the matroid; every maximal cone has `rank - 1` rays.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[ElementSet] {
        &self.rays
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn ray_count(&self) -> usize {
        self.rays.len()
    }

    pub fn cone_count(&self) -> usize {
        self.cones.len()
    }

    pub fn cone_rays(&self, cone: usize) -> impl Iterator<Item = &ElementSet> {
        self.cones[cone].rays.iter().map(|&r| &self.rays[r as usize])
    }

    /// Sum of the cone's generators, a point of its relative interior.
    pub fn interior_witness(&self, cone: usize) -> Vec<i64> {
        let mut v = vec![0i64; self.n];
        for ray in self.cone_rays(cone) {
            for i in ray.iter() {
                v[i] += 1;
            }
        }
        v
    }

    /// Sorted ray sets of all cones; a canonical form for comparing fans.
    pub fn canonical_cones(&self) -> Vec<Vec<ElementSet>> {
        let mut out: Vec<Vec<ElementSet>> = (0..self.cones.len())
            .map(|c| {
                let mut rs: Vec<ElementSet> = self.cone_rays(c).cloned().collect();
                rs.sort_by(ElementSet::cmp_indicator);
                rs
            })
            .collect();
        out.sort_by(|a, b| {
            a.iter()
                .zip(b)
                .map(|(x, y)| x.cmp_indicator(y))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        out
    }
}

/// Sorts the ray table lexicographically and rewrites the provisional
/// indices used by `cones`.
struct RayTable {
    index: HashMap<ElementSet, u32>,
    rays: Vec<ElementSet>,
}

impl RayTable {
    fn new() -> Self {
        Self {
            index: HashMap::new(),
            rays: Vec::new(),
        }
    }

    fn intern(&mut self, ray: &ElementSet) -> u32 {
        if let Some(&i) = self.index.get(ray) {
            return i;
        }
        let i = self.rays.len() as u32;
        self.index.insert(ray.clone(), i);
        self.rays.push(ray.clone());
        i
    }

    /// Returns the sorted rays and the map from provisional to final index.
    fn finish(self) -> (Vec<ElementSet>, Vec<u32>) {
        let mut tagged: Vec<(ElementSet, u32)> = self.rays.into_iter().zip(0..).collect();
        tagged.sort_by(|a, b| a.0.cmp_indicator(&b.0));
        let mut remap = vec![0u32; tagged.len()];
        for (new, (_, old)) in tagged.iter().enumerate() {
            remap[*old as usize] = new as u32;
        }
        (tagged.into_iter().map(|(r, _)| r).collect(), remap)
    }
}

/// Only the ray table and cone count; one pass, no cones kept.
pub fn fan_rays(m: &Matroid, options: &FanOptions) -> Result<(Vec<ElementSet>, usize), FanError> {
    let mut table = RayTable::new();
    let mut cones = 0;
    for_each_basis(m, options, |bc| {
        for r in &bc.rays {
            table.intern(r);
        }
        cones += bc.cone_count;
        Ok(())
    })?;
    let (rays, _) = table.finish();
    Ok((rays, cones))
}

pub fn cyclic_bergman_fan(m: &Matroid) -> Result<Fan, FanError> {
    cyclic_bergman_fan_with(m, &FanOptions::default())
}

pub fn cyclic_bergman_fan_with(m: &Matroid, options: &FanOptions) -> Result<Fan, FanError> {
    let width = m.rank() - 1;
    let mut table = RayTable::new();
    let mut cones: Vec<Cone> = Vec::new();
    for_each_basis(m, options, |bc| {
        let mut pairs = bc.pairs.into_iter();
        for c in 0..bc.cone_count {
            let rays = bc.rays[c * width..(c + 1) * width]
                .iter()
                .map(|r| table.intern(r))
                .collect();
            cones.push(Cone {
                rays,
                basis_index: bc.basis_index as u32,
                pair: pairs.next(),
            });
        }
        Ok(())
    })?;
    let (rays, remap) = table.finish();
    for cone in cones.iter_mut() {
        for r in cone.rays.iter_mut() {
            *r = remap[*r as usize];
        }
        cone.rays.sort_unstable();
    }
    if options.check_duplicates {
        let mut seen: HashMap<&[u32], usize> = HashMap::with_capacity(cones.len());
        for (i, c) in cones.iter().enumerate() {
            if let Some(&first) = seen.get(c.rays.as_slice()) {
                return Err(FanError::DuplicateCone { first, second: i });
            }
            seen.insert(&c.rays, i);
        }
    }
    Ok(Fan {
        n: m.ground_size(),
        rank: m.rank(),
        rays,
        cones,
    })
}

/// Checks that every ray of the table is used by at least one cone.
pub fn every_ray_used(fan: &Fan) -> bool {
    let used: HashSet<u32> = fan.cones.iter().flat_map(|c| c.rays.iter().copied()).collect();
    used.len() == fan.rays.len()
}
