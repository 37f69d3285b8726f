//! Vertices of the Newton polytope of an A-discriminant by ray shooting.
//!
//! The tropical discriminant is `Trop(M(A⊥)) + rowspace(A)`. Its maximal
//! pieces are `σ + rowspace(A)` for the maximal cones `σ` of the cyclic
//! Bergman fan of `M(A⊥)` whose span meets `rowspace(A)` in a hyperplane.
//! Shooting from `w` along each `e_i` and adding up `|det(Aᵗ, σ, e_i)|` over
//! the pieces hit gives the vertex `u` minimizing `u·w`.
//!
//! Non-generic objectives are handled by the lexicographic perturbation
//! `w + ε r + ε² e_1 + … + ε^{n+1} e_n` with `r` seeded. The `e_q` levels make
//! every sign test decisive.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{self, IntMat};
use crate::fan::{cyclic_bergman_fan_with, Fan, FanError, FanOptions};
use crate::matroid::Matroid;

/// Objective coordinates drawn by [`DiscriminantProblem::random_vertices`]
/// lie in `[-RANDOM_RANGE, RANDOM_RANGE]`.
pub const RANDOM_RANGE: i64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiscriminantError {
    #[error("the matrix has rank {rank} but {rows} rows")]
    RankError { rank: usize, rows: usize },
    #[error("(1,...,1) is not in the rowspace of the matrix")]
    NoAllOnesRow,
    #[error("n - m = {0}: the Gale dual has at most one row")]
    DegenerateDual(usize),
    #[error("the columns span a sublattice of index {0}, the vertex formula does not apply")]
    LatticeNotSpanned(BigInt),
    #[error("expected a vector of length {expected}, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("vertices have different A-degrees")]
    InconsistentDegree,
    #[error(transparent)]
    Fan(#[from] FanError),
}

/// Sign data of one codimension-1 cone, in some integer type.
#[derive(Clone, Debug)]
struct Forms<T> {
    normal: Vec<T>,
    /// Rows of the inverse of `[Aᵗ | rays]` with coordinate `dropped`
    /// removed, one per ray, up to positive factors. Stored at full length
    /// with a zero at `dropped`.
    inverse: Vec<Vec<T>>,
}

/// A maximal cone `σ` with `dim(span σ + rowspace A) = n - 1`.
#[derive(Clone, Debug)]
pub struct HyperplaneCone {
    cone: usize,
    /// Primitive normal of the hyperplane `span σ + rowspace A`.
    normal: Vec<BigInt>,
    /// `|det(Aᵗ, σ, e_i)| = scale * |normal_i|`.
    scale: BigInt,
    big: Forms<BigInt>,
    small: Option<Forms<i128>>,
}

impl HyperplaneCone {
    pub fn cone(&self) -> usize {
        self.cone
    }

    pub fn normal(&self) -> &[BigInt] {
        &self.normal
    }

    /// The determinant term contributed to `u_i` when the ray along `e_i`
    /// crosses this cone.
    pub fn det_term(&self, i: usize) -> BigInt {
        &self.scale * self.normal[i].abs()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonVertex {
    pub u: Vec<BigInt>,
    /// The objective before perturbation.
    pub w: Vec<BigInt>,
    pub perturbation: Vec<BigInt>,
    pub a_degree: Vec<BigInt>,
    /// Index of an earlier vertex with the same `u` in the same batch.
    pub duplicate_of: Option<usize>,
}

/// An unperturbed sign test came out zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tie {
    pub cone: usize,
    pub direction: usize,
}

pub struct DiscriminantProblem {
    a: IntMat,
    gale: IntMat,
    fan: Fan,
    codim1: Vec<HyperplaneCone>,
    lattice_index: BigInt,
    threads: usize,
}

impl std::fmt::Debug for DiscriminantProblem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DiscriminantProblem")
            .field("m", &self.a.rows())
            .field("n", &self.a.cols())
            .field("cones", &self.fan.cone_count())
            .field("codim1", &self.codim1.len())
            .finish()
    }
}

fn to_small(v: &[BigInt]) -> Option<Vec<i128>> {
    const LIMIT: i128 = 1 << 40;
    v.iter()
        .map(|x| x.to_i128().filter(|y| y.abs() < LIMIT))
        .collect()
}

fn analyse_cone(a: &IntMat, fan: &Fan, cone: usize) -> Option<HyperplaneCone> {
    let n = a.cols();
    let mut rows = a.to_rows();
    for ray in fan.cone_rays(cone) {
        rows.push(
            (0..n)
                .map(|i| BigInt::from(ray.contains(i) as i64))
                .collect(),
        );
    }
    let gens = IntMat::from_big_rows(rows, n);
    let kernel = arith::integer_kernel_basis(&gens);
    if kernel.rows() != 1 {
        return None;
    }
    let normal = kernel.row(0).to_vec();
    let dropped = normal.iter().position(|x| !x.is_zero())?;
    let kept: Vec<usize> = (0..n).filter(|&i| i != dropped).collect();
    // square block of [Aᵗ | rays] without row `dropped`, then [G | I]
    let g = gens.select_columns(&kept).transpose();
    let k = n - 1;
    let mut aug = Vec::with_capacity(k);
    for r in 0..k {
        let mut row = g.row(r).to_vec();
        row.extend((0..k).map(|c| BigInt::from((c == r) as i64)));
        aug.push(row);
    }
    let aug = IntMat::from_big_rows(aug, 2 * k);
    let det = arith::det(&g).abs();
    let (scale, rem) = det.div_rem(&normal[dropped].abs());
    debug_assert!(rem.is_zero());
    let reduced = arith::reduce_on_basis_scaled(&aug, &(0..k).collect::<Vec<_>>()).ok()?;
    let m = a.rows();
    let inverse: Vec<Vec<BigInt>> = (m..k)
        .map(|j| {
            let mut full = vec![BigInt::zero(); n];
            for (pos, &i) in kept.iter().enumerate() {
                full[i] = reduced[(j, k + pos)].clone();
            }
            full
        })
        .collect();
    let small = to_small(&normal).and_then(|normal| {
        let inverse = inverse
            .iter()
            .map(|r| to_small(r))
            .collect::<Option<Vec<_>>>()?;
        Some(Forms { normal, inverse })
    });
    Some(HyperplaneCone {
        cone,
        normal: normal.clone(),
        scale,
        big: Forms { normal, inverse },
        small,
    })
}

fn dot<T>(a: &[T], b: &[T]) -> Option<T>
where
    T: Zero + CheckedMul + CheckedAdd,
{
    let mut s = T::zero();
    for (x, y) in a.iter().zip(b) {
        s = s.checked_add(&x.checked_mul(y)?)?;
    }
    Some(s)
}

fn sign<T: Signed>(x: &T) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// `a * b - c * d`
fn cross<T: CheckedMul + CheckedSub>(a: &T, b: &T, c: &T, d: &T) -> Option<T> {
    a.checked_mul(b)?.checked_sub(&c.checked_mul(d)?)
}

enum Outcome {
    Hits(Vec<usize>),
    Tie(usize),
    Overflow,
}

/// Directions `i` whose ray from the perturbed point crosses the cone. With
/// `r = None` only the unperturbed level is used and zero signs are ties.
fn shoot_forms<T>(f: &Forms<T>, w: &[T], r: Option<&[T]>) -> Outcome
where
    T: Clone + Signed + CheckedMul + CheckedAdd + CheckedSub,
{
    let n = w.len();
    let Some(pw) = dot(&f.normal, w) else {
        return Outcome::Overflow;
    };
    let pr = match r {
        Some(r) => match dot(&f.normal, r) {
            Some(x) => Some(x),
            None => return Outcome::Overflow,
        },
        None => None,
    };
    let t_sign = match (sign(&pw), &pr) {
        (0, None) => {
            // on the hyperplane; only directions that can cross matter
            return match f.normal.iter().position(|x| !x.is_zero()) {
                Some(i) => Outcome::Tie(i),
                None => Outcome::Hits(Vec::new()),
            };
        }
        (0, Some(pr)) => match sign(pr) {
            0 => sign(f.normal.iter().find(|x| !x.is_zero()).expect("nonzero normal")),
            s => s,
        },
        (s, _) => s,
    };
    let mut lw = Vec::with_capacity(f.inverse.len());
    let mut lr = Vec::with_capacity(f.inverse.len());
    for row in &f.inverse {
        let Some(x) = dot(row, w) else {
            return Outcome::Overflow;
        };
        lw.push(x);
        if let Some(r) = r {
            let Some(y) = dot(row, r) else {
                return Outcome::Overflow;
            };
            lr.push(y);
        }
    }
    let mut hits = Vec::new();
    'dirs: for i in 0..n {
        let pi = &f.normal[i];
        if sign(pi) != -t_sign {
            continue;
        }
        let mut tie = false;
        for (j, row) in f.inverse.iter().enumerate() {
            let Some(mut v) = cross(pi, &lw[j], &pw, &row[i]) else {
                return Outcome::Overflow;
            };
            if v.is_zero() {
                match &pr {
                    None => {
                        tie = true;
                        continue;
                    }
                    Some(pr) => {
                        let Some(v1) = cross(pi, &lr[j], pr, &row[i]) else {
                            return Outcome::Overflow;
                        };
                        v = v1;
                        let mut q = 0;
                        while v.is_zero() && q < n {
                            let Some(vq) = cross(pi, &row[q], &f.normal[q], &row[i]) else {
                                return Outcome::Overflow;
                            };
                            v = vq;
                            q += 1;
                        }
                    }
                }
            }
            if sign(pi) * sign(&v) < 0 {
                continue 'dirs;
            }
        }
        if tie {
            return Outcome::Tie(i);
        }
        hits.push(i);
    }
    Outcome::Hits(hits)
}

fn draw_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<BigInt> {
    (0..n)
        .map(|_| BigInt::from(rng.gen_range(-RANDOM_RANGE..=RANDOM_RANGE)))
        .collect()
}

/// A random integer vector derived from `seed`, used as the first
/// perturbation level.
pub fn perturbation_vector(n: usize, seed: u64) -> Vec<BigInt> {
    draw_vector(&mut ChaCha8Rng::seed_from_u64(seed), n)
}

impl DiscriminantProblem {
    pub fn setup(a: &IntMat) -> Result<Self, DiscriminantError> {
        Self::setup_with(a, 0)
    }

    /// `threads = 0` keeps everything on the calling thread.
    pub fn setup_with(a: &IntMat, threads: usize) -> Result<Self, DiscriminantError> {
        let (m, n) = (a.rows(), a.cols());
        let rank = arith::rank(a);
        if rank != m || m == 0 {
            return Err(DiscriminantError::RankError { rank, rows: m });
        }
        let with_ones = a.stack(&IntMat::from_big_rows(vec![vec![BigInt::one(); n]], n));
        if arith::rank(&with_ones) != m {
            return Err(DiscriminantError::NoAllOnesRow);
        }
        if n - m <= 1 {
            return Err(DiscriminantError::DegenerateDual(n - m));
        }
        let lattice_index = arith::gcd_of_maximal_minors(a);
        let gale = arith::integer_kernel_basis(a);
        let matroid = Matroid::dual_from_matrix(a).map_err(FanError::from)?;
        let options = FanOptions {
            threads,
            keep_pairs: false,
            check_duplicates: true,
        };
        let fan = cyclic_bergman_fan_with(&matroid, &options)?;
        let codim1: Vec<HyperplaneCone> = if threads == 0 {
            (0..fan.cone_count())
                .filter_map(|c| analyse_cone(a, &fan, c))
                .collect()
        } else {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .expect("thread pool");
            pool.install(|| {
                (0..fan.cone_count())
                    .into_par_iter()
                    .filter_map(|c| analyse_cone(a, &fan, c))
                    .collect()
            })
        };
        Ok(Self {
            a: a.clone(),
            gale,
            fan,
            codim1,
            lattice_index,
            threads,
        })
    }

    pub fn matrix(&self) -> &IntMat {
        &self.a
    }

    /// Integer Gale dual: its rows span the orthogonal complement of the
    /// rowspace of `A`.
    pub fn gale_dual(&self) -> &IntMat {
        &self.gale
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn codim1_cones(&self) -> &[HyperplaneCone] {
        &self.codim1
    }

    /// Index of the lattice spanned by the columns of `A` in `Z^m`.
    pub fn lattice_index(&self) -> &BigInt {
        &self.lattice_index
    }

    pub fn lattice_spanned(&self) -> bool {
        self.lattice_index.is_one()
    }

    fn check_len(&self, v: &[BigInt]) -> Result<(), DiscriminantError> {
        if v.len() != self.a.cols() {
            return Err(DiscriminantError::WrongLength {
                expected: self.a.cols(),
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Whether the ray `w + t e_i`, `t > 0`, meets `σ + rowspace(A)` for the
    /// `pos`-th codimension-1 cone, with `w` perturbed by `perturbation`.
    pub fn ray_hits_cone(
        &self,
        pos: usize,
        w: &[BigRational],
        i: usize,
        perturbation: &[BigInt],
    ) -> bool {
        let denom = w.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let w: Vec<BigInt> = w
            .iter()
            .map(|x| x.numer() * (&denom / x.denom()))
            .collect();
        match shoot_forms(&self.codim1[pos].big, &w, Some(perturbation)) {
            Outcome::Hits(h) => h.contains(&i),
            _ => unreachable!("big integer forms never overflow or tie"),
        }
    }

    fn hits(&self, c: &HyperplaneCone, w: &[BigInt], r: Option<&[BigInt]>) -> Result<Vec<usize>, Tie> {
        if let (Some(small), Some(sw)) = (&c.small, to_small(w)) {
            let outcome = match r {
                None => Some(shoot_forms(small, &sw, None)),
                Some(r) => to_small(r).map(|sr| shoot_forms(small, &sw, Some(&sr))),
            };
            match outcome {
                Some(Outcome::Hits(h)) => return Ok(h),
                Some(Outcome::Tie(i)) => {
                    return Err(Tie {
                        cone: c.cone,
                        direction: i,
                    })
                }
                _ => {}
            }
        }
        match shoot_forms(&c.big, w, r) {
            Outcome::Hits(h) => Ok(h),
            Outcome::Tie(i) => Err(Tie {
                cone: c.cone,
                direction: i,
            }),
            Outcome::Overflow => unreachable!("big integers do not overflow"),
        }
    }

    fn accumulate(&self, w: &[BigInt], r: Option<&[BigInt]>) -> Result<Vec<BigInt>, Tie> {
        let n = self.a.cols();
        let per_cone = |c: &HyperplaneCone| -> Result<Vec<(usize, BigInt)>, Tie> {
            Ok(self
                .hits(c, w, r)?
                .into_iter()
                .map(|i| (i, c.det_term(i)))
                .collect())
        };
        let terms: Vec<Result<Vec<(usize, BigInt)>, Tie>> = if self.threads == 0 {
            self.codim1.iter().map(per_cone).collect()
        } else {
            self.codim1.par_iter().map(per_cone).collect()
        };
        let mut u = vec![BigInt::zero(); n];
        for t in terms {
            for (i, d) in t? {
                u[i] += d;
            }
        }
        Ok(u)
    }

    fn vertex(&self, u: Vec<BigInt>, w: &[BigInt], r: Vec<BigInt>) -> NewtonVertex {
        let a_degree = self.a.mul_vec(&u);
        NewtonVertex {
            u,
            w: w.to_vec(),
            perturbation: r,
            a_degree,
            duplicate_of: None,
        }
    }

    /// The vertex minimizing `u·w` after perturbing `w` by `perturbation`.
    pub fn shoot_vertex(
        &self,
        w: &[BigInt],
        perturbation: &[BigInt],
    ) -> Result<NewtonVertex, DiscriminantError> {
        self.check_len(w)?;
        self.check_len(perturbation)?;
        if !self.lattice_spanned() {
            return Err(DiscriminantError::LatticeNotSpanned(self.lattice_index.clone()));
        }
        let u = self
            .accumulate(w, Some(perturbation))
            .expect("perturbed shooting has no ties");
        Ok(self.vertex(u, w, perturbation.to_vec()))
    }

    /// Ray shooting without perturbation. Returns the first tie encountered
    /// if `w` is not generic enough.
    pub fn shoot_vertex_exact(&self, w: &[BigInt]) -> Result<Result<NewtonVertex, Tie>, DiscriminantError> {
        self.check_len(w)?;
        if !self.lattice_spanned() {
            return Err(DiscriminantError::LatticeNotSpanned(self.lattice_index.clone()));
        }
        Ok(self
            .accumulate(w, None)
            .map(|u| self.vertex(u, w, vec![BigInt::zero(); w.len()])))
    }

    /// `count` vertices for objectives drawn from a generator seeded by
    /// `seed`. Repeated vertices are kept and point at their first
    /// occurrence.
    pub fn random_vertices(&self, count: usize, seed: u64) -> Result<Vec<NewtonVertex>, DiscriminantError> {
        let n = self.a.cols();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut seen: HashMap<Vec<BigInt>, usize> = HashMap::new();
        let mut out: Vec<NewtonVertex> = Vec::with_capacity(count);
        for k in 0..count {
            let w = draw_vector(&mut rng, n);
            let r = draw_vector(&mut rng, n);
            let mut v = self.shoot_vertex(&w, &r)?;
            if let Some(first) = out.first() {
                if first.a_degree != v.a_degree {
                    return Err(DiscriminantError::InconsistentDegree);
                }
            }
            match seen.get(&v.u) {
                Some(&j) => v.duplicate_of = Some(j),
                None => {
                    seen.insert(v.u.clone(), k);
                }
            }
            out.push(v);
        }
        Ok(out)
    }
}
