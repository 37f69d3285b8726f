//! The linear matroid `M(A)` of an integer matrix, or its dual `M(A)*`
//! accessed through `A` without ever building a Gale dual.
//!
//! Elements are `0..n` in the API; anything printed is 1-based.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::arith::{self, det, full_row_rank_form, reduce_on_basis_scaled, IntMat};
use crate::set::{k_subsets, ElementSet};

/// Formats 0-based elements as a 1-based list.
pub(crate) fn one_based(elements: &[usize]) -> String {
    let items: Vec<String> = elements.iter().map(|e| (e + 1).to_string()).collect();
    format!("{{{}}}", items.join(","))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatroidError {
    #[error("the matrix has rank 0")]
    RankDeficient,
    #[error("the matroid has loops {}", one_based(.0))]
    HasLoops(Vec<usize>),
    #[error("the matroid has coloops {}", one_based(.0))]
    HasColoops(Vec<usize>),
    #[error("expected a set of size {expected}, found {found}")]
    WrongSize { expected: usize, found: usize },
    #[error("{} is not a basis", one_based(.0))]
    NotABasis(Vec<usize>),
    #[error("element {} lies in the basis", .0 + 1)]
    ElementInBasis(usize),
    #[error("element {} is outside the ground set", .0 + 1)]
    ElementOutOfRange(usize),
}

/// Linear matroid handle.
///
/// `repr` always has full row rank. In dual mode the handle represents
/// `M(repr)*` of rank `n - repr.rows()`; every query is answered through
/// `repr` using `rank*(S) = |S| + rank(E - S) - rank(E)` and the fundamental
/// circuit identity `j in C*(k, B) <=> k in C(j, E - B)`.
#[derive(Debug)]
pub struct Matroid {
    repr: IntMat,
    dual: bool,
    bases: OnceLock<Vec<Vec<usize>>>,
}

impl Clone for Matroid {
    fn clone(&self) -> Self {
        let bases = OnceLock::new();
        if let Some(b) = self.bases.get() {
            let _ = bases.set(b.clone());
        }
        Self {
            repr: self.repr.clone(),
            dual: self.dual,
            bases,
        }
    }
}

/// Fundamental circuits over one basis, with the circuit element removed:
/// `parts[t]` is `C(nonbasis[t], B) - {nonbasis[t]}`, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalCircuits {
    pub basis: Vec<usize>,
    pub nonbasis: Vec<usize>,
    pub parts: Vec<Vec<usize>>,
}

impl FundamentalCircuits {
    pub fn circuit(&self, e: usize, n: usize) -> Option<ElementSet> {
        let t = self.nonbasis.iter().position(|&k| k == e)?;
        let mut s = ElementSet::from_elements(n, self.parts[t].iter().copied());
        s.insert(e);
        Some(s)
    }
}

impl Matroid {
    fn build(a: &IntMat, dual: bool) -> Result<Self, MatroidError> {
        let r = arith::rank(a);
        if r == 0 {
            return Err(MatroidError::RankDeficient);
        }
        let repr = if r == a.rows() {
            a.clone()
        } else {
            full_row_rank_form(a)
        };
        Ok(Self {
            repr,
            dual,
            bases: OnceLock::new(),
        })
    }

    /// `M(A)`, refusing matroids with loops or coloops. Redundant rows of `a`
    /// are eliminated first.
    pub fn from_matrix(a: &IntMat) -> Result<Self, MatroidError> {
        let m = Self::build(a, false)?;
        m.check_loopless_coloopless()?;
        Ok(m)
    }

    /// `M(A)*`, refusing matroids with loops or coloops.
    pub fn dual_from_matrix(a: &IntMat) -> Result<Self, MatroidError> {
        let m = Self::build(a, true)?;
        m.check_loopless_coloopless()?;
        Ok(m)
    }

    /// `M(A)` without the loop/coloop check; for matroid reports.
    pub fn from_matrix_lenient(a: &IntMat) -> Result<Self, MatroidError> {
        Self::build(a, false)
    }

    /// The dual matroid, sharing the representation.
    pub fn dual(&self) -> Matroid {
        Matroid {
            repr: self.repr.clone(),
            dual: !self.dual,
            bases: OnceLock::new(),
        }
    }

    pub fn representation(&self) -> &IntMat {
        &self.repr
    }

    pub fn is_dual(&self) -> bool {
        self.dual
    }

    pub fn ground_size(&self) -> usize {
        self.repr.cols()
    }

    /// Rank of the represented matroid (`n - rank(A)` in dual mode).
    pub fn rank(&self) -> usize {
        if self.dual {
            self.ground_size() - self.repr.rows()
        } else {
            self.repr.rows()
        }
    }

    fn primal_rank_of(&self, s: &ElementSet) -> usize {
        let cols = s.to_vec();
        if cols.is_empty() {
            return 0;
        }
        arith::rank(&self.repr.select_columns(&cols))
    }

    pub fn rank_of(&self, s: &ElementSet) -> usize {
        if self.dual {
            let n = self.ground_size();
            s.len() + self.primal_rank_of(&s.complement(n)) - self.repr.rows()
        } else {
            self.primal_rank_of(s)
        }
    }

    /// Rank function of the dual of this handle.
    pub fn dual_rank_of(&self, s: &ElementSet) -> usize {
        let n = self.ground_size();
        s.len() + self.rank_of(&s.complement(n)) - self.rank()
    }

    fn primal_loops(&self) -> Vec<usize> {
        (0..self.ground_size())
            .filter(|&c| (0..self.repr.rows()).all(|r| self.repr[(r, c)].is_zero()))
            .collect()
    }

    fn primal_coloops(&self) -> Vec<usize> {
        let n = self.ground_size();
        let m = self.repr.rows();
        (0..n)
            .filter(|&e| {
                let rest: Vec<usize> = (0..n).filter(|&c| c != e).collect();
                rest.is_empty() || arith::rank(&self.repr.select_columns(&rest)) < m
            })
            .collect()
    }

    pub fn loops(&self) -> Vec<usize> {
        if self.dual {
            self.primal_coloops()
        } else {
            self.primal_loops()
        }
    }

    pub fn coloops(&self) -> Vec<usize> {
        if self.dual {
            self.primal_loops()
        } else {
            self.primal_coloops()
        }
    }

    pub fn check_loopless_coloopless(&self) -> Result<(), MatroidError> {
        let loops = self.loops();
        if !loops.is_empty() {
            return Err(MatroidError::HasLoops(loops));
        }
        let coloops = self.coloops();
        if !coloops.is_empty() {
            return Err(MatroidError::HasColoops(coloops));
        }
        Ok(())
    }

    fn primal_is_basis(&self, cols: &[usize]) -> bool {
        !det(&self.repr.select_columns(cols)).is_zero()
    }

    fn complement(&self, s: &[usize]) -> Vec<usize> {
        let n = self.ground_size();
        let mut inside = vec![false; n];
        for &e in s {
            inside[e] = true;
        }
        (0..n).filter(|&e| !inside[e]).collect()
    }

    fn check_elements(&self, s: &[usize]) -> Result<(), MatroidError> {
        match s.iter().find(|&&e| e >= self.ground_size()) {
            Some(&e) => Err(MatroidError::ElementOutOfRange(e)),
            None => Ok(()),
        }
    }

    pub fn is_basis(&self, s: &[usize]) -> Result<bool, MatroidError> {
        self.check_elements(s)?;
        if s.len() != self.rank() {
            return Err(MatroidError::WrongSize {
                expected: self.rank(),
                found: s.len(),
            });
        }
        let mut sorted = s.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != s.len() {
            return Ok(false);
        }
        Ok(if self.dual {
            self.primal_is_basis(&self.complement(&sorted))
        } else {
            self.primal_is_basis(&sorted)
        })
    }

    pub fn is_independent(&self, s: &ElementSet) -> bool {
        self.rank_of(s) == s.len()
    }

    /// All bases in lexicographic order of sorted subsets; computed once by an
    /// exhaustive scan and cached on the handle.
    pub fn bases(&self) -> &[Vec<usize>] {
        self.bases.get_or_init(|| {
            let n = self.ground_size();
            let m = self.repr.rows();
            let primal = k_subsets(n, m).filter(|s| self.primal_is_basis(s));
            if self.dual {
                let mut out: Vec<Vec<usize>> = primal.map(|b| self.complement(&b)).collect();
                out.sort_unstable();
                out
            } else {
                primal.collect()
            }
        })
    }

    pub fn enumerate_bases(&self) -> impl Iterator<Item = &[usize]> + '_ {
        self.bases().iter().map(Vec::as_slice)
    }

    pub fn basis_count(&self) -> usize {
        self.bases().len()
    }

    /// Fundamental circuits over `basis`, read off the support pattern of
    /// `A` row reduced so that the relevant basis columns are the identity.
    pub fn fundamental_circuits(&self, basis: &[usize]) -> Result<FundamentalCircuits, MatroidError> {
        self.check_elements(basis)?;
        if basis.len() != self.rank() {
            return Err(MatroidError::WrongSize {
                expected: self.rank(),
                found: basis.len(),
            });
        }
        let mut basis = basis.to_vec();
        basis.sort_unstable();
        let nonbasis = self.complement(&basis);
        let not_a_basis = || MatroidError::NotABasis(basis.clone());
        if self.dual {
            // basis of M(A)* is the complement of a basis `nonbasis` of M(A)
            let reduced = reduce_on_basis_scaled(&self.repr, &nonbasis).map_err(|_| not_a_basis())?;
            let parts = (0..nonbasis.len())
                .map(|row| {
                    basis
                        .iter()
                        .copied()
                        .filter(|&j| !reduced[(row, j)].is_zero())
                        .collect()
                })
                .collect();
            Ok(FundamentalCircuits {
                basis,
                nonbasis,
                parts,
            })
        } else {
            let reduced = reduce_on_basis_scaled(&self.repr, &basis).map_err(|_| not_a_basis())?;
            let parts = nonbasis
                .iter()
                .map(|&k| {
                    basis
                        .iter()
                        .enumerate()
                        .filter(|&(row, _)| !reduced[(row, k)].is_zero())
                        .map(|(_, &b)| b)
                        .collect()
                })
                .collect();
            Ok(FundamentalCircuits {
                basis,
                nonbasis,
                parts,
            })
        }
    }

    /// The unique circuit inside `basis + e`.
    pub fn fundamental_circuit(&self, e: usize, basis: &[usize]) -> Result<ElementSet, MatroidError> {
        self.check_elements(&[e])?;
        if basis.contains(&e) {
            return Err(MatroidError::ElementInBasis(e));
        }
        let fc = self.fundamental_circuits(basis)?;
        Ok(fc.circuit(e, self.ground_size()).expect("e is outside the basis"))
    }

    /// Every circuit once, each sorted, in lexicographic order.
    pub fn circuits(&self) -> Vec<Vec<usize>> {
        let mut found = BTreeSet::new();
        for b in self.bases() {
            let fc = self.fundamental_circuits(b).expect("cached bases are bases");
            for (k, part) in fc.nonbasis.iter().zip(&fc.parts) {
                let mut c = part.clone();
                c.push(*k);
                c.sort_unstable();
                found.insert(c);
            }
        }
        let n = self.ground_size();
        let sets: Vec<(Vec<usize>, ElementSet)> = found
            .into_iter()
            .map(|c| {
                let s = ElementSet::from_elements(n, c.iter().copied());
                (c, s)
            })
            .collect();
        sets.iter()
            .filter(|(_, s)| !sets.iter().any(|(_, t)| t != s && t.is_subset(s)))
            .map(|(c, _)| c.clone())
            .collect()
    }

    pub fn closure(&self, s: &ElementSet) -> ElementSet {
        let r = self.rank_of(s);
        let mut out = s.clone();
        for i in 0..self.ground_size() {
            if !s.contains(i) {
                let mut t = s.clone();
                t.insert(i);
                if self.rank_of(&t) == r {
                    out.insert(i);
                }
            }
        }
        out
    }

    pub fn is_flat(&self, f: &ElementSet) -> bool {
        self.closure(f) == *f
    }

    /// `F` is a flat and `E - F` is a flat of the dual matroid.
    pub fn is_cyclic_flat(&self, f: &ElementSet) -> bool {
        if !self.is_flat(f) {
            return false;
        }
        let n = self.ground_size();
        let co = f.complement(n);
        let r = self.dual_rank_of(&co);
        (0..n).filter(|&i| !co.contains(i)).all(|i| {
            let mut t = co.clone();
            t.insert(i);
            self.dual_rank_of(&t) > r
        })
    }

    /// Tutte polynomial by internal and external activities with respect to
    /// the natural order of the ground set.
    pub fn tutte_polynomial(&self) -> TuttePoly {
        let order: Vec<usize> = (0..self.ground_size()).collect();
        self.tutte_polynomial_with_order(&order)
    }

    /// Same, with activities taken relative to `order` (a permutation listing
    /// the elements from smallest to largest).
    pub fn tutte_polynomial_with_order(&self, order: &[usize]) -> TuttePoly {
        let n = self.ground_size();
        let mut pos = vec![0; n];
        for (i, &e) in order.iter().enumerate() {
            pos[e] = i;
        }
        let mut coeffs: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        for b in self.bases() {
            let fc = self.fundamental_circuits(b).expect("cached bases are bases");
            let external = fc
                .nonbasis
                .iter()
                .zip(&fc.parts)
                .filter(|(&k, part)| part.iter().all(|&x| pos[x] > pos[k]))
                .count();
            let internal = fc
                .basis
                .iter()
                .filter(|&&b| {
                    fc.nonbasis
                        .iter()
                        .zip(&fc.parts)
                        .filter(|(_, part)| part.contains(&b))
                        .all(|(&k, _)| pos[k] > pos[b])
                })
                .count();
            *coeffs.entry((internal, external)).or_default() += 1;
        }
        TuttePoly { coeffs }
    }
}

/// `T(x, y) = sum of coeff * x^i y^j`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TuttePoly {
    pub coeffs: BTreeMap<(usize, usize), u64>,
}

impl TuttePoly {
    pub fn eval(&self, x: i64, y: i64) -> BigInt {
        self.coeffs
            .iter()
            .map(|(&(i, j), &c)| {
                let mut term = BigInt::from(c);
                for _ in 0..i {
                    term *= x;
                }
                for _ in 0..j {
                    term *= y;
                }
                term
            })
            .fold(BigInt::zero(), |a, b| a + b)
    }

    pub fn coefficient(&self, i: usize, j: usize) -> u64 {
        self.coeffs.get(&(i, j)).copied().unwrap_or(0)
    }
}

impl fmt::Display for TuttePoly {
    /// One `x^i y^j : coeff` line per monomial, sorted by `(i, j)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (&(i, j), c) in &self.coeffs {
            writeln!(f, "x^{i} y^{j} : {c}")?;
        }
        Ok(())
    }
}
