//! Fraction-free elimination: rank, determinants, targeted row reduction and
//! integer kernels. Pivots are always chosen as the first nonzero entry in
//! column order so reduced forms are reproducible.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::{IntMat, RatMat};
use super::ArithError;
use crate::set::k_subsets;

/// Divides a row by the gcd of its entries.
fn make_primitive(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in row.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in row.iter_mut() {
        *x /= &g;
    }
}

/// `target <- pivot * target - factor * source`, then made primitive.
fn eliminate(target: &mut [BigInt], source: &[BigInt], pivot: &BigInt, factor: &BigInt) {
    for (t, s) in target.iter_mut().zip(source) {
        let scaled = &*t * pivot;
        *t = scaled - factor * s;
    }
    make_primitive(target);
}

/// Row echelon form with primitive integer rows. Only nonzero rows are kept;
/// `pivots[j]` is the pivot column of row `j`.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

pub fn row_echelon(a: &IntMat) -> Echelon {
    let mut rows = a.to_rows();
    let mut pivots = Vec::new();
    let mut lead = 0;
    for c in 0..a.cols() {
        if lead == rows.len() {
            break;
        }
        let Some(p) = (lead..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(lead, p);
        let (head, tail) = rows.split_at_mut(lead + 1);
        let src = &head[lead];
        for row in tail.iter_mut() {
            if !row[c].is_zero() {
                let f = row[c].clone();
                eliminate(row, src, &src[c], &f);
            }
        }
        pivots.push(c);
        lead += 1;
    }
    rows.truncate(lead);
    for r in rows.iter_mut() {
        make_primitive(r);
    }
    Echelon {
        rows,
        pivots,
        cols: a.cols(),
    }
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Clears every pivot column above its pivot, giving a scaled RREF.
    fn back_substitute(&mut self) {
        for j in (0..self.rows.len()).rev() {
            let c = self.pivots[j];
            let (head, tail) = self.rows.split_at_mut(j);
            let src = &tail[0];
            for row in head.iter_mut() {
                if !row[c].is_zero() {
                    let f = row[c].clone();
                    eliminate(row, src, &src[c], &f);
                }
            }
        }
        for row in self.rows.iter_mut() {
            let lead = row.iter().find(|x| !x.is_zero()).cloned();
            if lead.is_some_and(|l| l.is_negative()) {
                for x in row.iter_mut() {
                    *x = -&*x;
                }
            }
        }
    }

    pub fn into_matrix(self) -> IntMat {
        let cols = self.cols;
        IntMat::from_big_rows(self.rows, cols)
    }
}

/// Rank over the rationals.
pub fn rank(a: &IntMat) -> usize {
    if a.rows() == 0 || a.cols() == 0 {
        return 0;
    }
    row_echelon(a).rank()
}

/// A matrix with linearly independent rows and the same rowspace as `a`.
pub fn full_row_rank_form(a: &IntMat) -> IntMat {
    row_echelon(a).into_matrix()
}

/// Canonical reduced row echelon form over the rationals (zero rows dropped).
pub fn rref(a: &IntMat) -> RatMat {
    let mut e = row_echelon(a);
    e.back_substitute();
    let cols = a.cols();
    let mut data = Vec::with_capacity(e.rows.len() * cols);
    for (row, &p) in e.rows.iter().zip(&e.pivots) {
        let lead = row[p].clone();
        data.extend(row.iter().map(|x| BigRational::new(x.clone(), lead.clone())));
    }
    RatMat::new(e.rows.len(), cols, data)
}

pub fn same_rowspace(a: &IntMat, b: &IntMat) -> bool {
    a.cols() == b.cols() && rref(a) == rref(b)
}

fn det_small(a: &IntMat) -> Option<i128> {
    let n = a.rows();
    let mut m: Vec<Vec<i128>> = (0..n)
        .map(|r| a.row(r).iter().map(|x| x.to_i64().map(i128::from)).collect())
        .collect::<Option<Vec<_>>>()?;
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            let p = (k + 1..n).find(|&r| m[r][k] != 0);
            match p {
                Some(p) => {
                    m.swap(k, p);
                    sign = -sign;
                }
                None => return Some(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j]
                    .checked_mul(m[k][k])?
                    .checked_sub(m[i][k].checked_mul(m[k][j])?)?;
                m[i][j] = v / prev;
            }
        }
        prev = m[k][k];
    }
    Some(sign * m[n - 1][n - 1])
}

fn det_big(a: &IntMat) -> BigInt {
    let n = a.rows();
    let mut m = a.to_rows();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(p) => {
                    m.swap(k, p);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Exact determinant by Bareiss elimination. An `i128` pass is tried first and
/// abandoned on overflow.
pub fn det(a: &IntMat) -> BigInt {
    assert_eq!(a.rows(), a.cols(), "determinant of a non-square matrix");
    if a.rows() == 0 {
        return BigInt::one();
    }
    match det_small(a) {
        Some(d) => BigInt::from(d),
        None => det_big(a),
    }
}

/// Row reduces `a` so that the columns in `basis` become a nonzero diagonal
/// block: row `j` has its only B-entry in column `basis[j]` (sorted order),
/// and that entry is positive. Rows are kept primitive, so the result is
/// `D * B^{-1} * a` for a positive diagonal `D`.
pub fn reduce_on_basis_scaled(a: &IntMat, basis: &[usize]) -> Result<IntMat, ArithError> {
    if basis.len() != a.rows() {
        return Err(ArithError::DimensionMismatch {
            expected: a.rows(),
            found: basis.len(),
        });
    }
    let mut sorted = basis.to_vec();
    sorted.sort_unstable();
    let mut rows = a.to_rows();
    for (j, &c) in sorted.iter().enumerate() {
        let p = (j..rows.len())
            .find(|&r| !rows[r][c].is_zero())
            .ok_or(ArithError::SingularBasis)?;
        rows.swap(j, p);
        if rows[j][c].is_negative() {
            for x in rows[j].iter_mut() {
                *x = -&*x;
            }
        }
        let src = rows[j].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != j && !row[c].is_zero() {
                let f = row[c].clone();
                eliminate(row, &src, &src[c], &f);
            }
        }
    }
    for (j, &c) in sorted.iter().enumerate() {
        if rows[j][c].is_negative() {
            for x in rows[j].iter_mut() {
                *x = -&*x;
            }
        }
    }
    Ok(IntMat::from_big_rows(rows, a.cols()))
}

/// Row reduces `a` so that its `basis` columns form the identity, in sorted
/// basis order.
pub fn reduce_on_basis(a: &IntMat, basis: &[usize]) -> Result<RatMat, ArithError> {
    let scaled = reduce_on_basis_scaled(a, basis)?;
    let mut sorted = basis.to_vec();
    sorted.sort_unstable();
    let mut data = Vec::with_capacity(scaled.rows() * scaled.cols());
    for (j, &c) in sorted.iter().enumerate() {
        let d = scaled[(j, c)].clone();
        data.extend(
            scaled
                .row(j)
                .iter()
                .map(|x| BigRational::new(x.clone(), d.clone())),
        );
    }
    Ok(RatMat::new(scaled.rows(), scaled.cols(), data))
}

/// An integer matrix whose rows form a basis of the rational kernel of `a`
/// (`a * K^t = 0`). Each row is primitive; there is one row per free column
/// and that column's entry is positive.
pub fn integer_kernel_basis(a: &IntMat) -> IntMat {
    let n = a.cols();
    let mut e = row_echelon(a);
    e.back_substitute();
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; n];
        for &p in &e.pivots {
            v[p] = true;
        }
        v
    };
    let mut out = Vec::new();
    for f in (0..n).filter(|&c| !is_pivot[c]) {
        let mut l = BigInt::one();
        for (row, &p) in e.rows.iter().zip(&e.pivots) {
            if !row[f].is_zero() {
                l = l.lcm(&row[p]);
            }
        }
        let mut x = vec![BigInt::zero(); n];
        x[f] = l.clone();
        for (row, &p) in e.rows.iter().zip(&e.pivots) {
            if !row[f].is_zero() {
                x[p] = -(&row[f] * &l) / &row[p];
            }
        }
        make_primitive(&mut x);
        out.push(x);
    }
    IntMat::from_big_rows(out, n)
}

/// Solves `cols * x = target` for a matrix of full column rank. Returns `None`
/// if the system is inconsistent or the columns are dependent.
pub fn solve_unique(cols: &IntMat, target: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = cols.rows();
    let k = cols.cols();
    assert_eq!(target.len(), n);
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|r| {
            let mut row: Vec<BigRational> = cols
                .row(r)
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let mut lead = 0;
    for c in 0..k {
        let p = (lead..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(lead, p);
        let inv = m[lead][c].recip();
        for x in m[lead].iter_mut() {
            *x *= &inv;
        }
        let src = m[lead].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != lead && !row[c].is_zero() {
                let f = row[c].clone();
                for (t, s) in row.iter_mut().zip(&src) {
                    *t -= &f * s;
                }
            }
        }
        lead += 1;
    }
    if m[lead..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    Some(m[..k].iter().map(|row| row[k].clone()).collect())
}

/// gcd of all maximal minors of a full-row-rank matrix; 1 exactly when the
/// columns span the integer lattice.
pub fn gcd_of_maximal_minors(a: &IntMat) -> BigInt {
    let mut g = BigInt::zero();
    for cols in k_subsets(a.cols(), a.rows()) {
        let d = det(&a.select_columns(&cols));
        if !d.is_zero() {
            g = g.gcd(&d);
            if g.is_one() {
                break;
            }
        }
    }
    g
}
