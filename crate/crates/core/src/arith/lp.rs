//! Exact phase-one simplex for linear feasibility problems
//! `A x = b` with a chosen subset of the variables constrained to `x >= 0`.
//! Bland's rule guarantees termination.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Returns a feasible point of `{ x : A x = b, x_j >= 0 for nonneg[j] }`
/// or `None` if the system is infeasible.
pub fn find_feasible(
    a: &[Vec<BigRational>],
    b: &[BigRational],
    nonneg: &[bool],
) -> Option<Vec<BigRational>> {
    let m = a.len();
    assert_eq!(b.len(), m);
    let nvar = nonneg.len();
    // free variables are split as x = x+ - x-
    let mut col_of = Vec::with_capacity(nvar);
    let mut ncols = 0;
    for &nn in nonneg {
        if nn {
            col_of.push((ncols, None));
            ncols += 1;
        } else {
            col_of.push((ncols, Some(ncols + 1)));
            ncols += 2;
        }
    }
    let width = ncols + m + 1;
    let rhs = width - 1;
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m + 1);
    for (r, row) in a.iter().enumerate() {
        assert_eq!(row.len(), nvar);
        let mut tr = vec![BigRational::zero(); width];
        for (j, x) in row.iter().enumerate() {
            let (pos, neg) = col_of[j];
            tr[pos] = x.clone();
            if let Some(neg) = neg {
                tr[neg] = -x;
            }
        }
        tr[ncols + r] = BigRational::from_integer(1.into());
        tr[rhs] = b[r].clone();
        if b[r].is_negative() {
            for (j, x) in tr.iter_mut().enumerate() {
                if j != ncols + r {
                    *x = -&*x;
                }
            }
        }
        t.push(tr);
    }
    let mut obj = vec![BigRational::zero(); width];
    for row in &t {
        for j in (0..ncols).chain(std::iter::once(rhs)) {
            obj[j] -= &row[j];
        }
    }
    t.push(obj);
    let mut basis: Vec<usize> = (ncols..ncols + m).collect();

    while let Some(enter) = (0..rhs).find(|&j| t[m][j].is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for r in 0..m {
            if t[r][enter].is_positive() {
                let ratio = &t[r][rhs] / &t[r][enter];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let (lr, _) = leave.expect("phase one objective is bounded below");
        pivot(&mut t, lr, enter);
        basis[lr] = enter;
    }

    if !t[m][rhs].is_zero() {
        return None;
    }
    let mut values = vec![BigRational::zero(); ncols + m];
    for (r, &bv) in basis.iter().enumerate() {
        values[bv] = t[r][rhs].clone();
    }
    Some(
        col_of
            .iter()
            .map(|&(pos, neg)| match neg {
                Some(neg) => &values[pos] - &values[neg],
                None => values[pos].clone(),
            })
            .collect(),
    )
}

fn pivot(t: &mut [Vec<BigRational>], row: usize, col: usize) {
    let inv = t[row][col].recip();
    for x in t[row].iter_mut() {
        *x *= &inv;
    }
    let src = t[row].clone();
    for (i, r) in t.iter_mut().enumerate() {
        if i != row && !r[col].is_zero() {
            let f = r[col].clone();
            for (x, s) in r.iter_mut().zip(&src) {
                if !s.is_zero() {
                    *x -= &f * s;
                }
            }
        }
    }
}

/// Whether `point` lies in `cone(generators) + span(free)`.
pub fn in_cone(
    generators: &[Vec<BigRational>],
    free: &[Vec<BigRational>],
    point: &[BigRational],
) -> bool {
    let n = point.len();
    let nonneg: Vec<bool> = generators
        .iter()
        .map(|_| true)
        .chain(free.iter().map(|_| false))
        .collect();
    let a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| generators.iter().chain(free).map(|g| g[i].clone()).collect())
        .collect();
    find_feasible(&a, point, &nonneg).is_some()
}
