use num_traits::Zero;

use crate::ring::{Ring, Scalar};

/// Row echelon form computed by unimodular row operations.
///
/// Rows `0..rank` carry the pivots (`pivots[k]` is the pivot column of row
/// `k`); the remaining rows are zero on the pivot columns. Over `Z` the
/// pivots are positive and entries above each pivot are reduced into
/// `[0, pivot)`, which is the Hermite normal form; over a field pivots are
/// one and the result is the reduced row echelon form.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub rows: Vec<Vec<Scalar>>,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Echelonizes `rows` using only the first `pivot_cols` columns as pivot
/// candidates. Trailing columns are carried along, which is how transforms
/// and kernels are tracked.
pub fn echelon(ring: Ring, mut rows: Vec<Vec<Scalar>>, pivot_cols: usize) -> Echelon {
    let mut pivots = Vec::new();
    let mut k = 0;
    for col in 0..pivot_cols {
        if k == rows.len() {
            break;
        }
        let Some(first) = (k..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(k, first);
        for i in k + 1..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            let a = rows[k][col].clone();
            let b = rows[i][col].clone();
            let (g, s, t) = ring.xgcd(&a, &b);
            let a_g = ring.exact_div(&a, &g);
            let b_g = ring.exact_div(&b, &g);
            let (top, bottom) = combine(ring, &rows[k], &rows[i], [&s, &t], [&-b_g, &a_g]);
            rows[k] = top;
            rows[i] = bottom;
        }
        let unit = ring.normalizer(&rows[k][col]);
        if unit != ring.one() {
            for x in rows[k].iter_mut() {
                *x = ring.mul(x, &unit);
            }
        }
        for i in 0..k {
            if rows[i][col].is_zero() {
                continue;
            }
            let q = ring.reduction_quotient(&rows[i][col], &rows[k][col]);
            if q.is_zero() {
                continue;
            }
            let pivot_row = rows[k].clone();
            for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                *x = ring.sub(x, &(&q * y));
            }
        }
        pivots.push(col);
        k += 1;
    }
    Echelon { rows, pivots }
}

fn combine(
    ring: Ring,
    r1: &[Scalar],
    r2: &[Scalar],
    c1: [&Scalar; 2],
    c2: [&Scalar; 2],
) -> (Vec<Scalar>, Vec<Scalar>) {
    let mut top = Vec::with_capacity(r1.len());
    let mut bottom = Vec::with_capacity(r1.len());
    for (x, y) in r1.iter().zip(r2) {
        top.push(ring.reduce(c1[0] * x + c1[1] * y));
        bottom.push(ring.reduce(c2[0] * x + c2[1] * y));
    }
    (top, bottom)
}
