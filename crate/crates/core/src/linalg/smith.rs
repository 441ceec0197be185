use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{echelon, ExactMatrix, LinalgError};
use crate::ring::{Ring, Scalar};

/// Abelian group invariants: `Z^free_rank ⊕ Z/d_1 ⊕ … ⊕ Z/d_k`, `d_i | d_{i+1}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubquotientInvariants {
    pub free_rank: usize,
    #[serde(with = "crate::ring::bigint_strings")]
    pub torsion: Vec<BigInt>,
}

impl SubquotientInvariants {
    pub fn free(rank: usize) -> Self {
        SubquotientInvariants { free_rank: rank, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Direct sum; torsion lists are concatenated and brought back into
    /// invariant-factor form.
    pub fn direct_sum(&self, other: &SubquotientInvariants) -> SubquotientInvariants {
        let mut torsion = self.torsion.clone();
        torsion.extend(other.torsion.iter().cloned());
        SubquotientInvariants { free_rank: self.free_rank + other.free_rank, torsion: invariant_factors(torsion) }
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }
}

impl fmt::Display for SubquotientInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("{}", self.free_rank));
        }
        if !self.torsion.is_empty() {
            let t: Vec<String> = self.torsion.iter().map(ToString::to_string).collect();
            parts.push(format!("T({})", t.join(",")));
        }
        write!(f, "{}", parts.join("+"))
    }
}

impl std::str::FromStr for SubquotientInvariants {
    type Err = String;

    /// Inverse of `Display`: `0`, `2`, `T(3)`, `1+T(2,4)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("invalid group `{s}`; expected forms like 0, 2, T(3), 1+T(2,4)");
        let mut out = SubquotientInvariants::default();
        for part in s.split('+').map(str::trim) {
            if let Some(list) = part.strip_prefix("T(").and_then(|r| r.strip_suffix(')')) {
                for d in list.split(',') {
                    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                    if d <= BigInt::one() {
                        return Err(bad());
                    }
                    out.torsion.push(d);
                }
            } else {
                out.free_rank += part.parse::<usize>().map_err(|_| bad())?;
            }
        }
        out.torsion = invariant_factors(out.torsion);
        Ok(out)
    }
}

/// Normalizes a list of positive integers into a divisibility chain with the
/// same direct sum, dropping ones.
pub(crate) fn invariant_factors(mut d: Vec<BigInt>) -> Vec<BigInt> {
    for x in d.iter_mut() {
        *x = x.abs();
    }
    d.retain(|x| !x.is_one() && !x.is_zero());
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = &d[i] / &g * &d[j];
            d[i] = g;
            d[j] = l;
        }
    }
    d.retain(|x| !x.is_one());
    d
}

/// Canonical column Hermite normal form; zero columns are dropped.
pub fn hermite_normal_form(m: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
    if m.ring() != Ring::Integers {
        return Err(LinalgError::RingMismatch(m.ring()));
    }
    let e = echelon(m.ring(), m.columns(), m.rows());
    let basis: Vec<Vec<Scalar>> = e.rows.into_iter().take(e.pivots.len()).collect();
    Ok(ExactMatrix::from_columns(m.ring(), m.rows(), &basis))
}

/// Invariants of `coker(M)` for an integer matrix `M`.
pub fn smith_invariants(m: &ExactMatrix) -> Result<SubquotientInvariants, LinalgError> {
    if m.ring() != Ring::Integers {
        return Err(LinalgError::RingMismatch(m.ring()));
    }
    let snf = SmithForm::compute(to_bigint_rows(m), false);
    Ok(snf.cokernel_invariants())
}

pub(crate) fn to_bigint_rows(m: &ExactMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|i| m.row(i).into_iter().map(|x| x.to_integer()).collect()).collect()
}

/// Diagonalization `U·X·V = diag(d_1, …)` by unimodular operations, with
/// `U^{-1}` optionally tracked so that cokernel generators can be read off.
pub(crate) struct SmithForm {
    pub rows: usize,
    pub diagonal: Vec<BigInt>,
    /// Columns of `U^{-1}`; column `i` maps to the `i`-th cyclic summand.
    pub left_inverse: Option<Vec<Vec<BigInt>>>,
}

impl SmithForm {
    pub fn compute(mut x: Vec<Vec<BigInt>>, track: bool) -> SmithForm {
        let rows = x.len();
        let cols = x.first().map_or(0, Vec::len);
        let mut uinv: Option<Vec<Vec<BigInt>>> = track.then(|| {
            (0..rows).map(|i| (0..rows).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
        });
        let mut diagonal = Vec::new();
        let mut k = 0;
        while k < rows.min(cols) {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    if !x[i][j].is_zero() && best.is_none_or(|(bi, bj)| x[i][j].abs() < x[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            swap_rows(&mut x, uinv.as_mut(), k, pi);
            for row in x.iter_mut() {
                row.swap(k, pj);
            }
            loop {
                clear_column(&mut x, uinv.as_mut(), k);
                let dirty_row = clear_row(&mut x, k);
                if dirty_row {
                    continue;
                }
                let pivot = x[k][k].clone();
                let offender = (k + 1..rows).find(|&i| (k + 1..cols).any(|j| !x[i][j].is_multiple_of(&pivot)));
                match offender {
                    Some(i) => add_row(&mut x, uinv.as_mut(), k, i, &BigInt::one()),
                    None => break,
                }
            }
            if x[k][k].is_negative() {
                for v in x[k].iter_mut() {
                    *v = -v.clone();
                }
                if let Some(u) = uinv.as_mut() {
                    for row in u.iter_mut() {
                        row[k] = -row[k].clone();
                    }
                }
            }
            diagonal.push(x[k][k].clone());
            k += 1;
        }
        SmithForm { rows, diagonal, left_inverse: uinv }
    }

    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    pub fn cokernel_invariants(&self) -> SubquotientInvariants {
        SubquotientInvariants {
            free_rank: self.rows - self.rank(),
            torsion: self.diagonal.iter().filter(|d| !d.is_one()).cloned().collect(),
        }
    }
}

fn swap_rows(x: &mut [Vec<BigInt>], uinv: Option<&mut Vec<Vec<BigInt>>>, a: usize, b: usize) {
    if a == b {
        return;
    }
    x.swap(a, b);
    if let Some(u) = uinv {
        for row in u.iter_mut() {
            row.swap(a, b);
        }
    }
}

/// `row_target += factor · row_source`
fn add_row(x: &mut [Vec<BigInt>], uinv: Option<&mut Vec<Vec<BigInt>>>, target: usize, source: usize, factor: &BigInt) {
    let src = x[source].clone();
    for (t, s) in x[target].iter_mut().zip(&src) {
        *t += factor * s;
    }
    if let Some(u) = uinv {
        for row in u.iter_mut() {
            let t = row[target].clone();
            row[source] -= factor * t;
        }
    }
}

fn clear_column(x: &mut [Vec<BigInt>], mut uinv: Option<&mut Vec<Vec<BigInt>>>, k: usize) {
    for i in k + 1..x.len() {
        if x[i][k].is_zero() {
            continue;
        }
        let a = x[k][k].clone();
        let b = x[i][k].clone();
        let (s, t, a_g, b_g) = bezout(&a, &b);
        let (rk, ri) = (x[k].clone(), x[i].clone());
        for j in 0..rk.len() {
            x[k][j] = &s * &rk[j] + &t * &ri[j];
            x[i][j] = &a_g * &ri[j] - &b_g * &rk[j];
        }
        if let Some(u) = uinv.as_deref_mut() {
            for row in u.iter_mut() {
                let (ck, ci) = (row[k].clone(), row[i].clone());
                row[k] = &a_g * &ck + &b_g * &ci;
                row[i] = &s * &ci - &t * &ck;
            }
        }
    }
}

/// `(s, t, a/g, b/g)` with `s·a + t·b = g = gcd(a, b)`. When `a | b` this
/// is plain elimination, so a pivot only changes when it strictly shrinks.
fn bezout(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt, BigInt) {
    if b.is_multiple_of(a) {
        return (BigInt::one(), BigInt::zero(), BigInt::one(), b / a);
    }
    let e = a.extended_gcd(b);
    (e.x, e.y, a / &e.gcd, b / &e.gcd)
}

/// Clears row `k` right of the pivot with column operations; reports
/// whether column `k` picked up new entries below the pivot.
fn clear_row(x: &mut [Vec<BigInt>], k: usize) -> bool {
    let cols = x[k].len();
    let mut dirty = false;
    for j in k + 1..cols {
        if x[k][j].is_zero() {
            continue;
        }
        let a = x[k][k].clone();
        let b = x[k][j].clone();
        let (s, t, a_g, b_g) = bezout(&a, &b);
        for row in x.iter_mut() {
            let (ck, cj) = (row[k].clone(), row[j].clone());
            row[k] = &s * &ck + &t * &cj;
            row[j] = &a_g * &cj - &b_g * &ck;
        }
    }
    for row in x.iter().skip(k + 1) {
        if !row[k].is_zero() {
            dirty = true;
        }
    }
    dirty
}
