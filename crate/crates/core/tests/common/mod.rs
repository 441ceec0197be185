//! Independent oracles for the integration tests. Nothing here calls the
//! crate's linear algebra: ranks and Smith diagonals are recomputed from
//! scratch with textbook elimination.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use loopss::ring::{Ring, Scalar};
use loopss::sseq::{Bidegree, E2Layout, PageDifferentials};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn int_rows(rows: &[&[i64]]) -> IntMatrix {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn as_int(x: &Scalar) -> BigInt {
    assert!(x.is_integer(), "non-integral entry {x}");
    x.to_integer()
}

/// Rank over Q, or over F_p when `p` is given.
pub fn rank(m: &IntMatrix, p: Option<u64>) -> usize {
    match p {
        Some(p) => rank_mod_p(m, p),
        None => rank_rational(m),
    }
}

fn rank_rational(m: &IntMatrix) -> usize {
    let mut a: Vec<Vec<BigRational>> =
        m.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, piv);
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[r][c];
                for j in 0..cols {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

fn rank_mod_p(m: &IntMatrix, p: u64) -> usize {
    let p = p as i64;
    let mut a: Vec<Vec<i64>> =
        m.iter().map(|r| r.iter().map(|x| x.mod_floor(&BigInt::from(p)).to_i64().unwrap()).collect()).collect();
    let cols = a.first().map_or(0, |r| r.len());
    let inv = |x: i64| (1..p).find(|y| x * y % p == 1).unwrap();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, piv);
        let k = inv(a[r][c]);
        for j in 0..cols {
            a[r][j] = a[r][j] * k % p;
        }
        for i in 0..a.len() {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..cols {
                    a[i][j] = (a[i][j] - f * a[r][j]).rem_euclid(p);
                }
            }
        }
        r += 1;
    }
    r
}

/// Nonzero Smith diagonal, by repeatedly moving the smallest entry to the
/// pivot and reducing its row and column.
pub fn smith_diagonal(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            a.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let s = &q * &a[t][j];
                    a[i][j] -= s;
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = a[t][j].div_floor(&a[t][t]);
                for i in t..rows {
                    let s = &q * &a[i][t];
                    a[i][j] -= s;
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_multiple_of(&a[t][t]));
            match bad {
                Some((i, _)) => {
                    for j in t..cols {
                        let s = a[i][j].clone();
                        a[t][j] += s;
                    }
                }
                None => break,
            }
        }
        if t < rows && t < cols && !a[t][t].is_zero() {
            diag.push(a[t][t].abs());
        } else {
            break;
        }
    }
    diag
}

/// Invariant factors as ratios of gcds of k×k minors. Exponential; only for
/// tiny matrices, as a check on `smith_diagonal`.
pub fn determinantal_invariants(m: &IntMatrix) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut prev = BigInt::one();
    let mut out = Vec::new();
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: IntMatrix = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j].clone()).collect()).collect();
                g = g.gcd(&det(&minor));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn det(m: &IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        let minor: IntMatrix = m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = &m[0][j] * det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// `(free rank, torsion)` of `ker(out) / im(in)` for a cell of dimension
/// `dim`. `d_in` is `dim × a`, `d_out` is `b × dim`.
pub fn cell_homology(dim: usize, d_in: &IntMatrix, d_out: &IntMatrix, ring: Ring) -> (usize, Vec<BigInt>) {
    let p = match ring {
        Ring::PrimeField(p) => Some(p),
        _ => None,
    };
    let rank_in = if d_in.is_empty() || d_in[0].is_empty() { 0 } else { rank(d_in, p) };
    let rank_out = if d_out.is_empty() { 0 } else { rank(d_out, p) };
    let free = dim - rank_out - rank_in;
    let torsion = if ring == Ring::Integers && rank_in > 0 {
        smith_diagonal(d_in).into_iter().filter(|x| !x.is_one()).collect()
    } else {
        vec![]
    };
    (free, torsion)
}

/// The page-r differential as one block matrix on the whole window, with
/// each cell's coordinates at a fixed offset.
pub struct WindowComplex {
    pub offsets: BTreeMap<Bidegree, (usize, usize)>,
    pub matrix: IntMatrix,
}

impl WindowComplex {
    pub fn new(layout: &E2Layout, d: &PageDifferentials) -> Self {
        let mut offsets = BTreeMap::new();
        let mut n = 0;
        for (&cell, basis) in layout.cells() {
            offsets.insert(cell, (n, basis.len()));
            n += basis.len();
        }
        let mut matrix = vec![vec![BigInt::zero(); n]; n];
        for map in d.maps.values() {
            let (Some(&(so, _)), Some(&(to, _))) = (offsets.get(&map.source), offsets.get(&map.target)) else { continue };
            for i in 0..map.lift.rows() {
                for j in 0..map.lift.cols() {
                    matrix[to + i][so + j] = as_int(map.lift.get(i, j));
                }
            }
        }
        WindowComplex { offsets, matrix }
    }

    pub fn squares_to_zero(&self, ring: Ring) -> bool {
        let n = self.matrix.len();
        let vanishes = |x: BigInt| match ring {
            Ring::PrimeField(p) => x.is_multiple_of(&BigInt::from(p)),
            _ => x.is_zero(),
        };
        (0..n).all(|i| (0..n).all(|k| vanishes((0..n).map(|j| &self.matrix[i][j] * &self.matrix[j][k]).sum())))
    }

    fn block(&self, rows: Bidegree, cols: Bidegree) -> IntMatrix {
        let (Some(&(ro, rn)), Some(&(co, cn))) = (self.offsets.get(&rows), self.offsets.get(&cols)) else { return vec![] };
        (ro..ro + rn).map(|i| self.matrix[i][co..co + cn].to_vec()).collect()
    }

    /// Homology at `cell`, reading incoming and outgoing blocks off the
    /// whole-window matrix.
    pub fn homology(&self, cell: Bidegree, r: u32, ring: Ring) -> (usize, Vec<BigInt>) {
        let dim = self.offsets[&cell].1;
        let d_in = cell.shifted_in(r).map(|s| self.block(cell, s)).unwrap_or_default();
        let d_out = cell.shifted_out(r).map(|t| self.block(t, cell)).unwrap_or_default();
        let d_in = if d_in.is_empty() { vec![vec![]; dim] } else { d_in };
        cell_homology(dim, &d_in, &d_out, ring)
    }
}

pub mod props;
