use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::smith::{to_bigint_rows, SmithForm, SubquotientInvariants};
use super::{echelon, ExactMatrix, LinalgError};
use crate::ring::{Ring, Scalar};

/// A sublattice of `R^n` (a subspace when `R` is a field), stored as the
/// nonzero rows of its canonical echelon form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    ring: Ring,
    ambient: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn zero(ring: Ring, ambient: usize) -> Self {
        Lattice { ring, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ring: Ring, ambient: usize) -> Self {
        Self::from_generators(ring, ambient, ExactMatrix::identity(ring, ambient).columns())
    }

    pub fn from_generators(ring: Ring, ambient: usize, gens: Vec<Vec<Scalar>>) -> Self {
        for g in &gens {
            assert_eq!(g.len(), ambient, "generator outside ambient lattice");
        }
        let gens = gens.into_iter().map(|g| g.into_iter().map(|x| ring.reduce(x)).collect()).collect();
        let e = echelon(ring, gens, ambient);
        let rank = e.rank();
        let mut rows = e.rows;
        rows.truncate(rank);
        Lattice { ring, ambient, rows, pivots: e.pivots }
    }

    /// Lattice spanned by the columns of `m`.
    pub fn column_span(m: &ExactMatrix) -> Self {
        Self::from_generators(m.ring(), m.rows(), m.columns())
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Canonical basis vectors (HNF over `Z`, RREF over a field).
    pub fn basis_vectors(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    /// Basis as the columns of an `ambient × rank` matrix.
    pub fn basis(&self) -> ExactMatrix {
        ExactMatrix::from_columns(self.ring, self.ambient, &self.rows)
    }

    /// Coordinates of `v` in the canonical basis, or `None` when `v` is not
    /// a member.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient, "vector outside ambient lattice");
        let mut rest: Vec<Scalar> = v.iter().map(|x| self.ring.reduce(x.clone())).collect();
        let mut coords = Vec::with_capacity(self.rows.len());
        for (row, &col) in self.rows.iter().zip(&self.pivots) {
            let c = self.ring.checked_div(&rest[col], &row[col])?;
            if !c.is_zero() {
                for (x, y) in rest.iter_mut().zip(row) {
                    *x = self.ring.sub(x, &(&c * y));
                }
            }
            coords.push(c);
        }
        rest.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        let mut gens = self.rows.clone();
        gens.extend(other.rows.iter().cloned());
        Lattice::from_generators(self.ring, self.ambient, gens)
    }

    pub fn add_vectors(&self, vectors: impl IntoIterator<Item = Vec<Scalar>>) -> Lattice {
        let mut gens = self.rows.clone();
        gens.extend(vectors);
        Lattice::from_generators(self.ring, self.ambient, gens)
    }

    /// Image of this lattice under `m`.
    pub fn image_under(&self, m: &ExactMatrix) -> Lattice {
        assert_eq!(m.cols(), self.ambient, "map does not start at this lattice");
        Lattice::from_generators(self.ring, m.rows(), self.rows.iter().map(|v| m.apply(v)).collect())
    }

    /// Combination `Σ coords_i · basis_i`.
    pub fn combine(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.ambient];
        for (c, row) in coords.iter().zip(&self.rows) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in out.iter_mut().zip(row) {
                *x += c * y;
            }
        }
        out.into_iter().map(|x| self.ring.reduce(x)).collect()
    }
}

/// Basis of `{x : Mx = 0}`.
pub fn kernel(m: &ExactMatrix) -> Lattice {
    let ring = m.ring();
    let (rows, cols) = (m.rows(), m.cols());
    let aug: Vec<Vec<Scalar>> = (0..cols)
        .map(|j| {
            let mut r = m.column(j);
            r.extend((0..cols).map(|k| if k == j { ring.one() } else { ring.zero() }));
            r
        })
        .collect();
    let e = echelon(ring, aug, rows);
    let gens = e.rows.into_iter().skip(e.pivots.len()).map(|r| r[rows..].to_vec()).collect();
    Lattice::from_generators(ring, cols, gens)
}

/// Basis of `{x : Mx ∈ L}`.
pub fn lattice_preimage(m: &ExactMatrix, target: &Lattice) -> Result<Lattice, LinalgError> {
    if m.ring() != target.ring() {
        return Err(LinalgError::MixedRings(m.ring(), target.ring()));
    }
    if m.rows() != target.ambient_rank() {
        return Err(LinalgError::DimensionMismatch { expected: m.rows(), found: target.ambient_rank() });
    }
    let ring = m.ring();
    let (rows, cols) = (m.rows(), m.cols());
    let mut aug: Vec<Vec<Scalar>> = (0..cols)
        .map(|j| {
            let mut r = m.column(j);
            r.extend((0..cols).map(|k| if k == j { ring.one() } else { ring.zero() }));
            r
        })
        .collect();
    for l in target.basis_vectors() {
        let mut r: Vec<Scalar> = l.iter().map(|x| ring.neg(x)).collect();
        r.extend(std::iter::repeat_n(ring.zero(), cols));
        aug.push(r);
    }
    let e = echelon(ring, aug, rows);
    let gens = e.rows.into_iter().skip(e.pivots.len()).map(|r| r[rows..].to_vec()).collect();
    Ok(Lattice::from_generators(ring, cols, gens))
}

/// `C/B` with explicit generators: one ambient vector per cyclic summand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subquotient {
    pub invariants: SubquotientInvariants,
    /// `(order, representative)`; order `None` means a free summand.
    pub generators: Vec<(Option<BigInt>, Vec<Scalar>)>,
}

pub fn subquotient(cycles: &Lattice, boundaries: &Lattice) -> Result<SubquotientInvariants, LinalgError> {
    subquotient_with_generators(cycles, boundaries).map(|s| s.invariants)
}

pub fn subquotient_with_generators(cycles: &Lattice, boundaries: &Lattice) -> Result<Subquotient, LinalgError> {
    if cycles.ring() != boundaries.ring() {
        return Err(LinalgError::MixedRings(cycles.ring(), boundaries.ring()));
    }
    if cycles.ambient_rank() != boundaries.ambient_rank() {
        return Err(LinalgError::DimensionMismatch { expected: cycles.ambient_rank(), found: boundaries.ambient_rank() });
    }
    let ring = cycles.ring();
    let c = cycles.rank();
    // boundaries in cycle coordinates: a c × b matrix
    let mut columns = Vec::with_capacity(boundaries.rank());
    for v in boundaries.basis_vectors() {
        columns.push(cycles.coordinates(v).ok_or(LinalgError::NotContained)?);
    }
    let x = ExactMatrix::from_columns(ring, c, &columns);
    if ring.is_field() {
        // complete the row space of the boundary coordinates with unit vectors
        let span = Lattice::from_generators(ring, c, columns);
        let mut generators = Vec::new();
        let mut grown = span.clone();
        for i in 0..c {
            let e: Vec<Scalar> = (0..c).map(|k| if k == i { ring.one() } else { ring.zero() }).collect();
            if !grown.contains(&e) {
                grown = grown.add_vectors([e.clone()]);
                generators.push((None, cycles.combine(&e)));
            }
        }
        return Ok(Subquotient { invariants: SubquotientInvariants::free(c - span.rank()), generators });
    }
    let snf = SmithForm::compute(to_bigint_rows(&x), true);
    let uinv = snf.left_inverse.as_ref().expect("tracked");
    let mut generators = Vec::new();
    for i in 0..c {
        let order = snf.diagonal.get(i).cloned();
        if order.as_ref().is_some_and(One::is_one) {
            continue;
        }
        let coords: Vec<Scalar> = (0..c).map(|k| Scalar::from_integer(uinv[k][i].clone())).collect();
        generators.push((order, cycles.combine(&coords)));
    }
    Ok(Subquotient { invariants: snf.cokernel_invariants(), generators })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(ring: Ring, xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| ring.from_int(x)).collect()
    }

    fn lat(ring: Ring, ambient: usize, gens: &[&[i64]]) -> Lattice {
        Lattice::from_generators(ring, ambient, gens.iter().map(|g| v(ring, g)).collect())
    }

    #[test]
    fn kernel_examples() {
        let z = Ring::Integers;
        let k = kernel(&ExactMatrix::from_int_rows(z, &[&[1, -1]]));
        assert_eq!(k, lat(z, 2, &[&[1, 1]]));
        assert!(kernel(&ExactMatrix::identity(z, 3)).is_zero());
        let f2 = Ring::PrimeField(2);
        assert_eq!(kernel(&ExactMatrix::from_int_rows(f2, &[&[2, 4]])).rank(), 2);
    }

    #[test]
    fn prime_field_inputs_are_reduced() {
        let f5 = Ring::PrimeField(5);
        let raw = |v: &[i64]| v.iter().map(|&x| Scalar::from_integer(BigInt::from(x))).collect::<Vec<_>>();
        let l = Lattice::from_generators(f5, 2, vec![raw(&[-4, -8]), raw(&[10, 1])]);
        assert_eq!(l.rank(), 2);
        assert!(Lattice::from_generators(f5, 1, vec![raw(&[-5])]).is_zero());
        assert!(Lattice::zero(f5, 2).contains(&raw(&[5, -10])));
    }

    #[test]
    fn preimage_examples() {
        let z = Ring::Integers;
        let twice = lat(z, 2, &[&[2, 0], &[0, 2]]);
        assert_eq!(lattice_preimage(&ExactMatrix::identity(z, 2), &twice).unwrap(), twice);
        let zero_map = ExactMatrix::zeros(z, 2, 3);
        assert_eq!(lattice_preimage(&zero_map, &twice).unwrap(), Lattice::full(z, 3));
        let sum = ExactMatrix::from_int_rows(z, &[&[1, 1]]);
        let pre = lattice_preimage(&sum, &lat(z, 1, &[&[3]])).unwrap();
        // small-coordinate enumeration: x1 + x2 ≡ 0 mod 3
        let expected = lat(z, 2, &[&[1, -1], &[3, 0]]);
        assert_eq!(pre, expected);
        for a in -6i64..=6 {
            for b in -6i64..=6 {
                assert_eq!(pre.contains(&v(z, &[a, b])), (a + b) % 3 == 0);
            }
        }
        assert!(lattice_preimage(&sum, &twice).is_err());
    }

    #[test]
    fn subquotient_examples() {
        let z = Ring::Integers;
        let s = subquotient(&Lattice::full(z, 2), &Lattice::zero(z, 2)).unwrap();
        assert_eq!(s, SubquotientInvariants::free(2));
        let s = subquotient(&Lattice::full(z, 1), &lat(z, 1, &[&[3]])).unwrap();
        assert_eq!(s.torsion, vec![BigInt::from(3)]);
        let c = lat(z, 2, &[&[1, 1], &[0, 2]]);
        let b = lat(z, 2, &[&[2, 2]]);
        let s = subquotient(&c, &b).unwrap();
        assert_eq!(s, SubquotientInvariants { free_rank: 1, torsion: vec![BigInt::from(2)] });
        assert_eq!(subquotient(&b, &c), Err(LinalgError::NotContained));
    }

    #[test]
    fn subquotient_generators_span_quotient() {
        let z = Ring::Integers;
        let c = lat(z, 2, &[&[1, 1], &[0, 2]]);
        let b = lat(z, 2, &[&[2, 2]]);
        let sq = subquotient_with_generators(&c, &b).unwrap();
        assert_eq!(sq.generators.len(), 2);
        let regenerated = b.add_vectors(sq.generators.iter().map(|(_, g)| g.clone()));
        assert_eq!(regenerated, c);
        let (order, g) = sq.generators.iter().find(|(o, _)| o.is_some()).unwrap();
        assert_eq!(order, &Some(BigInt::from(2)));
        assert!(!b.contains(g));
        let doubled: Vec<Scalar> = g.iter().map(|x| x * z.from_int(2)).collect();
        assert!(b.contains(&doubled));
    }
}
