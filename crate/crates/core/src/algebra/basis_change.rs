use super::{AlgebraError, AlgebraMap, Element, Generator, Presentation};
use crate::linalg::echelon;
use crate::ring::Scalar;

/// Rewrites `e` in terms of new generators given as elements of `p`, e.g.
/// `v = c1 - c2`, `w = c1`.
///
/// The new generators form a free graded-commutative presentation (odd
/// degrees exterior, even degrees polynomial). In every degree where `e`
/// has a component the images of the new monomials must generate the old
/// degree-`d` module, otherwise [`AlgebraError::NotABasis`] is returned.
/// Among the many preimages the one read off the echelon form of the image
/// vectors (new monomials in basis order) is chosen.
pub fn change_basis_express(
    p: &Presentation,
    e: &Element,
    new_gens: &[(String, Element)],
) -> Result<(Presentation, Element), AlgebraError> {
    let ring = p.ring();
    let mut gens = Vec::with_capacity(new_gens.len());
    for (name, img) in new_gens {
        let degree = img.homogeneous_degree(p).ok_or(AlgebraError::NotHomogeneous)?;
        gens.push(if degree % 2 == 1 { Generator::exterior(name, degree) } else { Generator::polynomial(name, degree) });
    }
    let fresh = Presentation::new(ring, gens, "change of generators")?;
    let substitution = AlgebraMap::new(&fresh, p, new_gens.iter().map(|(_, x)| x.clone()).collect())?;

    let mut out = Element::zero(&fresh);
    for (degree, component) in e.components(p) {
        let old_basis = p.basis_in_degree(degree);
        let new_basis = fresh.basis_in_degree(degree);
        let dim = old_basis.len();
        let index = |m: &super::Monomial| old_basis.iter().position(|b| b == m);
        let mut rows = Vec::with_capacity(new_basis.len());
        for (k, m) in new_basis.iter().enumerate() {
            let image = substitution.apply_monomial(m)?;
            let mut row = image.coordinates(index, dim).expect("image stays in degree");
            row.extend((0..new_basis.len()).map(|j| if j == k { ring.one() } else { ring.zero() }));
            rows.push(row);
        }
        let ech = echelon(ring, rows, dim);
        let spans = ech.rank() == dim && (0..dim).all(|k| ech.rows[k][ech.pivots[k]] == ring.one());
        if !spans {
            return Err(AlgebraError::NotABasis { degree });
        }
        // echelon rows restricted to the old coordinates are the identity
        let target = component.coordinates(index, dim).expect("component in degree");
        let mut coeffs = vec![Scalar::from_integer(0.into()); new_basis.len()];
        for (k, t) in target.iter().enumerate() {
            for (j, c) in coeffs.iter_mut().enumerate() {
                *c = ring.add(c, &(t * &ech.rows[k][dim + j]));
            }
        }
        for (m, c) in new_basis.into_iter().zip(coeffs) {
            out.add_term(ring, m, c);
        }
    }
    Ok((fresh, out))
}
