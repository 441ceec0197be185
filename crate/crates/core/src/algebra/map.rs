use super::{AlgebraError, Element, GeneratorKind, Monomial, Presentation};

/// Degree-preserving algebra map given by generator images.
///
/// Divided-power generators must land in linear combinations of `γ_1` of
/// divided-power generators, so that `γ_k` of the image is defined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraMap {
    source: Presentation,
    target: Presentation,
    images: Vec<Element>,
}

impl AlgebraMap {
    pub fn new(source: &Presentation, target: &Presentation, images: Vec<Element>) -> Result<Self, AlgebraError> {
        if images.len() != source.len() {
            return Err(AlgebraError::MapArity { expected: source.len(), found: images.len() });
        }
        for (g, img) in source.generators().iter().zip(&images) {
            if img.arity() != target.len() {
                return Err(AlgebraError::PresentationMismatch);
            }
            if !img.is_zero() {
                match img.homogeneous_degree(target) {
                    Some(d) if d == g.degree => {}
                    Some(d) => return Err(AlgebraError::MapDegree { name: g.name.clone(), expected: g.degree, found: d }),
                    None => return Err(AlgebraError::NotHomogeneous),
                }
            }
            if g.kind == GeneratorKind::DividedPower && !is_divided_linear(target, img) {
                return Err(AlgebraError::DividedPowerImage(g.name.clone()));
            }
        }
        let map = AlgebraMap { source: source.clone(), target: target.clone(), images };
        for (i, g) in source.generators().iter().enumerate() {
            let img = &map.images[i];
            let relation = match g.kind {
                GeneratorKind::Exterior => Some((2, format!("{}^2 = 0", g.name))),
                GeneratorKind::Truncated { height } => Some((height, format!("{}^{height} = 0", g.name))),
                _ => None,
            };
            if let Some((h, text)) = relation {
                if !target.power(img, h)?.is_zero() {
                    return Err(AlgebraError::MapRelation { name: g.name.clone(), relation: text });
                }
            }
        }
        Ok(map)
    }

    pub fn identity(p: &Presentation) -> Self {
        let images = (0..p.len()).map(|i| p.generator(i)).collect();
        AlgebraMap { source: p.clone(), target: p.clone(), images }
    }

    pub fn source(&self) -> &Presentation {
        &self.source
    }

    pub fn target(&self) -> &Presentation {
        &self.target
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn apply_monomial(&self, m: &Monomial) -> Result<Element, AlgebraError> {
        let mut acc = self.target.unit();
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let factor = match self.source.generators()[i].kind {
                GeneratorKind::DividedPower => divided_power(&self.target, &self.images[i], e)?,
                _ => self.target.power(&self.images[i], e)?,
            };
            acc = self.target.multiply(&acc, &factor)?;
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }

    pub fn apply(&self, x: &Element) -> Result<Element, AlgebraError> {
        if x.arity() != self.source.len() {
            return Err(AlgebraError::PresentationMismatch);
        }
        let mut out = Element::zero(&self.target);
        for (m, c) in x.terms() {
            let img = self.apply_monomial(m)?.scale(c, &self.target);
            out = out.add(&img, &self.target)?;
        }
        Ok(out)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &AlgebraMap) -> Result<AlgebraMap, AlgebraError> {
        let images = self.images.iter().map(|img| other.apply(img)).collect::<Result<Vec<_>, _>>()?;
        AlgebraMap::new(&self.source, &other.target, images)
    }
}

fn is_divided_linear(p: &Presentation, x: &Element) -> bool {
    x.terms().all(|(m, _)| {
        let nonzero: Vec<usize> = m.exponents().iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i).collect();
        nonzero.len() == 1
            && m.exponents()[nonzero[0]] == 1
            && p.generators()[nonzero[0]].kind == GeneratorKind::DividedPower
    })
}

/// `γ_k(Σ c_j γ_1(g_j)) = Σ_{i_1+…+i_m=k} Π c_j^{i_j} γ_{i_j}(g_j)`.
fn divided_power(p: &Presentation, x: &Element, k: u32) -> Result<Element, AlgebraError> {
    let terms: Vec<(usize, _)> = x
        .terms()
        .map(|(m, c)| (m.exponents().iter().position(|&e| e > 0).expect("linear term"), c.clone()))
        .collect();
    // by_total[t] = γ_t of the terms processed so far
    let mut by_total: Vec<Element> = (0..=k).map(|t| if t == 0 { p.unit() } else { Element::zero(p) }).collect();
    for (index, c) in terms {
        let mut next: Vec<Element> = (0..=k).map(|_| Element::zero(p)).collect();
        for (t, slot) in next.iter_mut().enumerate() {
            for i in 0..=t {
                let prev = &by_total[t - i];
                if prev.is_zero() {
                    continue;
                }
                let mut coeff = p.ring().one();
                for _ in 0..i {
                    coeff = p.ring().mul(&coeff, &c);
                }
                let piece = p.generator_power(index, i as u32).scale(&coeff, p);
                *slot = slot.add(&p.multiply(prev, &piece)?, p)?;
            }
        }
        by_total = next;
    }
    Ok(by_total.pop().expect("k+1 entries"))
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::algebra::{parse_element, Generator};
    use crate::ring::Ring;

    fn el(p: &Presentation, s: &str) -> Element {
        parse_element(p, s, &BTreeMap::new()).unwrap()
    }

    #[test]
    fn diagonal_on_truncated_pair() {
        let z = Ring::Integers;
        let src = Presentation::new(z, vec![Generator::truncated("c1", 2, 3), Generator::truncated("c2", 2, 3)], "").unwrap();
        let dst = Presentation::new(z, vec![Generator::truncated("x", 2, 3)], "").unwrap();
        let delta = AlgebraMap::new(&src, &dst, vec![el(&dst, "x"), el(&dst, "x")]).unwrap();
        assert!(delta.apply(&el(&src, "c1 - c2")).unwrap().is_zero());
        assert_eq!(delta.apply(&el(&src, "c1^2 + c1*c2 + c2^2")).unwrap(), el(&dst, "3*x^2"));
    }

    #[test]
    fn relations_are_checked() {
        let z = Ring::Integers;
        let src = Presentation::new(z, vec![Generator::truncated("c", 2, 3)], "").unwrap();
        let dst = Presentation::new(z, vec![Generator::polynomial("t", 2)], "").unwrap();
        let err = AlgebraMap::new(&src, &dst, vec![el(&dst, "t")]).unwrap_err();
        assert!(matches!(err, AlgebraError::MapRelation { .. }));
        let err = AlgebraMap::new(&src, &dst, vec![el(&dst, "t^2")]).unwrap_err();
        assert!(matches!(err, AlgebraError::MapDegree { .. }));
    }

    #[test]
    fn divided_powers_of_sums() {
        let z = Ring::Integers;
        let src = Presentation::new(z, vec![Generator::divided_power("y", 2)], "").unwrap();
        let dst = Presentation::new(z, vec![Generator::divided_power("a", 2), Generator::divided_power("b", 2)], "").unwrap();
        let m = AlgebraMap::new(&src, &dst, vec![el(&dst, "a + 2*b")]).unwrap();
        // γ_2(a + 2b) = γ_2(a) + 2 a b + 4 γ_2(b)
        assert_eq!(m.apply(&el(&src, "y[2]")).unwrap(), el(&dst, "a[2] + 2*a*b + 4*b[2]"));
        assert!(AlgebraMap::new(&src, &dst, vec![el(&dst, "a[1]*b[0] + a - a")]).is_ok());
    }

    #[test]
    fn composition_with_identity() {
        let z = Ring::Integers;
        let src = Presentation::new(z, vec![Generator::truncated("c1", 2, 3), Generator::truncated("c2", 2, 3)], "").unwrap();
        let dst = Presentation::new(z, vec![Generator::truncated("x", 2, 3)], "").unwrap();
        let delta = AlgebraMap::new(&src, &dst, vec![el(&dst, "x"), el(&dst, "x")]).unwrap();
        let composed = AlgebraMap::identity(&src).then(&delta).unwrap();
        assert_eq!(composed, delta);
    }
}
