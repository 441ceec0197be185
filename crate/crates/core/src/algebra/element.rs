use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{AlgebraError, GeneratorKind, Presentation};
use crate::ring::{format_scalar, Ring, Scalar};

/// Exponent vector in presentation order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn unit(len: usize) -> Self {
        Monomial(vec![0; len])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn render(&self, p: &Presentation) -> String {
        let mut factors = Vec::new();
        for (e, g) in self.0.iter().zip(p.generators()) {
            match (*e, g.kind) {
                (0, _) => {}
                (1, _) => factors.push(g.name.clone()),
                (k, GeneratorKind::DividedPower) => factors.push(format!("{}[{k}]", g.name)),
                (k, _) => factors.push(format!("{}^{k}", g.name)),
            }
        }
        if factors.is_empty() {
            "1".to_string()
        } else {
            factors.join("*")
        }
    }
}

/// Normal-form product of two monomials: `None` when it vanishes, otherwise
/// the structure constant (Koszul sign times divided-power binomials).
pub(crate) fn multiply_monomials(p: &Presentation, a: &Monomial, b: &Monomial) -> Option<(BigInt, Monomial)> {
    let gens = p.generators();
    let mut coefficient = BigInt::one();
    let mut exps = Vec::with_capacity(gens.len());
    for ((&x, &y), g) in a.0.iter().zip(&b.0).zip(gens) {
        let e = x + y;
        match g.kind {
            GeneratorKind::Exterior if e > 1 => return None,
            GeneratorKind::Truncated { height } if e >= height => return None,
            GeneratorKind::DividedPower if x > 0 && y > 0 => {
                coefficient *= num_integer::binomial(BigInt::from(e), BigInt::from(x));
            }
            _ => {}
        }
        exps.push(e);
    }
    // moving each factor of b leftward past the later factors of a
    let mut odd_after = false;
    let mut sign_odd = false;
    for i in (0..gens.len()).rev() {
        if odd_after && (b.0[i] * gens[i].degree) % 2 == 1 {
            sign_odd = !sign_odd;
        }
        if (a.0[i] * gens[i].degree) % 2 == 1 {
            odd_after = !odd_after;
        }
    }
    if sign_odd {
        coefficient = -coefficient;
    }
    Some((coefficient, Monomial(exps)))
}

/// Finite linear combination of monomials with nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element {
    arity: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Element {
    pub fn zero(p: &Presentation) -> Self {
        Element { arity: p.len(), terms: BTreeMap::new() }
    }

    pub fn monomial(p: &Presentation, m: Monomial, c: Scalar) -> Self {
        assert_eq!(m.0.len(), p.len(), "monomial arity mismatch");
        let mut e = Self::zero(p);
        e.add_term(p.ring(), m, c);
        e
    }

    pub fn from_terms(p: &Presentation, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut e = Self::zero(p);
        for (m, c) in terms {
            e.add_term(p.ring(), m, c);
        }
        e
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The single monomial of a one-term element.
    pub fn as_monomial(&self) -> Option<(&Monomial, &Scalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub(crate) fn add_term(&mut self, ring: Ring, m: Monomial, c: Scalar) {
        debug_assert_eq!(m.0.len(), self.arity);
        let c = ring.reduce(c);
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Scalar::zero);
        *slot = ring.add(slot, &c);
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    fn check(&self, p: &Presentation) -> Result<(), AlgebraError> {
        if self.arity == p.len() {
            Ok(())
        } else {
            Err(AlgebraError::PresentationMismatch)
        }
    }

    /// Common degree of all terms; `None` for zero or mixed degrees.
    pub fn homogeneous_degree(&self, p: &Presentation) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|m| p.monomial_degree(m));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Splits into homogeneous components keyed by degree.
    pub fn components(&self, p: &Presentation) -> BTreeMap<u32, Element> {
        let mut out: BTreeMap<u32, Element> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(p.monomial_degree(m))
                .or_insert_with(|| Element::zero(p))
                .add_term(p.ring(), m.clone(), c.clone());
        }
        out
    }

    pub fn add(&self, other: &Element, p: &Presentation) -> Result<Element, AlgebraError> {
        self.check(p)?;
        other.check(p)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(p.ring(), m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Element, p: &Presentation) -> Result<Element, AlgebraError> {
        self.add(&other.scale(&p.ring().from_int(-1), p), p)
    }

    pub fn scale(&self, c: &Scalar, p: &Presentation) -> Element {
        let mut out = Element::zero(p);
        for (m, x) in &self.terms {
            out.add_term(p.ring(), m.clone(), x * c);
        }
        out
    }

    /// Coordinates with respect to an ordered monomial basis; `None` if a
    /// term falls outside it.
    pub fn coordinates(&self, basis_index: impl Fn(&Monomial) -> Option<usize>, len: usize) -> Option<Vec<Scalar>> {
        let mut v = vec![Scalar::zero(); len];
        for (m, c) in &self.terms {
            v[basis_index(m)?] = c.clone();
        }
        Some(v)
    }

    /// Canonical text in the monomial grammar, terms in basis order.
    pub fn render(&self, p: &Presentation) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c < &Scalar::zero();
            let magnitude = if negative { -c.clone() } else { c.clone() };
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = m.render(p);
            if m.is_unit() {
                out.push_str(&format_scalar(&magnitude));
            } else if magnitude.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{}", format_scalar(&magnitude), mono));
            }
        }
        out
    }

    /// Report style: `(c)·monomial` terms joined by ` + `.
    pub fn render_report(&self, p: &Presentation) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| format!("({})·{}", format_scalar(c), m.render(p)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl Presentation {
    /// Graded-commutative product in normal form.
    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element, AlgebraError> {
        a.check(self)?;
        b.check(self)?;
        let ring = self.ring();
        let mut out = Element::zero(self);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                if let Some((k, m)) = multiply_monomials(self, ma, mb) {
                    out.add_term(ring, m, ca * cb * Scalar::from_integer(k));
                }
            }
        }
        Ok(out)
    }

    pub fn power(&self, a: &Element, k: u32) -> Result<Element, AlgebraError> {
        let mut acc = self.unit();
        for _ in 0..k {
            acc = self.multiply(&acc, a)?;
        }
        Ok(acc)
    }
}
