//! Graded-commutative algebras presented by exterior, polynomial, truncated
//! polynomial and divided-power generators.
//!
//! Monomials are exponent vectors in generator order; for a divided-power
//! generator `y` the entry `k` stands for `γ_k(y)`, never for `y^k`.
//! Products follow the Koszul rule: moving `a` past `b` costs
//! `(-1)^{|a||b|}`.

mod basis_change;
mod element;
mod map;
mod text;

pub use basis_change::change_basis_express;
pub use element::{Element, Monomial};
pub use map::AlgebraMap;
pub use text::{parse_element, ParseError};

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring::Ring;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("element does not belong to this presentation")]
    PresentationMismatch,
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
    #[error("generator `{0}` must have positive degree")]
    ZeroDegree(String),
    #[error("generator `{name}` of kind {kind} cannot have degree {degree}")]
    KindParity { name: String, kind: String, degree: u32 },
    #[error("truncation height of `{0}` must be at least 2")]
    BadHeight(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("new generators do not form a basis in degree {degree}")]
    NotABasis { degree: u32 },
    #[error("image of `{name}` has degree {found}, expected {expected}")]
    MapDegree { name: String, expected: u32, found: u32 },
    #[error("image of `{name}` violates the relation {relation}")]
    MapRelation { name: String, relation: String },
    #[error("divided-power generator `{0}` must map to a combination of divided-power generators")]
    DividedPowerImage(String),
    #[error("algebra map needs {expected} generator images, got {found}")]
    MapArity { expected: usize, found: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum GeneratorKind {
    Exterior,
    Polynomial,
    Truncated { height: u32 },
    DividedPower,
}

impl GeneratorKind {
    /// Largest exponent a normal-form monomial may carry.
    pub fn max_exponent(self) -> Option<u32> {
        match self {
            GeneratorKind::Exterior => Some(1),
            GeneratorKind::Truncated { height } => Some(height - 1),
            GeneratorKind::Polynomial | GeneratorKind::DividedPower => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            GeneratorKind::Exterior => "exterior",
            GeneratorKind::Polynomial => "polynomial",
            GeneratorKind::Truncated { .. } => "truncated",
            GeneratorKind::DividedPower => "divided_power",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    pub kind: GeneratorKind,
}

impl Generator {
    pub fn new(name: &str, degree: u32, kind: GeneratorKind) -> Self {
        Generator { name: name.to_string(), degree, kind }
    }

    pub fn exterior(name: &str, degree: u32) -> Self {
        Self::new(name, degree, GeneratorKind::Exterior)
    }

    pub fn polynomial(name: &str, degree: u32) -> Self {
        Self::new(name, degree, GeneratorKind::Polynomial)
    }

    pub fn truncated(name: &str, degree: u32, height: u32) -> Self {
        Self::new(name, degree, GeneratorKind::Truncated { height })
    }

    pub fn divided_power(name: &str, degree: u32) -> Self {
        Self::new(name, degree, GeneratorKind::DividedPower)
    }
}

/// Ordered generators over a coefficient ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    ring: Ring,
    generators: Vec<Generator>,
    description: String,
    names: HashMap<String, usize>,
}

impl Presentation {
    pub fn new(ring: Ring, generators: Vec<Generator>, description: &str) -> Result<Self, AlgebraError> {
        let mut names = HashMap::new();
        for (i, g) in generators.iter().enumerate() {
            if names.insert(g.name.clone(), i).is_some() {
                return Err(AlgebraError::DuplicateName(g.name.clone()));
            }
            if g.degree == 0 {
                return Err(AlgebraError::ZeroDegree(g.name.clone()));
            }
            let odd = g.degree % 2 == 1;
            let bad_parity = match g.kind {
                GeneratorKind::Exterior => !odd && ring.characteristic() != 2,
                GeneratorKind::Polynomial | GeneratorKind::DividedPower => odd,
                GeneratorKind::Truncated { height } => {
                    if height < 2 {
                        return Err(AlgebraError::BadHeight(g.name.clone()));
                    }
                    odd
                }
            };
            if bad_parity {
                return Err(AlgebraError::KindParity {
                    name: g.name.clone(),
                    kind: g.kind.label().to_string(),
                    degree: g.degree,
                });
            }
        }
        Ok(Presentation { ring, generators, description: description.to_string(), names })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.get(name).copied()
    }

    /// Generators of `self` followed by those of `other`.
    pub fn tensor(&self, other: &Presentation, description: &str) -> Result<Presentation, AlgebraError> {
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Presentation::new(self.ring, gens, description)
    }

    /// Same generators over another ring.
    pub fn with_ring(&self, ring: Ring) -> Result<Presentation, AlgebraError> {
        Presentation::new(ring, self.generators.clone(), &self.description)
    }

    pub fn unit(&self) -> Element {
        Element::monomial(self, Monomial::unit(self.len()), self.ring.one())
    }

    /// `γ_k` of a divided-power generator, `g^k` otherwise (zero past a
    /// truncation bound).
    pub fn generator_power(&self, index: usize, k: u32) -> Element {
        let g = &self.generators[index];
        match g.kind {
            GeneratorKind::DividedPower => {
                let mut exps = vec![0; self.len()];
                exps[index] = k;
                Element::monomial(self, Monomial::new(exps), self.ring.one())
            }
            _ => {
                let x = self.generator(index);
                let mut acc = self.unit();
                for _ in 0..k {
                    acc = self.multiply(&acc, &x).expect("same presentation");
                }
                acc
            }
        }
    }

    pub fn generator(&self, index: usize) -> Element {
        let mut exps = vec![0; self.len()];
        exps[index] = 1;
        Element::monomial(self, Monomial::new(exps), self.ring.one())
    }

    pub fn generator_named(&self, name: &str) -> Result<Element, AlgebraError> {
        self.index_of(name).map(|i| self.generator(i)).ok_or_else(|| AlgebraError::UnknownGenerator(name.to_string()))
    }

    pub fn monomial_degree(&self, m: &Monomial) -> u32 {
        m.exponents().iter().zip(&self.generators).map(|(e, g)| e * g.degree).sum()
    }

    /// Every normal-form monomial of degree `d`, in descending lexicographic
    /// order of exponent vectors.
    pub fn basis_in_degree(&self, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.len()];
        self.enumerate(0, d, &mut exps, &mut out);
        out
    }

    fn enumerate(&self, i: usize, remaining: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == self.len() {
            if remaining == 0 {
                out.push(Monomial::new(exps.clone()));
            }
            return;
        }
        let g = &self.generators[i];
        let mut top = remaining / g.degree;
        if let Some(bound) = g.kind.max_exponent() {
            top = top.min(bound);
        }
        for e in (0..=top).rev() {
            exps[i] = e;
            self.enumerate(i + 1, remaining - e * g.degree, exps, out);
        }
        exps[i] = 0;
    }

    /// Highest degree with a nonzero basis element, `None` when the algebra
    /// is infinite.
    pub fn top_degree(&self) -> Option<u32> {
        self.generators
            .iter()
            .map(|g| g.kind.max_exponent().map(|e| e * g.degree))
            .sum::<Option<u32>>()
    }
}
