//! Graded derivations: maps on generators satisfying the Leibniz-linearized
//! defining relations.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::linalg::{SolveMode, SparseSystem};
use super::normal::{is_normal_qcentral, right_divide_by_normal};
use super::space::{Ambient, Coordinate, LinearSpace};
use crate::coeff::RationalFunction;
use crate::error::{Error, Result};
use crate::minors::b_element;
use crate::pbw::{defining_relations, monomials_of_degree, Algebra, Element, Gen, Monomial, Shape};

/// A linear map determined by generator images and extended by the Leibniz
/// rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationCandidate {
    shape: Shape,
    images: Vec<Element>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivationImage {
    pub generator: [usize; 2],
    pub image: String,
}

impl DerivationCandidate {
    pub fn new(shape: Shape, images: Vec<Element>) -> Result<Self> {
        if images.len() != shape.num_generators() {
            return Err(Error::SizeMismatch(format!(
                "{} images for {} generators",
                images.len(),
                shape.num_generators()
            )));
        }
        if images.iter().any(|x| x.shape() != shape) {
            return Err(Error::ShapeMismatch("derivation image in another algebra".into()));
        }
        Ok(Self { shape, images })
    }

    pub fn zero(shape: Shape) -> Self {
        Self {
            shape,
            images: vec![Element::zero(shape); shape.num_generators()],
        }
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn image(&self, g: Gen) -> &Element {
        &self.images[self.shape.index(g)]
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Element::is_zero)
    }

    /// `d(g_1 ... g_k) = sum_j g_1 ... d(g_j) ... g_k` on PBW words,
    /// extended linearly.
    pub fn apply(&self, alg: &Algebra, x: &Element) -> Result<Element> {
        alg.check_shape(x)?;
        if alg.shape() != self.shape {
            return Err(Error::ShapeMismatch(format!("{} vs {}", self.shape, alg.shape())));
        }
        let mut acc = alg.zero();
        for (m, c) in x.terms() {
            let word: Vec<Element> = m.word().into_iter().map(|i| alg.gen(self.shape.gen_at(i))).collect();
            let mut prefix = alg.one();
            for (j, g) in m.word().into_iter().enumerate() {
                let suffix = alg.product(&word[j + 1..])?;
                let term = alg.product([&prefix, &self.images[g], &suffix])?;
                acc = &acc + &term.scale(c);
                prefix = alg.multiply(&prefix, &word[j])?;
            }
        }
        Ok(acc)
    }

    /// Residuals of the linearized relations; all zero for a derivation.
    pub fn relation_residuals(&self, alg: &Algebra) -> Result<Vec<Element>> {
        defining_relations(self.shape, alg.q())
            .iter()
            .map(|r| {
                r.residual_with(self.shape, |a, b| {
                    let left = alg.multiply(self.image(a), &alg.gen(b))?;
                    let right = alg.multiply(&alg.gen(a), self.image(b))?;
                    Ok(&left + &right)
                })
            })
            .collect()
    }

    pub fn is_derivation(&self, alg: &Algebra) -> Result<bool> {
        Ok(self.relation_residuals(alg)?.iter().all(Element::is_zero))
    }

    /// Coordinates in an ambient of generator images.
    pub fn to_vector(&self, ambient: &Ambient) -> Option<Vec<RationalFunction>> {
        let mut v = vec![RationalFunction::zero(); ambient.dim()];
        for g in self.shape.generators() {
            for (m, c) in self.image(g).terms() {
                let i = ambient.position(&Coordinate {
                    generator: Some(g),
                    monomial: m.clone(),
                })?;
                v[i] = c.clone();
            }
        }
        Some(v)
    }

    pub fn from_vector(ambient: &Ambient, v: &[RationalFunction]) -> Self {
        let shape = ambient.shape;
        let mut terms: Vec<Vec<(Monomial, RationalFunction)>> = vec![Vec::new(); shape.num_generators()];
        for (k, c) in ambient.coordinates.iter().zip(v) {
            if let (Some(g), false) = (k.generator, c.is_zero()) {
                terms[shape.index(g)].push((k.monomial.clone(), c.clone()));
            }
        }
        Self {
            shape,
            images: terms.into_iter().map(|t| Element::from_terms(shape, t)).collect(),
        }
    }

    pub fn describe(&self) -> Vec<DerivationImage> {
        self.shape
            .generators()
            .map(|g| DerivationImage {
                generator: [g.row, g.col],
                image: self.image(g).to_string(),
            })
            .collect()
    }
}

/// `ad_x(y) = x y - y x` on generators.
pub fn inner_derivation(alg: &Algebra, x: &Element) -> Result<DerivationCandidate> {
    let images = alg
        .shape()
        .generators()
        .map(|g| alg.commutator(x, &alg.gen(g)))
        .collect::<Result<Vec<_>>>()?;
    DerivationCandidate::new(alg.shape(), images)
}

/// All derivations sending each generator to a homogeneous element of
/// degree `1 + shift`, as a space over pairs (generator, monomial). Every
/// basis element is re-checked exactly against all relations.
pub fn graded_derivation_space(alg: &Algebra, shift: i32, mode: &SolveMode) -> Result<LinearSpace> {
    let shape = alg.shape();
    let d = u32::try_from(1 + shift)
        .map_err(|_| Error::Eval(format!("shift {shift} gives negative image degree")))?;
    let ambient = Ambient::generator_images(shape, d);
    let monos = monomials_of_degree(shape, d);
    let mono_elems: Vec<Element> = monos
        .iter()
        .map(|m| Element::monomial(shape, m.clone(), RationalFunction::one()))
        .collect();
    // m * g and g * m for every unknown monomial m and generator g.
    let mut left: HashMap<(usize, usize), Element> = HashMap::new();
    let mut right: HashMap<(usize, usize), Element> = HashMap::new();
    for (i, m) in mono_elems.iter().enumerate() {
        for g in shape.generators() {
            let y = alg.gen(g);
            left.insert((i, shape.index(g)), alg.multiply(m, &y)?);
            right.insert((i, shape.index(g)), alg.multiply(&y, m)?);
        }
    }
    // Coordinates run over generators, then monomials in descending order.
    let len = monos.len();
    let col = |g: Gen, i: usize| shape.index(g) * len + (len - 1 - i);
    let mut system = SparseSystem::new(ambient.dim());
    for rel in defining_relations(shape, alg.q()) {
        let mut pairs = vec![(RationalFunction::one(), rel.lhs.0, rel.lhs.1)];
        pairs.extend(rel.rhs.iter().map(|(c, a, b)| (-c, *a, *b)));
        let mut rows: BTreeMap<Monomial, BTreeMap<usize, RationalFunction>> = BTreeMap::new();
        let mut add = |j: usize, x: &Element, c: &RationalFunction| {
            for (r, v) in x.terms() {
                let e = rows.entry(r.clone()).or_default().entry(j).or_insert_with(RationalFunction::zero);
                *e = &*e + &(c * v);
            }
        };
        for (c, a, b) in &pairs {
            for i in 0..monos.len() {
                // d(a) b + a d(b)
                add(col(*a, i), &left[&(i, shape.index(*b))], c);
                add(col(*b, i), &right[&(i, shape.index(*a))], c);
            }
        }
        for row in rows.into_values() {
            system.push_row(row);
        }
    }
    let kernel = system.kernel(mode)?;
    let space = LinearSpace::span(ambient, kernel.basis)?;
    for v in space.basis() {
        let d = DerivationCandidate::from_vector(space.ambient(), v);
        if !d.is_derivation(alg)? {
            return Err(Error::Eval("derivation solver produced a non-derivation".into()));
        }
    }
    Ok(space)
}

pub fn space_derivations(space: &LinearSpace) -> Vec<DerivationCandidate> {
    space
        .basis()
        .iter()
        .map(|v| DerivationCandidate::from_vector(space.ambient(), v))
        .collect()
}

/// The span of `ad_x` over monomials `x` of degree `shift`, in the ambient
/// of [`graded_derivation_space`]; for shift 1 these are the `ad_Y`.
pub fn inner_span(alg: &Algebra, shift: u32) -> Result<LinearSpace> {
    let ambient = Ambient::generator_images(alg.shape(), shift + 1);
    let vectors = monomials_of_degree(alg.shape(), shift)
        .into_iter()
        .map(|m| {
            let x = Element::monomial(alg.shape(), m, RationalFunction::one());
            let d = inner_derivation(alg, &x)?;
            Ok(d.to_vector(&ambient).expect("commutators are homogeneous"))
        })
        .collect::<Result<Vec<_>>>()?;
    LinearSpace::span(ambient, vectors)
}

/// Indices `i` in `1..2n` for which `d(b_i)` is not a right multiple of
/// `b_i`; empty when `d` preserves every ideal `b_i R`.
pub fn b_ideal_failures(alg: &Algebra, d: &DerivationCandidate) -> Result<Vec<usize>> {
    let n = alg.shape().require_square()?;
    let mut bad = Vec::new();
    for i in 1..2 * n {
        let b = b_element(alg, i)?;
        let cert = is_normal_qcentral(alg, &b)?;
        match right_divide_by_normal(alg, &d.apply(alg, &b)?, &cert) {
            Ok(_) => {}
            Err(Error::NotInIdeal(_)) => bad.push(i),
            Err(e) => return Err(e),
        }
    }
    Ok(bad)
}
