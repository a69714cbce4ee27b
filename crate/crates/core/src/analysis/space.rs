//! Subspaces of coordinate spaces over Q(q) in canonical echelon form.

use std::fmt;

use serde::Serialize;

use super::linalg::{rref, Field};
use crate::coeff::RationalFunction;
use crate::error::{Error, Result};
use crate::pbw::{Gen, Monomial, Shape};

/// One coordinate: a monomial, optionally attached to the generator whose
/// image it describes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coordinate {
    pub generator: Option<Gen>,
    pub monomial: Monomial,
}

/// The coordinate system a [`LinearSpace`] lives in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambient {
    pub shape: Shape,
    pub coordinates: Vec<Coordinate>,
}

impl Ambient {
    /// Monomials of degrees `0..=maxdeg`, degree ascending and lex
    /// descending within a degree.
    pub fn elements_up_to(shape: Shape, maxdeg: u32) -> Self {
        let coordinates = (0..=maxdeg)
            .flat_map(|d| crate::pbw::monomials_of_degree(shape, d).into_iter().rev())
            .map(|monomial| Coordinate {
                generator: None,
                monomial,
            })
            .collect();
        Self { shape, coordinates }
    }

    /// Pairs (generator, monomial of degree `d`), generators in order.
    pub fn generator_images(shape: Shape, d: u32) -> Self {
        let monos: Vec<Monomial> = crate::pbw::monomials_of_degree(shape, d).into_iter().rev().collect();
        let coordinates = shape
            .generators()
            .flat_map(|g| {
                monos.iter().map(move |m| Coordinate {
                    generator: Some(g),
                    monomial: m.clone(),
                })
            })
            .collect();
        Self { shape, coordinates }
    }

    pub fn dim(&self) -> usize {
        self.coordinates.len()
    }

    pub fn position(&self, c: &Coordinate) -> Option<usize> {
        self.coordinates.iter().position(|x| x == c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSpace {
    ambient: Ambient,
    basis: Vec<Vec<RationalFunction>>,
}

impl LinearSpace {
    /// The span of `vectors`, brought to reduced row echelon form.
    pub fn span(ambient: Ambient, vectors: Vec<Vec<RationalFunction>>) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient.dim()) {
            return Err(Error::SizeMismatch(format!(
                "vector of length {} in a space of dimension {}",
                v.len(),
                ambient.dim()
            )));
        }
        let mut basis: Vec<_> = vectors.into_iter().filter(|v| v.iter().any(|x| !x.is_zero())).collect();
        rref(&mut basis);
        Ok(Self { ambient, basis })
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn basis(&self) -> &[Vec<RationalFunction>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn pivot(v: &[RationalFunction]) -> usize {
        v.iter().position(|x| !x.is_zero()).expect("basis vectors are nonzero")
    }

    /// Reduction of `v` modulo the span; zero exactly on membership.
    pub fn reduce(&self, v: &[RationalFunction]) -> Vec<RationalFunction> {
        let mut r = v.to_vec();
        for b in &self.basis {
            let p = Self::pivot(b);
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, y) in r.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x = Field::sub(x, &Field::mul(&f, y));
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[RationalFunction]) -> bool {
        v.len() == self.ambient.dim() && self.reduce(v).iter().all(RationalFunction::is_zero)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceRelation {
    Equal,
    /// The first space is a proper subspace of the second.
    Subset,
    Superset,
    Incomparable,
}

impl fmt::Display for SpaceRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpaceRelation::Equal => "equal",
            SpaceRelation::Subset => "proper subspace",
            SpaceRelation::Superset => "proper superspace",
            SpaceRelation::Incomparable => "incomparable",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceComparison {
    pub relation: SpaceRelation,
    /// Basis vectors of the first space outside the second.
    pub only_in_first: Vec<Vec<RationalFunction>>,
    pub only_in_second: Vec<Vec<RationalFunction>>,
}

pub fn compare_spaces(a: &LinearSpace, b: &LinearSpace) -> Result<SpaceComparison> {
    if a.ambient != b.ambient {
        return Err(Error::AmbientMismatch);
    }
    let outside = |x: &LinearSpace, y: &LinearSpace| -> Vec<Vec<RationalFunction>> {
        x.basis.iter().filter(|v| !y.contains(v)).cloned().collect()
    };
    let only_in_first = outside(a, b);
    let only_in_second = outside(b, a);
    let relation = match (only_in_first.is_empty(), only_in_second.is_empty()) {
        (true, true) => SpaceRelation::Equal,
        (true, false) => SpaceRelation::Subset,
        (false, true) => SpaceRelation::Superset,
        (false, false) => SpaceRelation::Incomparable,
    };
    Ok(SpaceComparison {
        relation,
        only_in_first,
        only_in_second,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize, n: usize) -> Vec<RationalFunction> {
        let mut v = vec![RationalFunction::zero(); n];
        v[i] = RationalFunction::one();
        v
    }

    fn ambient() -> Ambient {
        Ambient::elements_up_to(Shape::square(1).unwrap(), 2)
    }

    #[test]
    fn coordinates_order() {
        let a = Ambient::elements_up_to(Shape::square(2).unwrap(), 1);
        let text: Vec<_> = a.coordinates.iter().map(|c| format!("{:?}", c.monomial.exponents())).collect();
        assert_eq!(text, ["[0, 0, 0, 0]", "[1, 0, 0, 0]", "[0, 1, 0, 0]", "[0, 0, 1, 0]", "[0, 0, 0, 1]"]);
        assert_eq!(Ambient::generator_images(Shape::square(2).unwrap(), 1).dim(), 16);
    }

    #[test]
    fn comparisons() {
        let a = LinearSpace::span(ambient(), vec![e(0, 3)]).unwrap();
        let b = LinearSpace::span(ambient(), vec![e(0, 3), e(1, 3)]).unwrap();
        assert_eq!(compare_spaces(&a, &a).unwrap().relation, SpaceRelation::Equal);
        let c = compare_spaces(&a, &b).unwrap();
        assert_eq!(c.relation, SpaceRelation::Subset);
        assert_eq!(c.only_in_second, vec![e(1, 3)]);
        assert_eq!(compare_spaces(&b, &a).unwrap().relation, SpaceRelation::Superset);
        let d = LinearSpace::span(ambient(), vec![e(2, 3)]).unwrap();
        assert_eq!(compare_spaces(&a, &d).unwrap().relation, SpaceRelation::Incomparable);
    }

    #[test]
    fn span_is_canonical() {
        let q = RationalFunction::q();
        let v1 = vec![q.clone(), q.clone(), RationalFunction::zero()];
        let v2 = vec![RationalFunction::one(), RationalFunction::zero(), RationalFunction::zero()];
        let a = LinearSpace::span(ambient(), vec![v1, v2]).unwrap();
        let b = LinearSpace::span(ambient(), vec![e(1, 3), e(0, 3)]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.basis(), &[e(0, 3), e(1, 3)]);
    }

    #[test]
    fn ambient_mismatch() {
        let a = LinearSpace::span(ambient(), vec![]).unwrap();
        let b = LinearSpace::span(Ambient::elements_up_to(Shape::square(1).unwrap(), 1), vec![]).unwrap();
        assert_eq!(compare_spaces(&a, &b), Err(Error::AmbientMismatch));
    }
}
