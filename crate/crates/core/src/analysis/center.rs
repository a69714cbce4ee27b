//! Bounded-degree center of the algebra.

use std::collections::BTreeMap;

use super::linalg::{SolveMode, SparseSystem};
use super::normal::is_central;
use super::space::{Ambient, LinearSpace};
use crate::coeff::RationalFunction;
use crate::error::{Error, Result};
use crate::pbw::{Algebra, Element, Monomial};

/// Central elements of degree at most `maxdeg`, with every basis element
/// re-checked against all generators before it is reported.
pub fn center_basis(alg: &Algebra, maxdeg: u32, mode: &SolveMode) -> Result<LinearSpace> {
    let ambient = Ambient::elements_up_to(alg.shape(), maxdeg);
    let mut system = SparseSystem::new(ambient.dim());
    for g in alg.shape().generators() {
        let y = alg.gen(g);
        let mut rows: BTreeMap<Monomial, BTreeMap<usize, RationalFunction>> = BTreeMap::new();
        for (j, c) in ambient.coordinates.iter().enumerate() {
            let m = Element::monomial(alg.shape(), c.monomial.clone(), RationalFunction::one());
            let comm = alg.commutator(&m, &y)?;
            for (r, x) in comm.terms() {
                rows.entry(r.clone()).or_default().insert(j, x.clone());
            }
        }
        for row in rows.into_values() {
            system.push_row(row);
        }
    }
    let kernel = system.kernel(mode)?;
    let space = LinearSpace::span(ambient, kernel.basis)?;
    for x in space_elements(&space) {
        if !is_central(alg, &x)? {
            return Err(Error::Eval(format!("center solver produced non-central {x}")));
        }
    }
    Ok(space)
}

/// Basis vectors of a space over monomial coordinates, as elements.
pub fn space_elements(space: &LinearSpace) -> Vec<Element> {
    let amb = space.ambient();
    space
        .basis()
        .iter()
        .map(|v| {
            Element::from_terms(
                amb.shape,
                amb.coordinates
                    .iter()
                    .zip(v)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k.monomial.clone(), c.clone())),
            )
        })
        .collect()
}

/// Coordinates of `x` in `ambient`, if all its monomials are coordinates.
pub fn element_vector(ambient: &Ambient, x: &Element) -> Option<Vec<RationalFunction>> {
    let mut v = vec![RationalFunction::zero(); ambient.dim()];
    for (m, c) in x.terms() {
        let i = ambient
            .coordinates
            .iter()
            .position(|k| k.generator.is_none() && k.monomial == *m)?;
        v[i] = c.clone();
    }
    Some(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minors::quantum_determinant;

    #[test]
    fn small_centers() {
        let a = Algebra::square(2).unwrap();
        let det = quantum_determinant(&a).unwrap();
        for mode in [SolveMode::Exact, SolveMode::specialized_default()] {
            let c = center_basis(&a, 2, &mode).unwrap();
            assert_eq!(space_elements(&c), vec![a.one(), det.clone()]);
        }
        let a3 = Algebra::square(3).unwrap();
        let c = center_basis(&a3, 2, &SolveMode::specialized_default()).unwrap();
        assert_eq!(space_elements(&c), vec![a3.one()]);
    }

    #[test]
    fn rectangular_center_is_trivial() {
        let a = Algebra::new(crate::pbw::Shape::new(2, 3).unwrap());
        let c = center_basis(&a, 2, &SolveMode::Exact).unwrap();
        assert_eq!(c.dim(), 1);
    }

    #[test]
    fn vector_round_trip() {
        let a = Algebra::square(2).unwrap();
        let amb = Ambient::elements_up_to(a.shape(), 2);
        let det = quantum_determinant(&a).unwrap();
        let v = element_vector(&amb, &det).unwrap();
        let s = LinearSpace::span(amb.clone(), vec![v]).unwrap();
        assert_eq!(space_elements(&s), vec![det]);
        let cubic = a.pow(&a.generator(1, 1).unwrap(), 3).unwrap();
        assert!(element_vector(&amb, &cubic).is_none());
    }
}
