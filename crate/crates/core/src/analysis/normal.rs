//! q-commutation, normality certificates, and division by normal elements.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use super::linalg::{SolveMode, SparseSystem};
use crate::coeff::RationalFunction;
use crate::error::{Error, Result};
use crate::pbw::{monomials_of_degree, Algebra, Element, Gen, Monomial};

/// Exponents tried when q is a number and `q^k` must be found by search.
const MAX_SPECIALIZED_TWIST: i32 = 256;

/// The `k` with `c = q^k` in the algebra's scalars, if any.
fn as_q_power(alg: &Algebra, c: &RationalFunction) -> Option<i32> {
    match alg.specialization() {
        None => {
            let p = c.as_laurent()?;
            let (coeff, k) = p.as_monomial()?;
            coeff.is_one().then_some(k)
        }
        Some(v) => {
            let c = c.as_constant()?;
            let one = BigRational::one();
            if *c == one {
                return Some(0);
            }
            // The power of v or 1/v that grows towards |c|.
            let (base, sign) = if (c.abs() > one) == (v.abs() > one) { (v.clone(), 1) } else { (v.recip(), -1) };
            let mut p = one;
            for k in 1..=MAX_SPECIALIZED_TWIST {
                p *= &base;
                if p == *c {
                    return Some(sign * k);
                }
                if p.abs() > c.abs() {
                    return None;
                }
            }
            None
        }
    }
}

/// The `k` with `u * g = q^k * g * u`.
pub fn q_commutation_twist(alg: &Algebra, u: &Element, g: Gen) -> Result<i32> {
    alg.check_shape(u)?;
    let fail = || Error::NoUniformTwist(format!("{u} does not q-commute with {g}"));
    if u.is_zero() {
        return Err(Error::NoUniformTwist("the zero element has no twist".into()));
    }
    let y = alg.gen(g);
    let ug = alg.multiply(u, &y)?;
    let gu = alg.multiply(&y, u)?;
    let (m, c) = gu.terms().next_back().expect("nonzero product in a domain");
    let ratio = ug.coeff(m).checked_div(c)?;
    let k = as_q_power(alg, &ratio).ok_or_else(fail)?;
    if ug == gu.scale(&alg.coerce_scalar(&RationalFunction::q_pow(k))?) {
        Ok(k)
    } else {
        Err(fail())
    }
}

/// A nonzero element together with its twist against every generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistCertificate {
    element: Element,
    twists: Vec<i32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistEntry {
    pub generator: [usize; 2],
    pub exponent: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistReport {
    pub element: String,
    pub central: bool,
    pub twists: Vec<TwistEntry>,
}

impl TwistCertificate {
    pub fn element(&self) -> &Element {
        &self.element
    }

    /// Twist exponents indexed like the generators.
    pub fn twists(&self) -> &[i32] {
        &self.twists
    }

    pub fn twist(&self, g: Gen) -> i32 {
        self.twists[self.element.shape().index(g)]
    }

    pub fn is_central(&self) -> bool {
        self.twists.iter().all(|&k| k == 0)
    }

    /// Re-checks every twist equation.
    pub fn verify(&self, alg: &Algebra) -> Result<bool> {
        for g in self.element.shape().generators() {
            let y = alg.gen(g);
            let lhs = alg.multiply(&self.element, &y)?;
            let rhs = alg.multiply(&y, &self.element)?;
            let c = alg.coerce_scalar(&RationalFunction::q_pow(self.twist(g)))?;
            if lhs != rhs.scale(&c) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn report(&self) -> TwistReport {
        let shape = self.element.shape();
        TwistReport {
            element: self.element.to_string(),
            central: self.is_central(),
            twists: shape
                .generators()
                .map(|g| TwistEntry {
                    generator: [g.row, g.col],
                    exponent: self.twist(g),
                })
                .collect(),
        }
    }
}

/// Certifies `u` as normal by finding its twist against every generator;
/// the error names the first generator without one.
pub fn is_normal_qcentral(alg: &Algebra, u: &Element) -> Result<TwistCertificate> {
    let twists = alg
        .shape()
        .generators()
        .map(|g| q_commutation_twist(alg, u, g))
        .collect::<Result<Vec<_>>>()?;
    Ok(TwistCertificate {
        element: u.clone(),
        twists,
    })
}

/// True iff `u` commutes with every generator.
pub fn is_central(alg: &Algebra, u: &Element) -> Result<bool> {
    for g in alg.shape().generators() {
        if !alg.commutator(u, &alg.gen(g))?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The `x'` with `x * u = u * x'`.
pub fn conjugate_past_normal(alg: &Algebra, cert: &TwistCertificate, x: &Element) -> Result<Element> {
    alg.check_shape(x)?;
    alg.check_shape(&cert.element)?;
    let mut terms = Vec::with_capacity(x.num_terms());
    for (m, c) in x.terms() {
        let k: i32 = m
            .exponents()
            .iter()
            .zip(&cert.twists)
            .map(|(&e, &t)| i32::from(e) * t)
            .sum();
        terms.push((m.clone(), c * &alg.coerce_scalar(&RationalFunction::q_pow(-k))?));
    }
    let out = Element::from_terms(alg.shape(), terms);
    debug_assert_eq!(alg.multiply(x, &cert.element)?, alg.multiply(&cert.element, &out)?);
    Ok(out)
}

/// The `w` with `v = u * w`, searched among elements of degree
/// `deg v - deg u` (all degrees up to that bound when `v` or `u` is not
/// homogeneous).
pub fn right_divide_by_normal(alg: &Algebra, v: &Element, cert: &TwistCertificate) -> Result<Element> {
    right_divide(alg, v, &cert.element, &SolveMode::Exact)
}

/// Right division by an arbitrary nonzero element, by exact linear solve.
pub fn right_divide(alg: &Algebra, v: &Element, u: &Element, mode: &SolveMode) -> Result<Element> {
    alg.check_shape(v)?;
    alg.check_shape(u)?;
    if u.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if v.is_zero() {
        return Ok(alg.zero());
    }
    let not_in = || Error::NotInIdeal(format!("{v} is not a right multiple of {u}"));
    let (vmax, umin) = (v.degree().unwrap(), u.min_degree().unwrap());
    if vmax < umin {
        return Err(not_in());
    }
    let band: Vec<u32> = match (v.homogeneous_degree(), u.homogeneous_degree()) {
        (Some(a), Some(b)) => vec![a - b],
        _ => (0..=vmax - umin).collect(),
    };
    let unknowns: Vec<Monomial> = band
        .into_iter()
        .flat_map(|d| monomials_of_degree(alg.shape(), d))
        .collect();
    // Columns: the unknown coefficients, then one for -v.
    let n = unknowns.len();
    let mut rows: BTreeMap<Monomial, BTreeMap<usize, RationalFunction>> = BTreeMap::new();
    for (j, m) in unknowns.iter().enumerate() {
        let um = alg.multiply(u, &Element::monomial(alg.shape(), m.clone(), RationalFunction::one()))?;
        for (r, c) in um.terms() {
            rows.entry(r.clone()).or_default().insert(j, c.clone());
        }
    }
    for (r, c) in v.terms() {
        rows.entry(r.clone()).or_default().insert(n, -c);
    }
    let mut system = SparseSystem::new(n + 1);
    for row in rows.into_values() {
        system.push_row(row);
    }
    let kernel = system.kernel(mode)?;
    // Any kernel vector with a nonzero last entry yields a quotient.
    let sol = kernel.basis.iter().find(|k| !k[n].is_zero()).ok_or_else(not_in)?;
    let s = sol[n].inv()?;
    let w = Element::from_terms(
        alg.shape(),
        unknowns.into_iter().zip(&sol[..n]).map(|(m, c)| (m, c * &s)),
    );
    if alg.multiply(u, &w)? != *v {
        return Err(not_in());
    }
    Ok(w)
}
