//! PBW-basis representation of quantum matrix algebras.
//!
//! Generators `Y[i,a]` are indexed row-major, so the lexicographic order on
//! pairs `(i, a)` is the order of their flat indices. A [`Monomial`] is an
//! exponent vector over those generators and stands for the ordered product
//! `Y[1,1]^e * Y[1,2]^e * ... * Y[m,n]^e`. An [`Element`] is a finite
//! combination of monomials with coefficients in Q(q) and is kept in PBW
//! normal form by construction.

mod algebra;
mod relations;

pub use algebra::{Algebra, Relations, Strategy};
pub use relations::{defining_relations, RelationInstance, RelationKind};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use crate::coeff::RationalFunction;
use crate::error::{Error, Result};

/// Number of rows `m` and columns `n` of the generic matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct Shape {
    pub rows: usize,
    pub cols: usize,
}

impl Shape {
    pub fn new(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::ShapeMismatch(format!(
                "shape {rows}x{cols} must have at least one row and column"
            )));
        }
        Ok(Self { rows, cols })
    }

    pub fn square(n: usize) -> Result<Self> {
        Self::new(n, n)
    }

    pub fn num_generators(&self) -> usize {
        self.rows * self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// The side length for square shapes.
    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::ShapeMismatch(format!(
                "operation needs a square shape, got {}x{}",
                self.rows, self.cols
            )))
        }
    }

    pub fn generator(&self, row: usize, col: usize) -> Result<Gen> {
        if row == 0 || col == 0 || row > self.rows || col > self.cols {
            return Err(Error::IndexOutOfRange(format!(
                "Y[{row},{col}] in a {}x{} algebra",
                self.rows, self.cols
            )));
        }
        Ok(Gen { row, col })
    }

    pub fn index(&self, g: Gen) -> usize {
        (g.row - 1) * self.cols + (g.col - 1)
    }

    pub fn gen_at(&self, idx: usize) -> Gen {
        Gen {
            row: idx / self.cols + 1,
            col: idx % self.cols + 1,
        }
    }

    /// All generators in lexicographic order.
    pub fn generators(&self) -> impl Iterator<Item = Gen> + '_ {
        (0..self.num_generators()).map(|i| self.gen_at(i))
    }

    fn check_same(&self, other: &Shape) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )))
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.rows, self.cols)
    }
}

/// A generator `Y[row,col]`, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct Gen {
    pub row: usize,
    pub col: usize,
}

impl Gen {
    pub fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Y[{},{}]", self.row, self.col)
    }
}

/// A possibly unordered product of generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Gen>);

impl Word {
    pub fn new(gens: impl IntoIterator<Item = Gen>) -> Self {
        Self(gens.into_iter().collect())
    }
}

/// Exponent vector of an ordered PBW monomial.
///
/// Ordered graded-lexicographically: by total degree first, then
/// lexicographically on the exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn one(shape: Shape) -> Self {
        Self(vec![0; shape.num_generators()])
    }

    pub fn from_exponents(exps: Vec<u16>) -> Self {
        Self(exps)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn exponent(&self, idx: usize) -> u16 {
        self.0[idx]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Index of the largest generator present.
    pub(crate) fn top(&self) -> Option<usize> {
        self.0.iter().rposition(|&e| e > 0)
    }

    pub(crate) fn with_added(&self, idx: usize) -> Self {
        let mut m = self.clone();
        m.0[idx] += 1;
        m
    }

    pub(crate) fn with_removed(&self, idx: usize) -> Self {
        let mut m = self.clone();
        m.0[idx] -= 1;
        m
    }

    /// The ordered generator word, with multiplicity.
    pub fn word(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
            .collect()
    }

    /// Commutative product of exponent vectors.
    pub fn product(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn fmt_with(&self, shape: Shape, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", shape.gen_at(i))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of total degree `d`, ascending.
pub fn monomials_of_degree(shape: Shape, d: u32) -> Vec<Monomial> {
    fn rec(pos: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if pos + 1 == cur.len() {
            cur[pos] = left as u16;
            out.push(Monomial(cur.clone()));
            cur[pos] = 0;
            return;
        }
        for e in 0..=left {
            cur[pos] = e as u16;
            rec(pos + 1, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0u16; shape.num_generators()];
    rec(0, d, &mut cur, &mut out);
    out.sort();
    out
}

/// Number of PBW monomials of degree `d`: `binomial(d + mn - 1, d)`.
pub fn monomial_count(shape: Shape, d: u32) -> u128 {
    let vars = shape.num_generators() as u128;
    let mut acc: u128 = 1;
    for k in 1..=d as u128 {
        acc = acc * (vars - 1 + k) / k;
    }
    acc
}

pub(crate) type Terms = BTreeMap<Monomial, RationalFunction>;

pub(crate) fn add_term(terms: &mut Terms, m: Monomial, c: RationalFunction) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match terms.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let s = o.get() + &c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

/// An element of the algebra in PBW normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    shape: Shape,
    terms: Terms,
}

impl Element {
    pub fn zero(shape: Shape) -> Self {
        Self {
            shape,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(shape: Shape) -> Self {
        Self::scalar(shape, RationalFunction::one())
    }

    pub fn scalar(shape: Shape, c: RationalFunction) -> Self {
        Self::monomial(shape, Monomial::one(shape), c)
    }

    pub fn monomial(shape: Shape, m: Monomial, c: RationalFunction) -> Self {
        let mut terms = BTreeMap::new();
        add_term(&mut terms, m, c);
        Self { shape, terms }
    }

    pub fn generator(shape: Shape, row: usize, col: usize) -> Result<Self> {
        let g = shape.generator(row, col)?;
        Ok(Self::gen(shape, g))
    }

    pub(crate) fn gen(shape: Shape, g: Gen) -> Self {
        Self::monomial(shape, Monomial::one(shape).with_added(shape.index(g)), RationalFunction::one())
    }

    /// Builds an element from already-ordered monomials, merging repeats.
    pub fn from_terms(shape: Shape, terms: impl IntoIterator<Item = (Monomial, RationalFunction)>) -> Self {
        let mut out = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.0.len(), shape.num_generators(), "monomial length does not match shape");
            add_term(&mut out, m, c);
        }
        Self { shape, terms: out }
    }

    pub(crate) fn from_map(shape: Shape, terms: Terms) -> Self {
        Self { shape, terms }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &RationalFunction)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub(crate) fn term_map(&self) -> &Terms {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> RationalFunction {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient when the element is a scalar multiple of 1.
    pub fn as_scalar(&self) -> Option<RationalFunction> {
        match self.terms.len() {
            0 => Some(RationalFunction::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Highest total degree, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    /// The degree when every term has the same degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.degree()?;
        (self.min_degree() == Some(d)).then_some(d)
    }

    /// Sum of the terms of total degree exactly `d`.
    pub fn homogeneous_component(&self, d: u32) -> Element {
        Self {
            shape: self.shape,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &RationalFunction) -> Element {
        if c.is_zero() {
            return Self::zero(self.shape);
        }
        Self {
            shape: self.shape,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn checked_add(&self, other: &Element) -> Result<Element> {
        self.shape.check_same(&other.shape)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, m.clone(), c.clone());
        }
        Ok(Self { shape: self.shape, terms })
    }

    pub fn checked_sub(&self, other: &Element) -> Result<Element> {
        self.checked_add(&-other)
    }

    /// Evaluates every coefficient at `q = v`; the result has constant
    /// coefficients.
    pub fn specialize(&self, v: &BigRational) -> Result<Element> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            add_term(&mut terms, m.clone(), RationalFunction::constant(c.eval(v)?));
        }
        Ok(Self { shape: self.shape, terms })
    }

    /// `c` with `other == c * self`, if one exists.
    pub fn scalar_ratio(&self, other: &Element) -> Option<RationalFunction> {
        let (m, c) = self.terms.iter().next()?;
        let ratio = &other.coeff(m) / c;
        (self.scale(&ratio) == *other).then_some(ratio)
    }
}

impl Add<&Element> for &Element {
    type Output = Element;

    fn add(self, rhs: &Element) -> Element {
        self.checked_add(rhs).expect("adding elements of different shapes")
    }
}

impl Sub<&Element> for &Element {
    type Output = Element;

    fn sub(self, rhs: &Element) -> Element {
        self.checked_sub(rhs).expect("subtracting elements of different shapes")
    }
}

impl Neg for &Element {
    type Output = Element;

    fn neg(self) -> Element {
        Element {
            shape: self.shape,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Element {
    type Output = Element;

    fn neg(self) -> Element {
        -&self
    }
}

impl Add for Element {
    type Output = Element;

    fn add(self, rhs: Element) -> Element {
        &self + &rhs
    }
}

impl Sub for Element {
    type Output = Element;

    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

impl Mul<&RationalFunction> for &Element {
    type Output = Element;

    fn mul(self, rhs: &RationalFunction) -> Element {
        self.scale(rhs)
    }
}

/// Canonical text: terms in descending graded-lex order, each written as
/// `coeff*Y[i,a]^e*...`, e.g. `Y[1,1]*Y[2,2] - (q - q^-1)*Y[1,2]*Y[2,1]`.
/// The output parses back to the same element.
impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let many = self.terms.len() > 1;
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.leading_is_negative();
            let a = if neg { -c } else { c.clone() };
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                if (many || neg) && a.is_compound() {
                    write!(f, "({a})")?;
                } else {
                    write!(f, "{a}")?;
                }
                continue;
            }
            if !a.is_one() {
                if a.is_compound() {
                    write!(f, "({a})*")?;
                } else {
                    write!(f, "{a}*")?;
                }
            }
            m.fmt_with(self.shape, f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::LaurentPoly;

    fn s(n: usize) -> Shape {
        Shape::square(n).unwrap()
    }

    fn y(shape: Shape, i: usize, a: usize) -> Element {
        Element::generator(shape, i, a).unwrap()
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomial_count(s(3), 1), 9);
        assert_eq!(monomial_count(s(3), 2), 45);
        assert_eq!(monomial_count(s(3), 3), 165);
        assert_eq!(monomial_count(s(3), 0), 1);
        for d in 0..4 {
            assert_eq!(monomials_of_degree(s(3), d).len() as u128, monomial_count(s(3), d));
        }
    }

    #[test]
    fn arithmetic() {
        let sh = s(2);
        let x = &y(sh, 1, 1) + &y(sh, 1, 2);
        let z = &y(sh, 1, 1) - &y(sh, 1, 2);
        assert_eq!(&x + &z, y(sh, 1, 1).scale(&RationalFunction::integer(2)));
        assert!((&x - &x).is_zero());
        assert_eq!(x.scale(&RationalFunction::one()), x);
        assert!(x.checked_add(&y(s(3), 1, 1)).is_err());
    }

    #[test]
    fn homogeneous_components() {
        let sh = s(2);
        let alg = Algebra::new(sh);
        let x = &y(sh, 1, 1) + &alg.multiply(&y(sh, 1, 1), &y(sh, 2, 2)).unwrap();
        assert_eq!(x.homogeneous_component(1), y(sh, 1, 1));
        assert!(Element::zero(sh).homogeneous_component(4).is_zero());
        let sum = &x.homogeneous_component(1) + &x.homogeneous_component(2);
        assert_eq!(sum, x);
    }

    #[test]
    fn display_forms() {
        let sh = s(2);
        let x = &y(sh, 1, 1) - &y(sh, 2, 1).scale(&RationalFunction::from_poly(LaurentPoly::q_minus_q_inv()));
        assert_eq!(x.to_string(), "Y[1,1] - (q - q^-1)*Y[2,1]");
        assert_eq!(Element::zero(sh).to_string(), "0");
        assert_eq!(Element::one(sh).to_string(), "1");
        let sq = Element::monomial(
            sh,
            Monomial::from_exponents(vec![2, 0, 0, 1]),
            RationalFunction::integer(-3),
        );
        assert_eq!(sq.to_string(), "-3*Y[1,1]^2*Y[2,2]");
        let c = Element::scalar(sh, -RationalFunction::from_poly(LaurentPoly::q_minus_q_inv()));
        assert_eq!(c.to_string(), "-(q - q^-1)");
    }

    #[test]
    fn out_of_range_generator() {
        assert!(matches!(Element::generator(s(2), 3, 1), Err(Error::IndexOutOfRange(_))));
    }
}
