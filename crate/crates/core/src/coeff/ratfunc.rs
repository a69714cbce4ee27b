use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::laurent::LaurentPoly;
use super::upoly;
use crate::error::{Error, Result};

/// An element of the rational function field Q(q).
///
/// Always reduced: numerator and denominator are coprime, the denominator
/// is an honest polynomial with nonzero constant term and leading
/// coefficient 1, and zero is `0/1`. Equality is therefore structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl RationalFunction {
    pub fn zero() -> Self {
        Self {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn q() -> Self {
        Self::from_poly(LaurentPoly::q())
    }

    pub fn q_pow(k: i32) -> Self {
        Self::from_poly(LaurentPoly::q_pow(k))
    }

    pub fn integer(c: i64) -> Self {
        Self::from_poly(LaurentPoly::integer(c))
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn from_poly(num: LaurentPoly) -> Self {
        Self {
            num,
            den: LaurentPoly::one(),
        }
    }

    /// Builds and reduces `num / den`.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_one() {
            return Self::from_poly(num);
        }
        let (s, d) = den.dense();
        let (t, n) = num.dense();
        if d.len() == 1 {
            let c = &d[0];
            let num = LaurentPoly::from_dense(t - s, n.iter().map(|x| x / c).collect());
            return Self::from_poly(num);
        }
        let g = upoly::gcd(n, d);
        let (mut n, mut d) = if g.len() > 1 {
            (upoly::divrem(n, &g).0, upoly::divrem(d, &g).0)
        } else {
            (n.to_vec(), d.to_vec())
        };
        let lc = d.last().unwrap().clone();
        if !lc.is_one() {
            upoly::make_monic(&mut d);
            for c in n.iter_mut() {
                *c /= &lc;
            }
        }
        Self {
            num: LaurentPoly::from_dense(t - s, n),
            den: LaurentPoly::from_dense(0, d),
        }
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        self.is_laurent().then_some(&self.num)
    }

    /// The value as a rational number, if it does not depend on `q`.
    pub fn as_constant(&self) -> Option<&BigRational> {
        if self.is_zero() {
            return None;
        }
        self.as_laurent().and_then(LaurentPoly::as_constant)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// Integer power; negative exponents invert.
    pub fn powi(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// `(-q)^k`.
    pub fn neg_q_pow(k: i32) -> Self {
        let r = Self::q_pow(k);
        if k.rem_euclid(2) == 1 {
            -r
        } else {
            r
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Evaluates at `q = v`.
    pub fn eval(&self, v: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(v)?;
        if d.is_zero() {
            return Err(Error::PoleAtSpecialization(v.to_string()));
        }
        Ok(self.num.eval(v)? / d)
    }

    /// Sign of the highest-degree numerator coefficient; the denominator is
    /// monic so this is the sign used when printing.
    pub fn leading_is_negative(&self) -> bool {
        self.num.leading_coeff().is_some_and(|c| c.is_negative())
    }

    /// True if printing needs parentheses when used as a factor.
    pub(crate) fn is_compound(&self) -> bool {
        !self.is_laurent() || self.num.num_terms() > 1
    }
}

impl Add<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;

    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::reduce(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::reduce(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;

    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;

    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;

    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        if self.is_laurent() && rhs.is_laurent() {
            return RationalFunction::from_poly(&self.num * &rhs.num);
        }
        RationalFunction::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Panics on division by zero; use [`RationalFunction::checked_div`] when the
/// divisor is not known to be nonzero.
impl Div<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;

    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction { (&self).$m(&rhs) }
        }
        impl $tr<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: &RationalFunction) -> RationalFunction { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for RationalFunction {
    type Output = RationalFunction;

    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }

    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        RationalFunction::one()
    }
}

impl From<LaurentPoly> for RationalFunction {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl From<i64> for RationalFunction {
    fn from(c: i64) -> Self {
        Self::integer(c)
    }
}

impl From<BigRational> for RationalFunction {
    fn from(c: BigRational) -> Self {
        Self::constant(c)
    }
}

fn fmt_paren(f: &mut fmt::Formatter<'_>, p: &LaurentPoly) -> fmt::Result {
    if p.num_terms() > 1 {
        write!(f, "({p})")
    } else {
        write!(f, "{p}")
    }
}

/// `num` when the denominator is 1, otherwise `(num)/(den)` with
/// parentheses dropped around single terms.
impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_laurent() {
            return write!(f, "{}", self.num);
        }
        fmt_paren(f, &self.num)?;
        write!(f, "/")?;
        if self.den.num_terms() > 1 {
            write!(f, "({})", self.den)
        } else {
            write!(f, "{}", self.den)
        }
    }
}
