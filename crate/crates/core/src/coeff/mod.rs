//! Exact scalars: Laurent polynomials in `q` over Q and the field Q(q).
//!
//! Nothing here ever touches floating point. Specialization evaluates the
//! formal parameter at a rational value; solver fast paths only accept
//! values with `|v|` different from 0 and 1 so that `q` is never sent to a
//! root of unity.

mod laurent;
mod ratfunc;
pub(crate) mod upoly;

pub use laurent::LaurentPoly;
pub use ratfunc::RationalFunction;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};


/// Anything that can be evaluated at a rational value of `q`.
pub trait Specialize {
    fn specialize(&self, v: &BigRational) -> Result<BigRational>;
}

impl Specialize for LaurentPoly {
    fn specialize(&self, v: &BigRational) -> Result<BigRational> {
        self.eval(v)
    }
}

impl Specialize for RationalFunction {
    fn specialize(&self, v: &BigRational) -> Result<BigRational> {
        self.eval(v)
    }
}

/// Evaluates `x` at `q = v`.
pub fn specialize_q<S: Specialize + ?Sized>(x: &S, v: &BigRational) -> Result<BigRational> {
    x.specialize(v)
}

/// Rejects specialization points that are zero or of absolute value one.
pub fn check_admissible(v: &BigRational) -> Result<()> {
    if v.is_zero() {
        return Err(Error::ZeroSpecialization);
    }
    if v.abs().is_one() {
        return Err(Error::InadmissibleSpecialization(v.to_string()));
    }
    Ok(())
}

/// The default specialization points used by the linear solvers.
pub fn default_specializations() -> Vec<BigRational> {
    [2, 3, 5]
        .into_iter()
        .map(|k| BigRational::from_integer(k.into()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small_lp() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-3i32..=3, -4i64..=4), 0..4).prop_map(|ts| {
            LaurentPoly::from_terms(
                ts.into_iter()
                    .map(|(k, c)| (k, BigRational::from_integer(c.into()))),
            )
        })
    }

    fn small_rf() -> impl Strategy<Value = RationalFunction> {
        (small_lp(), small_lp()).prop_filter_map("zero denominator", |(n, d)| {
            RationalFunction::new(n, d).ok()
        })
    }

    fn admissible() -> impl Strategy<Value = BigRational> {
        (2i64..7, 1i64..4, any::<bool>()).prop_map(|(n, d, neg)| {
            let v = BigRational::new(n.into(), d.into());
            if neg {
                -v
            } else {
                v
            }
        })
    }

    proptest! {
        #[test]
        fn laurent_ring_axioms(a in small_lp(), b in small_lp(), c in small_lp()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn field_axioms(a in small_rf(), b in small_rf(), c in small_rf()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !b.is_zero() {
                prop_assert_eq!(&(&a * &b) / &b, a.clone());
            }
        }

        #[test]
        fn canonical_form_is_idempotent(a in small_rf()) {
            let again = RationalFunction::new(a.numer().clone(), a.denom().clone()).unwrap();
            prop_assert_eq!(again, a);
        }

        #[test]
        fn specialization_is_a_ring_homomorphism(a in small_rf(), b in small_rf(), v in admissible()) {
            if let (Ok(x), Ok(y)) = (a.eval(&v), b.eval(&v)) {
                prop_assert_eq!((&a * &b).eval(&v).unwrap(), &x * &y);
                prop_assert_eq!((&a + &b).eval(&v).unwrap(), &x + &y);
            }
        }
    }

    #[test]
    fn admissibility() {
        assert!(check_admissible(&BigRational::from_integer(2.into())).is_ok());
        assert!(check_admissible(&BigRational::from_integer((-1).into())).is_err());
        assert_eq!(
            check_admissible(&BigRational::zero()),
            Err(Error::ZeroSpecialization)
        );
    }
}
