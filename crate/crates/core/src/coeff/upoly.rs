//! Dense univariate polynomials over the rationals, ascending coefficient
//! order, used for gcd reduction of rational functions.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub(crate) fn trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Quotient and remainder of `a` by a nonzero `b`.
pub(crate) fn divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut rem = a.to_vec();
    trim(&mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead = b.last().unwrap();
    let mut quot = vec![BigRational::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() / lead;
        for (i, bc) in b.iter().enumerate() {
            let t = &c * bc;
            rem[shift + i] -= t;
        }
        quot[shift] = c;
        rem.pop();
        trim(&mut rem);
    }
    (quot, rem)
}

/// Monic greatest common divisor. Both inputs nonzero.
pub(crate) fn gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = r;
    }
    make_monic(&mut x);
    x
}

pub(crate) fn make_monic(p: &mut [BigRational]) {
    if let Some(lc) = p.last().cloned() {
        if !lc.is_one() {
            for c in p.iter_mut() {
                *c /= &lc;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Vec<BigRational> {
        cs.iter().map(|&c| BigRational::from_integer(c.into())).collect()
    }

    #[test]
    fn gcd_of_difference_of_squares() {
        // (q^2 - 1, q - 1) -> q - 1
        assert_eq!(gcd(&p(&[-1, 0, 1]), &p(&[-1, 1])), p(&[-1, 1]));
    }

    #[test]
    fn divrem_exact() {
        let (q, r) = divrem(&p(&[-1, 0, 1]), &p(&[1, 1]));
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_empty());
    }

    #[test]
    fn coprime_gcd_is_one() {
        assert_eq!(gcd(&p(&[1, 1]), &p(&[-1, 1])), p(&[1]));
    }
}
