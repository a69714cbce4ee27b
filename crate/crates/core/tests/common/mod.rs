//! Helpers shared by the integration tests: an independent minor oracle and
//! seeded random elements.

#![allow(dead_code)]

use qmatrix::coeff::{LaurentPoly, RationalFunction};
use qmatrix::pbw::{Algebra, Element, Monomial, Shape};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The `k`-th permutation of `0..t` in lexicographic order, decoded from
/// its Lehmer code.
pub fn lehmer_permutation(t: usize, mut k: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..t).collect();
    let mut out = Vec::with_capacity(t);
    for i in (0..t).rev() {
        let f: usize = (1..=i).product();
        out.push(pool.remove(k / f));
        k %= f;
    }
    out
}

pub fn inversions(w: &[usize]) -> usize {
    let mut c = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                c += 1;
            }
        }
    }
    c
}

/// `[rows|cols]` by direct enumeration of S_t. Each summand's word has
/// increasing row indices, so it is written straight into an exponent
/// vector without any rewriting.
pub fn oracle_minor(shape: Shape, rows: &[usize], cols: &[usize]) -> Element {
    let t = rows.len();
    let count: usize = (1..=t).product();
    let mut terms = Vec::new();
    for k in 0..count {
        let w = lehmer_permutation(t, k);
        let mut exps = vec![0u16; shape.num_generators()];
        for (r, &wi) in rows.iter().zip(&w) {
            exps[(r - 1) * shape.cols + (cols[wi] - 1)] += 1;
        }
        let len = inversions(&w) as i32;
        let mut c = RationalFunction::q_pow(len);
        if len % 2 == 1 {
            c = -c;
        }
        terms.push((Monomial::from_exponents(exps), c));
    }
    Element::from_terms(shape, terms)
}

/// All strictly increasing subsets of `1..=n` of size `t`.
pub fn subsets(n: usize, t: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, t: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            go(i + 1, n, t, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, t, &mut Vec::new(), &mut out);
    out
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_coeff(rng: &mut impl Rng) -> RationalFunction {
    let choices = [
        RationalFunction::one(),
        -RationalFunction::one(),
        RationalFunction::q(),
        RationalFunction::q_pow(-1),
        RationalFunction::integer(2),
        RationalFunction::from(LaurentPoly::q_minus_q_inv()),
        RationalFunction::integer(-3),
    ];
    choices.choose(rng).unwrap().clone()
}

pub fn random_monomial(rng: &mut impl Rng, shape: Shape, maxdeg: u32) -> Monomial {
    let d = rng.gen_range(0..=maxdeg);
    let mut exps = vec![0u16; shape.num_generators()];
    for _ in 0..d {
        exps[rng.gen_range(0..shape.num_generators())] += 1;
    }
    Monomial::from_exponents(exps)
}

/// A random element with at most `max_terms` terms of degree at most
/// `maxdeg`.
pub fn random_element(rng: &mut impl Rng, shape: Shape, maxdeg: u32, max_terms: usize) -> Element {
    let k = rng.gen_range(1..=max_terms);
    let terms: Vec<_> = (0..k)
        .map(|_| (random_monomial(rng, shape, maxdeg), random_coeff(rng)))
        .collect();
    Element::from_terms(shape, terms)
}

/// Nonzero homogeneous element of degree `d`.
pub fn random_homogeneous(rng: &mut impl Rng, shape: Shape, d: u32, max_terms: usize) -> Element {
    loop {
        let k = rng.gen_range(1..=max_terms);
        let terms: Vec<_> = (0..k)
            .map(|_| {
                let mut exps = vec![0u16; shape.num_generators()];
                for _ in 0..d {
                    exps[rng.gen_range(0..shape.num_generators())] += 1;
                }
                (Monomial::from_exponents(exps), random_coeff(rng))
            })
            .collect();
        let x = Element::from_terms(shape, terms);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn square(n: usize) -> Algebra {
    Algebra::square(n).unwrap()
}
