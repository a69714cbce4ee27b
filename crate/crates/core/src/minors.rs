//! Quantum minors and the elements built from them.
//!
//! `[I|L]` is the signed sum over permutations `w` of
//! `(-q)^{len(w)} Y[i_1, l_{w(1)}] ... Y[i_t, l_{w(t)}]`, with `len` the
//! inversion count. Since the row indices increase along each word, every
//! summand is already an ordered PBW monomial.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::coeff::RationalFunction;
use crate::error::{Error, Result};
use crate::morphisms::{GeneratorMap, MapKind};
use crate::pbw::{Algebra, Element, Gen};

/// A strictly increasing list of 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    /// Rejects unsorted or repeated input instead of sorting it.
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::InvalidIndexSet("index set must not be empty".into()));
        }
        if indices.contains(&0) {
            return Err(Error::IndexOutOfRange("indices are 1-based".into()));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidIndexSet(format!(
                "{indices:?} is not strictly increasing"
            )));
        }
        Ok(Self(indices))
    }

    pub fn range(lo: usize, hi: usize) -> Result<Self> {
        Self::new((lo..=hi).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    /// `{1..n}` minus this set, `None` when that is empty.
    pub fn complement(&self, n: usize) -> Option<IndexSet> {
        let rest: Vec<usize> = (1..=n).filter(|i| !self.0.contains(i)).collect();
        (!rest.is_empty()).then_some(IndexSet(rest))
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Row and column sets of a quantum minor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MinorId {
    pub rows: IndexSet,
    pub cols: IndexSet,
}

impl MinorId {
    pub fn new(rows: IndexSet, cols: IndexSet) -> Result<Self> {
        if rows.len() != cols.len() {
            return Err(Error::SizeMismatch(format!(
                "{} rows but {} columns",
                rows.len(),
                cols.len()
            )));
        }
        Ok(Self { rows, cols })
    }

    pub fn from_slices(rows: &[usize], cols: &[usize]) -> Result<Self> {
        Self::new(IndexSet::new(rows.to_vec())?, IndexSet::new(cols.to_vec())?)
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// Swaps rows and columns.
    pub fn transposed(&self) -> MinorId {
        MinorId {
            rows: self.cols.clone(),
            cols: self.rows.clone(),
        }
    }
}

impl fmt::Display for MinorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}|{}]", self.rows, self.cols)
    }
}

/// All permutations of `0..t` in lexicographic order.
fn permutations(t: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..t).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..t.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..t).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// Number of inversions, the Coxeter length of a permutation.
pub fn permutation_length(w: &[usize]) -> usize {
    let mut n = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                n += 1;
            }
        }
    }
    n
}

/// The quantum minor `[I|L]`.
pub fn quantum_minor(alg: &Algebra, id: &MinorId) -> Result<Element> {
    let shape = alg.shape();
    if let Some(&r) = id.rows.as_slice().last() {
        if r > shape.rows {
            return Err(Error::IndexOutOfRange(format!("row {r} in a {shape} algebra")));
        }
    }
    if let Some(&c) = id.cols.as_slice().last() {
        if c > shape.cols {
            return Err(Error::IndexOutOfRange(format!("column {c} in a {shape} algebra")));
        }
    }
    let t = id.size();
    let neg_q = -alg.q();
    let mut acc = alg.zero();
    for w in permutations(t) {
        let word: Vec<usize> = (0..t)
            .map(|k| shape.index(Gen::new(id.rows.0[k], id.cols.0[w[k]])))
            .collect();
        let sign = neg_q.powi(permutation_length(&w) as i32)?;
        acc = &acc + &alg.index_word_product(&word).scale(&sign);
    }
    Ok(acc)
}

/// The quantum determinant `[1..n|1..n]` of a square algebra.
pub fn quantum_determinant(alg: &Algebra) -> Result<Element> {
    let n = alg.shape().require_square()?;
    let all = IndexSet::range(1, n)?;
    quantum_minor(alg, &MinorId::new(all.clone(), all)?)
}

/// The minor behind `b_i` for `1 <= i < 2n`; `None` for `i = 2n`.
pub fn b_minor_id(i: usize, n: usize) -> Result<Option<MinorId>> {
    if i == 0 || i > 2 * n {
        return Err(Error::IndexOutOfRange(format!("b_{i} needs 1 <= i <= {}", 2 * n)));
    }
    if i == 2 * n {
        return Ok(None);
    }
    let id = if i <= n {
        MinorId::new(IndexSet::range(1, i)?, IndexSet::range(n - i + 1, n)?)?
    } else {
        MinorId::new(IndexSet::range(i - n + 1, n)?, IndexSet::range(1, 2 * n - i)?)?
    };
    Ok(Some(id))
}

/// The staircase minor `b_i`, with `b_{2n} = 1`.
pub fn b_element(alg: &Algebra, i: usize) -> Result<Element> {
    let n = alg.shape().require_square()?;
    match b_minor_id(i, n)? {
        Some(id) => quantum_minor(alg, &id),
        None => Ok(alg.one()),
    }
}

/// Degree of `b_i`: `i` up to `n`, `2n - i` beyond.
pub fn b_degree(i: usize, n: usize) -> usize {
    if i <= n {
        i
    } else {
        2 * n - i
    }
}

/// A commutative polynomial in `X_1..X_n` with rational coefficients, as a
/// list of `(exponents, coefficient)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CommPoly {
    nvars: usize,
    terms: Vec<(Vec<u32>, BigRational)>,
}

impl CommPoly {
    pub fn new(nvars: usize) -> Self {
        Self { nvars, terms: Vec::new() }
    }

    pub fn with_term(mut self, exps: Vec<u32>, c: BigRational) -> Self {
        assert_eq!(exps.len(), self.nvars);
        if let Some(t) = self.terms.iter_mut().find(|t| t.0 == exps) {
            t.1 += c;
        } else {
            self.terms.push((exps, c));
        }
        self.terms.retain(|t| !t.1.is_zero());
        self
    }

    /// `X_j` (1-based).
    pub fn var(nvars: usize, j: usize) -> Self {
        let mut e = vec![0; nvars];
        e[j - 1] = 1;
        Self::new(nvars).with_term(e, BigRational::from_integer(1.into()))
    }

    pub fn plus_constant(self, c: i64) -> Self {
        let n = self.nvars;
        self.with_term(vec![0; n], BigRational::from_integer(c.into()))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Vec<u32>, BigRational)] {
        &self.terms
    }

    /// Degree in `X_j` (1-based).
    pub fn degree_in(&self, j: usize) -> u32 {
        self.terms.iter().map(|t| t.0[j - 1]).max().unwrap_or(0)
    }
}

/// The normal element attached to `V`:
/// `sum_a c_a prod_j b_j^{a_j} b_{n+j}^{r_j - a_j}` where `r_j` is the
/// degree of `V` in `X_j`. Factors are multiplied for `j = 1..n`, with
/// `b_{n+j}` after `b_j`.
pub fn normal_from_polynomial(alg: &Algebra, v: &CommPoly) -> Result<Element> {
    let n = alg.shape().require_square()?;
    if v.nvars() != n {
        return Err(Error::SizeMismatch(format!(
            "polynomial in {} variables for n = {n}",
            v.nvars()
        )));
    }
    let r: Vec<u32> = (1..=n).map(|j| v.degree_in(j)).collect();
    let b: Vec<Element> = (1..=2 * n).map(|i| b_element(alg, i)).collect::<Result<_>>()?;
    let mut acc = alg.zero();
    for (exps, c) in v.terms() {
        let mut term = alg.one();
        for j in 1..=n {
            term = alg.multiply(&term, &alg.pow(&b[j - 1], exps[j - 1])?)?;
            term = alg.multiply(&term, &alg.pow(&b[n + j - 1], r[j - 1] - exps[j - 1])?)?;
        }
        let c = alg.coerce_scalar(&RationalFunction::constant(c.clone()))?;
        acc = &acc + &term.scale(&c);
    }
    Ok(acc)
}

/// The anti-endomorphism sending `Y[i,a]` to `(-q)^{i-a} [{a}~ | {i}~]`,
/// the complementary `(n-1)x(n-1)` minor; for `n = 1` the image is 1.
pub fn gamma_map(alg: &Algebra) -> Result<GeneratorMap> {
    let n = alg.shape().require_square()?;
    let neg_q = -alg.q();
    let mut images = Vec::with_capacity(n * n);
    for g in alg.shape().generators() {
        let rows = IndexSet::new(vec![g.col])?.complement(n);
        let cols = IndexSet::new(vec![g.row])?.complement(n);
        let minor = match (rows, cols) {
            (Some(r), Some(c)) => quantum_minor(alg, &MinorId::new(r, c)?)?,
            _ => alg.one(),
        };
        let sign = neg_q.powi(g.row as i32 - g.col as i32)?;
        images.push(minor.scale(&sign));
    }
    GeneratorMap::new(alg.shape(), images, MapKind::AntiHomomorphism)
}

/// `gamma(x)`: reverse each PBW word, substitute generator images, multiply.
pub fn gamma(alg: &Algebra, x: &Element) -> Result<Element> {
    gamma_map(alg)?.apply(alg, x)
}
