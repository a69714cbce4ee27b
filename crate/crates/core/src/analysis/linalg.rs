//! Sparse exact linear algebra: kernels of systems split into independent
//! blocks, solved over Q(q) directly or guided by specializations of q.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::coeff::RationalFunction;
use crate::error::Result;

/// The operations Gaussian elimination needs.
pub trait Field: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Panics when `rhs` is zero.
    fn div(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Rough size used to prefer small pivots.
    fn weight(&self) -> usize {
        1
    }
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn weight(&self) -> usize {
        (self.numer().bits() + self.denom().bits()) as usize
    }
}

impl Field for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn one() -> Self {
        RationalFunction::one()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn weight(&self) -> usize {
        self.numer().num_terms() + self.denom().num_terms()
    }
}

/// Reduced row echelon form in place; returns the pivot columns, one per
/// nonzero row, which come first.
pub fn rref<F: Field>(rows: &mut Vec<Vec<F>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .min_by_key(|&i| rows[i][c].weight())
        else {
            continue;
        };
        rows.swap(r, p);
        let inv = F::one().div(&rows[r][c]);
        for x in rows[r][c..].iter_mut() {
            if !x.is_zero() {
                *x = x.mul(&inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !p.is_zero() {
                    *x = x.sub(&f.mul(p));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Kernel basis read off an RREF: one vector per free column, with a 1 in
/// that column.
fn kernel_from_rref<F: Field>(rows: &[Vec<F>], pivots: &[usize], ncols: usize) -> Vec<Vec<F>> {
    let mut is_pivot = vec![false; ncols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![F::zero(); ncols];
            v[f] = F::one();
            for (row, &p) in rows.iter().zip(pivots) {
                v[p] = row[f].neg();
            }
            v
        })
        .collect()
}

pub fn kernel<F: Field>(mut rows: Vec<Vec<F>>, ncols: usize) -> Vec<Vec<F>> {
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    let pivots = rref(&mut rows);
    kernel_from_rref(&rows, &pivots, ncols)
}

/// How a kernel over Q(q) is computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveMode {
    /// Rational-function elimination on every equation.
    Exact,
    /// Rank and independent equations are found at each listed value of q;
    /// the kernel is then solved exactly from those equations and checked
    /// against all of them, falling back to exact elimination on failure.
    Specialized(Vec<BigRational>),
}

impl SolveMode {
    pub fn specialized_default() -> Self {
        SolveMode::Specialized(crate::coeff::default_specializations())
    }
}

/// A homogeneous linear system with sparse rows over Q(q).
#[derive(Clone, Debug, Default)]
pub struct SparseSystem {
    ncols: usize,
    rows: Vec<BTreeMap<usize, RationalFunction>>,
}

/// Kernel of a [`SparseSystem`] together with how it was obtained.
#[derive(Clone, Debug)]
pub struct KernelResult {
    pub basis: Vec<Vec<RationalFunction>>,
    pub blocks: usize,
    /// Blocks whose specialized solution failed exact checking.
    pub fallbacks: usize,
}

impl SparseSystem {
    pub fn new(ncols: usize) -> Self {
        Self {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn push_row(&mut self, row: BTreeMap<usize, RationalFunction>) {
        let row: BTreeMap<_, _> = row.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if !row.is_empty() {
            assert!(row.keys().all(|&c| c < self.ncols), "column out of range");
            self.rows.push(row);
        }
    }

    /// Connected components of the column graph: returns, per block, its
    /// columns and rows. Columns touched by no row form singleton blocks.
    fn blocks(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let mut parent: Vec<usize> = (0..self.ncols).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for row in &self.rows {
            let mut cols = row.keys();
            let first = *cols.next().expect("rows are nonempty");
            for &c in cols {
                let (a, b) = (find(&mut parent, first), find(&mut parent, c));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut by_root: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
        for c in 0..self.ncols {
            let r = find(&mut parent, c);
            by_root.entry(r).or_default().0.push(c);
        }
        for (i, row) in self.rows.iter().enumerate() {
            let c = *row.keys().next().unwrap();
            let r = find(&mut parent, c);
            by_root.get_mut(&r).unwrap().1.push(i);
        }
        by_root.into_values().collect()
    }

    fn dense_block(&self, cols: &[usize], rows: &[usize]) -> Vec<Vec<RationalFunction>> {
        let local: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        rows.iter()
            .map(|&r| {
                let mut v = vec![RationalFunction::zero(); cols.len()];
                for (c, x) in &self.rows[r] {
                    v[local[c]] = x.clone();
                }
                v
            })
            .collect()
    }

    /// Kernel basis over Q(q), in RREF with respect to the column order.
    pub fn kernel(&self, mode: &SolveMode) -> Result<KernelResult> {
        let blocks = self.blocks();
        let solved: Vec<(Vec<Vec<RationalFunction>>, bool)> = blocks
            .par_iter()
            .map(|(cols, rows)| {
                let dense = self.dense_block(cols, rows);
                let (local, fallback) = match mode {
                    SolveMode::Exact => (kernel(dense, cols.len()), false),
                    SolveMode::Specialized(values) => guided_kernel(dense, cols.len(), values)?,
                };
                let lifted = local
                    .into_iter()
                    .map(|v| {
                        let mut full = vec![RationalFunction::zero(); self.ncols];
                        for (x, &c) in v.into_iter().zip(cols) {
                            full[c] = x;
                        }
                        full
                    })
                    .collect();
                Ok((lifted, fallback))
            })
            .collect::<Result<_>>()?;
        let fallbacks = solved.iter().filter(|(_, f)| *f).count();
        let mut basis: Vec<_> = solved.into_iter().flat_map(|(b, _)| b).collect();
        rref(&mut basis);
        Ok(KernelResult {
            basis,
            blocks: blocks.len(),
            fallbacks,
        })
    }

    /// Whether `v` satisfies every equation exactly.
    pub fn satisfied_by(&self, v: &[RationalFunction]) -> bool {
        self.rows.iter().all(|row| {
            row.iter()
                .fold(RationalFunction::zero(), |acc, (&c, x)| &acc + &(x * &v[c]))
                .is_zero()
        })
    }
}

/// Indices of a maximal independent subset of `rows`, scanning in order.
fn independent_rows(rows: &[Vec<BigRational>]) -> Vec<usize> {
    let mut echelon: Vec<(usize, Vec<BigRational>)> = Vec::new();
    let mut keep = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut r = row.clone();
        for (p, e) in &echelon {
            if !Field::is_zero(&r[*p]) {
                let f = r[*p].clone();
                for (x, y) in r.iter_mut().zip(e) {
                    if !Field::is_zero(y) {
                        *x -= &f * y;
                    }
                }
            }
        }
        if let Some(p) = r.iter().position(|x| !Field::is_zero(x)) {
            let inv = <BigRational as One>::one() / &r[p];
            for x in r.iter_mut() {
                *x *= &inv;
            }
            echelon.push((p, r));
            keep.push(i);
        }
    }
    keep
}

/// Kernel of one dense block guided by specializations: the value of q
/// giving the largest rank selects the equations to eliminate exactly.
/// Sound because rank can only drop under specialization, and every
/// returned vector is checked against the full block.
fn guided_kernel(
    block: Vec<Vec<RationalFunction>>,
    ncols: usize,
    values: &[BigRational],
) -> Result<(Vec<Vec<RationalFunction>>, bool)> {
    let mut best: Option<Vec<usize>> = None;
    for v in values {
        let special = block
            .iter()
            .map(|r| r.iter().map(|x| x.eval(v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>();
        // A pole at v just disqualifies that value.
        let Ok(special) = special else { continue };
        let rows = independent_rows(&special);
        if best.as_ref().is_none_or(|b| rows.len() > b.len()) {
            best = Some(rows);
        }
    }
    let Some(selected) = best else {
        return Ok((kernel(block, ncols), true));
    };
    let sub: Vec<_> = selected.iter().map(|&i| block[i].clone()).collect();
    let candidate = kernel(sub, ncols);
    let ok = candidate.iter().all(|v| {
        block.iter().all(|row| {
            row.iter()
                .zip(v)
                .fold(RationalFunction::zero(), |acc, (a, b)| &acc + &(a * b))
                .is_zero()
        })
    });
    if ok {
        Ok((candidate, false))
    } else {
        Ok((kernel(block, ncols), true))
    }
}
