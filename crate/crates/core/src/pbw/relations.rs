use std::fmt;

use serde::Serialize;

use super::{Algebra, Element, Gen, Shape};
use crate::coeff::RationalFunction;
use crate::error::Result;

/// Which of the four defining relations an instance belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationKind {
    SameRow,
    SameColumn,
    Commuting,
    Cross,
}

impl RelationKind {
    pub fn number(&self) -> u8 {
        match self {
            RelationKind::SameRow => 1,
            RelationKind::SameColumn => 2,
            RelationKind::Commuting => 3,
            RelationKind::Cross => 4,
        }
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "relation {}", self.number())
    }
}

/// One instance `lhs.0 * lhs.1 = sum c * x * y` of a defining relation.
///
/// These are stated with the textbook coefficients in `q`, independently of
/// the coefficients an [`Algebra`] uses for straightening, so that a
/// sandboxed algebra with altered coefficients fails the check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationInstance {
    pub kind: RelationKind,
    pub lhs: (Gen, Gen),
    pub rhs: Vec<(RationalFunction, Gen, Gen)>,
}

impl RelationInstance {
    /// Evaluates `lhs - rhs` with each generator pair `(a, b)` replaced by
    /// `pair(a, b)`.
    pub fn residual_with<F>(&self, shape: Shape, mut pair: F) -> Result<Element>
    where
        F: FnMut(Gen, Gen) -> Result<Element>,
    {
        let mut acc = pair(self.lhs.0, self.lhs.1)?;
        for (c, x, y) in &self.rhs {
            acc = acc.checked_sub(&pair(*x, *y)?.scale(c))?;
        }
        debug_assert_eq!(acc.shape(), shape);
        Ok(acc)
    }

    /// `lhs - rhs` computed with the algebra's multiplication.
    pub fn residual(&self, alg: &Algebra) -> Result<Element> {
        self.residual_with(alg.shape(), |a, b| alg.multiply(&alg.gen(a), &alg.gen(b)))
    }

    pub fn indices(&self) -> [usize; 4] {
        [self.lhs.0.row, self.lhs.0.col, self.lhs.1.row, self.lhs.1.col]
    }
}

impl fmt::Display for RelationInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*{} = ", self.lhs.0, self.lhs.1)?;
        for (k, (c, x, y)) in self.rhs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{x}*{y}")?;
        }
        Ok(())
    }
}

/// Every instance of the defining relations for `shape`, one per unordered
/// pair of distinct generators, with `q` taking the given value.
pub fn defining_relations(shape: Shape, q: &RationalFunction) -> Vec<RelationInstance> {
    let q_inv = q.inv().expect("q must be nonzero");
    let cross = q - &q_inv;
    let one = RationalFunction::one();
    let gens: Vec<Gen> = shape.generators().collect();
    let mut out = Vec::new();
    for (s, &small) in gens.iter().enumerate() {
        for &big in &gens[s + 1..] {
            let (i, a) = (small.row, small.col);
            let (j, b) = (big.row, big.col);
            let (kind, rhs) = if i == j {
                (RelationKind::SameRow, vec![(q_inv.clone(), small, big)])
            } else if a == b {
                (RelationKind::SameColumn, vec![(q_inv.clone(), small, big)])
            } else if b < a {
                (RelationKind::Commuting, vec![(one.clone(), small, big)])
            } else {
                (
                    RelationKind::Cross,
                    vec![(one.clone(), small, big), (-&cross, Gen::new(i, b), Gen::new(j, a))],
                )
            };
            out.push(RelationInstance {
                kind,
                lhs: (big, small),
                rhs,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_per_kind() {
        let s = Shape::square(3).unwrap();
        let rels = defining_relations(s, &RationalFunction::q());
        assert_eq!(rels.len(), 36);
        let count = |k| rels.iter().filter(|r| r.kind == k).count();
        assert_eq!(count(RelationKind::SameRow), 9);
        assert_eq!(count(RelationKind::SameColumn), 9);
        assert_eq!(count(RelationKind::Commuting), 9);
        assert_eq!(count(RelationKind::Cross), 9);
    }

    #[test]
    fn all_relations_vanish() {
        for (m, n) in [(2, 2), (3, 3), (2, 3), (3, 2)] {
            let alg = Algebra::new(Shape::new(m, n).unwrap());
            for r in defining_relations(alg.shape(), alg.q()) {
                assert!(r.residual(&alg).unwrap().is_zero(), "{r}");
            }
        }
    }
}
