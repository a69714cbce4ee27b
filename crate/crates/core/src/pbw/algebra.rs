use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_rational::BigRational;

use super::{add_term, Element, Gen, Monomial, Shape, Terms, Word};
use crate::coeff::{check_admissible, RationalFunction};
use crate::error::Result;

/// Coefficients of the four straightening rules. For `i < j`, `a < b`:
///
/// ```text
/// Y[i,b] Y[i,a] = row       * Y[i,a] Y[i,b]
/// Y[j,a] Y[i,a] = column    * Y[i,a] Y[j,a]
/// Y[j,a] Y[i,b] = commuting * Y[i,b] Y[j,a]
/// Y[j,b] Y[i,a] = cross_lead * Y[i,a] Y[j,b] - cross * Y[i,b] Y[j,a]
/// ```
///
/// The standard values are `q^-1, q^-1, 1, 1, q - q^-1`. Other values give
/// a deliberately broken rewriting system for harness sanity checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relations {
    pub row: RationalFunction,
    pub column: RationalFunction,
    pub commuting: RationalFunction,
    pub cross_lead: RationalFunction,
    pub cross: RationalFunction,
}

impl Relations {
    pub fn standard(q: &RationalFunction) -> Self {
        let q_inv = q.inv().expect("q must be nonzero");
        Self {
            row: q_inv.clone(),
            column: q_inv.clone(),
            commuting: RationalFunction::one(),
            cross_lead: RationalFunction::one(),
            cross: q - &q_inv,
        }
    }

    /// The five coefficients, in declaration order, for fault injection.
    pub fn coefficients_mut(&mut self) -> [&mut RationalFunction; 5] {
        [
            &mut self.row,
            &mut self.column,
            &mut self.commuting,
            &mut self.cross_lead,
            &mut self.cross,
        ]
    }
}

/// Inversion-selection rule for [`Algebra::straighten_word_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Always rewrite the leftmost adjacent out-of-order pair.
    Leftmost,
    Rightmost,
    /// Pick among the out-of-order pairs pseudo-randomly.
    Shuffled(u64),
}

type Product = Arc<[(Monomial, RationalFunction)]>;

/// A quantum matrix algebra of a fixed shape, with its multiplication.
///
/// Holds the value of `q` (the formal parameter, or a rational number for a
/// specialized algebra), the straightening coefficients and a memo of
/// monomial-times-generator products. The memo is behind a lock so an
/// `Algebra` can be shared between threads.
#[derive(Debug)]
pub struct Algebra {
    shape: Shape,
    q: RationalFunction,
    specialization: Option<BigRational>,
    relations: Relations,
    standard: bool,
    memo: RwLock<HashMap<(Monomial, usize), Product>>,
}

impl Algebra {
    /// The generic algebra over Q(q).
    pub fn new(shape: Shape) -> Self {
        let q = RationalFunction::q();
        Self::build(shape, q, None, None)
    }

    pub fn square(n: usize) -> Result<Self> {
        Ok(Self::new(Shape::square(n)?))
    }

    /// The algebra with `q` replaced by an admissible rational `v`.
    pub fn specialized(shape: Shape, v: BigRational) -> Result<Self> {
        check_admissible(&v)?;
        let q = RationalFunction::constant(v.clone());
        Ok(Self::build(shape, q, Some(v), None))
    }

    /// An algebra with arbitrary straightening coefficients.
    pub fn with_relations(shape: Shape, relations: Relations) -> Self {
        Self::build(shape, RationalFunction::q(), None, Some(relations))
    }

    fn build(shape: Shape, q: RationalFunction, v: Option<BigRational>, rel: Option<Relations>) -> Self {
        let standard_rel = Relations::standard(&q);
        let standard = rel.as_ref().is_none_or(|r| *r == standard_rel);
        Self {
            shape,
            relations: rel.unwrap_or(standard_rel),
            q,
            specialization: v,
            standard,
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    /// The value of `q` in this algebra.
    pub fn q(&self) -> &RationalFunction {
        &self.q
    }

    pub fn specialization(&self) -> Option<&BigRational> {
        self.specialization.as_ref()
    }

    pub fn relations(&self) -> &Relations {
        &self.relations
    }

    /// False for sandboxed algebras with altered relation coefficients.
    pub fn is_standard(&self) -> bool {
        self.standard
    }

    /// Brings a scalar into this algebra's coefficient domain (evaluates it
    /// at `q = v` for a specialized algebra).
    pub fn coerce_scalar(&self, c: &RationalFunction) -> Result<RationalFunction> {
        match &self.specialization {
            Some(v) => Ok(RationalFunction::constant(c.eval(v)?)),
            None => Ok(c.clone()),
        }
    }

    /// Brings an element built over Q(q) into this algebra.
    pub fn coerce(&self, x: &Element) -> Result<Element> {
        self.check_shape(x)?;
        match &self.specialization {
            Some(v) => x.specialize(v),
            None => Ok(x.clone()),
        }
    }

    pub fn generator(&self, row: usize, col: usize) -> Result<Element> {
        Element::generator(self.shape, row, col)
    }

    pub fn gen(&self, g: Gen) -> Element {
        Element::gen(self.shape, g)
    }

    pub fn one(&self) -> Element {
        Element::one(self.shape)
    }

    pub fn zero(&self) -> Element {
        Element::zero(self.shape)
    }

    pub fn scalar(&self, c: RationalFunction) -> Element {
        Element::scalar(self.shape, c)
    }

    pub(crate) fn check_shape(&self, x: &Element) -> Result<()> {
        self.shape.check_same(&x.shape())
    }

    /// Rewrites `Y_big Y_small` (with `big > small`) as a combination of
    /// ordered pairs `(coeff, x, y)`, `x < y`.
    pub(crate) fn pair_rewrite(&self, big: usize, small: usize) -> Vec<(RationalFunction, usize, usize)> {
        debug_assert!(big > small);
        let s = self.shape;
        let Gen { row: j, col: b } = s.gen_at(big);
        let Gen { row: i, col: a } = s.gen_at(small);
        let r = &self.relations;
        if i == j {
            vec![(r.row.clone(), small, big)]
        } else if a == b {
            vec![(r.column.clone(), small, big)]
        } else if b < a {
            vec![(r.commuting.clone(), small, big)]
        } else {
            let ib = s.index(Gen::new(i, b));
            let ja = s.index(Gen::new(j, a));
            vec![(r.cross_lead.clone(), small, big), (-&r.cross, ib, ja)]
        }
    }

    /// PBW normal form of a word by repeated rewriting of the leftmost
    /// adjacent out-of-order pair.
    pub fn straighten_word(&self, word: &Word) -> Result<Element> {
        self.straighten_word_with(word, Strategy::Leftmost)
    }

    pub fn straighten_word_with(&self, word: &Word, strategy: Strategy) -> Result<Element> {
        let idx = self.word_indices(word)?;
        let mut rng = match strategy {
            Strategy::Shuffled(seed) => seed | 1,
            _ => 0,
        };
        let mut pending: BTreeMap<Vec<usize>, RationalFunction> = BTreeMap::new();
        pending.insert(idx, RationalFunction::one());
        let mut out = Terms::new();
        while let Some((w, c)) = pending.pop_first() {
            let inversions: Vec<usize> = (0..w.len().saturating_sub(1)).filter(|&p| w[p] > w[p + 1]).collect();
            let Some(&first) = inversions.first() else {
                let mut m = Monomial::one(self.shape);
                for &g in &w {
                    m.0[g] += 1;
                }
                add_term(&mut out, m, c);
                continue;
            };
            let p = match strategy {
                Strategy::Leftmost => first,
                Strategy::Rightmost => *inversions.last().unwrap(),
                Strategy::Shuffled(_) => {
                    rng ^= rng << 13;
                    rng ^= rng >> 7;
                    rng ^= rng << 17;
                    inversions[(rng % inversions.len() as u64) as usize]
                }
            };
            for (k, x, y) in self.pair_rewrite(w[p], w[p + 1]) {
                let mut nw = w.clone();
                nw[p] = x;
                nw[p + 1] = y;
                let coeff = &c * &k;
                if coeff.is_zero() {
                    continue;
                }
                match pending.get_mut(&nw) {
                    Some(e) => {
                        *e = &*e + &coeff;
                        if e.is_zero() {
                            pending.remove(&nw);
                        }
                    }
                    None => {
                        pending.insert(nw, coeff);
                    }
                }
            }
        }
        Ok(Element::from_map(self.shape, out))
    }

    fn word_indices(&self, word: &Word) -> Result<Vec<usize>> {
        word.0
            .iter()
            .map(|g| self.shape.generator(g.row, g.col).map(|g| self.shape.index(g)))
            .collect()
    }

    /// Normal form of `m * Y_g`.
    ///
    /// If `Y_t` is the largest generator of `m` and `t > g`, then
    /// `m Y_g = m' (Y_t Y_g)` and the pair is rewritten into terms
    /// `x y` with `x, y <= t`; each term recurses as `(m' x) y`. The count of
    /// `Y_t` strictly drops, so the recursion terminates.
    fn mono_times_gen(&self, m: &Monomial, g: usize) -> Product {
        match m.top() {
            Some(t) if t > g => {}
            _ => return Arc::from(vec![(m.with_added(g), RationalFunction::one())]),
        }
        let key = (m.clone(), g);
        if let Some(hit) = self.memo.read().unwrap().get(&key) {
            return hit.clone();
        }
        let t = m.top().unwrap();
        let rest = m.with_removed(t);
        let mut acc = Terms::new();
        for (c, x, y) in self.pair_rewrite(t, g) {
            if c.is_zero() {
                continue;
            }
            for (u, cu) in self.mono_times_gen(&rest, x).iter() {
                let cc = &c * cu;
                for (w, cw) in self.mono_times_gen(u, y).iter() {
                    add_term(&mut acc, w.clone(), &cc * cw);
                }
            }
        }
        let out: Product = acc.into_iter().collect::<Vec<_>>().into();
        self.memo.write().unwrap().insert(key, out.clone());
        out
    }

    fn terms_times_gen(&self, x: &Terms, g: usize) -> Terms {
        let mut out = Terms::new();
        for (m, c) in x {
            for (w, cw) in self.mono_times_gen(m, g).iter() {
                add_term(&mut out, w.clone(), c * cw);
            }
        }
        out
    }

    /// Product in PBW normal form.
    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check_shape(a)?;
        self.check_shape(b)?;
        let mut acc = Terms::new();
        for (mb, cb) in b.term_map() {
            let mut cur = a.term_map().clone();
            for g in mb.word() {
                cur = self.terms_times_gen(&cur, g);
            }
            for (m, c) in cur {
                add_term(&mut acc, m, &c * cb);
            }
        }
        Ok(Element::from_map(self.shape, acc))
    }

    /// Panicking form of [`Algebra::multiply`] for elements known to live in
    /// this algebra.
    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        self.multiply(a, b).expect("shape mismatch in multiplication")
    }

    /// Left-to-right product of several elements.
    pub fn product<'a>(&self, factors: impl IntoIterator<Item = &'a Element>) -> Result<Element> {
        let mut acc = self.one();
        for f in factors {
            acc = self.multiply(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, x: &Element, e: u32) -> Result<Element> {
        self.check_shape(x)?;
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.multiply(&acc, x)?;
        }
        Ok(acc)
    }

    /// Normal form of a product of generators (by flat index).
    pub(crate) fn index_word_product(&self, word: &[usize]) -> Element {
        let mut terms = Terms::new();
        terms.insert(Monomial::one(self.shape), RationalFunction::one());
        for &g in word {
            terms = self.terms_times_gen(&terms, g);
        }
        Element::from_map(self.shape, terms)
    }

    /// `a b - b a`.
    pub fn commutator(&self, a: &Element, b: &Element) -> Result<Element> {
        Ok(&self.multiply(a, b)? - &self.multiply(b, a)?)
    }
}
