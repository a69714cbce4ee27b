//! Maps given by generator images, and the automorphisms of the algebra
//! that are known in closed form.

use serde::Serialize;

use crate::coeff::RationalFunction;
use crate::error::{Error, Result};
use crate::pbw::{defining_relations, Algebra, Element, Gen, Shape};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MapKind {
    Homomorphism,
    AntiHomomorphism,
}

impl MapKind {
    /// Kind of a composite: two maps of the same kind give a homomorphism.
    pub fn compose(self, other: MapKind) -> MapKind {
        if self == other {
            MapKind::Homomorphism
        } else {
            MapKind::AntiHomomorphism
        }
    }
}

/// A candidate (anti-)endomorphism, determined by the image of every
/// generator. Images may be arbitrary elements; `verified` is only set by
/// [`GeneratorMap::check`] once the images satisfy every defining relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMap {
    shape: Shape,
    images: Vec<Element>,
    kind: MapKind,
    verified: bool,
}

/// One relation instance whose image does not vanish.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationFailure {
    pub relation: String,
    pub indices: [usize; 4],
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapReport {
    pub kind: MapKind,
    pub relations_checked: usize,
    pub passed: bool,
    pub failures: Vec<RelationFailure>,
}

impl GeneratorMap {
    /// `images` are indexed by generator in lexicographic order.
    pub fn new(shape: Shape, images: Vec<Element>, kind: MapKind) -> Result<Self> {
        if images.len() != shape.num_generators() {
            return Err(Error::SizeMismatch(format!(
                "{} images for {} generators",
                images.len(),
                shape.num_generators()
            )));
        }
        if let Some(bad) = images.iter().find(|x| x.shape() != shape) {
            return Err(Error::ShapeMismatch(format!(
                "image lives in a {} algebra, map is on {shape}",
                bad.shape()
            )));
        }
        Ok(Self {
            shape,
            images,
            kind,
            verified: false,
        })
    }

    pub fn identity(shape: Shape) -> Self {
        let images = shape.generators().map(|g| Element::gen(shape, g)).collect();
        Self {
            shape,
            images,
            kind: MapKind::Homomorphism,
            verified: true,
        }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn image(&self, g: Gen) -> &Element {
        &self.images[self.shape.index(g)]
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    fn check_alg(&self, alg: &Algebra) -> Result<()> {
        if alg.shape() != self.shape {
            return Err(Error::ShapeMismatch(format!(
                "map on {} applied in a {} algebra",
                self.shape,
                alg.shape()
            )));
        }
        Ok(())
    }

    /// Linear extension of the generator images, multiplicative on PBW
    /// words (word order reversed for anti-homomorphisms).
    pub fn apply(&self, alg: &Algebra, x: &Element) -> Result<Element> {
        self.check_alg(alg)?;
        alg.check_shape(x)?;
        let mut acc = alg.zero();
        for (m, c) in x.terms() {
            let mut word = m.word();
            if self.kind == MapKind::AntiHomomorphism {
                word.reverse();
            }
            let img = alg.product(word.iter().map(|&g| &self.images[g]))?;
            acc = &acc + &img.scale(c);
        }
        Ok(acc)
    }

    /// Substitutes the images into every defining relation and reports the
    /// instances that do not normalize to zero.
    pub fn report(&self, alg: &Algebra) -> Result<MapReport> {
        self.check_alg(alg)?;
        let relations = defining_relations(self.shape, alg.q());
        let mut failures = Vec::new();
        for r in &relations {
            let residual = r.residual_with(self.shape, |a, b| {
                let (x, y) = (self.image(a), self.image(b));
                match self.kind {
                    MapKind::Homomorphism => alg.multiply(x, y),
                    MapKind::AntiHomomorphism => alg.multiply(y, x),
                }
            })?;
            if !residual.is_zero() {
                failures.push(RelationFailure {
                    relation: r.kind.to_string(),
                    indices: r.indices(),
                    residual: residual.to_string(),
                });
            }
        }
        Ok(MapReport {
            kind: self.kind,
            relations_checked: relations.len(),
            passed: failures.is_empty(),
            failures,
        })
    }

    /// Runs [`GeneratorMap::report`] and marks the map verified on success.
    pub fn check(&mut self, alg: &Algebra) -> Result<MapReport> {
        let report = self.report(alg)?;
        self.verified = report.passed;
        Ok(report)
    }

    /// Returns the matrix of scalars when every generator is mapped to a
    /// scalar multiple of itself.
    pub fn diagonal_scalars(&self) -> Option<Vec<Vec<RationalFunction>>> {
        let s = self.shape;
        let mut out = vec![Vec::with_capacity(s.cols); s.rows];
        for g in s.generators() {
            let c = Element::gen(s, g).scalar_ratio(self.image(g))?;
            if c.is_zero() {
                return None;
            }
            out[g.row - 1].push(c);
        }
        Some(out)
    }
}

/// `f o g`: the images `f(g(Y))`, normalized eagerly.
pub fn compose(alg: &Algebra, f: &GeneratorMap, g: &GeneratorMap) -> Result<GeneratorMap> {
    if f.shape != g.shape {
        return Err(Error::ShapeMismatch(format!("{} vs {}", f.shape, g.shape)));
    }
    let images = g
        .images
        .iter()
        .map(|x| f.apply(alg, x))
        .collect::<Result<Vec<_>>>()?;
    let mut out = GeneratorMap::new(f.shape, images, f.kind.compose(g.kind))?;
    out.verified = f.verified && g.verified;
    Ok(out)
}

/// Parameters `a_1..a_m`, `b_1..b_n` of a torus automorphism, with `b_n = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusParam {
    a: Vec<RationalFunction>,
    b: Vec<RationalFunction>,
}

impl TorusParam {
    /// `b` lists `b_1..b_{n-1}`; `b_n = 1` is appended.
    pub fn new(a: Vec<RationalFunction>, mut b: Vec<RationalFunction>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::SizeMismatch("torus needs at least one row scalar".into()));
        }
        if a.iter().chain(&b).any(RationalFunction::is_zero) {
            return Err(Error::DivisionByZero);
        }
        b.push(RationalFunction::one());
        Ok(Self { a, b })
    }

    pub fn identity(shape: Shape) -> Self {
        Self {
            a: vec![RationalFunction::one(); shape.rows],
            b: vec![RationalFunction::one(); shape.cols],
        }
    }

    pub fn a(&self) -> &[RationalFunction] {
        &self.a
    }

    /// All `n` column scalars, the last being 1.
    pub fn b(&self) -> &[RationalFunction] {
        &self.b
    }

    pub fn scalar(&self, g: Gen) -> RationalFunction {
        &self.a[g.row - 1] * &self.b[g.col - 1]
    }

    /// Componentwise product, the parameter of `sigma_h o sigma_h'`.
    pub fn product(&self, other: &TorusParam) -> TorusParam {
        TorusParam {
            a: self.a.iter().zip(&other.a).map(|(x, y)| x * y).collect(),
            b: self.b.iter().zip(&other.b).map(|(x, y)| x * y).collect(),
        }
    }

    /// Parameters of the inverse automorphism.
    pub fn inverse(&self) -> TorusParam {
        let inv = |v: &[RationalFunction]| v.iter().map(|x| x.inv().expect("nonzero")).collect();
        TorusParam {
            a: inv(&self.a),
            b: inv(&self.b),
        }
    }
}

/// The diagonal automorphism `Y[i,a] -> a_i b_a Y[i,a]` (with `b_n = 1`).
///
/// Rectangular shapes use the same pattern with `m + n - 1` parameters.
pub fn torus_automorphism(alg: &Algebra, h: &TorusParam) -> Result<GeneratorMap> {
    let s = alg.shape();
    if h.a.len() != s.rows || h.b.len() != s.cols {
        return Err(Error::SizeMismatch(format!(
            "torus parameter has {} row and {} column scalars for a {s} algebra",
            h.a.len(),
            h.b.len()
        )));
    }
    let images = s
        .generators()
        .map(|g| Ok(alg.gen(g).scale(&alg.coerce_scalar(&h.scalar(g))?)))
        .collect::<Result<Vec<_>>>()?;
    GeneratorMap::new(s, images, MapKind::Homomorphism)
}

/// The transposition `Y[i,a] -> Y[a,i]` of a square algebra.
pub fn transpose_automorphism(alg: &Algebra) -> Result<GeneratorMap> {
    let s = alg.shape();
    s.require_square()?;
    let images = s.generators().map(|g| alg.gen(Gen::new(g.col, g.row))).collect();
    GeneratorMap::new(s, images, MapKind::Homomorphism)
}

/// Factors a matrix of nonzero scalars as `l[i][a] = a_i b_a` with
/// `b_n = 1`, or names a violated condition
/// `l[i][a] l[j][b] = l[i][b] l[j][a]`.
pub fn recognize_torus(lambda: &[Vec<RationalFunction>]) -> Result<TorusParam> {
    let rows = lambda.len();
    let cols = lambda.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 || lambda.iter().any(|r| r.len() != cols) {
        return Err(Error::SizeMismatch("scalar matrix must be a nonempty rectangle".into()));
    }
    if lambda.iter().flatten().any(RationalFunction::is_zero) {
        return Err(Error::DivisionByZero);
    }
    for i in 0..rows {
        for j in i + 1..rows {
            for a in 0..cols {
                for b in a + 1..cols {
                    let lhs = &lambda[i][a] * &lambda[j][b];
                    let rhs = &lambda[i][b] * &lambda[j][a];
                    if lhs != rhs {
                        return Err(Error::NotRankOne(format!(
                            "l[{},{}]*l[{},{}] != l[{},{}]*l[{},{}]",
                            i + 1,
                            a + 1,
                            j + 1,
                            b + 1,
                            i + 1,
                            b + 1,
                            j + 1,
                            a + 1
                        )));
                    }
                }
            }
        }
    }
    let last = cols - 1;
    let a: Vec<RationalFunction> = lambda.iter().map(|r| r[last].clone()).collect();
    let b: Vec<RationalFunction> = lambda[0][..last].iter().map(|x| x / &a[0]).collect();
    TorusParam::new(a, b)
}

/// Checks the graded-image property on `x` homogeneous of degree `d`:
/// the image has no component below `d` and a nonzero component in
/// degree `d`.
pub fn preserves_leading_degree(alg: &Algebra, f: &GeneratorMap, x: &Element) -> Result<bool> {
    let Some(d) = x.homogeneous_degree() else {
        return Err(Error::Eval("graded-image check needs a nonzero homogeneous element".into()));
    };
    let y = f.apply(alg, x)?;
    Ok(y.min_degree() == Some(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minors::{b_element, gamma_map, quantum_determinant};

    fn alg(n: usize) -> Algebra {
        Algebra::square(n).unwrap()
    }

    fn rf(k: i64) -> RationalFunction {
        RationalFunction::integer(k)
    }

    #[test]
    fn identity_map() {
        let a = alg(3);
        let x = b_element(&a, 2).unwrap();
        let id = GeneratorMap::identity(a.shape());
        assert_eq!(id.apply(&a, &x).unwrap(), x);
    }

    #[test]
    fn transpose_basics() {
        let a = alg(3);
        let mut tau = transpose_automorphism(&a).unwrap();
        assert_eq!(tau.apply(&a, &a.generator(1, 3).unwrap()).unwrap(), a.generator(3, 1).unwrap());
        assert!(tau.check(&a).unwrap().passed);
        assert!(tau.is_verified());
        let det = quantum_determinant(&a).unwrap();
        assert_eq!(tau.apply(&a, &det).unwrap(), det);
        for i in 1..6 {
            let bi = b_element(&a, i).unwrap();
            assert_eq!(tau.apply(&a, &bi).unwrap(), b_element(&a, 6 - i).unwrap());
        }
        let tt = compose(&a, &tau, &tau).unwrap();
        assert_eq!(tt.images(), GeneratorMap::identity(a.shape()).images());
    }

    #[test]
    fn torus_images() {
        let a = alg(3);
        let h = TorusParam::new(vec![rf(2), rf(3), rf(5)], vec![rf(7), RationalFunction::q()]).unwrap();
        let mut s = torus_automorphism(&a, &h).unwrap();
        let y21 = a.generator(2, 1).unwrap();
        assert_eq!(s.apply(&a, &y21).unwrap(), y21.scale(&rf(21)));
        let y13 = a.generator(1, 3).unwrap();
        assert_eq!(s.apply(&a, &y13).unwrap(), y13.scale(&rf(2)));
        assert!(s.check(&a).unwrap().passed);
        let ones = torus_automorphism(&a, &TorusParam::identity(a.shape())).unwrap();
        assert_eq!(ones.images(), GeneratorMap::identity(a.shape()).images());
    }

    #[test]
    fn torus_composition_is_componentwise() {
        let a = alg(3);
        let h = TorusParam::new(vec![rf(2), rf(3), rf(5)], vec![rf(7), rf(-1)]).unwrap();
        let k = TorusParam::new(vec![RationalFunction::q(), rf(1), rf(4)], vec![rf(2), rf(3)]).unwrap();
        let sh = torus_automorphism(&a, &h).unwrap();
        let sk = torus_automorphism(&a, &k).unwrap();
        let composite = compose(&a, &sh, &sk).unwrap();
        assert_eq!(composite.images(), torus_automorphism(&a, &h.product(&k)).unwrap().images());
    }

    #[test]
    fn collapsing_map_fails() {
        let a = alg(3);
        let y11 = a.generator(1, 1).unwrap();
        let mut f = GeneratorMap::new(a.shape(), vec![y11; 9], MapKind::Homomorphism).unwrap();
        let report = f.check(&a).unwrap();
        assert!(!report.passed);
        assert!(!f.is_verified());
        assert!(report.failures.iter().any(|x| x.relation == "relation 4"));
    }

    #[test]
    fn gamma_is_anti_endomorphism() {
        for n in [2, 3] {
            let a = alg(n);
            let mut g = gamma_map(&a).unwrap();
            assert!(g.check(&a).unwrap().passed, "n = {n}");
        }
    }

    #[test]
    fn recognize_round_trip() {
        let ones = vec![vec![rf(1); 3]; 3];
        let h = recognize_torus(&ones).unwrap();
        assert_eq!(h, TorusParam::identity(Shape::square(3).unwrap()));

        let a = [rf(2), RationalFunction::q(), rf(-3)];
        let b = [rf(5), RationalFunction::q_pow(-2), rf(1)];
        let lambda: Vec<Vec<_>> = a.iter().map(|x| b.iter().map(|y| x * y).collect()).collect();
        let h = recognize_torus(&lambda).unwrap();
        assert_eq!(h.a(), &a);
        assert_eq!(h.b(), &b);

        let mut bad = lambda.clone();
        bad[1][1] = &bad[1][1] * &rf(2);
        assert!(matches!(recognize_torus(&bad), Err(Error::NotRankOne(_))));
    }

    #[test]
    fn conjugated_torus_is_torus() {
        let a = alg(3);
        let tau = transpose_automorphism(&a).unwrap();
        let h = TorusParam::new(vec![rf(2), rf(3), rf(5)], vec![rf(7), rf(11)]).unwrap();
        let s = torus_automorphism(&a, &h).unwrap();
        let c = compose(&a, &tau, &compose(&a, &s, &tau).unwrap()).unwrap();
        let lambda = c.diagonal_scalars().unwrap();
        let k = recognize_torus(&lambda).unwrap();
        assert_eq!(torus_automorphism(&a, &k).unwrap().images(), c.images());
    }

    #[test]
    fn mismatched_sizes() {
        let a = alg(3);
        assert!(GeneratorMap::new(a.shape(), vec![], MapKind::Homomorphism).is_err());
        let h = TorusParam::new(vec![rf(1); 2], vec![rf(1)]).unwrap();
        assert!(torus_automorphism(&a, &h).is_err());
        assert!(TorusParam::new(vec![rf(0)], vec![]).is_err());
    }
}
