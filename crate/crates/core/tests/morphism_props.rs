mod common;

use common::{random_homogeneous, rng, subsets};
use num_rational::BigRational;
use proptest::prelude::*;
use qmatrix::coeff::RationalFunction;
use qmatrix::minors::{b_element, gamma, gamma_map, quantum_determinant, quantum_minor, IndexSet, MinorId};
use qmatrix::morphisms::{
    compose, preserves_leading_degree, recognize_torus, torus_automorphism, transpose_automorphism, GeneratorMap, MapKind,
    TorusParam,
};
use qmatrix::pbw::{Algebra, Gen};
use qmatrix::Error;
use rand::Rng;

fn small_scalar(r: &mut impl Rng) -> RationalFunction {
    let num = loop {
        let k: i64 = r.gen_range(-4..=4);
        if k != 0 {
            break k;
        }
    };
    let c = RationalFunction::constant(BigRational::new(num.into(), r.gen_range(1i64..=3).into()));
    &c * &RationalFunction::q_pow(r.gen_range(-2..=2))
}

fn random_torus(r: &mut impl Rng, n: usize) -> TorusParam {
    let a = (0..n).map(|_| small_scalar(r)).collect();
    let b = (0..n - 1).map(|_| small_scalar(r)).collect();
    TorusParam::new(a, b).unwrap()
}

fn verified(alg: &Algebra, mut f: GeneratorMap) -> GeneratorMap {
    assert!(f.check(alg).unwrap().passed);
    f
}

#[test]
fn gamma_on_two_by_two_minors() {
    let alg = Algebra::square(3).unwrap();
    let det = quantum_determinant(&alg).unwrap();
    for rows in subsets(3, 2) {
        for cols in subsets(3, 2) {
            let id = MinorId::from_slices(&rows, &cols).unwrap();
            let lhs = gamma(&alg, &quantum_minor(&alg, &id).unwrap()).unwrap();
            let ri = IndexSet::new(rows.clone()).unwrap().complement(3).unwrap().as_slice()[0];
            let ci = IndexSet::new(cols.clone()).unwrap().complement(3).unwrap().as_slice()[0];
            let exp = rows.iter().sum::<usize>() as i32 - cols.iter().sum::<usize>() as i32;
            let rhs = alg.mul(&alg.gen(Gen::new(ci, ri)), &det).scale(&RationalFunction::neg_q_pow(exp));
            assert_eq!(lhs, rhs, "[{rows:?}|{cols:?}]");
        }
    }
}

#[test]
fn gamma_is_an_anti_endomorphism() {
    for n in [2, 3] {
        let alg = Algebra::square(n).unwrap();
        let mut g = gamma_map(&alg).unwrap();
        assert_eq!(g.kind(), MapKind::AntiHomomorphism);
        let report = g.check(&alg).unwrap();
        assert!(report.passed && report.failures.is_empty(), "n = {n}");
        assert!(g.is_verified());
    }
}

#[test]
fn transpose_swaps_minor_indices() {
    let alg = Algebra::square(3).unwrap();
    let tau = verified(&alg, transpose_automorphism(&alg).unwrap());
    for t in 1..=3 {
        for rows in subsets(3, t) {
            for cols in subsets(3, t) {
                let id = MinorId::from_slices(&rows, &cols).unwrap();
                let img = tau.apply(&alg, &quantum_minor(&alg, &id).unwrap()).unwrap();
                assert_eq!(img, quantum_minor(&alg, &id.transposed()).unwrap());
            }
        }
    }
}

#[test]
fn conjugated_torus_is_the_transposed_torus() {
    let alg = Algebra::square(3).unwrap();
    let tau = verified(&alg, transpose_automorphism(&alg).unwrap());
    let mut r = rng(7);
    for _ in 0..10 {
        let h = random_torus(&mut r, 3);
        let sigma = verified(&alg, torus_automorphism(&alg, &h).unwrap());
        let conj = compose(&alg, &tau, &compose(&alg, &sigma, &tau).unwrap()).unwrap();
        let lambda = conj.diagonal_scalars().expect("diagonal");
        let found = recognize_torus(&lambda).unwrap();
        for g in alg.shape().generators() {
            assert_eq!(found.scalar(g), h.scalar(Gen::new(g.col, g.row)));
        }
    }
}

#[test]
fn automorphisms_preserve_leading_degree_and_scale_det() {
    let alg = Algebra::square(3).unwrap();
    let det = quantum_determinant(&alg).unwrap();
    let tau = verified(&alg, transpose_automorphism(&alg).unwrap());
    let mut r = rng(11);
    let mut maps = vec![tau.clone()];
    for _ in 0..4 {
        let h = random_torus(&mut r, 3);
        let sigma = verified(&alg, torus_automorphism(&alg, &h).unwrap());
        let mu = h.a().iter().chain(h.b()).fold(RationalFunction::one(), |acc, x| &acc * x);
        assert_eq!(sigma.apply(&alg, &det).unwrap(), det.scale(&mu));
        maps.push(compose(&alg, &tau, &sigma).unwrap());
        maps.push(sigma);
    }
    for f in &maps {
        assert!(f.is_verified());
        let img = f.apply(&alg, &det).unwrap();
        let mu = det.scalar_ratio(&img).expect("scalar multiple of det");
        assert!(!mu.is_zero());
        for g in alg.shape().generators() {
            assert!(preserves_leading_degree(&alg, f, &alg.gen(g)).unwrap());
        }
        for i in 1..6 {
            assert!(preserves_leading_degree(&alg, f, &b_element(&alg, i).unwrap()).unwrap());
        }
        let x = random_homogeneous(&mut r, alg.shape(), 2, 3);
        assert!(preserves_leading_degree(&alg, f, &x).unwrap());
    }
}

fn rank_one_oracle(l: &[Vec<i64>]) -> bool {
    let n = l[0].len() - 1;
    (0..l.len()).all(|i| (0..=n).all(|a| l[i][a] * l[0][n] == l[i][n] * l[0][a]))
}

fn to_rf(l: &[Vec<i64>]) -> Vec<Vec<RationalFunction>> {
    l.iter().map(|r| r.iter().map(|&x| RationalFunction::integer(x)).collect()).collect()
}

fn nonzero() -> impl Strategy<Value = i64> {
    prop_oneof![-5i64..=-1, 1i64..=5]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn recognizes_rank_one_matrices(a in prop::collection::vec(nonzero(), 3), b in prop::collection::vec(nonzero(), 3)) {
        let l: Vec<Vec<i64>> = a.iter().map(|x| b.iter().map(|y| x * y).collect()).collect();
        let found = recognize_torus(&to_rf(&l)).unwrap();
        for g in Algebra::square(3).unwrap().shape().generators() {
            prop_assert_eq!(found.scalar(g), RationalFunction::integer(l[g.row - 1][g.col - 1]));
        }
    }

    #[test]
    fn rejects_exactly_the_non_rank_one(l in prop::collection::vec(prop::collection::vec(prop_oneof![1i64..=2, -2i64..=-1], 3), 3)) {
        match recognize_torus(&to_rf(&l)) {
            Ok(_) => prop_assert!(rank_one_oracle(&l)),
            Err(Error::NotRankOne(_)) => prop_assert!(!rank_one_oracle(&l)),
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }

    #[test]
    fn random_torus_maps_are_automorphisms(seed in any::<u64>()) {
        let alg = Algebra::square(3).unwrap();
        let h = random_torus(&mut rng(seed), 3);
        let mut sigma = torus_automorphism(&alg, &h).unwrap();
        prop_assert!(sigma.check(&alg).unwrap().passed);
        let back = torus_automorphism(&alg, &h.inverse()).unwrap();
        let round = compose(&alg, &back, &sigma).unwrap();
        let id = GeneratorMap::identity(alg.shape());
        prop_assert_eq!(round.images(), id.images());
    }
}
