mod common;

use proptest::prelude::*;
use qmatrix::coeff::RationalFunction;
use qmatrix::expr::{self, evaluate};
use qmatrix::pbw::Algebra;
use qmatrix::Error;

fn entries(text: &str) -> impl Iterator<Item = (&str, &str)> {
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .map(|l| l.split_once('\t').expect("tab-separated line"))
}

#[test]
fn golden_corpus_round_trips() {
    let text = include_str!("data/golden.txt");
    let mut count = 0;
    for (n, src) in entries(text) {
        let alg = Algebra::square(n.parse().unwrap()).unwrap();
        let x = evaluate(src, &alg).unwrap_or_else(|e| panic!("{src}: {e}"));
        let printed = x.to_string();
        let y = evaluate(&printed, &alg).unwrap_or_else(|e| panic!("{printed}: {e}"));
        assert_eq!(x, y, "{src} printed as {printed}");
        let ast = expr::parse(src).unwrap();
        assert_eq!(expr::parse(&ast.to_string()).unwrap(), ast, "{src}");
        count += 1;
    }
    assert_eq!(count, 100);
}

#[test]
fn malformed_corpus_reports_positions() {
    let text = include_str!("data/malformed.txt");
    for (pos, src) in entries(text) {
        match expr::parse(src) {
            Err(Error::Syntax { position, expected }) => {
                assert_eq!(position.to_string(), pos, "{src:?} expected {expected:?}");
                assert!(!expected.is_empty());
            }
            other => panic!("{src:?} gave {other:?}"),
        }
    }
}

proptest! {
    #[test]
    fn printed_elements_parse_back(seed in any::<u64>(), den in 0usize..3) {
        let mut r = common::rng(seed);
        let alg = Algebra::square(3).unwrap();
        let x = common::random_element(&mut r, alg.shape(), 3, 4);
        let d = [RationalFunction::one(), RationalFunction::q() + RationalFunction::one(), RationalFunction::q_pow(2) - RationalFunction::integer(3)];
        let x = x.scale(&d[den].inv().unwrap());
        prop_assert_eq!(evaluate(&x.to_string(), &alg).unwrap(), x);
    }
}
