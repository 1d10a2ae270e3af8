use cliffop::ops::{Atom, Expr};
use cliffop::scalar::rat;
use cliffop::{parse, ParseError};
use proptest::prelude::*;

fn atom() -> impl Strategy<Value = Expr> {
    prop_oneof![
        Just(Atom::D),
        Just(Atom::X),
        Just(Atom::E),
        Just(Atom::Gamma),
        Just(Atom::Delta),
        Just(Atom::Id),
        (1usize..=16).prop_map(Atom::Xj),
        (1usize..=16).prop_map(Atom::Dj),
        (1usize..=16).prop_map(Atom::Xi),
        (1i64..20, 1i64..6).prop_map(|(a, b)| Atom::Is(rat(a, b))),
    ]
    .prop_map(Expr::Atom)
}

fn scalar() -> impl Strategy<Value = Expr> {
    prop_oneof![(0u64..1000).prop_map(Expr::Num), Just(Expr::Lambda), Just(Expr::Dim)]
}

fn divisor() -> impl Strategy<Value = Expr> {
    prop_oneof![(1u64..50).prop_map(Expr::Num), Just(Expr::Dim)]
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![atom(), scalar()];
    leaf.prop_recursive(5, 48, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Expr::neg),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.add(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.sub(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.mul(b)),
            (inner.clone(), divisor()).prop_map(|(a, b)| a.div(b)),
            (inner.clone(), 0u32..5).prop_map(|(a, k)| a.pow(k)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.comm(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.anti(b)),
            inner.clone().prop_map(Expr::exp),
            (inner, 0u32..9).prop_map(|(a, k)| a.exp_truncated(k)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn print_parse_is_a_fixed_point(e in expr()) {
        let text = e.to_string();
        let back = parse(&text).map_err(|err| TestCaseError::fail(format!("{text}: {err}")))?;
        prop_assert_eq!(back.to_string(), text.clone());
        prop_assert_eq!(back, e);
    }
}

#[test]
fn non_constant_divisors_are_rejected() {
    for text in ["X/D", "X/(n - D)", "D/lambda*X/E"] {
        assert!(matches!(parse(text), Err(ParseError::Syntax { .. })), "{text}");
    }
    assert!(parse("X/(2*n - 1)").is_ok());
}
