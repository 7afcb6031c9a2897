use divlie_cli::{lower, parse_expr, Expr, Value};
use divlie_core::Rational;
use proptest::prelude::*;

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (0i64..30, 1i64..6).prop_map(|(p, q)| Expr::Lit(Rational::new(p.into(), q.into()))),
        (1usize..=9).prop_map(Expr::Var),
        (1usize..=9).prop_map(Expr::DOp),
        (1usize..=9).prop_map(Expr::HOp),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (inner, 0u32..5).prop_map(|(a, k)| Expr::Pow(Box::new(a), k)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn print_then_parse_is_identity(e in expr()) {
        let printed = e.to_string();
        prop_assert_eq!(parse_expr(&printed).unwrap(), e, "printed as {}", printed);
    }

    #[test]
    fn lowering_commutes_with_printing(e in expr()) {
        // Whatever lowers must lower to the same value after a round trip
        // through the printed form of the result.
        if let Ok(v) = lower(&e, 9) {
            let again = lower(&parse_expr(&v.to_string()).unwrap(), 9).unwrap();
            match (&v, &again) {
                (Value::Deriv(d), Value::Poly(p)) => prop_assert!(d.is_zero() && p.is_zero()),
                _ => prop_assert_eq!(again, v),
            }
        }
    }
}
