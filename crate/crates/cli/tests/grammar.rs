use mock_theta::Constant;
use mock_theta_cli::expr::{eval, parse, Expr};
use proptest::prelude::*;

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (0u64..30).prop_map(Expr::Int),
        Just(Expr::Q),
        Just(Expr::Const(Constant::I)),
        Just(Expr::Const(Constant::Omega)),
        Just(Expr::Const(Constant::Alpha)),
        Just(Expr::Const(Constant::Sqrt2)),
        Just(Expr::Const(Constant::Sqrt3)),
        (0i64..24).prop_map(|k| Expr::Const(Constant::Zeta(k))),
        Just(Expr::Named("psi".into())),
        Just(Expr::Named("phi".into())),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(4, 24, 3, |inner| {
        let b = |e| Box::new(e);
        prop_oneof![
            inner.clone().prop_map(move |a| Expr::Neg(b(a))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Add(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Sub(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Mul(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Div(b(x), b(y))),
            (inner.clone(), -3i64..=3).prop_map(move |(x, k)| Expr::Pow(b(x), k)),
            inner.clone().prop_map(|x| Expr::Call("j".into(), vec![x])),
            (inner.clone(), 1u64..4).prop_map(|(x, m)| Expr::Call("subst".into(), vec![x, Expr::Int(m)])),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn print_then_parse(e in expr()) {
        let printed = e.to_string();
        let back = parse(&printed).map_err(|err| TestCaseError::fail(format!("{printed}: {err}")))?;
        prop_assert_eq!(&back, &e);
        prop_assert_eq!(back.to_string(), printed);
    }

    #[test]
    fn printed_form_evaluates_alike(e in expr()) {
        let a = eval(&e, 12);
        let b = eval(&parse(&e.to_string()).unwrap(), 12);
        match (a, b) {
            (Ok(x), Ok(y)) => prop_assert_eq!(x, y),
            (Err(x), Err(y)) => prop_assert_eq!(x.to_string(), y.to_string()),
            (x, y) => prop_assert!(false, "{:?} vs {:?}", x.is_ok(), y.is_ok()),
        }
    }
}

#[test]
fn known_expansions() {
    let s = |src: &str, n| eval(&parse(src).unwrap(), n).unwrap();
    assert_eq!(s("J(1,2)", 8), s("J(1)^2/J(2)", 8));
    assert_eq!(s("Jbar(1,2)", 20), s("J(2)^5/(J(1)^2*J(4)^2)", 20));
    assert_eq!(s("phitilde", 20), s("G(i)", 20));
    assert_eq!(s("f(0)", 20), s("phitilde()", 20));
    assert_eq!(s("j(-1, q^2)", 20), s("j(-1, 0, 2)", 20));
    assert_eq!(s("subst(psi, 2)", 20), s("J(4)^2/J(2)", 20));
}
