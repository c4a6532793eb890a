//! Randomized structural properties, driven by proptest: the language
//! pretty-printer round-trips through the parser, and exact signs behave
//! like signs.

use euclid_exact::lang::{parse, Expr, StmtKind};
use euclid_exact::tower::{FieldElement, Tower};
use num::{BigInt, BigRational};
use proptest::prelude::*;

fn arb_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0u32..1000).prop_map(|n| Expr::Int(BigInt::from(n))),
        Just(Expr::Phi),
        Just(Expr::Dist("A".to_string(), "B".to_string())),
        Just(Expr::Dist2("A".to_string(), "B".to_string())),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Sqrt(Box::new(e))),
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), inner)
                .prop_map(|(a, b)| Expr::Div(Box::new(a), Box::new(b))),
        ]
    })
}

fn arb_rational() -> impl Strategy<Value = BigRational> {
    (-40i64..=40, 1i64..=16)
        .prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

/// parse(pretty_print(parse(s))) is AST-identical to parse(s) for every
/// shipped corpus file.
#[test]
fn corpus_files_round_trip() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus");
    for name in [
        "pentagram_golden_angle.euclid",
        "pentagon_richmond.euclid",
        "smoke_equilateral.euclid",
    ] {
        let src = std::fs::read_to_string(format!("{dir}/{name}")).unwrap();
        let p1 = parse(&src).unwrap_or_else(|e| panic!("{name}: {e:?}"));
        let p2 = parse(&p1.to_string()).unwrap();
        assert!(p1.same_ast(&p2), "{name} does not round-trip");
    }
}

proptest! {
    /// Printing a parsed program and re-parsing it gives the same AST.
    #[test]
    fn pretty_print_round_trips(expr in arb_expr()) {
        let src = format!(
            "point A = (0, 0)\npoint B = (1, 2)\nassert_zero({expr})\n"
        );
        let p1 = parse(&src).expect("generated program parses");
        match &p1.statements[2].kind {
            StmtKind::AssertZero { expr: parsed } => prop_assert_eq!(parsed, &expr),
            other => prop_assert!(false, "unexpected statement {:?}", other),
        }
        let p2 = parse(&p1.to_string()).expect("printed program parses");
        prop_assert!(p1.same_ast(&p2));
    }

    /// sign(-x) = -sign(x) and sign(x·x) >= 0 in Q(√2, √3).
    #[test]
    fn sign_is_antisymmetric(
        a in arb_rational(),
        b in arb_rational(),
        c in arb_rational(),
        d in arb_rational(),
    ) {
        let mut t = Tower::new();
        let s2 = t.sqrt(&FieldElement::from_integer(2)).unwrap();
        let s3 = t.sqrt(&FieldElement::from_integer(3)).unwrap();
        let mut x = FieldElement::from_rational(a);
        x = t.add(&x, &t.mul(&FieldElement::from_rational(b), &s2));
        x = t.add(&x, &t.mul(&FieldElement::from_rational(c), &s3));
        x = t.add(&x, &t.mul(&FieldElement::from_rational(d), &t.mul(&s2, &s3)));
        prop_assert_eq!(t.sign(&t.neg(&x)), -t.sign(&x));
        prop_assert!(t.sign(&t.mul(&x, &x)) >= 0);
        prop_assert_eq!(t.sign(&x) == 0, x.is_zero());
    }

    /// Subtraction and division invert addition and multiplication.
    #[test]
    fn field_ops_invert(
        a in arb_rational(),
        b in arb_rational(),
    ) {
        let mut t = Tower::new();
        let s2 = t.sqrt(&FieldElement::from_integer(2)).unwrap();
        let x = t.add(
            &FieldElement::from_rational(a),
            &t.mul(&FieldElement::from_rational(b), &s2),
        );
        let y = t.add(&x, &FieldElement::one());
        prop_assert!(t.eq(&t.sub(&t.add(&x, &y), &y), &x));
        if !y.is_zero() {
            let q = t.div(&t.mul(&x, &y), &y).unwrap();
            prop_assert!(t.eq(&q, &x));
        }
    }
}
