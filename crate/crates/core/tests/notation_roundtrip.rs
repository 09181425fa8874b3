use conway_core::notation::random::random_expr;
use conway_core::notation::{expand, parse, NotationError};
use conway_core::registry;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn print_then_parse_is_identity(seed in any::<u64>()) {
        let e = random_expr(&mut ChaCha8Rng::seed_from_u64(seed));
        let text = e.to_string();
        prop_assert_eq!(parse(&text).unwrap(), e, "{}", text);
    }
}

#[test]
fn registry_corpus_round_trips() {
    let records = registry::shipped();
    let mut seen = 0;
    for r in &records {
        for text in r.expressions.iter().chain(&r.as_printed) {
            let Ok(e) = parse(text) else { continue };
            let printed = e.to_string();
            assert_eq!(parse(&printed).unwrap(), e, "{text}");
            assert_eq!(parse(&printed).unwrap().to_string(), printed);
            seen += 1;
        }
    }
    // two as-printed captions do not parse
    assert_eq!(seen, 2 * records.len() - 2);
}

#[test]
fn juxtaposition_means_multiplication() {
    let a = expand(&parse("row2(a1 a2, a1 + a2) M col2(2 a3, (a3 + 1) a4)").unwrap()).unwrap();
    let b = expand(&parse("row2(a1*a2, a1 + a2) M col2(2*a3, (a3 + 1)*a4)").unwrap()).unwrap();
    assert_eq!(a, b);
    assert_eq!(parse("a1a2").unwrap(), parse("a1 a2").unwrap());
}

#[test]
fn error_locations() {
    match parse("row2(a1 1)") {
        Err(NotationError::Syntax { offset, .. }) => assert_eq!(offset, 8),
        other => panic!("unexpected {other:?}"),
    }
    match parse("row2(a1, 1, a2)") {
        Err(NotationError::Arity { atom, .. }) => assert_eq!(atom, "row2"),
        other => panic!("unexpected {other:?}"),
    }
    match parse("mat2(1, 2; 3)") {
        Err(NotationError::Arity { atom, .. }) => assert_eq!(atom, "mat2"),
        other => panic!("unexpected {other:?}"),
    }
    assert!(matches!(
        parse("row2(a0, 1)"),
        Err(NotationError::InvalidVariable { offset: 5, .. })
    ));
    assert!(matches!(
        parse("row3(1, 1, 1)"),
        Err(NotationError::UnknownWord { offset: 0, .. })
    ));
    assert!(matches!(
        parse("a1 # a2"),
        Err(NotationError::Lexical { offset: 3, .. })
    ));
    assert!(matches!(
        parse("col2(a3 (a4 a5 + 1), (a3 (a4 + a5) + 1)"),
        Err(NotationError::Syntax { .. })
    ));
    assert!(matches!(parse(""), Err(NotationError::Syntax { offset: 0, .. })));
    assert!(matches!(parse("a1 = "), Err(NotationError::Syntax { offset: 5, .. })));
}

#[test]
fn evaluation_errors_are_not_parse_errors() {
    let e = parse("row2(a1, 1) M col5(1, 1, 1, 1, 1)").unwrap();
    let err = expand(&e).unwrap_err();
    assert!(!err.is_parse_error());
    assert!(matches!(err, NotationError::Dimension { index: 2, .. }));
    assert!(matches!(
        expand(&parse("P5 P5").unwrap()),
        Err(NotationError::NotScalar { .. })
    ));
}
