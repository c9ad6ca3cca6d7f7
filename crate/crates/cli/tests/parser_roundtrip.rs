use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use waring_cli::parse_expression;
use waring_core::{BinaryForm, Rational};

/// A random homogeneous expression of degree `d` together with the form it
/// denotes, built independently of the parser.
fn expr(rng: &mut ChaCha8Rng, d: usize, depth: u32) -> (String, BinaryForm) {
    let leaf = depth == 0 || rng.gen_bool(0.25);
    if d == 0 {
        let n = rng.gen_range(-9i64..=9);
        let m = rng.gen_range(1i64..=4);
        let q = Rational::new(BigInt::from(n), BigInt::from(m));
        let s = if m == 1 && n >= 0 { n.to_string() } else { format!("({n}/{m})") };
        return (s, BinaryForm::constant(q));
    }
    if leaf {
        let (a, b) = (rng.gen_range(-5i64..=5), rng.gen_range(-5i64..=5));
        let base = match (a, b) {
            (0, 0) => ("x".to_string(), BinaryForm::x()),
            _ => (format!("({a}*x + {b}*y)"), BinaryForm::from_ints(&[a, b])),
        };
        if d == 1 {
            return base;
        }
        return (format!("{}^{d}", base.0), base.1.pow(d));
    }
    match rng.gen_range(0..4) {
        0 => {
            let (s1, f1) = expr(rng, d, depth - 1);
            let (s2, f2) = expr(rng, d, depth - 1);
            (format!("{s1} - ({s2})"), &f1 - &f2)
        }
        1 => {
            let (s1, f1) = expr(rng, d, depth - 1);
            let (s2, f2) = expr(rng, d, depth - 1);
            (format!("{s1} + {s2}"), &f1 + &f2)
        }
        2 => {
            let k = rng.gen_range(0..=d);
            let (s1, f1) = expr(rng, k, depth - 1);
            let (s2, f2) = expr(rng, d - k, depth - 1);
            (format!("({s1})*({s2})"), &f1 * &f2)
        }
        _ => {
            let e = if d % 2 == 0 { 2 } else { 1 };
            let (s, f) = expr(rng, d / e, depth - 1);
            (format!("-({s})^{e}"), -&f.pow(e))
        }
    }
}

#[test]
fn corpus_of_200_expressions_round_trips() {
    let mut checked = 0;
    for seed in 0..200u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = rng.gen_range(1..=8);
        let (s, expected) = expr(&mut rng, d, 4);
        match parse_expression(&s) {
            Ok(f) => {
                assert_eq!(f, expected, "{s}");
                let again = parse_expression(&f.to_expression()).unwrap();
                assert_eq!(again, f, "render of {s}");
                checked += 1;
            }
            // Cancellation down to the zero polynomial is the only allowed
            // failure.
            Err(e) => assert!(expected.is_zero(), "{s}: {e}"),
        }
    }
    assert!(checked >= 190);
}

#[test]
fn fixed_examples() {
    for (s, c) in [
        ("x^6", vec![1, 0, 0, 0, 0, 0, 0]),
        ("x^5*y", vec![0, 1, 0, 0, 0, 0, 0]),
        ("x^3*y^2*(x+y)", vec![0, 0, 1, 1, 0, 0, 0]),
        ("x^3*y*(x+y)*(x+2*y)", vec![0, 1, 3, 2, 0, 0, 0]),
        ("(x+y)^6+(x-y)^6-2*x^6", vec![0, 0, 30, 0, 30, 0, 2]),
        ("30*y^2*(x^4+x^2*y^2+y^4)", vec![0, 0, 30, 0, 30, 0, 30]),
        ("x^6 + 6*x*y^5 + 5*y^6", vec![1, 0, 0, 0, 0, 6, 5]),
        ("  x^6+y^6  ", vec![1, 0, 0, 0, 0, 0, 1]),
        ("-(-x)^3", vec![1, 0, 0, 0]),
    ] {
        assert_eq!(parse_expression(s).unwrap(), BinaryForm::from_ints(&c), "{s}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rendered_forms_reparse(
        nums in prop::collection::vec(-50i64..50, 1..10),
        dens in prop::collection::vec(1i64..7, 10),
    ) {
        let coeffs: Vec<Rational> = nums
            .iter()
            .zip(&dens)
            .map(|(&n, &d)| Rational::new(n.into(), d.into()))
            .collect();
        let f = BinaryForm::new(coeffs);
        prop_assume!(!f.is_zero());
        prop_assert_eq!(parse_expression(&f.to_expression()).unwrap(), f);
    }
}
