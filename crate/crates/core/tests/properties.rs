use proptest::prelude::*;
use waring_core::generate::{FormGenerator, Stratum};
use waring_core::{
    decompose, git_class, invariants, pi_point, rank_sextic, sylvester_rank, weighted_eq,
    BinaryForm, DecomposeOptions, GitClass, Rational,
};

fn sextic() -> impl Strategy<Value = BinaryForm> {
    prop::array::uniform7(-6i64..=6)
        .prop_filter("nonzero", |c| c.iter().any(|&v| v != 0))
        .prop_map(|c| BinaryForm::from_ints(&c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn classifier_agrees_with_apolarity(f in sextic()) {
        let cert = rank_sextic(&f).unwrap();
        prop_assert_eq!(cert.rank, sylvester_rank(&f).unwrap());
        prop_assert!(cert.verify(&f));
    }

    #[test]
    fn rank_and_invariants_are_sl2_invariant(f in sextic(), seed in any::<u64>()) {
        let m = FormGenerator::new(seed).rational_unimodular();
        let g = f.sl2_substitute(&m);
        prop_assert_eq!(invariants(&f).unwrap(), invariants(&g).unwrap());
        prop_assert_eq!(rank_sextic(&f).unwrap().rank, rank_sextic(&g).unwrap().rank);
    }

    #[test]
    fn scaling_fixes_the_weighted_point(f in sextic(), s in 1i64..=9) {
        prop_assume!(git_class(&f).unwrap() != GitClass::NullCone);
        let g = f.scale(&Rational::from_integer(s.into()));
        prop_assert!(weighted_eq(&pi_point(&f).unwrap(), &pi_point(&g).unwrap()));
    }

    #[test]
    fn decompositions_resubstitute(seed in any::<u64>(), r in 1u8..=6) {
        let f = FormGenerator::new(seed).form(Stratum::Rank(r));
        let d = decompose(&f, &DecomposeOptions::default()).unwrap();
        prop_assert_eq!(d.forms.len(), rank_sextic(&f).unwrap().rank);
        prop_assert!(d.residual < 1e-9, "residual {}", d.residual);
    }
}

#[test]
fn other_degrees_use_apolarity() {
    // x^{d-1} y has rank d; a sum of k generic powers has rank k.
    for d in 3..=9 {
        let mut c = vec![0; d + 1];
        c[1] = 1;
        assert_eq!(sylvester_rank(&BinaryForm::from_ints(&c)).unwrap(), d);
    }
    let q = |n: i64| Rational::from_integer(n.into());
    let l = |a: i64, b: i64| BinaryForm::linear(q(a), q(b));
    let f = &(&l(1, 0).pow(7) + &l(0, 1).pow(7)) + &l(1, 1).pow(7);
    assert_eq!(sylvester_rank(&f).unwrap(), 3);
}
