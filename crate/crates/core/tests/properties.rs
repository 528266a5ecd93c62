use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;
use quadrisig::arith::{gcd3, Rational};
use quadrisig::expand::phi_float;
use quadrisig::{classify_sign, expand, expand_modular, signature, support, Form, GroupParams, Sign};

fn faithful(max_p: u64) -> impl Strategy<Value = GroupParams> {
    (1..=max_p, any::<bool>())
        .prop_flat_map(|(p, definite)| (Just(p), 0..p, 0..p, Just(definite)))
        .prop_filter("faithful", |&(p, q1, q2, _)| gcd3(p, q1, q2) == 1)
        .prop_map(|(p, q1, q2, definite)| {
            let form = if definite { Form::Definite } else { Form::Indefinite };
            GroupParams::new(p, q1, q2, form).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn backends_agree(params in faithful(18)) {
        prop_assert_eq!(expand(&params).unwrap(), expand_modular(&params).unwrap());
    }

    #[test]
    fn sign_rule_matches_expansion(params in faithful(24)) {
        let poly = expand(&params).unwrap();
        prop_assert_eq!(support(&params).len(), poly.len());
        for (r, s, c) in poly.terms() {
            let sign = classify_sign(&params, r, s).unwrap();
            prop_assert_eq!(sign == Sign::Plus, c.is_positive(), "x^{} y^{}", r, s);
        }
        let pair = signature(&params);
        let n_plus = poly.terms().filter(|(_, _, c)| c.is_positive()).count() as u64;
        prop_assert_eq!((pair.n_plus, pair.n_minus), (n_plus, poly.len() as u64 - n_plus));
    }

    #[test]
    fn total_degree_is_p(params in faithful(24)) {
        prop_assert_eq!(expand(&params).unwrap().total_degree(), Some(params.p()));
    }

    #[test]
    fn one_minus_and_negate_y_are_involutions(params in faithful(16)) {
        let poly = expand(&params).unwrap();
        prop_assert_eq!(poly.one_minus().one_minus(), poly.clone());
        prop_assert_eq!(poly.negate_y().negate_y(), poly);
    }

    #[test]
    fn forms_differ_by_y_reflection(params in faithful(16)) {
        let a = expand(&params.with_form(Form::Definite)).unwrap();
        let b = expand(&params.with_form(Form::Indefinite)).unwrap();
        prop_assert_eq!(a.negate_y(), b);
    }

    #[test]
    fn exact_and_float_evaluation_agree(params in faithful(12), xn in -8i64..=8, yn in -8i64..=8) {
        let poly = expand(&params).unwrap();
        let (x, y) = (Rational::new(BigInt::from(xn), BigInt::from(8)), Rational::new(BigInt::from(yn), BigInt::from(8)));
        let exact = quadrisig::arith::rational_to_f64(&poly.evaluate(&x, &y));
        let float = phi_float(&params, xn as f64 / 8.0, yn as f64 / 8.0);
        prop_assert!((exact - float).abs() <= 1e-9 * exact.abs().max(1.0), "{} vs {}", exact, float);
    }
}
