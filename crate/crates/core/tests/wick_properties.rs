use proptest::prelude::*;
use wicklab::numerics::{gauss_hermite_rule, gaussian_norm};
use wicklab::{ChaosExpansion, Complex64, Exponent, MultiIndex};

const DIM: usize = 2;
const DEGREE: u32 = 3;

fn expansion() -> impl Strategy<Value = ChaosExpansion> {
    let count = MultiIndex::up_to_degree(DIM, DEGREE).len();
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), count).prop_map(|coeffs| {
        let entries = MultiIndex::up_to_degree(DIM, DEGREE)
            .into_iter()
            .zip(coeffs)
            .map(|(alpha, (re, im))| (alpha, Complex64::new(re, im)));
        ChaosExpansion::from_entries(DIM, 3 * DEGREE, entries).unwrap()
    })
}

fn point() -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), DIM)
        .prop_map(|v| v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wick_commutes(a in expansion(), b in expansion()) {
        let ab = a.wick(&b).unwrap();
        let ba = b.wick(&a).unwrap();
        prop_assert!(ab.max_coeff_diff(&ba) < 1e-12);
    }

    #[test]
    fn wick_associates(a in expansion(), b in expansion(), c in expansion()) {
        let left = a.wick(&b).unwrap().wick(&c).unwrap();
        let right = a.wick(&b.wick(&c).unwrap()).unwrap();
        prop_assert!(left.max_coeff_diff(&right) < 1e-10);
    }

    #[test]
    fn second_quantization_is_multiplicative(a in expansion(), b in expansion(), c in -1.0f64..1.0) {
        let c = Complex64::new(c, 0.0);
        let lhs = a.wick(&b).unwrap().second_quantization(c);
        let rhs = a.second_quantization(c).wick(&b.second_quantization(c)).unwrap();
        prop_assert!(lhs.max_coeff_diff(&rhs) < 1e-12);
    }

    #[test]
    fn s_transform_turns_wick_into_product(a in expansion(), b in expansion(), xi in point()) {
        let lhs = a.wick(&b).unwrap().s_transform(&xi).unwrap();
        let rhs = a.s_transform(&xi).unwrap() * b.s_transform(&xi).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-9 * (1.0 + rhs.norm()));
    }

    #[test]
    fn second_quantization_contracts(a in expansion(), c in -1.0f64..1.0, p in prop::sample::select(vec![2.0, 4.0])) {
        let rule = gauss_hermite_rule(24).unwrap();
        let p = Exponent::Finite(p);
        let damped = gaussian_norm(&a.second_quantization(Complex64::new(c, 0.0)), p, &rule).unwrap();
        let original = gaussian_norm(&a, p, &rule).unwrap();
        prop_assert!(damped <= original * (1.0 + 1e-10));
    }
}
