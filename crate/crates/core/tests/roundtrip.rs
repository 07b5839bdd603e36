use proptest::prelude::*;

use thom_core::chern::{expand_product_schur, BundleRing, GradedPolynomial, Variance};
use thom_core::poly::Poly;
use num_bigint::BigInt;

fn variance(dual: bool) -> Variance {
    if dual { Variance::Dual } else { Variance::Plain }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn schur_expansion_reconstructs_polynomial(
        ranks in (1u32..=3, 1u32..=3),
        duals in (any::<bool>(), any::<bool>()),
        coeffs in prop::collection::vec(-4i64..=4, 12),
        degree in 0u32..=4,
    ) {
        let ring = BundleRing::new(&[("E", ranks.0), ("F", ranks.1)]).unwrap();
        let w = ring.weights().to_vec();
        // dense set of exponent vectors, each entry at most 2, kept when degree fits
        let mut poly = Poly::zero(ring.nvars());
        let mut n = 0;
        let total = 3usize.pow(w.len() as u32);
        for code in 0..total {
            let mut c = code;
            let exps: Vec<u32> = (0..w.len()).map(|_| { let e = (c % 3) as u32; c /= 3; e }).collect();
            if Poly::monomial_degree(&exps, &w) == degree {
                poly.add_term(exps, BigInt::from(coeffs[n % coeffs.len()]));
                n += 1;
            }
        }
        let p = GradedPolynomial::from_poly(&ring, poly);
        let var = [variance(duals.0), variance(duals.1)];
        let exp = expand_product_schur(&p, &var).unwrap();
        prop_assert_eq!(exp.to_polynomial().unwrap(), p);
    }
}
