mod common;

use common::*;
use hironaka::{diagram_of, hs_function, hs_polynomial, krull_dimension};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(seeded(40))]

    #[test]
    fn hs_matches_linear_algebra(seed in 0u64..100_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 1 + (seed % 3) as usize;
        let gens = random_ideal(&mut rng, &gf(), n);
        let d = diagram_of(&gens);
        prop_assume!(!is_budget(&d));
        let d = d.unwrap();
        for eta in 0..=5 {
            prop_assert_eq!(hs_function(&d, eta).unwrap(), hs_oracle(&gens, eta), "eta = {}", eta);
        }
    }

    #[test]
    fn polynomial_degree_is_dimension(seed in 0u64..100_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 1 + (seed % 3) as usize;
        let gens = random_ideal(&mut rng, &gf(), n);
        let d = diagram_of(&gens);
        prop_assume!(!is_budget(&d));
        let d = d.unwrap();
        let h = hs_polynomial(&d).unwrap();
        prop_assert_eq!(h.dim, krull_dimension(&d).unwrap());
        prop_assert!(h.dim < n);
        for eta in h.stab..h.values.len() {
            prop_assert_eq!(h.eval(eta as u64), q(h.values[eta] as i64));
        }
        if h.stab > 0 {
            prop_assert_ne!(h.eval(h.stab as u64 - 1), q(h.values[h.stab - 1] as i64));
        }
        // H is nondecreasing
        prop_assert!(h.values.windows(2).all(|w| w[0] <= w[1]));
    }
}

#[test]
fn cusp_against_oracle() {
    let gens = [poly(&[(&[2, 0], 1), (&[0, 3], 1)]), poly(&[(&[1, 1], 1)])];
    let d = diagram_of(&gens).unwrap();
    let values: Vec<u64> = (0..8).map(|eta| hs_function(&d, eta).unwrap()).collect();
    let oracle: Vec<u64> = (0..8).map(|eta| hs_oracle(&gens, eta)).collect();
    assert_eq!(values, vec![1, 3, 4, 5, 5, 5, 5, 5]);
    assert_eq!(values, oracle);
}

#[test]
fn hypersurface_of_order_d() {
    // H(eta) = sum_{k <= eta} min(k + 1, d) in two variables
    let g = poly(&[(&[3, 0], 1), (&[1, 2], -2), (&[0, 5], 1)]);
    let d = diagram_of(&[g.clone()]).unwrap();
    let h = hs_polynomial(&d).unwrap();
    assert_eq!(h.poly_coeffs, vec![q(0), q(3)]);
    assert_eq!(h.stab, 1);
    for eta in 0..10 {
        assert_eq!(h.values[eta], hs_oracle(&[g.clone()], eta as u32));
    }
}
