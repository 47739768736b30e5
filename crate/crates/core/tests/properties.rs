//! Property tests over randomly generated measures, polynomials and points.

use dirichlet_bidisc::gram::{gram_matrix, richter_rhs};
use dirichlet_bidisc::measure::CircleMeasure;
use dirichlet_bidisc::toral::build_pair;
use dirichlet_bidisc::{Axis, BiPoly, Complex64, MonomialBasis};
use proptest::prelude::*;

fn complex(r: f64) -> impl Strategy<Value = Complex64> {
    (-r..r, -r..r).prop_map(|(a, b)| Complex64::new(a, b))
}

fn disc_point(r: f64) -> impl Strategy<Value = Complex64> {
    (0.0..r, 0.0..std::f64::consts::TAU).prop_map(|(rho, t)| Complex64::from_polar(rho, t))
}

fn poly(max: usize) -> impl Strategy<Value = BiPoly> {
    (0..=max, 0..=max).prop_flat_map(|(d1, d2)| {
        prop::collection::vec(complex(1.0), (d1 + 1) * (d2 + 1)).prop_map(move |c| BiPoly::new(d1, d2, c).unwrap())
    })
}

fn measure() -> impl Strategy<Value = CircleMeasure> {
    prop_oneof![
        (0.0..2.0f64).prop_map(|m| CircleMeasure::lebesgue(m).unwrap()),
        prop::collection::vec((0.0..std::f64::consts::TAU, 0.01..1.0f64), 1..4)
            .prop_map(|atoms| CircleMeasure::atoms(&atoms).unwrap()),
        (0.0..0.24f64, 0.0..0.24f64).prop_map(|(a, b)| {
            CircleMeasure::trig_density(&[Complex64::new(1.0, 0.0), Complex64::new(a, 0.0), Complex64::new(0.0, b)]).unwrap()
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn poisson_lower_bound(mu in measure(), w in disc_point(0.999)) {
        let p = mu.poisson(w).unwrap();
        prop_assert!(p >= mu.total_mass() * (1.0 - w.norm_sqr()) / 4.0 - 1e-12);
    }

    #[test]
    fn division_round_trip(q in poly(4), lambda in disc_point(0.99), second in any::<bool>()) {
        let axis = if second { Axis::Z2 } else { Axis::Z1 };
        let back = q.mul_linear(axis, lambda).divide_slice(axis, lambda, 1e-12).unwrap();
        prop_assert!(back.max_coeff_diff(&q) <= 1e-13 * (1.0 + q.max_abs_coeff()));
    }

    #[test]
    fn slice_profile_is_monotone(f in poly(4), r in 0.01..0.98f64, dr in 0.001..0.02f64) {
        let a = f.slice_profile(r).unwrap();
        let b = f.slice_profile(r + dr).unwrap();
        prop_assert!(a <= b);
        prop_assert!(b <= f.hardy_norm_sq() * (1.0 + 1e-15));
    }

    #[test]
    fn gleason_split_reproduces(f in poly(3), l1 in disc_point(0.99), l2 in disc_point(0.99), z1 in disc_point(1.0), z2 in disc_point(1.0)) {
        let (g1, g2) = f.gleason_split((l1, l2));
        let lhs = f.eval(z1, z2) - f.eval(l1, l2);
        let rhs = (z1 - l1) * g1.eval(z1, z2) + (z2 - l2) * g2.eval(z1, z2);
        prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + f.max_abs_coeff() * 16.0));
    }

    #[test]
    fn hardy_dominance_and_richter(mu1 in measure(), mu2 in measure(), p in poly(2), k in 0usize..3, l in 0usize..3) {
        let g = gram_matrix(&mu1, &mu2, MonomialBasis::new(4, 4)).unwrap();
        let shifted = p.shift(k, l);
        let norm = g.norm_sq(&shifted).unwrap();
        prop_assert!(norm >= shifted.hardy_norm_sq() * (1.0 - 1e-12));
        let rhs = richter_rhs(&mu1, &mu2, &p, k, l).unwrap();
        prop_assert!((norm - rhs).abs() <= 1e-10 * rhs.abs().max(1e-300));
    }

    #[test]
    fn toral_identity_for_random_measures(mu1 in measure(), mu2 in measure()) {
        let pair = build_pair(&mu1, &mu2, 5, 5).unwrap();
        for (i, j) in [(Axis::Z1, Axis::Z1), (Axis::Z1, Axis::Z2), (Axis::Z2, Axis::Z2)] {
            prop_assert!(pair.toral_residual(i, j).unwrap() <= 1e-12 * pair.gram_norm());
        }
        prop_assert_eq!(pair.wandering_check(), 0.0);
    }

    #[test]
    fn kernel_reproduces(mu1 in measure(), mu2 in measure(), w1 in disc_point(0.9), w2 in disc_point(0.9), f in poly(3)) {
        let g = gram_matrix(&mu1, &mu2, MonomialBasis::new(3, 3)).unwrap();
        let kw = g.basis().to_poly(&g.kernel_coeffs((w1, w2)).unwrap());
        let err = (g.inner_product(&f, &kw).unwrap() - f.eval(w1, w2)).norm();
        prop_assert!(err <= 1e-10 * (1.0 + g.norm_sq(&f).unwrap().sqrt()));
    }
}
