use cdyn_core::bifurcation::{
    ce_estimate, condition_report, param_derivative, pcf_equi_sample, pcf_solve, pr_margin,
    transverse_prerepelling_check, CritStatus, PcfConfig, PrerepellingVerdict, SeedBox,
};
use cdyn_core::{Complex64, MarkedPair, Poly};
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn t_poly(coeffs: &[f64]) -> Poly {
    Poly::from_real(coeffs)
}

/// `z^2 + t` with marked point `0`.
fn quadratic() -> MarkedPair {
    MarkedPair::new(vec![t_poly(&[0.0, 1.0]), Poly::zero(), t_poly(&[1.0])], Poly::zero()).unwrap()
}

fn line_x0(half: f64, per_axis: usize) -> SeedBox {
    SeedBox {
        lower: vec![c(0.0, 0.0), c(-half, -half)],
        upper: vec![c(0.0, 0.0), c(half, half)],
        per_axis,
    }
}

#[test]
fn fixed_critical_points_system() {
    let sols = pcf_solve(3, &[(0, 1), (0, 1)], &SeedBox::centered(3, 3.0, 6), &PcfConfig::default()).unwrap();
    let origin = sols.iter().find(|s| s.param.params().iter().all(|v| v.norm() < 1e-12)).unwrap();
    assert!((origin.transversality_det - c(1.0, 0.0)).norm() <= 1e-8);
    assert!(origin.transverse);
    // the other two: x^2 = -6, y = 0
    let s6 = 6f64.sqrt();
    for target in [c(0.0, s6), c(0.0, -s6)] {
        let s = sols.iter().find(|s| (s.param.params()[0] - target).norm() < 1e-8).unwrap();
        assert!(s.param.params()[1].norm() < 1e-8);
        assert!((s.transversality_det - c(-2.0, 0.0)).norm() < 1e-7);
    }
    assert_eq!(sols.len(), 3);
    for s in &sols {
        assert!(s.residual <= 1e-10);
        assert!(s.green_bif.value <= s.green_bif.error_bound);
    }
}

#[test]
fn period_two_critical_orbit_on_the_symmetry_line() {
    let s3 = 3f64.sqrt();
    let sols = pcf_solve(3, &[(0, 2), (0, 2)], &line_x0(2.5, 9), &PcfConfig::default()).unwrap();
    for y in [c(0.0, s3), c(0.0, -s3)] {
        let s = sols
            .iter()
            .find(|s| s.param.params()[0].norm() < 1e-8 && (s.param.params()[1] - y).norm() < 1e-8)
            .unwrap_or_else(|| panic!("missing (0, {y})"));
        assert!((s.transversality_det - c(-2.0, 0.0)).norm() < 1e-7);
    }
}

#[test]
fn mixed_system_only_meets_the_symmetry_line_at_the_origin() {
    // on x = 0 the second relation reads y = 0
    let sols = pcf_solve(3, &[(0, 2), (0, 1)], &line_x0(2.5, 9), &PcfConfig::default()).unwrap();
    let on_line: Vec<_> = sols.iter().filter(|s| s.param.params()[0].norm() < 1e-8).collect();
    assert_eq!(on_line.len(), 1);
    assert!(on_line[0].param.params()[1].norm() < 1e-8);
}

#[test]
fn solutions_are_closed_under_negation() {
    // P_{-x,-y}(z) = -P_{x,y}(-z)
    let sols = pcf_solve(3, &[(0, 2), (0, 1)], &SeedBox::centered(3, 2.5, 6), &PcfConfig::default()).unwrap();
    assert!(!sols.is_empty());
    for s in &sols {
        let neg: Vec<Complex64> = s.param.params().iter().map(|v| -v).collect();
        assert!(
            sols.iter().any(|t| t.param.params().iter().zip(&neg).all(|(a, b)| (a - b).norm() < 1e-7)),
            "{:?}",
            s.param
        );
    }
}

#[test]
fn equi_sample_of_length_one() {
    let sample = pcf_equi_sample(3, 1, &SeedBox::centered(3, 3.0, 6), &PcfConfig::default()).unwrap();
    assert!(sample.sample.points.iter().any(|p| p.params().iter().all(|v| v.norm() < 1e-12)));
    assert!((sample.sample.weights.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    assert!(sample.solutions.iter().all(|s| s.green_bif.value <= s.green_bif.error_bound));
}

#[test]
fn equi_sample_of_length_two_matches_elimination() {
    // Counts of new parameters per combinatorics from resultant elimination
    // of the relation pairs (square-free parts); 45 parameters in total.
    // The box misses only (+-2 sqrt 3, +-3 sqrt 3), both in the last system.
    let expected = [3, 6, 2, 6, 2, 12, 6, 6, 0];
    let sample = pcf_equi_sample(3, 2, &SeedBox::centered(3, 4.0, 9), &PcfConfig::default()).unwrap();
    let counts: Vec<usize> = sample.per_combinatorics.iter().map(|(_, k)| *k).collect();
    assert_eq!(counts, expected);
    assert_eq!(sample.solutions.len(), 43);
    // multiple roots must not leave clusters of near-copies behind
    let params: Vec<Vec<Complex64>> = sample.solutions.iter().map(|s| s.param.params()).collect();
    for (i, a) in params.iter().enumerate() {
        for b in &params[i + 1..] {
            let dist = a.iter().zip(b).map(|(u, v)| (u - v).norm()).fold(0.0, f64::max);
            assert!(dist > 0.1, "{a:?} vs {b:?}");
        }
    }
    let s3 = 3f64.sqrt();
    for sign in [1.0, -1.0] {
        assert!(params.iter().any(|p| (p[0] - c(0.0, 0.0)).norm() < 1e-9 && (p[1] - c(0.0, sign * s3)).norm() < 1e-9));
        assert!(!params.iter().any(|p| (p[0] - c(sign * 2.0 * s3, 0.0)).norm() < 1e-6));
    }
    assert!(sample.solutions.iter().all(|s| s.transverse && s.residual <= 1e-10));
}

#[test]
fn chebyshev_growth_estimates() {
    let p = Poly::from_real(&[-2.0, 0.0, 1.0]);
    let e30 = ce_estimate(&p, 1, 30).unwrap();
    assert!((e30.exponent.unwrap() - 4f64.ln()).abs() < 1e-6);
    let e60 = ce_estimate(&p, 1, 60).unwrap();
    assert!((e30.exponent.unwrap() - e60.exponent.unwrap()).abs() < 1e-6);
    let z2 = ce_estimate(&Poly::monomial(2), 1, 10).unwrap();
    assert_eq!(z2.exponent, None);
    assert!(matches!(z2.critical_points[0].1, CritStatus::AttractingBasin));
    let margin = |h| pr_margin(&p, c(-2.0, 0.0), 0.6, 1, h).unwrap();
    assert!((margin(5) - 2.0).abs() < 1e-12);
    assert!(margin(40) <= margin(5));
    assert_eq!(pr_margin(&p, c(0.0, 0.0), 0.6, 0, 3).unwrap(), 0.0);
}

#[test]
fn parameter_derivative_by_hand() {
    assert!((param_derivative(&quadratic(), c(-2.0, 0.0), 3).unwrap() - c(-11.0, 0.0)).norm() <= 1e-12);
    for n in [1, 5, 17] {
        assert_eq!(param_derivative(&quadratic(), c(0.0, 0.0), n).unwrap(), c(1.0, 0.0));
    }
    assert_eq!(param_derivative(&quadratic(), c(0.3, 0.0), 0).unwrap(), c(0.0, 0.0));
    let r = condition_report(&quadratic(), c(-2.0, 0.0), 1, 20, 0.6).unwrap();
    assert!((r.ce_exponent_estimate.unwrap() - 4f64.ln()).abs() < 1e-9);
    assert_eq!(r.horizon, 20);
}

#[test]
fn prerepelling_transversality() {
    let r = transverse_prerepelling_check(&quadratic(), c(-2.0, 0.0), 2, 1, 1e-6).unwrap();
    assert_eq!(r.verdict, PrerepellingVerdict::Transverse);
    assert!((r.landing - c(2.0, 0.0)).norm() < 1e-12);
    assert!((r.multiplier - c(4.0, 0.0)).norm() < 1e-12);
    let attracting = transverse_prerepelling_check(&quadratic(), c(0.0, 0.0), 0, 1, 1e-6).unwrap();
    assert_eq!(attracting.verdict, PrerepellingVerdict::NonRepelling);
    // z^2 + t z keeps 0 fixed with multiplier t; marking 0 follows the cycle
    let tangent = MarkedPair::new(vec![Poly::zero(), t_poly(&[0.0, 1.0]), t_poly(&[1.0])], Poly::zero()).unwrap();
    let r = transverse_prerepelling_check(&tangent, c(3.0, 0.0), 0, 1, 1e-6).unwrap();
    assert_eq!(r.verdict, PrerepellingVerdict::NonTransverse);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn derivative_matches_central_differences(tr in -0.3..0.2f64, ti in -0.3..0.3f64, n in 1usize..=20) {
        let pair = quadratic();
        let t0 = c(tr, ti);
        let h = 1e-6;
        let orbit = |t: Complex64| {
            let p = pair.poly_at(t);
            let mut g = pair.marked_at(t);
            for _ in 0..n {
                g = p.eval(g);
            }
            g
        };
        let fd = (orbit(t0 + h) - orbit(t0 - h)) / (2.0 * h);
        let exact = param_derivative(&pair, t0, n).unwrap();
        prop_assert!((fd - exact).norm() <= 1e-4 * exact.norm().max(1.0));
    }
}
