//! Green-function values against the frozen deep-iteration oracle
//! (`oracle/deep_iteration.py`), closed forms and functional equations.

use cdyn_core::green::{
    green_activity, green_bif, Direction, EndoGreen, EscapeConfig, GreenEstimate, HenonGreen, PolyGreen,
};
use cdyn_core::{Complex64, DegreeDFamilyParam, HenonMap, Point2, Poly, Poly2, RegularEndo};
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn half_henon() -> HenonMap {
    HenonMap::single(Poly::monomial(2), c(0.5, 0.0)).unwrap()
}

fn sum_endo() -> RegularEndo {
    let one = c(1.0, 0.0);
    let p = Poly2::from_terms(&[(2, 0, one), (0, 1, one)]).unwrap();
    let q = Poly2::from_terms(&[(0, 2, one), (1, 0, one)]).unwrap();
    RegularEndo::new(p, q).unwrap()
}

fn cfg() -> EscapeConfig {
    EscapeConfig::default()
}

/// The estimate brackets `truth`, and the bracket is tight.
fn assert_brackets(e: &GreenEstimate, truth: f64, tight: f64) {
    assert!(
        (e.value - truth).abs() <= e.error_bound,
        "value {} vs oracle {} exceeds bound {}",
        e.value,
        truth,
        e.error_bound
    );
    assert!(e.error_bound <= tight, "bound {} looser than {}", e.error_bound, tight);
}

#[test]
fn sum_endo_at_three_three() {
    let g = EndoGreen::new(sum_endo()).unwrap();
    let e = g.eval(Point2::real(3.0, 3.0), &cfg()).unwrap();
    assert_brackets(&e, 1.26326527842839643233894296031, 1e-8);
}

#[test]
fn henon_far_point_both_directions() {
    let g = HenonGreen::new(half_henon());
    let p = Point2::real(0.0, 1e6);
    let fwd = g.eval(p, Direction::Forward, &cfg()).unwrap();
    assert_brackets(&fwd, 13.8155105579642741039829487281, 1e-8);
    assert!((fwd.value - 1e6f64.ln()).abs() < 0.01);
    let bwd = g.eval(p, Direction::Backward, &cfg()).unwrap();
    assert_brackets(&bwd, 7.60090245954208174583674528618, 1e-8);
    let max = g.eval_max(p, &cfg()).unwrap();
    assert_eq!(max.value, fwd.value);
}

#[test]
fn henon_at_two_zero() {
    let g = HenonGreen::new(half_henon());
    let p = Point2::real(2.0, 0.0);
    assert_brackets(&g.eval(p, Direction::Forward, &cfg()).unwrap(), 0.0229160308679943639682424935428, 1e-8);
    assert_brackets(&g.eval(p, Direction::Backward, &cfg()).unwrap(), 1.37829212499238678089446311, 1e-8);
}

#[test]
fn cubic_activity_and_shift_identity() {
    let param = DegreeDFamilyParam::cubic(c(0.0, 0.0), c(10.0, 0.0));
    let g1 = green_activity(&param, 1, &cfg()).unwrap();
    assert_brackets(&g1, 0.587710655034408151576661765032, 1e-8);
    let dyn_at_10 = PolyGreen::new(param.poly()).unwrap().eval(c(10.0, 0.0), &cfg()).unwrap();
    assert_brackets(&dyn_at_10, 1.76313196510322445472998529507, 1e-8);
    // G(P(c)) = 3 G(c) with P(0) = 10
    assert!((3.0 * g1.value - dyn_at_10.value).abs() <= 3.0 * g1.error_bound + dyn_at_10.error_bound);
    // both marked points sit at 0 when x = 0
    let g2 = green_activity(&param, 2, &cfg()).unwrap();
    assert_eq!(g1.value, g2.value);
    let bif = green_bif(&param, &cfg()).unwrap();
    assert_brackets(&bif, 3.0 * 0.587710655034408151576661765032, 1e-7);
}

#[test]
fn trivial_zeros() {
    let origin = Point2::ORIGIN;
    let g = HenonGreen::new(half_henon());
    for dir in [Direction::Forward, Direction::Backward] {
        assert_eq!(g.eval(origin, dir, &cfg()).unwrap().value, 0.0);
    }
    assert_eq!(g.eval_max(origin, &cfg()).unwrap().value, 0.0);
    let zero = DegreeDFamilyParam::cubic(c(0.0, 0.0), c(0.0, 0.0));
    for i in 1..=2 {
        assert_eq!(green_activity(&zero, i, &cfg()).unwrap().value, 0.0);
    }
    assert_eq!(green_bif(&zero, &cfg()).unwrap().value, 0.0);
    let square = EndoGreen::new(RegularEndo::power(2).unwrap()).unwrap();
    let on_torus = square.eval(Point2::real(1.0, 1.0), &cfg()).unwrap();
    assert_eq!(on_torus.value, 0.0);
    assert!(!on_torus.escaped);
    let e = square.eval(Point2::real(2.0, 0.5), &cfg()).unwrap();
    assert!((e.value - 2f64.ln()).abs() <= e.error_bound && e.error_bound <= 1e-9);
}

#[test]
fn tails_shrink_geometrically_along_traces() {
    let square = EndoGreen::new(sum_endo()).unwrap();
    let (_, steps) = square.trace(Point2::real(1.5, -0.7), &cfg(), 10).unwrap();
    let henon = HenonGreen::new(half_henon());
    let (_, back) = henon.trace(Point2::real(2.0, 0.0), Direction::Backward, &cfg(), 10).unwrap();
    let cubic = PolyGreen::new(DegreeDFamilyParam::cubic(c(0.5, 0.5), c(1.0, -1.0)).poly()).unwrap();
    let (_, one) = cubic.trace(c(2.0, 1.0), &cfg(), 10).unwrap();
    for (steps, deg) in [(steps, 2.0f64), (back, 2.0), (one, 3.0)] {
        assert!(steps.len() >= 11);
        for w in steps.windows(2) {
            assert_eq!(w[1].depth, w[0].depth + 1);
            assert!(w[1].ln_tail_bound <= w[0].ln_tail_bound - deg.ln() + 1e-12);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn values_are_nonnegative(xr in -4.0..4.0f64, xi in -4.0..4.0f64, yr in -4.0..4.0f64, yi in -4.0..4.0f64) {
        let p = Point2::new(c(xr, xi), c(yr, yi));
        let endo = EndoGreen::new(sum_endo()).unwrap().eval(p, &cfg()).unwrap();
        let henon = HenonGreen::new(half_henon()).eval_max(p, &cfg()).unwrap();
        let bif = green_bif(&DegreeDFamilyParam::cubic(p.x, p.y), &cfg()).unwrap();
        for e in [endo, henon, bif] {
            prop_assert!(e.value >= 0.0 && e.error_bound >= 0.0);
        }
    }

    #[test]
    fn henon_functional_equations(xr in -3.0..3.0f64, xi in -3.0..3.0f64, yr in -3.0..3.0f64, yi in -3.0..3.0f64) {
        let f = half_henon();
        let g = HenonGreen::new(f.clone());
        let p = Point2::new(c(xr, xi), c(yr, yi));
        let fp = f.eval(p);
        let plus = (g.eval(p, Direction::Forward, &cfg()).unwrap(), g.eval(fp, Direction::Forward, &cfg()).unwrap());
        prop_assert!((plus.1.value - 2.0 * plus.0.value).abs() <= plus.1.error_bound + 2.0 * plus.0.error_bound);
        let minus = (g.eval(p, Direction::Backward, &cfg()).unwrap(), g.eval(fp, Direction::Backward, &cfg()).unwrap());
        prop_assert!((minus.1.value - 0.5 * minus.0.value).abs() <= minus.1.error_bound + 0.5 * minus.0.error_bound);
    }

    #[test]
    fn bif_dominates_scaled_first_activity(xr in -2.0..2.0f64, xi in -2.0..2.0f64, yr in -2.0..2.0f64, yi in -2.0..2.0f64) {
        let param = DegreeDFamilyParam::cubic(c(xr, xi), c(yr, yi));
        let g1 = green_activity(&param, 1, &cfg()).unwrap();
        let bif = green_bif(&param, &cfg()).unwrap();
        prop_assert!(bif.value >= 3.0 * g1.value - 3.0 * g1.error_bound);
        prop_assert!(bif.value >= green_activity(&param, 2, &cfg()).unwrap().value);
    }

    #[test]
    fn activity_is_invariant_along_the_orbit(xr in -2.0..2.0f64, yr in -2.0..2.0f64, yi in -2.0..2.0f64) {
        let param = DegreeDFamilyParam::cubic(c(xr, 0.0), c(yr, yi));
        let g = PolyGreen::new(param.poly()).unwrap();
        for crit in param.critical_points() {
            let at_c = g.eval(crit, &cfg()).unwrap();
            let at_image = g.eval(param.eval(crit), &cfg()).unwrap();
            prop_assert!((3.0 * at_c.value - at_image.value).abs() <= 3.0 * at_c.error_bound + at_image.error_bound);
        }
    }

    #[test]
    fn mean_value_on_complex_lines(xr in -2.0..2.0f64, yr in -2.0..2.0f64, ur in -1.0..1.0f64, ui in -1.0..1.0f64, r in 0.05..0.8f64) {
        let g = HenonGreen::new(half_henon());
        let center = Point2::new(c(xr, 0.0), c(yr, 0.0));
        let dir = Point2::new(c(1.0, 0.0), c(ur, ui));
        let k = 256;
        let mut mean = 0.0;
        let mut err: f64 = 0.0;
        let mut samples = Vec::with_capacity(k);
        for j in 0..k {
            let s = Complex64::from_polar(r, 2.0 * std::f64::consts::PI * j as f64 / k as f64);
            let e = g.eval_max(center + dir.scale(s), &cfg()).unwrap();
            mean += e.value / k as f64;
            err = err.max(e.error_bound);
            samples.push(e.value);
        }
        let at_center = g.eval_max(center, &cfg()).unwrap();
        // quadrature allowance: spread between the two interleaved half-rules
        let even: f64 = samples.iter().step_by(2).sum::<f64>() / (k / 2) as f64;
        let odd: f64 = samples.iter().skip(1).step_by(2).sum::<f64>() / (k / 2) as f64;
        let quad = (even - odd).abs();
        prop_assert!(at_center.value <= mean + err + at_center.error_bound + quad + 1e-12,
            "center {} mean {} quad {}", at_center.value, mean, quad);
    }
}

#[test]
fn power_map_closed_form_over_random_points() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for d in [2, 3] {
        let g = EndoGreen::new(RegularEndo::power(d).unwrap()).unwrap();
        for _ in 0..2000 {
            let mut coord = || c(rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0));
            let p = Point2::new(coord(), coord());
            let truth = p.x.norm().max(1.0).ln().max(p.y.norm().max(1.0).ln());
            let e = g.eval(p, &cfg()).unwrap();
            assert!((e.value - truth).abs() <= 1e-9, "{p:?}");
        }
    }
}
