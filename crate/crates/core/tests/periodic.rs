use cdyn_core::green::{EndoGreen, PolyGreen};
use cdyn_core::periodic::{
    angular_discrepancy, equi_sample, periodic_points_1d, periodic_points_endo2, periodic_points_henon,
    preperiodicity_endo, preperiodicity_poly, AberthConfig, NewtonConfig, PreperConfig, PreperVerdict, Stability,
};
use cdyn_core::{Complex64, HenonMap, PlaneMap, Point2, Poly, Poly2, RegularEndo};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn half_henon() -> HenonMap {
    HenonMap::single(Poly::monomial(2), c(0.5, 0.0)).unwrap()
}

#[test]
fn squaring_map_cycles_up_to_ten() {
    let z2 = Poly::monomial(2);
    for n in 1..=10usize {
        let pts = periodic_points_1d(&z2, n, &AberthConfig::default()).unwrap();
        let total: usize = pts.iter().map(|p| p.multiplicity).sum();
        assert_eq!(total, 1 << n);
        let repelling: Vec<_> = pts.iter().filter(|p| p.stability == Stability::Repelling).collect();
        assert_eq!(repelling.len(), (1 << n) - 1);
        for p in &repelling {
            assert!((p.location.norm() - 1.0).abs() <= 1e-8);
            assert!((p.multipliers[0].norm() - (1u64 << n) as f64).abs() <= 1e-8 * (1u64 << n) as f64);
            assert!(n % p.period == 0);
            assert_eq!(Stability::classify(&p.multipliers), p.stability);
        }
    }
}

#[test]
fn squaring_sample_equidistributes() {
    let z2 = Poly::monomial(2);
    let mut last = f64::INFINITY;
    for n in 4..=12usize {
        let pts = periodic_points_1d(&z2, n, &AberthConfig::default()).unwrap();
        let sample = equi_sample(&pts, Stability::Repelling).unwrap();
        assert_eq!(sample.raw_count, (1 << n) - 1);
        assert!((sample.weights.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        let disc = angular_discrepancy(&sample);
        // exact value for the roots of z^(2^n - 1) = 1
        assert!((disc - 1.0 / ((1 << n) - 1) as f64).abs() < 1e-9);
        assert!(disc < last);
        last = disc;
        if n == 10 {
            assert!(disc <= 0.05);
        }
    }
}

#[test]
fn cubic_fixed_points() {
    let p = Poly::new(vec![c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0 / 3.0, 0.0)]);
    let pts = periodic_points_1d(&p, 1, &AberthConfig::default()).unwrap();
    assert_eq!(pts.len(), 3);
    let s3 = 3f64.sqrt();
    assert!((pts[0].location - c(-s3, 0.0)).norm() < 1e-12);
    assert!(pts[1].location.norm() < 1e-12 && pts[1].stability == Stability::Attracting);
    assert!((pts[2].location - c(s3, 0.0)).norm() < 1e-12);
    assert!((pts[2].multipliers[0] - c(3.0, 0.0)).norm() < 1e-11);
}

#[test]
fn henon_cycle_counts_and_invariance() {
    let f = half_henon();
    let r = f.filtration_radius();
    for n in 1..=4usize {
        let sol = periodic_points_henon(&f, n, r, &NewtonConfig::default()).unwrap();
        assert_eq!(sol.points.len(), 1 << n, "period {n}");
        for p in &sol.points {
            assert!(p.residual <= 1e-10);
            assert_eq!(Stability::classify(&p.multipliers), p.stability);
            let image = f.eval(p.location);
            assert!(sol.points.iter().any(|q| q.location.dist_max(&image) <= 1e-8));
            // |det| = 0.5^n
            let det = p.multipliers[0] * p.multipliers[1];
            assert!((det.norm() - 0.5f64.powi(n as i32)).abs() < 1e-9);
        }
    }
}

#[test]
fn henon_fixed_point_multipliers() {
    let sol = periodic_points_henon(&half_henon(), 1, half_henon().filtration_radius(), &NewtonConfig::default()).unwrap();
    let origin = &sol.points[0];
    assert!(origin.location.norm_max() < 1e-12);
    assert_eq!(origin.stability, Stability::Attracting);
    for m in &origin.multipliers {
        assert!((m.norm() - 0.5f64.sqrt()).abs() < 1e-12 && m.re.abs() < 1e-12);
    }
    let saddle = &sol.points[1];
    assert!(saddle.location.dist_max(&Point2::real(1.5, 1.5)) < 1e-12);
    assert_eq!(saddle.stability, Stability::Saddle);
    let s7 = 7f64.sqrt();
    assert!((saddle.multipliers[0].re - (3.0 + s7) / 2.0).abs() < 1e-12);
    assert!((saddle.multipliers[1].re - (3.0 - s7) / 2.0).abs() < 1e-12);
}

#[test]
fn power_map_fixed_and_period_two_points() {
    let h = RegularEndo::power(2).unwrap();
    let r = h.trapping_radius();
    let one = periodic_points_endo2(&h, 1, r, &NewtonConfig::default()).unwrap();
    assert_eq!(one.points.len(), 4);
    let rep: Vec<_> = one.points.iter().filter(|p| p.stability == Stability::Repelling).collect();
    assert_eq!(rep.len(), 1);
    assert!(rep[0].location.dist_max(&Point2::real(1.0, 1.0)) < 1e-12);
    let two = periodic_points_endo2(&h, 2, r, &NewtonConfig::default()).unwrap();
    assert_eq!(two.points.len(), 16);
    let rep = two.points.iter().filter(|p| p.stability == Stability::Repelling).count();
    assert_eq!(rep, 9);
    assert!(two.points.iter().all(|p| p.residual <= 1e-10));
}

#[test]
fn sum_endo_fixed_points() {
    let one = c(1.0, 0.0);
    let h = RegularEndo::new(
        Poly2::from_terms(&[(2, 0, one), (0, 1, one)]).unwrap(),
        Poly2::from_terms(&[(0, 2, one), (1, 0, one)]).unwrap(),
    )
    .unwrap();
    assert_eq!(h.eval(Point2::real(1.0, -1.0)), Point2::real(0.0, 2.0));
    let r = h.escape_data().unwrap().radius;
    let sol = periodic_points_endo2(&h, 1, r, &NewtonConfig::default()).unwrap();
    // x^2 + y^2 = 0 on the fixed set: (0,0) counted twice, (1-i, 1+i), (1+i, 1-i)
    assert_eq!(sol.points.len(), 3);
    let expected = [Point2::ORIGIN, Point2::new(c(1.0, -1.0), c(1.0, 1.0)), Point2::new(c(1.0, 1.0), c(1.0, -1.0))];
    for e in expected {
        assert!(sol.points.iter().any(|p| p.location.dist_max(&e) < 1e-7), "{e:?}");
    }
    assert!(sol.points.iter().all(|p| p.residual <= 1e-10));
}

#[test]
fn preperiodicity_examples() {
    let g = EndoGreen::new(RegularEndo::power(2).unwrap()).unwrap();
    let cfg = PreperConfig::default();
    assert_eq!(
        preperiodicity_endo(&g, Point2::ORIGIN, &cfg).unwrap(),
        PreperVerdict::Preperiodic { tail: 0, period: 1 }
    );
    assert_eq!(preperiodicity_endo(&g, Point2::real(2.0, 0.0), &cfg).unwrap(), PreperVerdict::Escaping);
    let zeta = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 5.0);
    let z2 = PolyGreen::new(Poly::monomial(2)).unwrap();
    assert_eq!(
        preperiodicity_poly(&z2, zeta, &cfg).unwrap(),
        PreperVerdict::Preperiodic { tail: 0, period: 4 }
    );
    // -1 lands on the fixed point 1 after one step
    assert_eq!(
        preperiodicity_poly(&z2, c(-1.0, 0.0), &cfg).unwrap(),
        PreperVerdict::Preperiodic { tail: 1, period: 1 }
    );
}
