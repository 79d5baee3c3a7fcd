use std::f64::consts::PI;

use critline_core::moments::EULER_GAMMA;
use critline_core::{
    count_zeros, critical_point, gram_law_audit, gram_sums, mean_of_means, n_main_term,
    nonzero_crossing_bound, scan_zeros, theta, LineAngle, MomentEngine,
};
use proptest::prelude::*;

#[test]
fn zero_counts_track_main_term() {
    for t in [100.0, 1000.0, 5000.0] {
        let c = count_zeros(t).unwrap();
        let main = n_main_term(t).unwrap() + 7.0 / 8.0;
        assert!(
            (c.count as f64 - main).abs() <= 3.0,
            "T={t} count={} main={main}",
            c.count
        );
        assert!(c.ambiguous.is_empty());
    }
}

#[test]
fn zero_count_at_thousand_matches_theta_rule() {
    let th = theta(1000.0).unwrap().theta;
    assert_eq!(
        count_zeros(1000.0).unwrap().count as f64,
        (th / PI + 1.0).round()
    );
}

#[test]
fn twenty_nine_zeros_below_one_hundred() {
    let scan = scan_zeros(100.0).unwrap();
    assert_eq!(scan.zeros.len(), 29);
    assert!((scan.zeros[0].gamma - 14.134725141734694).abs() <= 1e-8);
    for z in &scan.zeros {
        assert!(z.bracket.1 - z.bracket.0 <= 1e-9);
        let v = critical_point(z.gamma).unwrap().zeta.norm();
        assert!(v <= 1e-6, "|ζ| = {v} at {}", z.gamma);
    }
}

#[test]
fn gram_violations_have_negative_zeta() {
    let audit = gram_law_audit(3000).unwrap();
    assert_eq!(audit.violations[0].n, 126);
    for v in &audit.violations {
        let zeta = critical_point(v.t).unwrap().zeta;
        assert!(zeta.re < 0.0, "n={} ζ={zeta}", v.n);
        assert!(zeta.im.abs() <= 1e-8);
    }
}

#[test]
fn gram_sums_obey_cauchy_schwarz() {
    let g = gram_sums(2000).unwrap();
    assert!(g.sum_z2 * g.sum_z2 <= g.sum_z4 * g.n as f64);
    assert!(g.sum_z * g.sum_z <= g.sum_z2 * g.n as f64);
    assert!(g.sum_pair < 0.0);
    let expected = -2.0 * (EULER_GAMMA + 1.0) * g.n as f64;
    assert!((g.ratios.pair - g.sum_pair / expected).abs() <= 1e-12);
}

#[test]
fn first_moment_deviation_shrinks_with_height() {
    let small = MomentEngine::new(1e3)
        .unwrap()
        .report(LineAngle::REAL)
        .unwrap();
    let large = MomentEngine::new(1e4)
        .unwrap()
        .report(LineAngle::REAL)
        .unwrap();
    assert!(large.rel_dev1.unwrap() < small.rel_dev1.unwrap());
}

#[test]
fn nonzero_crossings_exceed_lower_bound() {
    for phi in [0.0, PI / 3.0] {
        let b = nonzero_crossing_bound(LineAngle::new(phi).unwrap(), 2000.0).unwrap();
        assert!(b.satisfied, "phi={phi}: {b:?}");
    }
}

#[test]
fn mean_of_means_near_one_half() {
    let m = mean_of_means(2000.0, 8).unwrap();
    assert!((m.re - 0.5).abs() <= 0.05 && m.im.abs() <= 0.05, "{m}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn moment_report_is_consistent(phi in 0.0f64..PI, t_max in 100.0f64..2000.0) {
        let phi = LineAngle::new(phi).unwrap();
        let r = MomentEngine::new(t_max).unwrap().report(phi).unwrap();
        prop_assert_eq!(r.count_total, r.count_zeros + r.count_delta - r.coincidences);
        prop_assert_eq!(r.count_nonzero, r.count_delta - r.coincidences);
        // Cauchy–Schwarz over the crossing values
        prop_assert!(r.sum1.norm_sqr() <= r.sum2 * r.count_delta as f64 * (1.0 + 1e-12));
        // values lie on e^{iφ}ℝ, so the first moment does too
        let rotated = phi.direction().conj() * r.sum1;
        prop_assert!(rotated.im.abs() <= 1e-6 * r.count_delta as f64);
        prop_assert!((r.mean - r.sum1 / r.count_total as f64).norm() <= 1e-12);
    }
}

#[test]
#[allow(clippy::approx_constant)] // the rounded angle users type for π/2
fn relative_deviation_undefined_near_imaginary_axis() {
    let engine = MomentEngine::new(1e3).unwrap();
    let near = engine.report(LineAngle::new(1.5707963).unwrap()).unwrap();
    assert!(near.main1.norm() < 1e-3);
    assert_eq!(near.rel_dev1, None);
    let exact = engine.report(LineAngle::imaginary()).unwrap();
    assert_eq!(exact.rel_dev1, None);
    assert_eq!(exact.main1.norm(), 0.0);
    assert!(engine
        .report(LineAngle::new(1.5).unwrap())
        .unwrap()
        .rel_dev1
        .is_some());
}
