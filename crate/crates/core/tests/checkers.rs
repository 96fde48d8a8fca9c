//! Checker behaviour on the corpus families.

use naads_core::checkers::*;
use naads_core::hull::DEFAULT_MAX_POINTS;
use naads_core::{corpus, Error, MapFamily, PropertyReport, SpaceKind, Verdict};
use num_rational::BigRational;

fn family(name: &str) -> MapFamily {
    corpus(name).unwrap().family
}

fn replays(report: &PropertyReport, f: &MapFamily) {
    let err = report.witness_replay_error(f).unwrap();
    assert!(err <= 1e-12, "{:?}: replay error {err}", report.property);
}

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn minimality(f: &MapFamily, eps: BigRational, order_cap: u64, depth: u64) -> PropertyReport {
    let r = minimality_certificate(
        f,
        &MinimalityParams { eps, order_cap, depth, grid: None, max_points: DEFAULT_MAX_POINTS },
    )
    .unwrap();
    replays(&r, f);
    r
}

fn sensitivity(f: &MapFamily, x: f64, delta: f64, n: u64) -> PropertyReport {
    let r = sensitivity_at_point(
        f,
        &SensitivityParams {
            x,
            delta,
            radii: vec![0.1, 0.01],
            samples: BALL_SAMPLES,
            n,
            sampling: Sampling::LowDiscrepancy,
        },
    )
    .unwrap();
    replays(&r, f);
    r
}

#[test]
fn periodicity_examples() {
    let p = periodicity_check(&family("example2_powers"), 0.3, 2, 10, DEFAULT_TOL).unwrap();
    assert_eq!(p.verdict, Verdict::EvidenceFor);

    let tent = family("example1_tent_sqrt");
    let r = periodicity_check(&tent, 0.25, 2, 5, DEFAULT_TOL).unwrap();
    assert_eq!(r.verdict, Verdict::Refuted);
    assert_eq!(r.int("witness_n"), Some(2));
    let w = &r.witnesses[0];
    assert!((naads_core::omega(&tent, 2, 0.25).unwrap() - (1.0 - 0.125_f64.sqrt())).abs() < 1e-12);
    assert!((w.distance - (1.0 - 0.125_f64.sqrt() - 0.25)).abs() < 1e-12);
    replays(&r, &tent);

    let half = periodicity_check(&tent, 0.5, 2, 25, DEFAULT_TOL).unwrap();
    assert_eq!(half.verdict, Verdict::EvidenceFor);
    assert!(half.real("max_deviation").unwrap() <= 1e-12);

    let fixed = periodicity_check(&family("interval_square_sqrt"), 0.0, 1, 10, DEFAULT_TOL).unwrap();
    assert_eq!(fixed.verdict, Verdict::EvidenceFor);

    let ex4 = periodicity_check(&family("circle_ex4"), 0.3, 2, 50, DEFAULT_TOL).unwrap();
    assert_eq!(ex4.verdict, Verdict::Certified);
    let settling = family("circle_settling");
    let s = periodicity_check(&settling, 0.3, 2, 50, DEFAULT_TOL).unwrap();
    assert_eq!(s.verdict, Verdict::Refuted);
    replays(&s, &settling);
}

#[test]
fn return_time_examples() {
    let h = return_time_set(&family("circle_harmonic"), 0.37, 0.1, 20).unwrap();
    assert!((-10..=10).all(|j| h.times.contains(&(2 * j))));
    assert_eq!(h.max_internal_gap, 2);

    let s = return_time_set(&family("circle_settling"), 0.0, 0.3, 20).unwrap();
    assert_eq!(s.times, vec![-3, -2, 0, 2, 3]);
    assert_eq!(s.censored_right_gap, 17);
    assert_eq!(s.censored_left_gap, 17);

    let id = return_time_set(&family("identity"), 0.6, 0.01, 5).unwrap();
    assert_eq!(id.times, (-5..=5).collect::<Vec<_>>());
    assert_eq!(id.max_internal_gap, 1);
    assert_eq!(id.gap_bound(), 1);
}

#[test]
fn almost_periodicity_examples() {
    let settling = family("circle_settling");
    let s = almost_periodicity_report(&settling, 0.0, 0.3, 20).unwrap();
    assert_eq!(s.verdict, Verdict::EvidenceAgainst);
    assert_eq!(s.ints("gap_trend"), Some(&[17, 37, 77][..]));
    replays(&s, &settling);

    let h = almost_periodicity_report(&family("circle_harmonic"), 0.2, 0.05, 40).unwrap();
    assert_eq!(h.verdict, Verdict::EvidenceFor);
    assert_eq!(h.int("M"), Some(2));

    let ex4 = family("circle_ex4");
    for x in [0.0, 0.3, 0.77] {
        for eps in [0.01, 0.1, 0.4] {
            let r = almost_periodicity_report(&ex4, x, eps, 40).unwrap();
            assert_eq!(r.verdict, Verdict::EvidenceFor);
            assert_eq!(r.int("M"), Some(2), "x={x} eps={eps}");
        }
    }
}

#[test]
fn uniform_almost_periodicity_examples() {
    let h = uniform_ap_report(&family("circle_harmonic"), 0.1, 40, 64).unwrap();
    assert_eq!(h.verdict, Verdict::EvidenceFor);
    assert_eq!(h.int("M"), Some(2));
    let s = uniform_ap_report(&family("circle_settling"), 0.3, 40, 64).unwrap();
    assert_eq!(s.verdict, Verdict::EvidenceAgainst);
    assert!(s.real("worst_point").is_some());
    let id = uniform_ap_report(&family("identity"), 0.1, 40, 16).unwrap();
    assert_eq!(id.int("M"), Some(1));
}

#[test]
fn equicontinuity_examples() {
    for name in ["circle_settling", "circle_ex4", "circle_harmonic", "identity"] {
        let r = equicontinuity_modulus(&family(name), 0.1, 50, 16).unwrap();
        assert_eq!(r.verdict, Verdict::EvidenceFor, "{name}");
        assert_eq!(r.real("delta"), Some(0.1), "{name}");
    }

    let powers = family("example2_powers");
    for n in [25, 50, 100] {
        let r = equicontinuity_modulus(&powers, 0.25, n, 16).unwrap();
        assert_eq!(r.verdict, Verdict::EvidenceAgainst);
        assert!(r.reals("delta_trend").unwrap().iter().all(|&d| d < 1e-3));
        replays(&r, &powers);
    }

    // sqrt near 0 turns a gap of eps^2 into eps.
    let sq = family("interval_square_sqrt");
    let r = equicontinuity_modulus(&sq, 0.1, 100, 16).unwrap();
    let trend = r.reals("delta_trend").unwrap();
    assert_eq!(r.verdict, Verdict::EvidenceFor);
    assert!(trend.iter().all(|&d| d == trend[0]));
    assert!(trend[0] > 0.01 / 2.0 && trend[0] <= 0.01, "{trend:?}");
    replays(&r, &sq);
}

#[test]
fn proximality_examples() {
    let powers = family("example2_powers");
    let s = proximal_liminf(&powers, 0.2, 0.8, 100).unwrap();
    assert!(s.min < 1e-3);
    assert!(s.max >= 0.59);

    let same = proximal_liminf(&powers, 0.4, 0.4, 100).unwrap();
    assert_eq!((same.min, same.argmin, same.max, same.argmax), (0.0, 0, 0.0, 0));

    let rot = proximal_liminf(&family("circle_harmonic"), 0.1, 0.3, 100).unwrap();
    assert!((rot.min - 0.2).abs() < 1e-12 && (rot.max - 0.2).abs() < 1e-12);

    let ly = li_yorke_classify(&powers, 0.2, 0.8, 100, 1e-3, 0.3).unwrap();
    assert_eq!(ly.verdict, Verdict::EvidenceFor);
    replays(&ly, &powers);
    let same = li_yorke_classify(&powers, 0.4, 0.4, 100, 1e-3, 0.3).unwrap();
    assert_eq!(same.verdict, Verdict::EvidenceAgainst);
    let rot = li_yorke_classify(&family("circle_ex4"), 0.1, 0.45, 100, 1e-3, 0.3).unwrap();
    assert_eq!(rot.verdict, Verdict::EvidenceAgainst);
    assert!(li_yorke_classify(&powers, 0.2, 0.8, 10, 0.3, 0.3).is_err());

    let near = proximality_report(&powers, 0.2, 0.8, 100, ASYMPTOTIC_TOL).unwrap();
    assert_eq!(near.verdict, Verdict::EvidenceFor);
}

#[test]
fn sensitivity_examples() {
    let r = sensitivity(&family("example2_powers"), 1.0, 0.5, 200);
    assert_eq!(r.verdict, Verdict::EvidenceFor);
    assert_eq!(r.witnesses.len(), 2);
    for name in ["circle_harmonic", "circle_ex4", "identity"] {
        let r = sensitivity(&family(name), 0.3, default_delta(SpaceKind::Circle), 120);
        assert_eq!(r.verdict, Verdict::EvidenceAgainst, "{name}");
    }
    let r = sensitivity(&family("interval_square_sqrt"), 0.0, 0.5, 50);
    assert_eq!(r.verdict, Verdict::EvidenceAgainst);
    // sup_k diam ω_k([0, r)) = sqrt(r).
    let d = r.reals("max_sampled_diameters").unwrap();
    assert!(d[0] <= 0.1_f64.sqrt() + 1e-12 && d[0] > 0.3, "{d:?}");

    let seeded = |seed| {
        sensitivity_at_point(
            &family("example2_powers"),
            &SensitivityParams {
                x: 1.0,
                delta: 0.5,
                radii: vec![0.1, 0.01],
                samples: 16,
                n: 200,
                sampling: Sampling::Random { seed },
            },
        )
        .unwrap()
    };
    assert_eq!(seeded(7), seeded(7));
    assert_eq!(seeded(7).verdict, Verdict::EvidenceFor);
}

#[test]
fn orbit_density_examples() {
    let h = family("circle_harmonic");
    let r = orbit_density(&h, 0.0, 0.05, 120).unwrap();
    assert_eq!(r.verdict, Verdict::EvidenceFor);
    replays(&r, &h);
    let ex4 = family("circle_ex4");
    for n in [10, 100, 400] {
        let r = orbit_density(&ex4, 0.1, 1.0 / 16.0, n).unwrap();
        assert_eq!(r.verdict, Verdict::EvidenceAgainst);
        replays(&r, &ex4);
    }
    let r = orbit_density(&family("identity"), 0.4, 0.3, 10).unwrap();
    assert_eq!(r.verdict, Verdict::EvidenceAgainst);
}

#[test]
fn transitivity_examples() {
    let h = family("circle_harmonic");
    let r = transitivity_scan(&h, &TransitivityParams::new(0.05, 120, 8)).unwrap();
    assert_eq!(r.verdict, Verdict::EvidenceFor);
    assert_eq!(r.sub_verdict("dense_orbit"), Some(Verdict::EvidenceFor));
    assert_eq!(r.sub_verdict("open_set_scan"), Some(Verdict::EvidenceFor));

    let ex4 = family("circle_ex4");
    let r = transitivity_scan(&ex4, &TransitivityParams::new(1.0 / 16.0, 120, 8)).unwrap();
    assert_eq!(r.sub_verdict("dense_orbit"), Some(Verdict::EvidenceAgainst));
    assert_eq!(r.sub_verdict("open_set_scan"), Some(Verdict::EvidenceAgainst));
    replays(&r, &ex4);

    let id = family("identity");
    let r = transitivity_scan(&id, &TransitivityParams::new(0.1, 20, 8)).unwrap();
    assert_eq!(r.verdict, Verdict::EvidenceAgainst);
    assert!(transitivity_scan(&id, &TransitivityParams::new(0.1, 20, 1)).is_err());
}

#[test]
fn r_transitivity_examples() {
    let h = family("circle_harmonic");
    let two = r_transitivity_check(&h, 2, &TransitivityParams::new(0.05, 60, 8)).unwrap();
    assert_eq!(two.verdict, Verdict::EvidenceAgainst);
    assert_eq!(two.flag("identity_blocks_exact"), Some(true));
    replays(&two, &h);
    let one = r_transitivity_check(&h, 1, &TransitivityParams::new(0.05, 120, 8)).unwrap();
    assert_eq!(one.verdict, Verdict::EvidenceFor);
    assert_eq!(one.flag("identity_blocks_exact"), Some(false));
    let id = family("identity");
    for r in 1..=3 {
        let rep = r_transitivity_check(&id, r, &TransitivityParams::new(0.1, 20, 8)).unwrap();
        assert_eq!(rep.verdict, Verdict::EvidenceAgainst);
    }
}

#[test]
fn minimality_examples() {
    let ex4 = family("circle_ex4");
    let r = minimality(&ex4, rational(1, 8), 9, 8);
    assert_eq!(r.verdict, Verdict::Certified);
    assert_eq!(r.int("order_k"), Some(9));
    assert_eq!(r.flag("enumeration_verified"), Some(true));
    let short = minimality(&ex4, rational(1, 8), 8, 8);
    assert_eq!(short.verdict, Verdict::Refuted);

    let settling = minimality(&family("circle_settling"), rational(1, 8), 6, 8);
    assert_eq!(settling.verdict, Verdict::Certified);
    assert_eq!(settling.int("order_k"), Some(4));

    let sq = minimality(&family("interval_square_sqrt"), rational(1, 10), 4, 4);
    assert_eq!(sq.verdict, Verdict::Refuted);
    assert_eq!(sq.witnesses[0].points[0], 0.0);

    let tight = minimality_certificate(
        &ex4,
        &MinimalityParams { eps: rational(1, 8), order_cap: 9, depth: 8, grid: None, max_points: 4 },
    )
    .unwrap();
    assert_eq!(tight.verdict, Verdict::InconclusiveBudget);
}

#[test]
fn certificates_reverify_by_enumeration() {
    let eps = rational(1, 8);
    for (name, k) in [("circle_ex4", 9), ("circle_settling", 4)] {
        let f = family(name);
        let grid = SpaceKind::Circle.grid(97);
        let centers = SpaceKind::Circle.net(1.0 / 32.0);
        let miss = verify_minimality_by_enumeration(&f, &eps, k, 8, &grid, &centers, 10_000).unwrap();
        assert!(miss.is_none(), "{name}: {miss:?}");
        let miss = verify_minimality_by_enumeration(&f, &eps, k - 1, 8, &grid, &centers, 10_000).unwrap();
        let w = miss.expect("one order lower leaves a gap");
        assert!((w.replay(&f).unwrap() - w.distance).abs() <= 1e-12);
    }
}

#[test]
fn hull_periodicity_examples() {
    let params = |x, order_k, depth| HullPeriodicityParams {
        x,
        r: 2,
        order_k,
        depth,
        horizon: 25,
        tol: 1e-9,
        max_points: DEFAULT_MAX_POINTS,
    };
    let ex4 = hull_periodicity_property(&family("circle_ex4"), &params(0.3, 8, 6)).unwrap();
    assert_eq!(ex4.verdict, Verdict::EvidenceFor);
    assert_eq!(ex4.int("failing_points"), Some(0));
    let h = hull_periodicity_property(&family("circle_harmonic"), &params(0.5, 6, 4)).unwrap();
    assert_eq!(h.verdict, Verdict::EvidenceFor);
    let tent = hull_periodicity_property(&family("example1_tent_sqrt"), &params(0.5, 2, 2));
    assert!(matches!(tent, Err(Error::Precondition(_))));
    let settling = hull_periodicity_property(&family("circle_settling"), &params(0.5, 2, 2));
    assert!(matches!(settling, Err(Error::Precondition(_))));
}

#[test]
fn propagation_examples() {
    let p = |x, eps| ApPropagationParams { x, eps, n: 40, order_k: 4, depth: 3, max_points: DEFAULT_MAX_POINTS };
    let h = ap_propagation_check(&family("circle_harmonic"), &p(0.0, 0.05)).unwrap();
    assert_eq!(h.verdict, Verdict::EvidenceFor);
    assert_eq!(h.int("M"), Some(2));
    let ex4 = ap_propagation_check(&family("circle_ex4"), &p(0.7, 0.1)).unwrap();
    assert_eq!(ex4.verdict, Verdict::EvidenceFor);
    assert_eq!(ex4.int("M"), Some(2));
    let settling = ap_propagation_check(&family("circle_settling"), &p(0.0, 0.3));
    assert!(matches!(settling, Err(Error::Precondition(_))));
    let tent = ap_propagation_check(&family("example1_tent_sqrt"), &p(0.5, 0.1));
    assert!(matches!(tent, Err(Error::Precondition(_))));
}

#[test]
fn hull_closure_examples() {
    let p = |x| HullClosureParams {
        x,
        eps: 0.1,
        n: 40,
        order_k: 9,
        depth: 8,
        samples: 8,
        equi_grid: 8,
        max_points: DEFAULT_MAX_POINTS,
    };
    let ex4 = hull_closure_equality(&family("circle_ex4"), &p(0.2)).unwrap();
    assert_eq!(ex4.verdict, Verdict::EvidenceFor);
    let h = hull_closure_equality(&family("circle_harmonic"), &HullClosureParams { order_k: 6, depth: 4, ..p(0.9) }).unwrap();
    assert_eq!(h.verdict, Verdict::EvidenceFor);

    // 0 lies in the closure of the hull of 1/2 but its own hull is {0}.
    let sq = family("interval_square_sqrt");
    let d = hull_hausdorff(&sq, 0.5, 0.0, 2, 6, DEFAULT_MAX_POINTS).unwrap();
    assert!(d > 0.5, "{d}");
    let pow = hull_closure_equality(&family("example2_powers"), &p(0.5));
    assert!(matches!(pow, Err(Error::Precondition(_))));
}

#[test]
fn dichotomy_examples() {
    let params = DichotomyParams {
        eps: 0.1,
        delta: 0.25,
        grid: 9,
        order_k: 2,
        depth: 2,
        n: 60,
        radii: DEFAULT_RADII.to_vec(),
        samples: BALL_SAMPLES,
        sampling: Sampling::LowDiscrepancy,
        max_points: DEFAULT_MAX_POINTS,
        propagation_samples: 8,
    };
    for name in ["circle_harmonic", "circle_ex4", "identity"] {
        let r = dichotomy_scan(&family(name), &DichotomyParams { delta: 0.125, ..params.clone() }).unwrap();
        assert_eq!(r.verdict, Verdict::EvidenceFor, "{name}");
        assert_eq!(r.sub_verdict("equicontinuity"), Some(Verdict::EvidenceFor));
        assert!(r.reals("sensitive_points").unwrap().is_empty(), "{name}");
    }
    let powers = family("example2_powers");
    let r = dichotomy_scan(&powers, &params).unwrap();
    assert_eq!(r.verdict, Verdict::EvidenceFor);
    assert_eq!(r.sub_verdict("equicontinuity"), Some(Verdict::EvidenceAgainst));
    assert!(r.reals("sensitive_points").unwrap().contains(&1.0));
    assert_eq!(r.flag("propagation_holds"), Some(true));
    replays(&r, &powers);
    assert!(matches!(dichotomy_scan(&family("example1_tent_sqrt"), &params), Err(Error::Precondition(_))));
}
