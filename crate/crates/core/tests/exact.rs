//! Exact rotation views of the circle families against closed forms.

use naads_core::exact::{
    exact_density_gap, exact_hull_displacements, exact_periodicity, harmonic_number,
    ExactPeriodicity,
};
use naads_core::{corpus, omega, RationalAngle, RationalRotationFamily, SpaceKind};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use proptest::prelude::*;
use std::collections::BTreeSet;

fn exact(name: &str) -> RationalRotationFamily {
    corpus(name).unwrap().exact().unwrap().clone()
}

fn q(n: i64, d: i64) -> RationalAngle {
    RationalAngle::from_ratio(n, d)
}

fn pow2(k: u64) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << k)
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

/// Closed forms of `ω_n`, `n ≥ 1`, derived by hand from the step rules.
fn closed_form(name: &str, n: u64) -> RationalAngle {
    let v = match name {
        // d_1 = 1/2, d_{2k} = 1/2 - 2^{-(k+1)}, d_{2k+1} = 1/2 + 2^{-(k+1)}.
        "circle_settling" if n == 1 => half(),
        "circle_settling" if n.is_multiple_of(2) => half() - pow2(n / 2 + 1),
        "circle_settling" => half() + pow2((n - 1) / 2 + 1),
        // Within block k: 2^{-k}, 0, -2^{-k}, 0.
        "circle_ex4" => {
            let k = n.div_ceil(4);
            match n % 4 {
                1 => pow2(k),
                3 => -pow2(k),
                _ => BigRational::from_integer(0.into()),
            }
        }
        // ω_{2k} = 0, ω_{2k-1} = H_k.
        "circle_harmonic" if n.is_multiple_of(2) => BigRational::from_integer(0.into()),
        "circle_harmonic" => harmonic_number(n.div_ceil(2)),
        _ => BigRational::from_integer(0.into()),
    };
    RationalAngle::new(v)
}

const ROTATIONS: [&str; 4] = ["circle_settling", "circle_ex4", "circle_harmonic", "identity"];

#[test]
fn displacement_examples() {
    let h = exact("circle_harmonic");
    for k in 1..=30 {
        assert!(h.displacement(2 * k).unwrap().is_zero());
    }
    assert_eq!(h.displacement(3).unwrap(), q(1, 2));
    assert!(h.displacement(1).unwrap().is_zero());
    assert!(exact("circle_ex4").displacement(2).unwrap().is_zero());
    assert_eq!(exact("circle_settling").displacement(4).unwrap(), q(3, 8));
    assert!(exact("identity").displacement(0).unwrap().is_zero());
}

#[test]
fn displacements_match_closed_forms() {
    for name in ROTATIONS {
        let fam = exact(name);
        for n in 1..=400 {
            assert_eq!(fam.displacement(n as i64).unwrap(), closed_form(name, n), "{name} n={n}");
            let sum = fam.displacement(n as i64).unwrap().add(&fam.displacement(-(n as i64)).unwrap());
            assert!(sum.is_zero());
        }
    }
}

#[test]
fn float_flow_tracks_exact_view() {
    for name in ROTATIONS {
        let entry = corpus(name).unwrap();
        let fam = entry.exact().unwrap();
        for n in -1000..=1000 {
            let float = omega(&entry.family, n, 0.0).unwrap();
            let exact = fam.displacement(n).unwrap().value().to_f64().unwrap();
            assert!(SpaceKind::Circle.metric(float, exact) <= 1e-9, "{name} n={n}: {float} vs {exact}");
        }
    }
}

#[test]
fn periodicity_examples() {
    assert_eq!(exact_periodicity(&exact("circle_ex4"), 2, 50).unwrap(), ExactPeriodicity::Certificate);
    assert_eq!(
        exact_periodicity(&exact("circle_settling"), 2, 50).unwrap(),
        ExactPeriodicity::Refutation { n: 2, displacement: q(1, 4) }
    );
    // ω_1 and ω_2 vanish, so the first witness is n = 3.
    assert_eq!(
        exact_periodicity(&exact("circle_harmonic"), 1, 50).unwrap(),
        ExactPeriodicity::Refutation { n: 3, displacement: q(1, 2) }
    );
}

#[test]
fn hull_examples() {
    let ex4 = exact_hull_displacements(&exact("circle_ex4"), 9, 8, 10_000).unwrap();
    for j in 0..8 {
        assert!(ex4.displacements.contains(&q(j, 8)));
    }
    assert!(!ex4.budget_exhausted);
    let settling = exact_hull_displacements(&exact("circle_settling"), 4, 2, 10_000).unwrap();
    assert!(settling.displacements.contains(&q(1, 8)));
    let id = exact_hull_displacements(&exact("identity"), 3, 5, 10).unwrap();
    assert_eq!(id.displacements, BTreeSet::from([RationalAngle::zero()]));
    assert!(id.closed);
}

#[test]
fn density_gap_examples() {
    assert_eq!(exact_density_gap(&BTreeSet::from([q(0, 1)])).unwrap(), BigRational::one());
    assert_eq!(exact_density_gap(&BTreeSet::from([q(0, 1), q(1, 2)])).unwrap(), half());
    let eighths: BTreeSet<_> = (0..8).map(|j| q(j, 8)).collect();
    assert_eq!(exact_density_gap(&eighths).unwrap(), pow2(3));
    assert!(exact_density_gap(&BTreeSet::new()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exact_hull_grows(k in 1u64..7, d in 1u64..5, which in 0usize..3) {
        let fam = exact(ROTATIONS[which]);
        let small = exact_hull_displacements(&fam, k, d, 50_000).unwrap();
        let wider = exact_hull_displacements(&fam, k + 1, d, 50_000).unwrap();
        let deeper = exact_hull_displacements(&fam, k, d + 1, 50_000).unwrap();
        prop_assert!(small.displacements.is_subset(&wider.displacements));
        prop_assert!(small.displacements.is_subset(&deeper.displacements));
    }

    #[test]
    fn exact_distance_is_symmetric_and_bounded(a in 0i64..997, b in 0i64..997) {
        let (x, y) = (q(a, 997), q(b, 997));
        let d = x.distance(&y);
        prop_assert_eq!(d.clone(), y.distance(&x));
        prop_assert!(d <= half());
    }
}
