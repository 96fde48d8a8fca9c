use naads_core::checkers::commutativity_report;
use naads_core::flow::{inversion_error, reverse_inversion_error};
use naads_core::{corpus, list_corpus, Error, Verdict, CORPUS_NAMES};

#[test]
fn every_expected_verdict_is_reproduced() {
    for name in CORPUS_NAMES {
        let entry = corpus(name).unwrap();
        assert!(!entry.expected.is_empty(), "{name} has no expectations");
        for e in &entry.expected {
            assert!(!e.anchor.is_empty());
            let report = entry.evaluate(e.claim).unwrap();
            assert_eq!(report.verdict, e.verdict, "{name}/{}: {report:?}", e.claim);
            let replay = report.witness_replay_error(&entry.family).unwrap();
            assert!(replay <= 1e-12, "{name}/{}: replay error {replay}", e.claim);
        }
    }
}

#[test]
fn listing_has_seven_entries() {
    let list = list_corpus();
    assert_eq!(list.len(), 7);
    assert!(list.iter().any(|(n, _)| *n == "example2_powers"));
    assert!(list.iter().any(|(n, _)| *n == "circle_settling"));
    assert!(list.iter().all(|(_, s)| !s.is_empty()));
}

#[test]
fn unknown_name_is_a_lookup_error() {
    assert!(matches!(corpus("example7"), Err(Error::UnknownFamily(n)) if n == "example7"));
}

#[test]
fn circle_families_expose_exact_views() {
    for name in ["circle_settling", "circle_ex4", "circle_harmonic", "identity"] {
        let entry = corpus(name).unwrap();
        assert!(entry.exact().is_some(), "{name}");
        assert!(entry.family.declared_isometric());
    }
    for name in ["example1_tent_sqrt", "example2_powers", "interval_square_sqrt"] {
        assert!(corpus(name).unwrap().exact().is_none(), "{name}");
    }
}

#[test]
fn commutativity_audit_matches_declarations() {
    for name in CORPUS_NAMES {
        let f = corpus(name).unwrap().family;
        let report = commutativity_report(&f, 8, 16).unwrap();
        let expected = if name == "example1_tent_sqrt" {
            Verdict::EvidenceAgainst
        } else {
            Verdict::EvidenceFor
        };
        assert_eq!(report.verdict, expected, "{name}");
        assert_eq!(f.declared_commutative(), expected == Verdict::EvidenceFor, "{name}");
    }
}

#[test]
fn every_family_inverts() {
    for name in CORPUS_NAMES {
        let f = corpus(name).unwrap().family;
        let grid = f.space().grid(100);
        let err = inversion_error(&f, &grid, 100).unwrap();
        assert!(err <= 1e-9, "{name}: {err}");
        if name != "example1_tent_sqrt" {
            let err = reverse_inversion_error(&f, &grid, 100).unwrap();
            assert!(err <= 1e-9, "{name}: {err}");
        }
    }
}

#[test]
fn reflected_family_inverts_backward_over_short_windows() {
    // Longer backward legs round onto the boundary cycle {0, 1}.
    let f = corpus("example1_tent_sqrt").unwrap().family;
    let err = reverse_inversion_error(&f, &f.space().grid(100), 8).unwrap();
    assert!(err <= 1e-9, "{err}");
}
