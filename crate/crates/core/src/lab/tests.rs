use super::*;

#[test]
fn registry_resolves_ids_and_aliases() {
    for id in REGISTRY {
        assert_eq!(resolve_id(id), Some(id));
        assert!(TheoremCase::new(id, DEFAULT_SEED).is_ok());
    }
    assert_eq!(resolve_id("frame-7"), Some("frame-5-7"));
    assert_eq!(resolve_id("thm-9.9"), None);
}

#[test]
fn unknown_filter_is_rejected() {
    let err = run_suite(Some(&["nope".to_string()]), DEFAULT_SEED).unwrap_err();
    assert_eq!(err, LabError::UnknownId("nope".into()));
}

#[test]
fn filter_selects_one_case() {
    let reports = run_suite(Some(&["lemma-2.1".to_string()]), DEFAULT_SEED).unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0].id, "lemma-2.1");
    assert!(reports[0].passed(), "{:?}", reports[0]);
}

#[test]
fn same_seed_same_report() {
    let f = ["lemma-2.1".to_string()];
    let a = run_suite(Some(&f), 7).unwrap();
    let b = run_suite(Some(&f), 7).unwrap();
    assert_eq!(a, b);
}
