use std::collections::HashSet;

use spheremcg::harness::{full_report, verify_main_even, HarnessConfig, Overall, Report, Status, Suite};

fn cfg() -> HarnessConfig {
    HarnessConfig::default()
}

fn strip_millis(r: &Report) -> Report {
    let mut r = r.clone();
    for c in &mut r.checks {
        c.millis = 0;
    }
    r
}

#[test]
fn dispatch_for_mixed_parities() {
    let r = full_report(&[5, 6, 7], &cfg()).unwrap();
    let prefixes: HashSet<&str> = r.checks.iter().map(|c| c.id.split('.').take(2).last().unwrap()).collect();
    for id in ["n5.odd.gen", "n6.main.gen", "n7.odd.gen", "sigma2.conclusion", "n4.gen"] {
        assert!(r.get(id).is_some(), "{id} missing");
    }
    assert!(r.checks.iter().all(|c| !c.id.starts_with("n5.lemY") && !c.id.starts_with("n7.main")));
    assert!(prefixes.contains("lemY") && prefixes.contains("lemZ"));
}

#[test]
fn empty_list_runs_only_n_independent_suites() {
    let r = full_report(&[], &cfg()).unwrap();
    assert!(!r.checks.is_empty());
    assert!(r.checks.iter().all(|c| c.id.starts_with("n4.") || c.id.starts_with("sigma2.")));
    assert_eq!(r.overall(), Overall::Pass);
}

#[test]
fn n6_report_is_large_sorted_unique_and_deterministic() {
    let a = full_report(&[6], &cfg()).unwrap();
    assert!(a.checks.iter().filter(|c| c.id.starts_with("n6.")).count() >= 60);
    let ids: Vec<&str> = a.checks.iter().map(|c| c.id.as_str()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    assert_eq!(ids.iter().collect::<HashSet<_>>().len(), ids.len());
    let b = full_report(&[6], &cfg()).unwrap();
    assert_eq!(strip_millis(&a).to_json(), strip_millis(&b).to_json());
}

#[test]
fn n6_fails_exactly_on_the_claimed_value_of_c() {
    let r = full_report(&[6], &cfg()).unwrap();
    let failed: Vec<&str> = r.checks.iter().filter(|c| c.status == Status::Fail).map(|c| c.id.as_str()).collect();
    assert_eq!(failed, ["n6.main.c", "n6.main.c.ab"]);
    assert_eq!(r.get("n6.main.c.general").unwrap().status, Status::Pass);
    assert_eq!(r.overall(), Overall::Fail);
}

#[test]
fn larger_even_n_pass_every_check() {
    for n in [8, 10] {
        let r = full_report(&[n], &cfg()).unwrap();
        let bad: Vec<_> = r.checks.iter().filter(|c| c.status != Status::Pass).map(|c| &c.id).collect();
        assert!(bad.is_empty(), "n={n}: {bad:?}");
    }
}

#[test]
fn enumeration_overflow_is_reported_not_failed() {
    let mut tight = cfg();
    tight.limits.max_cosets = 200;
    let checks = verify_main_even(8, &tight).unwrap();
    let gen = checks.iter().find(|c| c.id == "n8.main.gen").unwrap();
    assert_eq!(gen.status, Status::Overflow);
    assert!(gen.witness.as_deref().unwrap().starts_with("OVERFLOW"));
    let r = Report::new(checks.into_iter().filter(|c| c.status != Status::Fail).collect());
    assert_eq!(r.overall(), Overall::OverflowOnly);

    let early = Suite::Odd.run(5, &tight).unwrap();
    let r = Report::new(early);
    if r.checks.iter().any(|c| c.status == Status::Overflow) {
        assert_eq!(r.overall(), Overall::Fail);
    }
}

#[test]
fn witness_search_finds_a_word_at_n6() {
    let cfg = HarnessConfig { witness_search: Some(20), ..cfg() };
    let checks = verify_main_even(6, &cfg).unwrap();
    let w = checks.iter().find(|c| c.id == "n6.main.ta0").unwrap();
    assert_eq!(w.status, Status::Pass, "{:?}", w.witness);
}
