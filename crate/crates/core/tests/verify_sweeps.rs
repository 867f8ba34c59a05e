mod common;

use std::collections::BTreeSet;

use casselman::scalars::MERSENNE_61;
use casselman::verify::{
    a3_stabilizer_free, check_telescoping, default_config, run_suite, sweep_conjecture1, sweep_conjecture2,
    sweep_conjecture3, sweep_main_theorem, Expectation, Suite, SweepReport,
};
use casselman::IdentityCheckConfig;

use common::*;

const P2: u64 = (1 << 61) - 31;

fn keys(pairs: &[(&str, &str)]) -> BTreeSet<(String, String)> {
    pairs.iter().map(|(u, v)| (u.to_string(), v.to_string())).collect()
}

fn consistent(r: &SweepReport) {
    assert_eq!(r.counts.matches + r.counts.failures, r.counts.pairs_qualifying, "{}", r.suite);
    assert_eq!(r.counts.failures, r.failures.len());
    assert!(r.counts.pairs_qualifying <= r.counts.pairs_total);
}

#[test]
fn reports_are_deterministic() {
    let ctx = context("B2");
    let cfg = IdentityCheckConfig::default();
    for suite in Suite::ALL {
        let a = serde_json::to_string(&run_suite(suite, &ctx, &cfg, None).unwrap()).unwrap();
        let b = serde_json::to_string(&run_suite(suite, &ctx, &cfg, None).unwrap()).unwrap();
        assert_eq!(a, b, "{suite}");
    }
}

#[test]
fn b2_failures_do_not_depend_on_sampling() {
    let ctx = context("B2");
    let want = keys(&[("1", "121"), ("1", "1212")]);
    let configs = [
        IdentityCheckConfig::default(),
        IdentityCheckConfig { seed: 17, ..Default::default() },
        IdentityCheckConfig { primes: vec![P2], points_per_prime: 5, ..Default::default() },
        IdentityCheckConfig { primes: vec![MERSENNE_61], points_per_prime: 1, seed: 3, ..Default::default() },
        IdentityCheckConfig { rational: true, points_per_prime: 2, ..Default::default() },
    ];
    for cfg in configs {
        let r = sweep_conjecture1(&ctx, &cfg).unwrap();
        assert_eq!(r.failure_keys(), want, "{cfg:?}");
        assert_eq!(r.counts.pairs_total, 33);
        assert!(r.ok());
        consistent(&r);
    }
}

#[test]
fn b2_failure_records() {
    let ctx = context("B2");
    let r = sweep_conjecture1(&ctx, &IdentityCheckConfig::default()).unwrap();
    let f = &r.failures[0];
    assert_eq!((f.u.as_str(), f.v.as_str()), ("1", "121"));
    assert_eq!((f.length_difference, f.s_size), (2, 2));
    assert!(f.kl_one && f.kl_dual_one);
    assert_eq!(f.ascending_good_word, Some(false));
    assert!(f.detail.as_deref().unwrap().contains("≠"));
}

#[test]
fn simply_laced_small_types_are_clean() {
    for name in ["A2", "A3"] {
        let ctx = context(name);
        let cfg = default_config(ctx.group().cartan());
        for suite in Suite::ALL {
            let r = run_suite(suite, &ctx, &cfg, None).unwrap();
            consistent(&r);
            assert!(r.failures.is_empty(), "{name} {suite}: {:?}", r.failures);
            assert!(r.ok());
        }
    }
}

#[test]
fn a4_conjectures_hold() {
    let ctx = context("A4");
    let cfg = default_config(ctx.group().cartan());
    for r in [sweep_conjecture1(&ctx, &cfg).unwrap(), sweep_conjecture2(&ctx, &cfg).unwrap()] {
        consistent(&r);
        assert!(r.failures.is_empty() && r.ok(), "{}", r.suite);
        assert!(r.counts.pairs_qualifying > 0);
    }
}

#[test]
fn conjecture3_reports() {
    let ctx = context("A3");
    let r = sweep_conjecture3(&ctx).unwrap();
    assert!(r.failures.is_empty() && r.ok());
    let free: Vec<_> = r.stabilizer_free.as_ref().unwrap().iter().map(|p| p.key()).collect();
    assert_eq!(free, a3_stabilizer_free(ctx.group()).unwrap());
    assert!(r.stabilizer_free.unwrap().iter().all(|p| !p.kl_one));
}

#[test]
fn telescoping_and_sampling() {
    let ctx = context("A3");
    let cfg = IdentityCheckConfig::default();
    let full = check_telescoping(&ctx, &cfg, None).unwrap();
    assert!(full.failures.is_empty() && full.ok());
    let part = check_telescoping(&ctx, &cfg, Some(10)).unwrap();
    assert_eq!(part.sampled, Some(10));
    let main = sweep_main_theorem(&ctx, &cfg, Some(25)).unwrap();
    assert_eq!((main.sampled, main.counts.pairs_qualifying), (Some(25), 25));
}

#[test]
fn config_digest_tracks_settings() {
    let ctx = context("A2");
    let a = sweep_conjecture1(&ctx, &IdentityCheckConfig::default()).unwrap();
    let b = sweep_conjecture1(&ctx, &IdentityCheckConfig { seed: 1, ..Default::default() }).unwrap();
    let (a, b) = (a.config.unwrap(), b.config.unwrap());
    assert_ne!(a.sha256, b.sha256);
    assert_eq!(a.primes, [MERSENNE_61, P2]);
    assert!(sweep_conjecture3(&ctx).unwrap().config.is_none());
}

#[test]
fn expectations_by_type() {
    let b3 = group("B3");
    assert_eq!(casselman::verify::expectation(Suite::Conjecture2, &b3), Expectation::Unclaimed);
    let d4 = group("D4");
    assert_eq!(casselman::verify::expectation(Suite::Conjecture1, &d4), Expectation::Exact(vec![]));
    assert!("bogus".parse::<Suite>().is_err());
}

/// D4 contradicts the claimed failure-free sweeps; these are the observed
/// failures.
#[test]
fn d4_conjecture_failures() {
    let ctx = context("D4");
    let cfg = default_config(ctx.group().cartan());
    let c1 = sweep_conjecture1(&ctx, &cfg).unwrap();
    consistent(&c1);
    assert_eq!(c1.counts.pairs_qualifying, 7983);
    assert_eq!(
        c1.failure_keys(),
        keys(&[
            ("2", "213242132"),
            ("2", "1213242132"),
            ("2", "2132142132"),
            ("2", "2132421324"),
            ("2", "12132142132"),
            ("2", "12132421324"),
            ("2", "21321421324"),
            ("2", "121321421324"),
        ])
    );
    assert!(!c1.ok());

    let c2 = sweep_conjecture2(&ctx, &cfg).unwrap();
    consistent(&c2);
    let v = "12321421324";
    let us = ["", "1", "3", "4", "13", "14", "34", "134"];
    let want: BTreeSet<_> = us.iter().map(|u| (u.to_string(), v.to_string())).collect();
    assert_eq!(c2.failure_keys(), want);
    assert!(!c2.ok());
}
