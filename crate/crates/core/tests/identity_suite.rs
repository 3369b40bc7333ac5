use casorati::exact::Poly;
use casorati::identities::checks::{check_cas_real_theorem, check_eq3, check_sum_formula};
use casorati::identities::{
    replay, run_suite, sample_instance, Ctx, Fault, IdentityId, SamplerConfig, Status, Witness, DEFAULT_BUDGET_BITS,
};

fn cfg(trials: u64, seed: u64) -> SamplerConfig {
    SamplerConfig { trials, master_seed: seed, ..Default::default() }
}

#[test]
fn every_checker_passes_a_few_trials() {
    let rs = run_suite(&IdentityId::ALL, &cfg(6, 7), None);
    let bad: Vec<_> = rs.iter().filter(|r| r.status != Status::Pass).map(|r| (r.identity, r.trial)).collect();
    assert!(bad.is_empty(), "{bad:?}");
    assert_eq!(rs.len(), 24 * 6 + 1);
}

#[test]
fn runs_are_reproducible_from_the_seed() {
    let ids = [IdentityId::CasImagTheorem, IdentityId::WroId];
    let a = run_suite(&ids, &cfg(8, 11), None);
    let b = run_suite(&ids, &cfg(8, 11), None);
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    let c = run_suite(&ids, &cfg(8, 12), None);
    assert_ne!(
        a.iter().map(|r| &r.params.degrees).collect::<Vec<_>>(),
        c.iter().map(|r| &r.params.degrees).collect::<Vec<_>>()
    );
}

#[test]
fn sampled_instances_respect_the_bounds() {
    let c = cfg(40, 3);
    for id in IdentityId::core() {
        for t in 0..40 {
            let inst = sample_instance(*id, &c, t);
            assert!(inst.fs.len() <= 3 && inst.us.len() <= 3, "{id} trial {t}");
            assert!(inst.degrees().iter().all(|&d| d <= 5), "{id} trial {t}");
        }
    }
}

#[test]
fn witnesses_survive_json_and_replay_identically() {
    let rs = run_suite(&[IdentityId::CasRealNesting], &cfg(10, 5), Some(Fault::CasoratianEntry { row: 0, col: 0 }));
    let failing: Vec<_> = rs.iter().filter(|r| r.status == Status::Fail).collect();
    assert!(!failing.is_empty());
    for r in failing {
        let text = serde_json::to_string(r.witness.as_ref().unwrap()).unwrap();
        let w: Witness = serde_json::from_str(&text).unwrap();
        let again = replay(&w, DEFAULT_BUDGET_BITS);
        assert_eq!(again.lhs, r.lhs);
        assert_eq!(again.rhs, r.rhs);
        assert_eq!(again.status, Status::Fail);
        // The same instance without the fault passes.
        let clean = replay(&Witness { fault: None, ..w }, DEFAULT_BUDGET_BITS);
        assert_eq!(clean.status, Status::Pass);
        assert!(clean.witness.is_none());
    }
}

#[test]
fn tiny_budget_is_inconclusive_not_failing() {
    let c = SamplerConfig { budget_bits: 8, ..cfg(4, 1) };
    let rs = run_suite(&[IdentityId::WronskianTheorem], &c, None);
    assert!(rs.iter().all(|r| r.status != Status::Fail));
    assert!(rs.iter().any(|r| r.status == Status::Inconclusive));
}

/// `f = x`, `(g, h) = (x^2, 1)`: both sides by hand, and the unshifted variant differs.
#[test]
fn eq3_on_a_hand_instance() {
    let fs = [Poly::from_ints(&[0, 1])];
    let gh = [Poly::from_ints(&[0, 0, 1]), Poly::from_ints(&[1])];
    let ok = check_eq3(&fs, &gh, &Ctx::default()).unwrap();
    assert!(ok.pass, "{} vs {}", ok.lhs, ok.rhs);
    let bad = check_eq3(&fs, &gh, &Ctx::new(Some(Fault::Eq3Shift), DEFAULT_BUDGET_BITS)).unwrap();
    assert!(!bad.pass);
}

#[test]
fn real_theorem_with_corrupted_entry() {
    let fs = [Poly::from_ints(&[1, 1]), Poly::from_ints(&[0, 0, 2])];
    let us = [Poly::from_ints(&[3, 0, 1])];
    assert!(check_cas_real_theorem(&fs, &us, &Ctx::default()).unwrap().pass);
    let ctx = Ctx::new(Some(Fault::CasoratianEntry { row: 1, col: 1 }), DEFAULT_BUDGET_BITS);
    assert!(!check_cas_real_theorem(&fs, &us, &ctx).unwrap().pass);
}

#[test]
fn sum_formula_rejects_empty_range() {
    assert!(check_sum_formula(0).is_err());
    assert!(check_sum_formula(4).unwrap().pass);
}
