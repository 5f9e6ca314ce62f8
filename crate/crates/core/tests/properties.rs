use fog_ndt::{
    achievable_ndt, achievable_plan, best_pipelined_at_cache_one_over_m, lower_bound,
    pipelined_ndt, regime_of, regime_thresholds, scheme_ndt, serial_ndt, time_share, Ndt,
    NdtPair, NetworkConfig, Regime, SchemeId,
};
use proptest::prelude::*;

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    a == b || (a - b).abs() <= tol * a.abs().max(b.abs())
}

fn next_up(x: f64) -> f64 {
    f64::from_bits(x.to_bits() + 1)
}

/// Piecewise value of the best pipelined NDT at mu = 1/M, written out from
/// the per-branch formulas rather than by minimizing over schemes.
fn branch_oracle(m: usize, k: usize, r: f64) -> f64 {
    let (mf, kf, min) = (m as f64, k as f64, m.min(k) as f64);
    let r1 = kf * (mf - 1.0) / (mf + kf - 1.0);
    let r2 = (mf - 1.0) * min / mf;
    if r <= r1 {
        (mf + kf - 1.0) / mf
    } else if r <= r2 {
        kf * (mf - 1.0) / (mf * r)
    } else {
        kf / min
    }
}

fn ndt_strategy() -> impl Strategy<Value = Ndt> {
    prop_oneof![
        4 => (0.0f64..50.0).prop_map(|v| Ndt::new(v).unwrap()),
        1 => Just(Ndt::ZERO),
        1 => Just(Ndt::INFINITY),
    ]
}

fn grid_config() -> impl Strategy<Value = NetworkConfig> {
    (2usize..=6, 2usize..=6, 0usize..=20, 1usize..=120).prop_filter_map(
        "r beyond 2 min(M, K)",
        |(m, k, mu_i, r_i)| {
            let r = r_i as f64 / 10.0;
            (r <= 2.0 * m.min(k) as f64)
                .then(|| NetworkConfig::new(m, k, k, mu_i as f64 * 0.05, r).unwrap())
        },
    )
}

proptest! {
    #[test]
    fn pipelined_never_exceeds_serial(f in ndt_strategy(), e in ndt_strategy()) {
        let pair = NdtPair::new(f, e);
        let (pl, se) = (pipelined_ndt(pair), serial_ndt(pair));
        prop_assert!(pl <= se);
        let degenerate = f == Ndt::ZERO || e == Ndt::ZERO || !f.is_finite() || !e.is_finite();
        prop_assert_eq!(pl == se, degenerate);
    }

    #[test]
    fn time_share_hits_endpoints(d1 in ndt_strategy(), d2 in ndt_strategy(),
                                 mu1 in 0.0f64..1.0, mu2 in 0.0f64..1.0) {
        prop_assume!(mu1 != mu2);
        prop_assert_eq!(time_share(d1, mu1, d2, mu2, mu1).unwrap().delta, d1);
        prop_assert_eq!(time_share(d1, mu1, d2, mu2, mu2).unwrap().delta, d2);
    }

    #[test]
    fn time_share_reconstructs_mu(d1 in 0.0f64..10.0, d2 in 0.0f64..10.0,
                                  mu1 in 0.0f64..1.0, mu2 in 0.0f64..1.0, t in 0.0f64..=1.0) {
        prop_assume!((mu1 - mu2).abs() > 1e-6);
        let mu = (mu1.min(mu2) + t * (mu1 - mu2).abs()).min(mu1.max(mu2));
        let ts = time_share(Ndt::new(d1).unwrap(), mu1, Ndt::new(d2).unwrap(), mu2, mu).unwrap();
        prop_assert!((0.0..=1.0).contains(&ts.alpha));
        prop_assert!((ts.alpha * mu1 + (1.0 - ts.alpha) * mu2 - mu).abs() <= 1e-9);
        prop_assert!(rel_close(ts.delta.get(), ts.alpha * d1 + (1.0 - ts.alpha) * d2, 1e-12));
    }

    #[test]
    fn best_pipelined_matches_branch_oracle(m in 2usize..=8, k in 1usize..=8, frac in 0.0f64..=1.0) {
        let r = (frac * 2.0 * m.min(k) as f64).max(1e-6);
        let cfg = NetworkConfig::new(m, k, k, 1.0 / m as f64, r).unwrap();
        let best = best_pipelined_at_cache_one_over_m(&cfg).unwrap();
        prop_assert!(rel_close(best.value.get(), branch_oracle(m, k, r), 1e-12));
        // the labelled scheme attains the minimum
        let labelled = scheme_ndt(best.scheme, &cfg).unwrap().pipelined();
        prop_assert!(rel_close(labelled.get(), best.value.get(), 1e-12));
    }

    #[test]
    fn plan_agrees_with_closed_form(cfg in grid_config()) {
        let closed = achievable_ndt(&cfg).unwrap().get();
        let plan = achievable_plan(&cfg).unwrap();
        prop_assert!((closed - plan.value.get()).abs() <= 1e-9 * closed);
        prop_assert!((plan.mu() - cfg.mu).abs() <= 1e-12);
        prop_assert_eq!(plan.regime, regime_of(&cfg));
    }

    #[test]
    fn bounds_bracket_achievable(cfg in grid_config()) {
        let achievable = achievable_ndt(&cfg).unwrap();
        let bound = lower_bound(&cfg).unwrap();
        prop_assert!(bound.best.get() <= achievable.get() * (1.0 + 1e-12));
        prop_assert!(achievable.get() <= 3.0 * bound.best.get() + 1e-9);
    }

    #[test]
    fn achievable_floor(cfg in grid_config()) {
        let floor = cfg.k as f64 / cfg.min_mk() as f64;
        let v = achievable_ndt(&cfg).unwrap().get();
        prop_assert!(v >= floor * (1.0 - 1e-12));
        let flat = regime_of(&cfg) == Regime::High
            || (regime_of(&cfg) == Regime::MidII && cfg.mu * cfg.m as f64 >= 1.0);
        if flat {
            prop_assert!(rel_close(v, floor, 1e-12));
        }
    }

    #[test]
    fn cc_fronthaul_identity(m in 1usize..=10, k in 1usize..=10, r in 0.01f64..20.0) {
        let cfg = NetworkConfig::new(m, k, k, 1.0 / m as f64, r).unwrap();
        let f = scheme_ndt(SchemeId::CodedMulticast, &cfg).unwrap().delta_f.get();
        prop_assert!(rel_close(f * r * m as f64, (k * (m - 1)) as f64, 1e-12));
    }
}

#[test]
fn best_pipelined_branch_is_continuous() {
    for m in 2..=8 {
        for k in 1..=8 {
            let th = regime_thresholds(m, k);
            for t in [th.r1, th.r2, th.r3] {
                if t == 0.0 {
                    continue;
                }
                let at = |r: f64| {
                    let cfg = NetworkConfig::new(m, k, k, 1.0 / m as f64, r).unwrap();
                    best_pipelined_at_cache_one_over_m(&cfg).unwrap().value.get()
                };
                let (left, right) = (at(t), at(next_up(t)));
                assert!(rel_close(left, right, 1e-12), "M={m} K={k} r={t}: {left} vs {right}");
                let (left, right) = (branch_oracle(m, k, t), branch_oracle(m, k, next_up(t)));
                assert!(rel_close(left, right, 1e-12), "oracle M={m} K={k} r={t}");
            }
        }
    }
}

fn grid() -> impl Iterator<Item = (usize, usize, f64)> {
    (2..=6).flat_map(|m| (2..=6).flat_map(move |k| (0..=20).map(move |i| (m, k, i as f64 * 0.05))))
}

#[test]
fn achievable_monotone_in_rate_and_cache() {
    for (m, k, mu) in grid() {
        let n_r = 20 * m.min(k);
        let mut prev = f64::INFINITY;
        for j in 1..=n_r {
            let cfg = NetworkConfig::new(m, k, k, mu, j as f64 / 10.0).unwrap();
            let v = achievable_ndt(&cfg).unwrap().get();
            assert!(v <= prev * (1.0 + 1e-12), "r: M={m} K={k} mu={mu}");
            prev = v;
        }
    }
    for m in 2..=6 {
        for k in 2..=6 {
            for j in 1..=(20 * m.min(k)) {
                let r = j as f64 / 10.0;
                let mut prev = f64::INFINITY;
                for i in 0..=20 {
                    let cfg = NetworkConfig::new(m, k, k, i as f64 * 0.05, r).unwrap();
                    let v = achievable_ndt(&cfg).unwrap().get();
                    assert!(v <= prev * (1.0 + 1e-12), "mu: M={m} K={k} r={r}");
                    prev = v;
                }
            }
        }
    }
}

#[test]
fn lower_bound_monotone_in_rate_and_cache() {
    for (m, k, mu) in grid() {
        let mut prev = Ndt::INFINITY;
        for j in 0..=40 {
            let cfg = NetworkConfig::new(m, k, k, mu, j as f64 / 10.0).unwrap();
            let b = lower_bound(&cfg).unwrap().best;
            assert!(b <= prev);
            prev = b;
        }
        let cfg_next = NetworkConfig::new(m, k, k, (mu + 0.05).min(1.0), 1.0).unwrap();
        let cfg_here = NetworkConfig::new(m, k, k, mu, 1.0).unwrap();
        assert!(lower_bound(&cfg_next).unwrap().best <= lower_bound(&cfg_here).unwrap().best);
    }
}

#[test]
fn edge_bound_dominates_on_flat_region() {
    for m in 2..=6 {
        for k in 2..=6 {
            let th = regime_thresholds(m, k);
            for extra in [0.0, 0.1, 0.5, 1.0, 3.0] {
                let cfg = NetworkConfig::new(m, k, k, 1.0 / m as f64, th.r2 + extra).unwrap();
                let b = lower_bound(&cfg).unwrap();
                assert_eq!(b.best, b.edge_bound, "M={m} K={k} r={}", cfg.r);
            }
        }
    }
}

#[test]
fn cutset_terms_cover_every_l_once() {
    for (m, k, mu) in grid() {
        let cfg = NetworkConfig::new(m, k, k, mu, 0.7).unwrap();
        let b = lower_bound(&cfg).unwrap();
        let ls: Vec<usize> = b.cutset_terms.iter().map(|t| t.l).collect();
        assert_eq!(ls, (0..=m.min(k)).collect::<Vec<_>>());
        let max_term = b.cutset_terms.iter().map(|t| t.value).max().unwrap();
        assert_eq!(b.best, b.edge_bound.max(max_term));
    }
}
