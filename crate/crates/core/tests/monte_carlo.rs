use a2g_channel::analysis::{
    compute_pdp, detect_clusters, estimate_sv_params, fit_sv_piecewise, ricean_k_factor, ClusterRule,
};
use a2g_channel::antenna::Orientation;
use a2g_channel::rng::substream;
use a2g_channel::svmodel::{
    catalog_lookup, sample_arrivals, sample_cluster_arrivals, synthesize_ensemble, Distance, Receiver, SVParams,
    Scenario, ScenarioKey, SynthesisConfig,
};

fn hover_rx1_vv_15() -> SVParams {
    catalog_lookup(&ScenarioKey::new(Scenario::HoverOpen, Receiver::Rx1, Orientation::VV, Distance::X15))
}

fn mean_gap(rate: f64, draws: usize, seed: u64) -> f64 {
    let mut rng = substream(seed, 0);
    let times = sample_arrivals(rate, f64::INFINITY, draws + 1, &mut rng);
    times[draws] / draws as f64
}

#[test]
fn inter_arrival_means() {
    let cluster = mean_gap(0.033, 100_000, 1);
    let mpc = mean_gap(0.1, 100_000, 2);
    assert!((cluster / (1.0 / 0.033) - 1.0).abs() < 0.02, "{cluster}");
    assert!((mpc / 10.0 - 1.0).abs() < 0.02, "{mpc}");
}

#[test]
fn cluster_count_per_window() {
    let p = hover_rx1_vv_15();
    let cfg = SynthesisConfig::default();
    let n = 10_000;
    let total: usize = (0..n)
        .map(|i| sample_cluster_arrivals(&p, &cfg, &mut substream(17, i)).times.len())
        .sum();
    let mean = total as f64 / n as f64;
    assert!((mean - 3.3).abs() <= 0.3, "{mean}");
}

#[test]
fn estimator_roundtrip() {
    let p = hover_rx1_vv_15();
    let scans = synthesize_ensemble(&p, &SynthesisConfig::default(), 10_000, 2024).unwrap();
    let est = estimate_sv_params(&scans, &ClusterRule::default()).unwrap().params;
    for (name, got, want) in [
        ("chi", est.chi, p.chi),
        ("varsigma", est.varsigma, p.varsigma),
        ("eta", est.eta, p.eta),
        ("gamma", est.gamma, p.gamma),
    ] {
        assert!((got / want - 1.0).abs() <= 0.15, "{name}: {got} vs {want}");
    }
}

#[test]
fn piecewise_fit_beats_single_line() {
    let p = hover_rx1_vv_15();
    let cfg = SynthesisConfig::default();
    let rule = ClusterRule::default();
    let mut wins = 0;
    let mut multi = 0;
    for seed in 0..100 {
        let scans = synthesize_ensemble(&p, &cfg, 50, seed).unwrap();
        let pdp = compute_pdp(&scans).unwrap();
        let set = detect_clusters(&pdp, &rule).unwrap();
        let r = fit_sv_piecewise(&pdp, &set).unwrap();
        if set.len() >= 2 {
            multi += 1;
        }
        if r.mean_abs_residual_sv <= r.mean_abs_residual_single {
            wins += 1;
        }
    }
    assert!(multi >= 95, "{multi}");
    assert!(wins >= 95, "{wins}");
}

#[test]
fn foliage_lowers_median_k_factor() {
    let cfg = SynthesisConfig::default();
    let median_k = |scenario| {
        let p = catalog_lookup(&ScenarioKey::new(scenario, Receiver::Rx1, Orientation::VV, Distance::X15));
        let scans = synthesize_ensemble(&p, &cfg, 2001, 99).unwrap();
        let mut k: Vec<f64> = scans.iter().map(|s| ricean_k_factor(s).unwrap()).collect();
        k.sort_by(f64::total_cmp);
        k[k.len() / 2]
    };
    let open = median_k(Scenario::HoverOpen);
    let foliage = median_k(Scenario::HoverFoliage);
    assert!(foliage < open, "{foliage} vs {open}");
}

#[test]
fn first_path_mean_power_is_omega00() {
    let p = SVParams {
        omega00: 2.5,
        ..hover_rx1_vv_15()
    };
    let scans = synthesize_ensemble(&p, &SynthesisConfig::default(), 20_000, 31).unwrap();
    let mean = scans.iter().map(|s| s.taps[0].power()).sum::<f64>() / scans.len() as f64;
    assert_eq!(scans.iter().filter(|s| s.taps[0].delay_ns == 0.0).count(), scans.len());
    assert!((mean / 2.5 - 1.0).abs() < 0.03, "{mean}");
}
