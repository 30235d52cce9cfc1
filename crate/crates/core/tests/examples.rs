use nonconv_core::{HorizonDescriptor, InitialDescriptor, ScenarioConfig, SnapshotStore};

fn evolve(horizon: HorizonDescriptor, initial: InitialDescriptor, final_time: f64) -> (f64, SnapshotStore, Vec<f64>) {
    let scenario = ScenarioConfig::new(horizon, initial, final_time).validate().unwrap();
    let store = scenario.evolve(|_| {}).unwrap();
    let nodes = scenario.grid().nodes().collect();
    (scenario.h(), store, nodes)
}

fn argmax(u: &[f64]) -> usize {
    u.iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, (i, &v)| if v > best.1 { (i, v) } else { best })
        .0
}

fn peak(u: &[f64]) -> f64 {
    u.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

#[test]
fn local_gaussian_peak_moves_with_unit_speed() {
    let (h, store, nodes) = evolve(HorizonDescriptor::Zero, InitialDescriptor::Gaussian, 1.0);
    let last = store.last().unwrap();
    let x = nodes[argmax(&last.u)];
    assert!((x - 1.0).abs() <= 2.0 * h, "peak at {x}");
}

#[test]
fn gaussian_under_erfc_horizon_spreads() {
    let (_, store, _) = evolve(HorizonDescriptor::Erfc { alpha: 0.0 }, InitialDescriptor::Gaussian, 2.0);
    let peaks: Vec<f64> = store.iter().map(|s| peak(&s.u)).collect();
    assert_eq!(peaks[0], 1.0);
    assert!(peaks.windows(2).all(|w| w[1] <= w[0] + 1e-15));
    assert!(*peaks.last().unwrap() < 0.9);
}

#[test]
fn square_wave_decays_under_constant_horizon() {
    let (_, store, _) = evolve(HorizonDescriptor::Constant(0.1), InitialDescriptor::Square { p: 1.0 }, 1.0);
    let maxima: Vec<f64> = store.iter().map(|s| s.u.iter().fold(0.0, |m: f64, v| m.max(v.abs()))).collect();
    assert_eq!(maxima[0], 1.0);
    assert!(maxima.windows(2).all(|w| w[1] <= w[0]), "{maxima:?}");
    assert!(*maxima.last().unwrap() < 1.0);
}

#[test]
fn nonlocal_solutions_approach_the_local_one() {
    let (h, local, local_nodes) = evolve(HorizonDescriptor::Zero, InitialDescriptor::Gaussian, 1.0);
    let reference = &local.last().unwrap().u;
    let mut gaps = Vec::new();
    for eps in [0.2, 0.1, 0.05] {
        let (_, store, nodes) = evolve(HorizonDescriptor::Constant(eps), InitialDescriptor::Gaussian, 1.0);
        let u = &store.last().unwrap().u;
        let gap = nodes
            .iter()
            .zip(u)
            .filter_map(|(x, v)| {
                let i = ((x - local_nodes[0]) / h).round();
                (i >= 0.0 && (i as usize) < reference.len()).then(|| (v - reference[i as usize]).abs())
            })
            .fold(0.0, f64::max);
        gaps.push(gap);
    }
    assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{gaps:?}");
}
