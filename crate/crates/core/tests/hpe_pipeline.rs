mod common;

use common::*;
use hpe::hpe::{build_versions, run_hpe, version_sampler, HpeOptions, Pairing};
use hpe::ising::{apply_version, make_schedule, Resolution, ScheduleParams};
use hpe::mqc::reduce;
use hpe::samplers::{sample, solve_exact, SamplerConfig, SamplerKind};

fn retained() -> HpeOptions {
    HpeOptions {
        pairing: Pairing::Index,
        retain_sets: true,
    }
}

#[test]
fn reductions_are_scored_with_base_coefficients() {
    let base = random_problem(12, 16, 0.3);
    let schedule = make_schedule(&base, ScheduleParams::default()).unwrap();
    let hw = Resolution::bits(3).unwrap();
    let cfg = SamplerConfig::new(SamplerKind::Anneal, 2, 30);
    let result = run_hpe(&base, &schedule, hw, &cfg, &retained()).unwrap();
    let sets = result.per_version_sets().unwrap();
    assert_eq!(sets.len(), 20);

    // Recompute every stage independently from the retained sets.
    let versions = build_versions(&base, &schedule, hw).unwrap();
    for (k, set) in sets.iter().enumerate() {
        assert_eq!(set, &sample(&versions[k], &version_sampler(&cfg, k)).unwrap());
    }
    let mut t = Vec::new();
    for i in 0..30 {
        let t_set: Vec<_> = sets.iter().map(|s| s[i].clone()).collect();
        t.push(reduce(&t_set, &base).unwrap());
    }
    assert_eq!(result.intermediates(), t.as_slice());
    for (s, &e) in t.iter().zip(result.intermediate_energies()) {
        assert_eq!(base.energy(s).unwrap(), e);
    }
    let h = reduce(&t, &base).unwrap();
    assert_eq!(result.final_sample(), &h);
    assert_eq!(result.final_energy(), base.energy(&h).unwrap());
}

#[test]
fn versions_are_scaled_clipped_and_quantized() {
    let base = random_problem(3, 12, 0.5);
    let schedule = make_schedule(&base, ScheduleParams::default()).unwrap();
    let hw = Resolution::bits(3).unwrap();
    let versions = build_versions(&base, &schedule, hw).unwrap();
    for (v, &c) in versions.iter().zip(schedule.constants()) {
        assert!(v.is_hardware_feasible());
        assert_eq!(v, &apply_version(&base, c, hw).unwrap());
        for a in v.linear() {
            assert_eq!((a * 4.0).fract(), 0.0);
        }
    }
    // The last constant is 2^9.5 / (8d): every nonzero coefficient saturates.
    let last = versions.last().unwrap();
    for (a, b) in last.linear().iter().zip(base.linear()) {
        if *b != 0.0 {
            assert_eq!(*a, 2.0 * b.signum());
        }
    }
}

#[test]
fn hpe_is_no_worse_than_any_single_version() {
    let base = random_problem(40, 16, 0.3);
    let base = hpe::ising::quantize_problem(&base, hpe::ising::PrecisionSpec::new(9).unwrap()).unwrap();
    let schedule = make_schedule(&base, ScheduleParams::default()).unwrap();
    let hw = Resolution::bits(3).unwrap();
    let cfg = SamplerConfig::new(SamplerKind::Anneal, 0, 200);
    let result = run_hpe(&base, &schedule, hw, &cfg, &retained()).unwrap();
    let exact = base.energy(&solve_exact(&base).unwrap()).unwrap();
    assert!(result.final_energy() >= exact);
    for set in result.per_version_sets().unwrap() {
        let single = base.energy(&reduce(set, &base).unwrap()).unwrap();
        assert!(result.final_energy() <= single);
    }
}

#[test]
fn exact_sampler_finds_the_ground_state_when_a_version_keeps_it() {
    // Unconstrained hardware only clips; the first version is unclipped and
    // has the base argmin.
    for seed in 0..5 {
        let base = random_problem(seed, 8, 0.6);
        let schedule = make_schedule(&base, ScheduleParams::default()).unwrap();
        let cfg = SamplerConfig::new(SamplerKind::Exact, 0, 3);
        let result = run_hpe(&base, &schedule, Resolution::Unconstrained, &cfg, &HpeOptions::default()).unwrap();
        let exact = solve_exact(&base).unwrap();
        assert_eq!(result.final_energy(), base.energy(&exact).unwrap());
    }
}

#[test]
fn runs_are_reproducible() {
    let base = random_problem(9, 20, 0.2);
    let schedule = make_schedule(&base, ScheduleParams::default()).unwrap();
    let cfg = SamplerConfig::new(SamplerKind::Anneal, 77, 16);
    for pairing in [Pairing::Index, Pairing::Shuffle] {
        let opts = HpeOptions {
            pairing,
            retain_sets: false,
        };
        let a = run_hpe(&base, &schedule, Resolution::bits(4).unwrap(), &cfg, &opts).unwrap();
        let b = run_hpe(&base, &schedule, Resolution::bits(4).unwrap(), &cfg, &opts).unwrap();
        assert_eq!(a, b);
        assert!(a.per_version_sets().is_none());
    }
}

#[test]
fn invalid_inputs_are_rejected() {
    let base = random_problem(1, 6, 0.5);
    let schedule = make_schedule(&base, ScheduleParams::default()).unwrap();
    let cfg = SamplerConfig::new(SamplerKind::Anneal, 0, 0);
    assert!(run_hpe(&base, &schedule, Resolution::Unconstrained, &cfg, &HpeOptions::default()).is_err());
    let zero = hpe::ising::Problem::new(vec![0.0; 4], []).unwrap();
    assert!(matches!(
        make_schedule(&zero, ScheduleParams::default()),
        Err(hpe::Error::DegenerateProblem)
    ));
}
