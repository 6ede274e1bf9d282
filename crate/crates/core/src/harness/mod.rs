//! Experiment protocol: random problems at a base precision, a unit-scale
//! run at hardware precision (`dw` and its MQC reduction `m`), and HPE over
//! the scaled versions (`h`), all scored under the base problem.

mod graph;
mod report;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hpe::{run_hpe, HpeOptions, Pairing};
use crate::ising::{apply_version, make_schedule, quantize_problem, Problem, Resolution, ScheduleParams};
use crate::mqc;
use crate::samplers::{sample, solve_exact, AnnealParams, SamplerConfig, SamplerKind, EXACT_QUBIT_LIMIT};
use crate::seed::{derive_seed, STREAM_BASELINE, STREAM_CASE, STREAM_HPE};

pub use graph::{chimera_edges, Graph};
pub use report::{aggregate, emit_csv, emit_table, read_csv, ComparisonRecord, RowLabels, TableRow};

/// Attempts at drawing a problem with at least one nonzero coefficient.
pub const MAX_GENERATION_ATTEMPTS: u32 = 100;

/// One experiment: problem family, precisions, and run sizes.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseSpec {
    pub num_qubits: usize,
    pub graph: Graph,
    /// Precision of the ground-truth problem (`BP`).
    pub base_precision: Resolution,
    /// Precision of the sampler's coefficients (`HP`).
    pub hardware_precision: Resolution,
    pub cases: usize,
    /// Samples per sampler call: the unit-scale run and each HPE version.
    pub samples: usize,
    pub seed: u64,
    pub sampler: SamplerKind,
    /// Annealer overrides; `grid_step` is replaced by the hardware step.
    pub anneal: AnnealParams,
    pub schedule: ScheduleParams,
    pub pairing: Pairing,
}

impl Default for CaseSpec {
    fn default() -> Self {
        CaseSpec {
            num_qubits: 64,
            graph: Graph::Random { density: 0.1 },
            base_precision: Resolution::bits(9).expect("9 bits is valid"),
            hardware_precision: Resolution::bits(3).expect("3 bits is valid"),
            cases: 100,
            samples: 200,
            seed: 0,
            sampler: SamplerKind::Anneal,
            anneal: AnnealParams::default(),
            schedule: ScheduleParams::default(),
            pairing: Pairing::Index,
        }
    }
}

impl CaseSpec {
    pub fn validate(&self) -> Result<()> {
        if self.num_qubits == 0 || self.cases == 0 || self.samples == 0 {
            return Err(Error::InvalidConfig("qubits, cases and samples must be at least 1".into()));
        }
        self.graph.validate(self.num_qubits)
    }

    /// Row labels for this spec's table line.
    pub fn labels(&self) -> RowLabels {
        RowLabels {
            bp: self.base_precision.label(),
            hp: self.hardware_precision.label(),
            samples: Some(self.samples),
        }
    }

    fn sampler_config(&self, seed: u64) -> SamplerConfig {
        SamplerConfig {
            kind: self.sampler,
            seed,
            num_samples: self.samples,
            anneal: AnnealParams {
                grid_step: self
                    .hardware_precision
                    .step()
                    .unwrap_or(AnnealParams::DEFAULT_GRID_STEP),
                ..self.anneal
            },
        }
    }
}

/// Draws case `case_index`: topology, `a_i ~ U[-2, 2]`, `b_ij ~ U[-1, 1]`,
/// then quantization at the base precision. Deterministic in `(seed, case_index)`.
pub fn generate_case(spec: &CaseSpec, case_index: usize) -> Result<Problem> {
    spec.validate()?;
    let case_seed = derive_seed(spec.seed, STREAM_CASE, case_index as u64);
    for attempt in 0..MAX_GENERATION_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(case_seed, u64::from(attempt), 0));
        let edges = spec.graph.edges(spec.num_qubits, &mut rng);
        let linear: Vec<f64> = (0..spec.num_qubits).map(|_| rng.random_range(-2.0..=2.0)).collect();
        let quadratic: Vec<(usize, usize, f64)> = edges
            .into_iter()
            .map(|(i, j)| (i, j, rng.random_range(-1.0..=1.0)))
            .collect();
        let raw = Problem::new(linear, quadratic)?;
        let problem = match spec.base_precision {
            Resolution::Bits(p) => quantize_problem(&raw, p)?,
            Resolution::Unconstrained => raw,
        };
        if problem.max_abs_coefficient() > 0.0 {
            return Ok(problem);
        }
    }
    Err(Error::GenerationFailed(MAX_GENERATION_ATTEMPTS))
}

/// Runs the unit-scale baseline and HPE on `base`, scoring all three
/// answers under `base`.
pub fn run_case(base: &Problem, spec: &CaseSpec, case_index: usize) -> Result<ComparisonRecord> {
    let hardware = spec.hardware_precision;
    let index = case_index as u64;

    let unit = apply_version(base, 1.0, hardware)?;
    let raw = sample(&unit, &spec.sampler_config(derive_seed(spec.seed, STREAM_BASELINE, index)))?;
    let (_, e_dw) = raw.best(base)?;
    let m = mqc::reduce(&raw, base)?;
    let e_m = base.energy(&m)?;
    if e_m > e_dw {
        return Err(Error::Invariant(format!("case {case_index}: e_m {e_m} exceeds e_dw {e_dw}")));
    }

    let schedule = make_schedule(base, spec.schedule)?;
    let options = HpeOptions {
        pairing: spec.pairing,
        retain_sets: false,
    };
    let hpe = run_hpe(
        base,
        &schedule,
        hardware,
        &spec.sampler_config(derive_seed(spec.seed, STREAM_HPE, index)),
        &options,
    )?;

    let e_exact = if base.num_qubits() <= EXACT_QUBIT_LIMIT {
        Some(base.energy(&solve_exact(base)?)?)
    } else {
        None
    };

    Ok(ComparisonRecord {
        case_index,
        e_dw,
        e_m,
        e_h: hpe.final_energy(),
        e_exact,
    })
}

/// Generates and runs every case. Output is ordered by case index
/// regardless of scheduling.
pub fn run_experiment(spec: &CaseSpec) -> Result<Vec<ComparisonRecord>> {
    spec.validate()?;
    (0..spec.cases)
        .into_par_iter()
        .map(|c| run_case(&generate_case(spec, c)?, spec, c))
        .collect()
}
