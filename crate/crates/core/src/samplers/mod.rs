//! Samplers standing in for annealing hardware.
//!
//! A sampler turns a [`Problem`] into a [`SampleSet`]. Three kinds exist:
//! an exhaustive solver used as a ground-truth oracle, a seeded simulated
//! annealer, and a uniform-random control. All are pure functions of the
//! problem and the [`SamplerConfig`]; sample `r` is drawn from its own
//! stream seeded with `derive_seed(config.seed, STREAM_SAMPLE, r)`.

mod anneal;
mod exact;

use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::ops::Deref;
use std::path::Path;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ising::{io::format_energy, Problem, Sample};
use crate::seed::{derive_seed, STREAM_SAMPLE};

pub use exact::{ground_states, solve_exact, EXACT_QUBIT_LIMIT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SamplerKind {
    /// Repeats the exhaustive minimizer.
    Exact,
    /// Independent Metropolis anneals.
    Anneal,
    /// Uniformly random spins.
    Random,
}

impl fmt::Display for SamplerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SamplerKind::Exact => "exact",
            SamplerKind::Anneal => "anneal",
            SamplerKind::Random => "random",
        })
    }
}

impl FromStr for SamplerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(SamplerKind::Exact),
            "anneal" => Ok(SamplerKind::Anneal),
            "random" => Ok(SamplerKind::Random),
            other => Err(Error::InvalidConfig(format!("unknown sampler kind `{other}`"))),
        }
    }
}

/// Annealing parameters. Unset fields are derived from the problem being
/// sampled: `10 · num_qubits` sweeps, initial temperature `2 · d` where `d`
/// is the problem's largest coefficient magnitude, and final temperature
/// `0.01 · grid_step`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnealParams {
    pub sweeps: Option<usize>,
    pub initial_temperature: Option<f64>,
    pub final_temperature: Option<f64>,
    /// Coefficient grid of the sampled problem; sets the default final temperature.
    pub grid_step: f64,
}

impl AnnealParams {
    /// Grid step assumed when the caller does not know one (a 9-bit grid).
    pub const DEFAULT_GRID_STEP: f64 = 1.0 / 256.0;

    fn validate(&self) -> Result<()> {
        if self.sweeps == Some(0) {
            return Err(Error::InvalidConfig("sweeps must be at least 1".into()));
        }
        for (name, t) in [
            ("initial temperature", self.initial_temperature),
            ("final temperature", self.final_temperature),
            ("grid step", Some(self.grid_step)),
        ] {
            if let Some(t) = t {
                if !(t.is_finite() && t > 0.0) {
                    return Err(Error::InvalidConfig(format!("{name} must be positive, got {t}")));
                }
            }
        }
        if let (Some(t0), Some(t1)) = (self.initial_temperature, self.final_temperature) {
            if t0 < t1 {
                return Err(Error::InvalidConfig(format!(
                    "initial temperature {t0} is below final temperature {t1}"
                )));
            }
        }
        Ok(())
    }

    fn resolve(&self, problem: &Problem) -> anneal::Schedule {
        let d = problem.max_abs_coefficient();
        let initial = self
            .initial_temperature
            .unwrap_or(if d > 0.0 { 2.0 * d } else { 1.0 });
        let final_temperature = self
            .final_temperature
            .unwrap_or(0.01 * self.grid_step)
            .min(initial);
        anneal::Schedule {
            sweeps: self.sweeps.unwrap_or(10 * problem.num_qubits()),
            initial_temperature: initial,
            final_temperature,
        }
    }
}

impl Default for AnnealParams {
    fn default() -> Self {
        AnnealParams {
            sweeps: None,
            initial_temperature: None,
            final_temperature: None,
            grid_step: Self::DEFAULT_GRID_STEP,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SamplerConfig {
    pub kind: SamplerKind,
    pub seed: u64,
    pub num_samples: usize,
    pub anneal: AnnealParams,
}

impl SamplerConfig {
    pub fn new(kind: SamplerKind, seed: u64, num_samples: usize) -> Self {
        SamplerConfig {
            kind,
            seed,
            num_samples,
            anneal: AnnealParams::default(),
        }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        SamplerConfig { seed, ..self.clone() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.num_samples == 0 {
            return Err(Error::InvalidConfig("num_samples must be at least 1".into()));
        }
        self.anneal.validate()
    }

    fn label(&self) -> String {
        format!("{}(seed={})", self.kind, self.seed)
    }
}

/// A non-empty, ordered collection of equal-length samples from one sampler call.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleSet {
    samples: Vec<Sample>,
    source_label: String,
}

impl SampleSet {
    pub fn new(samples: Vec<Sample>, source_label: impl Into<String>) -> Result<Self> {
        let first = samples.first().ok_or(Error::EmptySampleSet)?;
        if let Some(bad) = samples.iter().find(|s| s.len() != first.len()) {
            return Err(Error::DimensionMismatch {
                expected: first.len(),
                actual: bad.len(),
            });
        }
        Ok(SampleSet {
            samples,
            source_label: source_label.into(),
        })
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn source_label(&self) -> &str {
        &self.source_label
    }

    pub fn into_samples(self) -> Vec<Sample> {
        self.samples
    }

    /// Index and energy of the lowest-energy sample under `problem`; the
    /// first one wins on ties.
    pub fn best(&self, problem: &Problem) -> Result<(usize, f64)> {
        let mut best = (0, f64::INFINITY);
        for (k, s) in self.samples.iter().enumerate() {
            let e = problem.energy(s)?;
            if e < best.1 {
                best = (k, e);
            }
        }
        Ok(best)
    }

    /// Dumps the set as CSV: `sample_index,spin_0,...,spin_{N-1},energy`,
    /// with energies evaluated under `problem`.
    pub fn write_csv(&self, problem: &Problem, path: &Path) -> Result<()> {
        let io_err = |source| Error::Io {
            path: path.to_path_buf(),
            source,
        };
        let file = File::create(path).map_err(io_err)?;
        let mut w = BufWriter::new(file);
        let n = problem.num_qubits();
        let mut header = String::from("sample_index");
        for i in 0..n {
            header.push_str(&format!(",spin_{i}"));
        }
        writeln!(w, "{header},energy").map_err(io_err)?;
        for (k, s) in self.samples.iter().enumerate() {
            let e = problem.energy(s)?;
            let spins: Vec<String> = s.spins().iter().map(|q| q.to_string()).collect();
            writeln!(w, "{k},{},{}", spins.join(","), format_energy(e)).map_err(io_err)?;
        }
        w.flush().map_err(io_err)
    }
}

impl Deref for SampleSet {
    type Target = [Sample];

    fn deref(&self) -> &[Sample] {
        &self.samples
    }
}

/// Draws `config.num_samples` samples of `problem`. Deterministic in
/// `(problem, config)` regardless of thread count.
pub fn sample(problem: &Problem, config: &SamplerConfig) -> Result<SampleSet> {
    config.validate()?;
    let n = config.num_samples;
    let samples = match config.kind {
        SamplerKind::Exact => vec![solve_exact(problem)?; n],
        SamplerKind::Anneal => {
            let schedule = config.anneal.resolve(problem);
            (0..n)
                .into_par_iter()
                .map(|r| anneal::anneal_one(problem, &schedule, derive_seed(config.seed, STREAM_SAMPLE, r as u64)))
                .collect()
        }
        SamplerKind::Random => (0..n)
            .into_par_iter()
            .map(|r| {
                let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(config.seed, STREAM_SAMPLE, r as u64));
                Sample::from_spins_unchecked(anneal::random_spins(&mut rng, problem.num_qubits()))
            })
            .collect(),
    };
    SampleSet::new(samples, config.label())
}
