//! High precision enhancement.
//!
//! The base problem `F` is presented to a low-precision sampler as `K`
//! versions `F^k = c_k · F`, each clipped to the hardware ranges and
//! quantized at the hardware resolution. Version `k` yields a sample set
//! `S^k`. For every sample index `i` the `i`-th sample of each version forms
//! a cross-version set `T^i`, which MQC reduces to `t^i`; the pool of all
//! `t^i` is reduced once more to the final answer `h`. Every MQC reduction
//! scores samples with the coefficients of `F`, never with a version's.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ising::{apply_version, Problem, Resolution, Sample, ScaleSchedule};
use crate::mqc;
use crate::samplers::{sample, SampleSet, SamplerConfig};
use crate::seed::{derive_seed, STREAM_SHUFFLE, STREAM_VERSION};

/// How samples of different versions are grouped into cross-version sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Pairing {
    /// `T^i` takes the `i`-th sample of every version.
    #[default]
    Index,
    /// Each version's samples are permuted by a seeded shuffle first.
    Shuffle,
}

impl std::str::FromStr for Pairing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "index" => Ok(Pairing::Index),
            "shuffle" => Ok(Pairing::Shuffle),
            other => Err(Error::InvalidConfig(format!("unknown pairing `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct HpeOptions {
    pub pairing: Pairing,
    /// Keep every version's sample set in the result.
    pub retain_sets: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HpeResult {
    final_sample: Sample,
    final_energy: f64,
    intermediates: Vec<Sample>,
    intermediate_energies: Vec<f64>,
    per_version_sets: Option<Vec<SampleSet>>,
}

impl HpeResult {
    /// The answer `h`.
    pub fn final_sample(&self) -> &Sample {
        &self.final_sample
    }

    /// Energy of `h` under the base problem.
    pub fn final_energy(&self) -> f64 {
        self.final_energy
    }

    /// The reduced cross-version samples `t^i`, by index.
    pub fn intermediates(&self) -> &[Sample] {
        &self.intermediates
    }

    pub fn intermediate_energies(&self) -> &[f64] {
        &self.intermediate_energies
    }

    /// The raw version sample sets `S^k`, when retained.
    pub fn per_version_sets(&self) -> Option<&[SampleSet]> {
        self.per_version_sets.as_deref()
    }
}

/// The hardware views `apply_version(base, c_k, hardware)` for every `c_k`.
pub fn build_versions(base: &Problem, schedule: &ScaleSchedule, hardware: Resolution) -> Result<Vec<Problem>> {
    schedule
        .constants()
        .iter()
        .map(|&c| apply_version(base, c, hardware))
        .collect()
}

/// Sampler configuration used for version `k`: same settings, seed derived
/// from the base seed and `k`.
pub fn version_sampler(sampler: &SamplerConfig, k: usize) -> SamplerConfig {
    sampler.with_seed(derive_seed(sampler.seed, STREAM_VERSION, k as u64))
}

/// Sample positions taken from version `k`'s set, in `T`-set order.
fn pairing_order(options: &HpeOptions, seed: u64, k: usize, len: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..len).collect();
    if options.pairing == Pairing::Shuffle {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, STREAM_SHUFFLE, k as u64));
        order.shuffle(&mut rng);
    }
    order
}

pub fn run_hpe(
    base: &Problem,
    schedule: &ScaleSchedule,
    hardware: Resolution,
    sampler: &SamplerConfig,
    options: &HpeOptions,
) -> Result<HpeResult> {
    sampler.validate()?;
    let versions = build_versions(base, schedule, hardware)?;
    let sets: Vec<SampleSet> = versions
        .par_iter()
        .enumerate()
        .map(|(k, fk)| sample(fk, &version_sampler(sampler, k)))
        .collect::<Result<_>>()?;

    let n = sampler.num_samples;
    let orders: Vec<Vec<usize>> = (0..sets.len())
        .map(|k| pairing_order(options, sampler.seed, k, n))
        .collect();

    let reduced: Vec<(Sample, f64)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let t_set: Vec<Sample> = sets
                .iter()
                .zip(&orders)
                .map(|(set, order)| set[order[i]].clone())
                .collect();
            let t = mqc::reduce(&t_set, base)?;
            let e = base.energy(&t)?;
            let floor = t_set
                .iter()
                .map(|s| base.energy(s))
                .try_fold(f64::INFINITY, |m, e| e.map(|e| m.min(e)))?;
            if e > floor {
                return Err(Error::Invariant(format!(
                    "t^{i} energy {e} exceeds the minimum {floor} of its cross-version set"
                )));
            }
            Ok((t, e))
        })
        .collect::<Result<_>>()?;
    let (intermediates, intermediate_energies): (Vec<Sample>, Vec<f64>) = reduced.into_iter().unzip();

    let final_sample = mqc::reduce(&intermediates, base)?;
    let final_energy = base.energy(&final_sample)?;
    let floor = intermediate_energies.iter().copied().fold(f64::INFINITY, f64::min);
    if final_energy > floor {
        return Err(Error::Invariant(format!(
            "h energy {final_energy} exceeds the best intermediate energy {floor}"
        )));
    }

    Ok(HpeResult {
        final_sample,
        final_energy,
        intermediates,
        intermediate_energies,
        per_version_sets: options.retain_sets.then_some(sets),
    })
}
