//! Single-spin-flip Metropolis simulated annealing.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ising::{Problem, Sample, Spin};

/// Fully resolved annealing schedule for one problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Schedule {
    pub sweeps: usize,
    pub initial_temperature: f64,
    pub final_temperature: f64,
}

impl Schedule {
    /// Temperature for sweep `s`, decaying geometrically from initial to final.
    fn temperature(&self, s: usize) -> f64 {
        if self.sweeps == 1 {
            return self.final_temperature;
        }
        let frac = s as f64 / (self.sweeps - 1) as f64;
        self.initial_temperature * (self.final_temperature / self.initial_temperature).powf(frac)
    }
}

// exp(-40) is below 2^-57: such uphill moves are never accepted.
const MAX_BOLTZMANN_EXPONENT: f64 = 40.0;

pub(crate) fn random_spins(rng: &mut impl Rng, n: usize) -> Vec<Spin> {
    (0..n).map(|_| if rng.random::<bool>() { 1 } else { -1 }).collect()
}

/// One independent anneal from a uniformly random start.
pub(crate) fn anneal_one(problem: &Problem, schedule: &Schedule, seed: u64) -> Sample {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = problem.num_qubits();
    let mut spins = random_spins(&mut rng, n);
    let mut field: Vec<f64> = (0..n).map(|i| problem.local_field(i, &spins)).collect();

    for sweep in 0..schedule.sweeps {
        let beta = schedule.temperature(sweep).recip();
        for i in 0..n {
            let delta = -2.0 * f64::from(spins[i]) * field[i];
            let accept = delta <= 0.0 || {
                let x = beta * delta;
                x < MAX_BOLTZMANN_EXPONENT && rng.random::<f64>() < (-x).exp()
            };
            if accept {
                spins[i] = -spins[i];
                let s = 2.0 * f64::from(spins[i]);
                for &(j, b) in problem.neighbors(i) {
                    field[j] += b * s;
                }
            }
        }
    }
    Sample::from_spins_unchecked(spins)
}
