#![allow(dead_code)]

use hpe::ising::{Problem, Sample, Spin};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random problem with `a_i ~ U[-2, 2]` and each pair coupled with
/// probability `density`, `b_ij ~ U[-1, 1]`.
pub fn random_problem(seed: u64, n: usize, density: f64) -> Problem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let linear = (0..n).map(|_| rng.random_range(-2.0..=2.0)).collect();
    let mut quad = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random::<f64>() < density {
                quad.push((i, j, rng.random_range(-1.0..=1.0)));
            }
        }
    }
    Problem::new(linear, quad).unwrap()
}

pub fn random_sample(rng: &mut impl Rng, n: usize) -> Sample {
    Sample::new((0..n).map(|_| if rng.random::<bool>() { 1 } else { -1 }).collect()).unwrap()
}

/// Plain enumeration in index order, independent of the library's Gray-code solver.
pub fn brute_force_min(problem: &Problem) -> f64 {
    let n = problem.num_qubits();
    (0..1u64 << n)
        .map(|bits| {
            let spins: Vec<Spin> = (0..n).map(|k| if bits >> k & 1 == 1 { 1 } else { -1 }).collect();
            problem.energy(&Sample::new(spins).unwrap()).unwrap()
        })
        .fold(f64::INFINITY, f64::min)
}

/// Every assignment within relative tolerance of the minimum, by enumeration.
pub fn brute_force_argmins(problem: &Problem, rel_tol: f64) -> Vec<Vec<Spin>> {
    let n = problem.num_qubits();
    let all: Vec<(Vec<Spin>, f64)> = (0..1u64 << n)
        .map(|bits| {
            let spins: Vec<Spin> = (0..n).map(|k| if bits >> k & 1 == 1 { 1 } else { -1 }).collect();
            let e = problem.energy(&Sample::new(spins.clone()).unwrap()).unwrap();
            (spins, e)
        })
        .collect();
    let min = all.iter().map(|(_, e)| *e).fold(f64::INFINITY, f64::min);
    let mut out: Vec<Vec<Spin>> = all
        .into_iter()
        .filter(|(_, e)| (e - min).abs() <= rel_tol * e.abs().max(min.abs()))
        .map(|(s, _)| s)
        .collect();
    out.sort();
    out
}

/// `c · F` with no clipping or quantization.
pub fn scaled(problem: &Problem, c: f64) -> Problem {
    problem.try_map_coefficients(|_, x| Ok(c * x)).unwrap()
}

pub fn flip(sample: &Sample, component: &[usize]) -> Sample {
    let mut spins = sample.spins().to_vec();
    for &i in component {
        spins[i] = -spins[i];
    }
    Sample::new(spins).unwrap()
}
