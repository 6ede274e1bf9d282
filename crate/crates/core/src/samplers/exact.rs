//! Exhaustive ground-state search over all `2^n` assignments.

use crate::error::{Error, Result};
use crate::ising::{energies_equal, Problem, Sample, Spin};

/// Largest problem the exhaustive solver accepts.
pub const EXACT_QUBIT_LIMIT: usize = 24;

/// Visits every assignment in reflected Gray-code order, calling `visit`
/// with the current spins and an incrementally maintained energy.
fn enumerate<F>(problem: &Problem, mut visit: F)
where
    F: FnMut(&[Spin], f64),
{
    let n = problem.num_qubits();
    let mut spins: Vec<Spin> = vec![-1; n];
    let mut field: Vec<f64> = (0..n).map(|i| problem.local_field(i, &spins)).collect();
    let mut e = problem.energy_of(&spins);
    visit(&spins, e);
    for step in 1u64..(1u64 << n) {
        let k = step.trailing_zeros() as usize;
        let s = f64::from(spins[k]);
        e -= 2.0 * s * field[k];
        spins[k] = -spins[k];
        for &(j, b) in problem.neighbors(k) {
            field[j] -= 2.0 * b * s;
        }
        visit(&spins, e);
    }
}

// Incremental energies drift by rounding; anything within this band of the
// incumbent is re-scored from scratch.
fn slack(e: f64) -> f64 {
    1e-9 * (1.0 + e.abs())
}

fn check_limit(problem: &Problem) -> Result<()> {
    if problem.num_qubits() > EXACT_QUBIT_LIMIT {
        return Err(Error::TooManyQubits {
            qubits: problem.num_qubits(),
            limit: EXACT_QUBIT_LIMIT,
        });
    }
    Ok(())
}

/// Returns a global minimizer of `problem`. Among minimizers with equal
/// energy the lexicographically smallest spin sequence (`-1 < +1`) wins.
pub fn solve_exact(problem: &Problem) -> Result<Sample> {
    check_limit(problem)?;
    let mut best_spins: Vec<Spin> = Vec::new();
    let mut best_exact = f64::INFINITY;
    let mut best_running = f64::INFINITY;
    enumerate(problem, |spins, e| {
        if e > best_running + slack(best_running) {
            return;
        }
        let exact = problem.energy_of(spins);
        if exact < best_exact || (exact == best_exact && spins < best_spins.as_slice()) {
            best_exact = exact;
            best_spins.clear();
            best_spins.extend_from_slice(spins);
        }
        best_running = best_running.min(e);
    });
    Ok(Sample::from_spins_unchecked(best_spins))
}

/// All assignments whose energy equals the minimum within relative
/// tolerance `rel_tol`, in lexicographic order.
pub fn ground_states(problem: &Problem, rel_tol: f64) -> Result<Vec<Sample>> {
    let best = solve_exact(problem)?;
    let e_min = problem.energy_of(best.spins());
    let band = slack(e_min) + rel_tol * e_min.abs();
    let mut out = Vec::new();
    enumerate(problem, |spins, e| {
        if (e - e_min).abs() <= band && energies_equal(problem.energy_of(spins), e_min, rel_tol) {
            out.push(Sample::from_spins_unchecked(spins.to_vec()));
        }
    });
    out.sort();
    Ok(out)
}
