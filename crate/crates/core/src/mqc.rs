//! Multi-qubit correction (MQC).
//!
//! Two samples `s` and `t` disagree on some set of qubits. Restricted to the
//! problem graph, that set splits into connected components, and no coupler
//! joins two different components. Flipping one component of `s` to match
//! `t` therefore changes the energy by an amount that depends only on that
//! component and its boundary, so each component can be accepted or rejected
//! on its own. Taking every strictly improving component gives a sample no
//! worse than either input. Whole sample sets are reduced by a balanced
//! tournament of such pairwise combinations.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ising::{Problem, Sample, Spin};

/// Connected components of the disagreement set of two samples.
///
/// Each component is sorted ascending and components are ordered by their
/// smallest index.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DifferencePartition {
    components: Vec<Vec<usize>>,
}

impl DifferencePartition {
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Every disagreeing index, ascending.
    pub fn disagreement(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.components.iter().flatten().copied().collect();
        all.sort_unstable();
        all
    }
}

fn check_pair(s: &Sample, t: &Sample, problem: &Problem) -> Result<()> {
    problem.check_dimension(s)?;
    problem.check_dimension(t)
}

pub fn difference_components(s: &Sample, t: &Sample, problem: &Problem) -> Result<DifferencePartition> {
    check_pair(s, t, problem)?;
    Ok(partition(s.spins(), t.spins(), problem))
}

fn partition(s: &[Spin], t: &[Spin], problem: &Problem) -> DifferencePartition {
    let n = s.len();
    let mut visited = vec![false; n];
    let mut queue = VecDeque::new();
    let mut components = Vec::new();
    for root in 0..n {
        if s[root] == t[root] || visited[root] {
            continue;
        }
        visited[root] = true;
        queue.push_back(root);
        let mut comp = Vec::new();
        while let Some(i) = queue.pop_front() {
            comp.push(i);
            for &(j, _) in problem.neighbors(i) {
                if s[j] != t[j] && !visited[j] {
                    visited[j] = true;
                    queue.push_back(j);
                }
            }
        }
        comp.sort_unstable();
        components.push(comp);
    }
    DifferencePartition { components }
}

/// Energy change from flipping every spin of `component` in `spins`,
/// computed from the component's own terms and its boundary couplers.
/// `in_component` must be all `false` on entry and is restored on exit.
fn component_delta(problem: &Problem, spins: &[Spin], component: &[usize], in_component: &mut [bool]) -> f64 {
    for &i in component {
        in_component[i] = true;
    }
    let mut delta = 0.0;
    for &i in component {
        let boundary = problem
            .neighbors(i)
            .iter()
            .filter(|(j, _)| !in_component[*j])
            .fold(problem.linear()[i], |h, &(j, b)| h + b * f64::from(spins[j]));
        delta -= 2.0 * f64::from(spins[i]) * boundary;
    }
    for &i in component {
        in_component[i] = false;
    }
    delta
}

/// Incremental energy change of flipping `component` in `sample`. Matches
/// `energy(flipped) - energy(sample)` up to rounding.
pub fn flip_delta(problem: &Problem, sample: &Sample, component: &[usize]) -> Result<f64> {
    problem.check_dimension(sample)?;
    if let Some(&i) = component.iter().find(|&&i| i >= problem.num_qubits()) {
        return Err(Error::InvalidProblem(format!("qubit {i} out of range")));
    }
    let mut mask = vec![false; problem.num_qubits()];
    let mut unique = component.to_vec();
    unique.sort_unstable();
    unique.dedup();
    Ok(component_delta(problem, sample.spins(), &unique, &mut mask))
}

/// Combines `s` and `t`: starting from `s`, each disagreement component
/// takes `t`'s spins exactly when that strictly lowers the energy.
///
/// The result never has higher energy (as computed by [`Problem::energy`])
/// than either input.
pub fn combine(s: &Sample, t: &Sample, problem: &Problem) -> Result<Sample> {
    check_pair(s, t, problem)?;
    Ok(combine_unchecked(s, t, problem))
}

fn combine_unchecked(s: &Sample, t: &Sample, problem: &Problem) -> Sample {
    let parts = partition(s.spins(), t.spins(), problem);
    if parts.is_empty() {
        return s.clone();
    }
    let mut mask = vec![false; problem.num_qubits()];
    let mut out = s.spins().to_vec();
    for comp in parts.components() {
        // Components share no couplers, so deltas against `s` stay valid
        // after earlier components were adopted.
        if component_delta(problem, s.spins(), comp, &mut mask) < 0.0 {
            for &i in comp {
                out[i] = t.spins()[i];
            }
        }
    }
    // Incremental deltas can disagree with full re-evaluation in the last
    // bits; the pairwise bound is held against the full energies.
    let e_out = problem.energy_of(&out);
    let e_s = problem.energy_of(s.spins());
    let e_t = problem.energy_of(t.spins());
    if e_out <= e_s && e_out <= e_t {
        Sample::from_spins_unchecked(out)
    } else if e_t < e_s {
        t.clone()
    } else {
        s.clone()
    }
}

fn check_set(samples: &[Sample], problem: &Problem) -> Result<()> {
    if samples.is_empty() {
        return Err(Error::EmptySampleSet);
    }
    samples.iter().try_for_each(|s| problem.check_dimension(s))
}

/// Reduces a sample set to one sample by a balanced tournament: each round
/// combines neighbours `(0, 1), (2, 3), ...` in index order and an odd last
/// sample advances unchanged. The result is no worse than any member.
pub fn reduce(samples: &[Sample], problem: &Problem) -> Result<Sample> {
    check_set(samples, problem)?;
    let mut layer = tournament_round(samples, problem);
    while layer.len() > 1 {
        layer = tournament_round(&layer, problem);
    }
    Ok(layer.pop().expect("non-empty layer"))
}

fn tournament_round(layer: &[Sample], problem: &Problem) -> Vec<Sample> {
    layer
        .par_chunks(2)
        .map(|pair| match pair {
            [a, b] => combine_unchecked(a, b, problem),
            [a] => a.clone(),
            _ => unreachable!("chunks of two"),
        })
        .collect()
}

/// Left-fold reduction, `combine(combine(s0, s1), s2) ...`.
pub fn reduce_fold(samples: &[Sample], problem: &Problem) -> Result<Sample> {
    check_set(samples, problem)?;
    let (first, rest) = samples.split_first().expect("non-empty");
    Ok(rest
        .iter()
        .fold(first.clone(), |acc, t| combine_unchecked(&acc, t, problem)))
}
