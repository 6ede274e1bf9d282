use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// A spin value. Always `-1` or `+1`.
pub type Spin = i8;

/// One pairwise term `b_ij q_i q_j` with `i < j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coupling {
    pub i: usize,
    pub j: usize,
    pub weight: f64,
}

/// Which coefficient family a value belongs to. The two families have
/// different legal hardware ranges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoefficientKind {
    /// Per-qubit field `a_i`, legal range `[-2, 2]`.
    Linear,
    /// Pairwise coupler `b_ij`, legal range `[-1, 1]`.
    Quadratic,
}

impl CoefficientKind {
    pub fn half_range(self) -> f64 {
        match self {
            CoefficientKind::Linear => 2.0,
            CoefficientKind::Quadratic => 1.0,
        }
    }
}

/// Ising objective `F(q) = Σ a_i q_i + Σ_{i<j} b_ij q_i q_j` over spins `q_i ∈ {-1, +1}`.
///
/// Linear coefficients are stored densely (absent terms are zero). Couplings
/// are kept sorted by `(i, j)` with `i < j` and no duplicates; every stored
/// coupling is an edge of the problem graph even if its weight is zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Problem {
    linear: Vec<f64>,
    couplings: Vec<Coupling>,
    // CSR adjacency: neighbours of qubit i are entries[offsets[i]..offsets[i + 1]].
    offsets: Vec<usize>,
    entries: Vec<(usize, f64)>,
}

impl Problem {
    /// Builds a problem from a dense linear vector (its length is the qubit
    /// count) and a list of `(i, j, b_ij)` couplings in either orientation.
    pub fn new<I>(linear: Vec<f64>, quadratic: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let n = linear.len();
        if n == 0 {
            return Err(Error::InvalidProblem("num_qubits must be positive".into()));
        }
        if let Some(&x) = linear.iter().find(|x| !x.is_finite()) {
            return Err(Error::NonFinite(x));
        }
        let mut seen = HashSet::new();
        let mut couplings = Vec::new();
        for (a, b, weight) in quadratic {
            if a >= n || b >= n {
                return Err(Error::InvalidProblem(format!(
                    "coupling ({a}, {b}) out of range for {n} qubits"
                )));
            }
            if a == b {
                return Err(Error::InvalidProblem(format!("self-coupling on qubit {a}")));
            }
            if !weight.is_finite() {
                return Err(Error::NonFinite(weight));
            }
            let (i, j) = if a < b { (a, b) } else { (b, a) };
            if !seen.insert((i, j)) {
                return Err(Error::InvalidProblem(format!("duplicate coupling ({i}, {j})")));
            }
            couplings.push(Coupling { i, j, weight });
        }
        couplings.sort_by_key(|c| (c.i, c.j));
        Ok(Self::from_parts(linear, couplings))
    }

    /// Builds a problem from sparse linear entries `(i, a_i)`.
    pub fn from_sparse<L, Q>(num_qubits: usize, linear: L, quadratic: Q) -> Result<Self>
    where
        L: IntoIterator<Item = (usize, f64)>,
        Q: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut dense = vec![0.0; num_qubits];
        let mut seen = vec![false; num_qubits];
        for (i, a) in linear {
            if i >= num_qubits {
                return Err(Error::InvalidProblem(format!(
                    "linear index {i} out of range for {num_qubits} qubits"
                )));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidProblem(format!("duplicate linear index {i}")));
            }
            dense[i] = a;
        }
        Self::new(dense, quadratic)
    }

    fn from_parts(linear: Vec<f64>, couplings: Vec<Coupling>) -> Self {
        let n = linear.len();
        let mut degree = vec![0usize; n];
        for c in &couplings {
            degree[c.i] += 1;
            degree[c.j] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut entries = vec![(0, 0.0); offsets[n]];
        for c in &couplings {
            entries[cursor[c.i]] = (c.j, c.weight);
            cursor[c.i] += 1;
            entries[cursor[c.j]] = (c.i, c.weight);
            cursor[c.j] += 1;
        }
        Problem {
            linear,
            couplings,
            offsets,
            entries,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.linear.len()
    }

    pub fn linear(&self) -> &[f64] {
        &self.linear
    }

    pub fn couplings(&self) -> &[Coupling] {
        &self.couplings
    }

    /// Neighbours of qubit `i` with the weight of the connecting coupler.
    pub fn neighbors(&self, i: usize) -> &[(usize, f64)] {
        &self.entries[self.offsets[i]..self.offsets[i + 1]]
    }

    /// `true` when every `a_i ∈ [-2, 2]` and every `b_ij ∈ [-1, 1]`.
    pub fn is_hardware_feasible(&self) -> bool {
        let lin = CoefficientKind::Linear.half_range();
        let quad = CoefficientKind::Quadratic.half_range();
        self.linear.iter().all(|a| a.abs() <= lin)
            && self.couplings.iter().all(|c| c.weight.abs() <= quad)
    }

    /// Largest coefficient magnitude over both families.
    pub fn max_abs_coefficient(&self) -> f64 {
        self.linear
            .iter()
            .copied()
            .chain(self.couplings.iter().map(|c| c.weight))
            .fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Rebuilds the problem with every coefficient passed through `f`,
    /// keeping the graph structure intact.
    pub fn try_map_coefficients<F>(&self, mut f: F) -> Result<Problem>
    where
        F: FnMut(CoefficientKind, f64) -> Result<f64>,
    {
        let linear = self
            .linear
            .iter()
            .map(|&a| f(CoefficientKind::Linear, a))
            .collect::<Result<Vec<_>>>()?;
        let couplings = self
            .couplings
            .iter()
            .map(|c| {
                Ok(Coupling {
                    weight: f(CoefficientKind::Quadratic, c.weight)?,
                    ..*c
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_parts(linear, couplings))
    }

    /// `a_i + Σ_j b_ij q_j`; flipping qubit `i` changes the energy by `-2 q_i h_i`.
    #[inline]
    pub fn local_field(&self, i: usize, spins: &[Spin]) -> f64 {
        self.neighbors(i)
            .iter()
            .fold(self.linear[i], |h, &(j, b)| h + b * f64::from(spins[j]))
    }

    pub(crate) fn check_dimension(&self, sample: &Sample) -> Result<()> {
        if sample.len() != self.num_qubits() {
            return Err(Error::DimensionMismatch {
                expected: self.num_qubits(),
                actual: sample.len(),
            });
        }
        Ok(())
    }

    /// Energy of `sample`. Linear terms are summed in index order, then
    /// couplings in `(i, j)` order, so the result is reproducible bit for bit.
    pub fn energy(&self, sample: &Sample) -> Result<f64> {
        self.check_dimension(sample)?;
        Ok(self.energy_of(sample.spins()))
    }

    pub(crate) fn energy_of(&self, spins: &[Spin]) -> f64 {
        let lin = self
            .linear
            .iter()
            .zip(spins)
            .fold(0.0, |e, (&a, &q)| e + a * f64::from(q));
        self.couplings.iter().fold(lin, |e, c| {
            e + c.weight * f64::from(spins[c.i] * spins[c.j])
        })
    }
}

/// Relative tolerance for classifying two energies as equal.
pub const ENERGY_REL_TOL: f64 = 1e-12;

/// `|a - b| <= rel_tol · max(|a|, |b|)`; exactly equal values always compare equal.
pub fn energies_equal(a: f64, b: f64, rel_tol: f64) -> bool {
    a == b || (a - b).abs() <= rel_tol * a.abs().max(b.abs())
}

/// Energy of `sample` under `problem`.
pub fn energy(problem: &Problem, sample: &Sample) -> Result<f64> {
    problem.energy(sample)
}

/// One full spin assignment.
///
/// Ordering is lexicographic over the spin sequence with `-1 < +1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sample {
    spins: Vec<Spin>,
}

impl Sample {
    pub fn new(spins: Vec<Spin>) -> Result<Self> {
        if let Some(&s) = spins.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::InvalidSpin(i64::from(s)));
        }
        Ok(Sample { spins })
    }

    /// Callers guarantee every entry is `±1`.
    pub(crate) fn from_spins_unchecked(spins: Vec<Spin>) -> Self {
        debug_assert!(spins.iter().all(|&s| s == 1 || s == -1));
        Sample { spins }
    }

    pub fn uniform(len: usize, spin: Spin) -> Result<Self> {
        Self::new(vec![spin; len])
    }

    pub fn spins(&self) -> &[Spin] {
        &self.spins
    }

    pub fn len(&self) -> usize {
        self.spins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spins.is_empty()
    }

    pub fn into_spins(self) -> Vec<Spin> {
        self.spins
    }
}

impl fmt::Display for Sample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.spins.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> Problem {
        Problem::new(vec![0.0; 3], [(0, 1, 1.0), (1, 2, 1.0)]).unwrap()
    }

    #[test]
    fn energy_of_two_qubit_example() {
        let p = Problem::new(vec![0.5, -0.5], [(0, 1, 1.0)]).unwrap();
        let q = Sample::new(vec![1, -1]).unwrap();
        assert_eq!(p.energy(&q).unwrap(), 0.0);
    }

    #[test]
    fn all_up_energy_is_coefficient_sum() {
        let p = Problem::new(vec![0.25, -1.5, 0.75], [(0, 1, 0.5), (0, 2, -0.25), (1, 2, 1.0)])
            .unwrap();
        let up = Sample::uniform(3, 1).unwrap();
        assert_eq!(p.energy(&up).unwrap(), 0.25 - 1.5 + 0.75 + 0.5 - 0.25 + 1.0);
    }

    #[test]
    fn chain_alternating_energy_is_ground() {
        let p = chain3();
        let q = Sample::new(vec![1, -1, 1]).unwrap();
        assert_eq!(p.energy(&q).unwrap(), -2.0);
        // brute force: nothing lies below -2
        for bits in 0..8u32 {
            let s: Vec<Spin> = (0..3).map(|k| if bits >> k & 1 == 1 { 1 } else { -1 }).collect();
            assert!(p.energy(&Sample::new(s).unwrap()).unwrap() >= -2.0);
        }
    }

    #[test]
    fn energy_rejects_wrong_length() {
        let err = chain3().energy(&Sample::uniform(2, 1).unwrap()).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { expected: 3, actual: 2 }));
        assert!(err.to_string().contains("expected 3"));
    }

    #[test]
    fn construction_normalizes_and_validates() {
        let p = Problem::new(vec![0.0; 3], [(2, 1, 0.5), (1, 0, -0.5)]).unwrap();
        let pairs: Vec<_> = p.couplings().iter().map(|c| (c.i, c.j)).collect();
        assert_eq!(pairs, vec![(0, 1), (1, 2)]);
        assert_eq!(p.neighbors(1).len(), 2);

        assert!(Problem::new(vec![0.0; 2], [(0, 0, 1.0)]).is_err());
        assert!(Problem::new(vec![0.0; 2], [(0, 2, 1.0)]).is_err());
        assert!(Problem::new(vec![0.0; 2], [(0, 1, 1.0), (1, 0, 1.0)]).is_err());
        assert!(Problem::new(vec![], []).is_err());
        assert!(Problem::new(vec![f64::NAN], []).is_err());
        assert!(Problem::from_sparse(2, [(0, 1.0), (0, 2.0)], []).is_err());
        assert!(Problem::from_sparse(2, [(2, 1.0)], []).is_err());
    }

    #[test]
    fn sample_rejects_non_spin_values() {
        assert!(Sample::new(vec![1, 0, -1]).is_err());
        assert!(Sample::new(vec![2]).is_err());
    }

    #[test]
    fn sample_order_is_lexicographic_with_minus_first() {
        let a = Sample::new(vec![-1, 1, -1]).unwrap();
        let b = Sample::new(vec![1, -1, 1]).unwrap();
        assert!(a < b);
        assert_eq!(a.to_string(), "-1 1 -1");
    }

    #[test]
    fn hardware_feasibility() {
        let ok = Problem::new(vec![2.0, -2.0], [(0, 1, -1.0)]).unwrap();
        assert!(ok.is_hardware_feasible());
        let bad_a = Problem::new(vec![2.5, 0.0], [(0, 1, 0.0)]).unwrap();
        assert!(!bad_a.is_hardware_feasible());
        let bad_b = Problem::new(vec![0.0, 0.0], [(0, 1, 1.5)]).unwrap();
        assert!(!bad_b.is_hardware_feasible());
    }
}
