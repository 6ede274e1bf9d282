//! Problem JSON files:
//! `{"num_qubits": N, "linear": [[i, a_i], ...], "quadratic": [[i, j, b_ij], ...]}`.
//!
//! Writers emit nonzero linear entries and every coupling, sorted by index,
//! with `i < j`. Readers reject duplicates, out-of-range indices and
//! quadratic entries with `i >= j`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ising::problem::Problem;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemFile {
    num_qubits: usize,
    #[serde(default)]
    linear: Vec<(usize, f64)>,
    #[serde(default)]
    quadratic: Vec<(usize, usize, f64)>,
}

impl From<&Problem> for ProblemFile {
    fn from(p: &Problem) -> Self {
        ProblemFile {
            num_qubits: p.num_qubits(),
            linear: p
                .linear()
                .iter()
                .enumerate()
                .filter(|(_, a)| **a != 0.0)
                .map(|(i, &a)| (i, a))
                .collect(),
            quadratic: p.couplings().iter().map(|c| (c.i, c.j, c.weight)).collect(),
        }
    }
}

impl TryFrom<ProblemFile> for Problem {
    type Error = Error;

    fn try_from(f: ProblemFile) -> Result<Problem> {
        if let Some(&(i, j, _)) = f.quadratic.iter().find(|(i, j, _)| i >= j) {
            return Err(Error::InvalidProblem(format!(
                "quadratic entry [{i}, {j}] must have i < j"
            )));
        }
        Problem::from_sparse(f.num_qubits, f.linear, f.quadratic)
    }
}

/// Formats an energy with 17 significant digits, enough to round-trip any `f64`.
pub fn format_energy(e: f64) -> String {
    format!("{e:.16e}")
}

pub fn problem_to_json(problem: &Problem) -> String {
    serde_json::to_string(&ProblemFile::from(problem)).expect("problem serialization is infallible")
}

pub fn problem_from_json(text: &str) -> Result<Problem> {
    let file: ProblemFile = serde_json::from_str(text).map_err(|source| Error::Json {
        path: "<string>".into(),
        source,
    })?;
    file.try_into()
}

pub fn write_problem(problem: &Problem, path: &Path) -> Result<()> {
    fs::write(path, problem_to_json(problem) + "\n").map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_problem(path: &Path) -> Result<Problem> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let file: ProblemFile = serde_json::from_str(&text).map_err(|source| Error::Json {
        path: path.to_path_buf(),
        source,
    })?;
    file.try_into()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn energy_format_round_trips() {
        for e in [0.0, -2.0, 1.0 / 3.0, -123.456789012345678, 5e-324, f64::MAX] {
            let text = format_energy(e);
            assert_eq!(text.parse::<f64>().unwrap(), e, "{text}");
        }
        assert_eq!(format_energy(-2.0), "-2.0000000000000000e0");
    }

    #[test]
    fn writes_sorted_sparse_form() {
        let p = Problem::new(vec![0.0, -0.5, 0.25], [(2, 1, 1.0), (0, 1, -0.125)]).unwrap();
        assert_eq!(
            problem_to_json(&p),
            r#"{"num_qubits":3,"linear":[[1,-0.5],[2,0.25]],"quadratic":[[0,1,-0.125],[1,2,1.0]]}"#
        );
    }

    #[test]
    fn reader_rejects_bad_files() {
        let cases = [
            r#"{"num_qubits":2,"linear":[[0,1.0],[0,2.0]],"quadratic":[]}"#,
            r#"{"num_qubits":2,"linear":[[2,1.0]],"quadratic":[]}"#,
            r#"{"num_qubits":2,"linear":[],"quadratic":[[1,0,1.0]]}"#,
            r#"{"num_qubits":2,"linear":[],"quadratic":[[0,1,1.0],[0,1,0.5]]}"#,
            r#"{"num_qubits":2,"linear":[],"quadratic":[[0,2,1.0]]}"#,
            r#"{"num_qubits":0,"linear":[],"quadratic":[]}"#,
            r#"{"num_qubits":2,"extra":1}"#,
        ];
        for text in cases {
            assert!(problem_from_json(text).is_err(), "{text}");
        }
    }

    #[test]
    fn missing_sections_default_to_empty() {
        let p = problem_from_json(r#"{"num_qubits":2}"#).unwrap();
        assert_eq!(p.linear(), &[0.0, 0.0]);
        assert!(p.couplings().is_empty());
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.json");
        let p = Problem::new(vec![0.1, 1.0 / 3.0, -2.0], [(0, 2, 0.7000000000000001), (1, 2, -1e-300)])
            .unwrap();
        write_problem(&p, &path).unwrap();
        assert_eq!(read_problem(&path).unwrap(), p);
        assert!(read_problem(&dir.path().join("missing.json")).is_err());
    }
}
