use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};

/// Coupling topology of generated problems.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Graph {
    /// Erdős–Rényi graph: each pair is coupled independently with probability `density`.
    Random { density: f64 },
    /// Chimera lattice of `rows × cols` unit cells, each a complete bipartite
    /// `K_{shore,shore}`.
    Chimera { rows: usize, cols: usize, shore: usize },
}

impl Graph {
    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        match *self {
            Graph::Random { density } => {
                if !(density > 0.0 && density <= 1.0) {
                    return Err(Error::InvalidConfig(format!("edge density must be in (0, 1], got {density}")));
                }
            }
            Graph::Chimera { rows, cols, shore } => {
                if rows == 0 || cols == 0 || shore == 0 {
                    return Err(Error::InvalidConfig("chimera dimensions must be positive".into()));
                }
                let expected = rows * cols * 2 * shore;
                if expected != num_qubits {
                    return Err(Error::InvalidConfig(format!(
                        "chimera:{rows},{cols},{shore} has {expected} qubits, but {num_qubits} were requested"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Edge list `(i, j)` with `i < j`, in ascending order.
    pub fn edges(&self, num_qubits: usize, rng: &mut impl Rng) -> Vec<(usize, usize)> {
        match *self {
            Graph::Random { density } => {
                let mut edges = Vec::new();
                for i in 0..num_qubits {
                    for j in i + 1..num_qubits {
                        if rng.random::<f64>() < density {
                            edges.push((i, j));
                        }
                    }
                }
                edges
            }
            Graph::Chimera { rows, cols, shore } => chimera_edges(rows, cols, shore),
        }
    }
}

/// Chimera indexing: qubit `k` on side `u` of cell `(r, c)` is
/// `((r · cols + c) · 2 + u) · shore + k`. Side 0 couples vertically to the
/// same position in the cell below, side 1 horizontally to the cell on the right.
pub fn chimera_edges(rows: usize, cols: usize, shore: usize) -> Vec<(usize, usize)> {
    let index = |r: usize, c: usize, u: usize, k: usize| ((r * cols + c) * 2 + u) * shore + k;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            for k0 in 0..shore {
                for k1 in 0..shore {
                    edges.push((index(r, c, 0, k0), index(r, c, 1, k1)));
                }
            }
            for k in 0..shore {
                if r + 1 < rows {
                    edges.push((index(r, c, 0, k), index(r + 1, c, 0, k)));
                }
                if c + 1 < cols {
                    edges.push((index(r, c, 1, k), index(r, c + 1, 1, k)));
                }
            }
        }
    }
    edges.sort_unstable();
    edges
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Graph::Random { density } => write!(f, "random:{density}"),
            Graph::Chimera { rows, cols, shore } => write!(f, "chimera:{rows},{cols},{shore}"),
        }
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidConfig(format!("graph `{s}` is not random:RHO or chimera:R,C,T"));
        let (kind, args) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "random" => Ok(Graph::Random {
                density: args.parse().map_err(|_| bad())?,
            }),
            "chimera" => {
                let dims: Vec<usize> = args
                    .split(',')
                    .map(|x| x.trim().parse().map_err(|_| bad()))
                    .collect::<Result<_>>()?;
                match dims[..] {
                    [rows, cols, shore] => Ok(Graph::Chimera { rows, cols, shore }),
                    _ => Err(bad()),
                }
            }
            _ => Err(bad()),
        }
    }
}
