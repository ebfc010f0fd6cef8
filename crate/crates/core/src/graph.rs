//! Directed weighted graphs, the combinatorial directed Laplacian `L = D_out - A`,
//! and matrix-level asymmetry and normality indices.
//!
//! Adjacency uses the row convention: `A[i][j] = w(i, j)` for an edge `i -> j`,
//! so the out-degree of `i` is the `i`-th row sum and `L * 1 = 0`.

use std::collections::HashSet;

use rand::{RngExt, SeedableRng};

use crate::error::{Error, Result};
use crate::linalg::{c, ensure_square, frobenius, CMatrix};
use crate::rng::GraphRng;

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DirectedGraph {
    n: usize,
    edges: Vec<Edge>,
}

impl DirectedGraph {
    /// Validates the edge list: indices in range, positive finite weights,
    /// no self-loops and no duplicate `(src, dst)` pairs.
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("vertex count must be positive".into()));
        }
        let mut seen = HashSet::with_capacity(edges.len());
        for e in &edges {
            if e.src >= n || e.dst >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({}, {}) out of range for n = {n}",
                    e.src, e.dst
                )));
            }
            if e.src == e.dst {
                return Err(Error::InvalidGraph(format!(
                    "self-loop at vertex {}",
                    e.src
                )));
            }
            if !(e.weight.is_finite() && e.weight > 0.0) {
                return Err(Error::InvalidGraph(format!(
                    "edge ({}, {}) has non-positive weight {}",
                    e.src, e.dst, e.weight
                )));
            }
            if !seen.insert((e.src, e.dst)) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge ({}, {})",
                    e.src, e.dst
                )));
            }
        }
        Ok(Self { n, edges })
    }

    pub fn from_triples(n: usize, triples: &[(usize, usize, f64)]) -> Result<Self> {
        Self::new(
            n,
            triples
                .iter()
                .map(|&(src, dst, weight)| Edge { src, dst, weight })
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn adjacency(&self) -> CMatrix {
        let mut a = CMatrix::zeros(self.n, self.n);
        for e in &self.edges {
            a[(e.src, e.dst)] = c(e.weight, 0.0);
        }
        a
    }

    pub fn out_degrees(&self) -> Vec<f64> {
        let mut d = vec![0.0; self.n];
        for e in &self.edges {
            d[e.src] += e.weight;
        }
        d
    }

    /// `L = diag(row sums of A) - A`.
    pub fn laplacian(&self) -> CMatrix {
        let mut l = -self.adjacency();
        for (i, d) in self.out_degrees().into_iter().enumerate() {
            l[(i, i)] += c(d, 0.0);
        }
        l
    }

    /// Unweighted directed cycle `0 -> 1 -> ... -> n-1 -> 0`.
    pub fn directed_cycle(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!(
                "directed cycle needs n >= 2, got {n}"
            )));
        }
        let edges = (0..n)
            .map(|i| Edge {
                src: i,
                dst: (i + 1) % n,
                weight: 1.0,
            })
            .collect();
        Self::new(n, edges)
    }

    /// Directed cycle plus random chords.
    ///
    /// Candidate pairs `(i, j)` with `i != j` and `j != (i + 1) mod n` are
    /// visited in lexicographic order; each consumes exactly one uniform draw
    /// `u` from a [`GraphRng`] seeded with `seed`, and the edge `(i, j, w)` is
    /// added when `u < p`.
    pub fn perturbed_cycle(n: usize, p: f64, w: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!(
                "p must lie in [0, 1], got {p}"
            )));
        }
        if !(w.is_finite() && w > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "w must be positive, got {w}"
            )));
        }
        let mut g = Self::directed_cycle(n)?;
        let mut rng = GraphRng::seed_from_u64(seed);
        for i in 0..n {
            for j in 0..n {
                if i == j || j == (i + 1) % n {
                    continue;
                }
                let u: f64 = rng.random();
                if u < p {
                    g.edges.push(Edge {
                        src: i,
                        dst: j,
                        weight: w,
                    });
                }
            }
        }
        Ok(g)
    }
}

/// Structural asymmetry and non-normality of a square matrix.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct AsymmetryReport {
    pub alpha: f64,
    pub delta: f64,
}

impl AsymmetryReport {
    pub fn of(m: &CMatrix) -> Result<Self> {
        Ok(Self {
            alpha: asymmetry_index(m)?,
            delta: normality_departure(m)?,
        })
    }
}

/// `|M - M^T|_F / |M|_F`, with `alpha(0) = 0`.
pub fn asymmetry_index(m: &CMatrix) -> Result<f64> {
    ensure_square(m)?;
    let norm = frobenius(m);
    if norm == 0.0 {
        return Ok(0.0);
    }
    Ok(frobenius(&(m - m.transpose())) / norm)
}

/// `|M M^* - M^* M|_F / |M|_F^2`, with `delta(0) = 0`.
pub fn normality_departure(m: &CMatrix) -> Result<f64> {
    ensure_square(m)?;
    let norm = frobenius(m);
    if norm == 0.0 {
        return Ok(0.0);
    }
    let adj = m.adjoint();
    let commutator = m * &adj - &adj * m;
    Ok(frobenius(&commutator) / (norm * norm))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk {
    pub center: f64,
    pub radius: f64,
}

impl Disk {
    pub fn contains(&self, z: crate::linalg::C64, slack: f64) -> bool {
        (z - c(self.center, 0.0)).norm() <= self.radius + slack
    }
}

/// Row Gershgorin disks of a Laplacian: center `d_i = L[i][i]`, radius the
/// off-diagonal absolute row sum (equal to `d_i` for a directed Laplacian).
pub fn gershgorin_disks(l: &CMatrix) -> Result<Vec<Disk>> {
    let n = ensure_square(l)?;
    Ok((0..n)
        .map(|i| {
            let radius = (0..n).filter(|&j| j != i).map(|j| l[(i, j)].norm()).sum();
            Disk {
                center: l[(i, i)].re,
                radius,
            }
        })
        .collect())
}

pub fn in_disk_union(disks: &[Disk], z: crate::linalg::C64, slack: f64) -> bool {
    disks.iter().any(|d| d.contains(z, slack))
}
