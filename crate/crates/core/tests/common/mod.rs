#![allow(dead_code)]

use std::f64::consts::PI;

use rand::{RngExt, SeedableRng};

use dgsp::graph::DirectedGraph;
use dgsp::linalg::{c, CMatrix, CVector, C64};
use dgsp::rng::{complex_gaussian_vector, GraphRng};

pub fn rng(seed: u64) -> GraphRng {
    GraphRng::seed_from_u64(seed)
}

pub fn random_signal(rng: &mut GraphRng, n: usize) -> CVector {
    complex_gaussian_vector(rng, n, 1.0)
}

/// Closed-form spectrum of the unit directed n-cycle: `1 - exp(2πik/n)`.
pub fn circulant_eigenvalues(n: usize) -> Vec<C64> {
    (0..n)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / n as f64;
            c(1.0 - t.cos(), -t.sin())
        })
        .collect()
}

/// Largest distance in an optimal-by-greedy matching of two well-separated
/// multisets; `None` if the sizes differ.
pub fn multiset_distance(a: &[C64], b: &[C64]) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    for x in a {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))?;
        used[j] = true;
        worst = worst.max(d);
    }
    Some(worst)
}

/// Undirected weighted graph (both directions, equal weights) on a ring
/// with random chords; its Laplacian is real symmetric.
pub fn symmetric_graph(n: usize, seed: u64) -> DirectedGraph {
    let mut r = rng(seed);
    let mut t = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let ring = j == i + 1 || (i == 0 && j == n - 1);
            if ring || r.random::<f64>() < 0.2 {
                let w = 0.5 + r.random::<f64>();
                t.push((i, j, w));
                t.push((j, i, w));
            }
        }
    }
    DirectedGraph::from_triples(n, &t).unwrap()
}

/// Graph family shared by the acceptance criteria.
pub fn test_graphs() -> Vec<(String, CMatrix)> {
    let mut out = Vec::new();
    for n in [2, 3, 4, 5, 8, 13, 20, 30] {
        out.push((
            format!("cycle{n}"),
            DirectedGraph::directed_cycle(n).unwrap().laplacian(),
        ));
    }
    for seed in 0..10 {
        out.push((
            format!("perturbed20/s{seed}"),
            DirectedGraph::perturbed_cycle(20, 0.2, 0.8, seed)
                .unwrap()
                .laplacian(),
        ));
    }
    for (n, p, seed) in [
        (8, 0.3, 100),
        (12, 0.1, 101),
        (30, 0.1, 102),
        (40, 0.05, 103),
    ] {
        out.push((
            format!("perturbed{n}/p{p}"),
            DirectedGraph::perturbed_cycle(n, p, 0.8, seed)
                .unwrap()
                .laplacian(),
        ));
    }
    for (n, seed) in [(6, 200), (15, 201)] {
        out.push((
            format!("symmetric{n}"),
            symmetric_graph(n, seed).laplacian(),
        ));
    }
    out
}

pub fn random_subset(rng: &mut GraphRng, n: usize, m: usize) -> Vec<usize> {
    let mut v = rand::seq::index::sample(rng, n, m).into_vec();
    v.sort_unstable();
    v
}

pub fn combinations(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, m, &mut Vec::new(), &mut out);
    out
}
