//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::process::ExitCode;

use rand::RngExt;

use common::*;
use dgsp::bgft::{self, GraphSignal};
use dgsp::eigen::{self, decompose};
use dgsp::experiment::{self, ExperimentConfig, CYCLE, PERTURBED};
use dgsp::graph::{normality_departure, DirectedGraph};
use dgsp::linalg::{self, CVector};
use dgsp::rng::complex_gaussian_vector;
use dgsp::sampling::{self, SelectionStrategy};
use dgsp::Error;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, detail: String) -> Outcome {
    if cond {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// 1. Cycle spectra match the closed-form circulant eigenvalues within 1e-9.
fn circulant_oracle() -> Outcome {
    let mut worst = 0.0f64;
    for n in 3..=30 {
        let l = DirectedGraph::directed_cycle(n).unwrap().laplacian();
        let dec = decompose(&l).map_err(|e| format!("n={n}: {e}"))?;
        let d = multiset_distance(dec.lambdas(), &circulant_eigenvalues(n))
            .ok_or_else(|| format!("n={n}: size mismatch"))?;
        worst = worst.max(d);
    }
    check(
        worst <= 1e-9,
        format!("max eigenvalue deviation {worst:.3e} (tol 1e-9), n = 3..30"),
    )
}

/// 2. The N = 20 cycle is normal by all three measures.
fn normality_trichotomy() -> Outcome {
    let l = DirectedGraph::directed_cycle(20).unwrap().laplacian();
    let dec = decompose(&l).map_err(|e| e.to_string())?;
    let henrici = eigen::henrici_departure(&l, &dec).unwrap();
    let delta = normality_departure(&l).unwrap();
    let kappa = dec.kappa();
    check(
        henrici <= 1e-6 && delta <= 1e-10 && kappa <= 1.0 + 1e-6,
        format!(
            "Δ = {henrici:.3e} (≤1e-6), δ = {delta:.3e} (≤1e-10), κ-1 = {:.3e} (≤1e-6)",
            kappa - 1.0
        ),
    )
}

/// 3. Perturbed cycles are strongly non-normal for almost every seed.
fn non_normal_regime() -> Outcome {
    let mut hits = 0;
    let mut max_kappa = 0.0f64;
    let mut failures = Vec::new();
    for seed in 0..100 {
        let l = DirectedGraph::perturbed_cycle(20, 0.2, 0.8, seed)
            .unwrap()
            .laplacian();
        match decompose(&l) {
            Ok(dec) => {
                let henrici = eigen::henrici_departure(&l, &dec).unwrap();
                max_kappa = max_kappa.max(dec.kappa());
                if henrici > 0.5 && dec.kappa() > 10.0 {
                    hits += 1;
                } else {
                    failures.push(seed);
                }
            }
            Err(_) => failures.push(seed),
        }
    }
    check(
        hits >= 95 && max_kappa > 50.0,
        format!("{hits}/100 seeds with Δ > 0.5 and κ > 10 (need 95), max κ = {max_kappa:.1} (need > 50), misses {failures:?}"),
    )
}

/// 4. Biorthogonality and transform round trip.
fn biorthogonality_round_trip() -> Outcome {
    let mut r = rng(4);
    let mut worst_bi = 0.0f64;
    let mut worst_rt = 0.0f64;
    let mut graphs = 0;
    for (name, l) in test_graphs() {
        let dec = decompose(&l).map_err(|e| format!("{name}: {e}"))?;
        if dec.kappa() > 1e6 {
            continue;
        }
        graphs += 1;
        let n = dec.n() as f64;
        let bi = dec.biorth_error() / (n * 1e-10);
        worst_bi = worst_bi.max(bi);
        for _ in 0..1000 {
            let x = GraphSignal::vertex(random_signal(&mut r, dec.n()));
            let back = bgft::inverse(&bgft::forward(&x, &dec).unwrap(), &dec).unwrap();
            let rel = (back.values - &x.values).norm() / x.norm();
            worst_rt = worst_rt.max(rel / (dec.kappa() * n * 1e-12));
        }
    }
    check(
        worst_bi <= 1.0 && worst_rt <= 1.0,
        format!("{graphs} graphs: max |U*V-I|_F / (n·1e-10) = {worst_bi:.3e}, max round-trip error / (κ·n·1e-12) = {worst_rt:.3e}"),
    )
}

/// 5. Gram-metric energy identity and Parseval on normal graphs.
fn energy_identity() -> Outcome {
    let mut r = rng(5);
    let mut worst = 0.0f64;
    let mut worst_parseval = 0.0f64;
    let mut normal_graphs = 0;
    for (name, l) in test_graphs() {
        let dec = decompose(&l).map_err(|e| format!("{name}: {e}"))?;
        let normal = eigen::henrici_departure(&l, &dec).unwrap() <= 1e-8;
        normal_graphs += normal as usize;
        for _ in 0..1000 {
            let x = GraphSignal::vertex(random_signal(&mut r, dec.n()));
            let e = bgft::energy_identity(&x, &dec).unwrap();
            worst = worst.max((e.vertex_energy - e.gram_energy).abs() / e.vertex_energy);
            if normal {
                let xhat = bgft::forward(&x, &dec).unwrap();
                let d = (xhat.values.norm_squared() - e.vertex_energy).abs() / e.vertex_energy;
                worst_parseval = worst_parseval.max(d);
            }
        }
    }
    check(
        worst <= 1e-8 && worst_parseval <= 1e-8,
        format!("max relative |‖x‖²-x̂*Mx̂| = {worst:.3e}; Parseval on {normal_graphs} normal graphs {worst_parseval:.3e} (tol 1e-8)"),
    )
}

/// 6. Directed TV sandwich.
fn tv_sandwich() -> Outcome {
    // floating-point slack on the inequality; the cycle equality check uses 1e-8
    const SLACK: f64 = 1e-12;
    let mut r = rng(6);
    let mut violations = 0;
    let mut cycle_gap = 0.0f64;
    let mut checked = 0;
    for (name, l) in test_graphs() {
        let dec = decompose(&l).map_err(|e| format!("{name}: {e}"))?;
        for _ in 0..1000 {
            let x = GraphSignal::vertex(random_signal(&mut r, dec.n()));
            let b = bgft::tv_bounds(&x, &dec).unwrap();
            let actual = bgft::total_variation(&l, &x).unwrap();
            let scale = b.upper.max(actual);
            checked += 1;
            if actual < b.lower - SLACK * scale || actual > b.upper + SLACK * scale {
                violations += 1;
            }
            if name.starts_with("cycle") && actual > 0.0 {
                cycle_gap = cycle_gap
                    .max((b.lower - actual).abs() / actual)
                    .max((b.upper - actual).abs() / actual);
            }
        }
    }
    check(
        violations == 0 && cycle_gap <= 1e-8,
        format!("{violations} violations in {checked} (graph, signal) pairs; cycle lower/actual/upper spread {cycle_gap:.3e} (tol 1e-8)"),
    )
}

/// 7. Exact recovery for full-rank plans; refusal for m < K.
fn exact_recovery() -> Outcome {
    let mut r = rng(7);
    let mut worst = 0.0f64;
    let mut instances = 0;
    let mut refused = 0;
    let mut underdetermined = 0;
    while instances < 500 {
        let n = r.random_range(6..=24usize);
        let p = r.random_range(0.05..0.35);
        let g = DirectedGraph::perturbed_cycle(n, p, 0.8, r.random()).unwrap();
        let Ok(dec) = decompose(&g.laplacian()) else {
            continue;
        };
        let k = r.random_range(1..=n.min(6));
        let band = sampling::make_band(&dec, k).unwrap();
        let m = r.random_range(k..=n);
        let plan = sampling::plan_sampling(&band, &random_subset(&mut r, n, m)).unwrap();
        if !plan.is_full_rank() {
            continue;
        }
        instances += 1;
        let coeffs = complex_gaussian_vector(&mut r, k, 1.0);
        let x = sampling::synthesize_bandlimited(&band, &coeffs).unwrap();
        let rep = sampling::recover(&plan, &band, &plan.sample(&x).unwrap()).unwrap();
        worst = worst.max((rep.x_rec.values - &x.values).norm() / x.norm());

        if k >= 2 {
            underdetermined += 1;
            let short_m = r.random_range(1..k);
            let short = sampling::plan_sampling(&band, &random_subset(&mut r, n, short_m)).unwrap();
            let y = CVector::zeros(short.m());
            if matches!(
                sampling::recover(&short, &band, &y),
                Err(Error::RankDeficient { .. })
            ) {
                refused += 1;
            }
        }
    }
    check(
        worst <= 1e-9 && refused == underdetermined,
        format!("{instances} instances, max relative error {worst:.3e} (tol 1e-9); {refused}/{underdetermined} m < K plans refused"),
    )
}

/// 8. Noise certificate and `|B^†|·γ = 1`.
fn noise_bounds() -> Outcome {
    let mut r = rng(8);
    let mut trials = 0;
    let mut violations = 0;
    let mut tightest = 0.0f64;
    let mut pinv_dev = 0.0f64;
    while trials < 10_000 {
        let n = r.random_range(6..=20usize);
        let g = DirectedGraph::perturbed_cycle(n, 0.2, 0.8, r.random()).unwrap();
        let Ok(dec) = decompose(&g.laplacian()) else {
            continue;
        };
        let k = r.random_range(1..=n.min(5));
        let band = sampling::make_band(&dec, k).unwrap();
        let m = r.random_range(k..=n);
        let plan = sampling::plan_sampling(&band, &random_subset(&mut r, n, m)).unwrap();
        if !plan.is_full_rank() {
            continue;
        }
        let pinv = linalg::pseudoinverse(plan.b(), sampling::RANK_TOL);
        pinv_dev = pinv_dev.max((linalg::spectral_norm(&pinv) * plan.gamma() - 1.0).abs());
        for _ in 0..20 {
            let coeffs = complex_gaussian_vector(&mut r, k, 1.0);
            let x = sampling::synthesize_bandlimited(&band, &coeffs).unwrap();
            let sigma = 10f64.powf(r.random_range(-4.0..0.0));
            let eta = complex_gaussian_vector(&mut r, m, sigma);
            let y = plan.sample(&x).unwrap() + &eta;
            let rep = sampling::recover(&plan, &band, &y).unwrap();
            let err = (rep.x_rec.values - &x.values).norm();
            let cert = sampling::noise_certificate(&plan, &band, eta.norm()).unwrap();
            trials += 1;
            tightest = tightest.max(err / cert.tight);
            if err > cert.tight * (1.0 + 1e-12) || cert.conservative < cert.tight * (1.0 - 1e-12) {
                violations += 1;
            }
        }
    }
    check(
        violations == 0 && pinv_dev <= 1e-10,
        format!("{violations} certificate violations in {trials} trials (max err/cert {tightest:.3}); max |‖B†‖γ - 1| = {pinv_dev:.3e} (tol 1e-10)"),
    )
}

/// 9. Noise sweep: perturbed ≥ cycle, ratio ≤ κ(V), cycle slope 1 ± 0.1.
fn noise_sweep_shape() -> Outcome {
    let cfg = ExperimentConfig::default();
    let sweep = experiment::noise_sweep(&cfg).map_err(|e| e.to_string())?;
    let cyc = sweep.means(CYCLE);
    let per = sweep.means(PERTURBED);
    let ratios: Vec<f64> = per.iter().zip(&cyc).map(|(p, c)| p / c).collect();
    let above = per.iter().zip(&cyc).all(|(p, c)| p >= c);
    let within = ratios.iter().all(|&q| q <= sweep.kappa_perturbed);
    let slope = experiment::log_log_slope(&cfg.sigmas, &cyc);
    let min_ratio = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    let max_ratio = ratios.iter().cloned().fold(0.0, f64::max);
    check(
        above && within && (slope - 1.0).abs() <= 0.1,
        format!(
            "perturbed/cycle ratio in [{min_ratio:.3}, {max_ratio:.3}] (need ≥ 1 and ≤ κ = {:.1}); cycle log-log slope {slope:.4}",
            sweep.kappa_perturbed
        ),
    )
}

/// 10. Greedy γ against exhaustive search on small cycles.
fn greedy_oracle() -> Outcome {
    let mut worst = f64::INFINITY;
    let mut worst_larger = f64::INFINITY;
    let mut cases = 0;
    for n in 2..=8 {
        let dec = decompose(&DirectedGraph::directed_cycle(n).unwrap().laplacian()).unwrap();
        for k in 1..=3.min(n) {
            let band = sampling::make_band(&dec, k).unwrap();
            let m = k;
            let best = combinations(n, m)
                .iter()
                .map(|s| sampling::plan_sampling(&band, s).unwrap().gamma())
                .fold(0.0, f64::max);
            let set =
                sampling::select_sampling_set(&band, m, SelectionStrategy::GreedyGamma).unwrap();
            let gamma = sampling::plan_sampling(&band, &set).unwrap().gamma();
            worst = worst.min(gamma / best);
            cases += 1;
            // larger sets are reported, not graded
            for m in (k + 1)..=n {
                let best = combinations(n, m)
                    .iter()
                    .map(|s| sampling::plan_sampling(&band, s).unwrap().gamma())
                    .fold(0.0, f64::max);
                let set = sampling::select_sampling_set(&band, m, SelectionStrategy::GreedyGamma)
                    .unwrap();
                let gamma = sampling::plan_sampling(&band, &set).unwrap().gamma();
                worst_larger = worst_larger.min(gamma / best);
            }
        }
    }
    check(
        worst >= 0.95,
        format!(
            "{cases} cases (n ≤ 8, K ≤ 3, m = K): worst greedy/optimal γ = {worst:.4} (need ≥ 0.95); \
             m > K for reference: {worst_larger:.4}"
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("AC1 circulant oracle", circulant_oracle),
        ("AC2 normality trichotomy", normality_trichotomy),
        ("AC3 non-normal regime", non_normal_regime),
        (
            "AC4 biorthogonality and round trip",
            biorthogonality_round_trip,
        ),
        ("AC5 energy identity", energy_identity),
        ("AC6 TV sandwich", tv_sandwich),
        ("AC7 exact recovery", exact_recovery),
        ("AC8 noise bounds", noise_bounds),
        ("AC9 noise sweep reproduction", noise_sweep_shape),
        ("AC10 greedy sampling oracle", greedy_oracle),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        match f() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
