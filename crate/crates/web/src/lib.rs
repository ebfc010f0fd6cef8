//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each export returns a JSON string; the plain `*_json` functions behind
//! them are what the native tests exercise.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use dgsp::experiment::{self, ExperimentConfig};
use dgsp::graph::DirectedGraph;
use dgsp::io::round_sig;
use dgsp::sampling::{self, SelectionStrategy};

fn config(n: usize, p: f64, w: f64, seed: u64) -> ExperimentConfig {
    ExperimentConfig {
        n,
        p,
        w,
        seed,
        ..ExperimentConfig::default()
    }
}

fn to_json<T: Serialize>(value: &T) -> dgsp::Result<String> {
    Ok(serde_json::to_string(value)?)
}

/// Spectra and normality metrics of the cycle and its perturbation.
pub fn spectrum_json(n: usize, p: f64, w: f64, seed: u64) -> dgsp::Result<String> {
    to_json(&experiment::spectrum_comparison(&config(n, p, w, seed))?)
}

#[derive(Serialize)]
struct SweepView {
    sigmas: Vec<f64>,
    kappa_cycle: f64,
    kappa_perturbed: f64,
    cycle: Vec<f64>,
    perturbed: Vec<f64>,
}

/// Mean relative recovery error per noise level for both graphs.
pub fn sweep_json(
    n: usize,
    p: f64,
    w: f64,
    k: usize,
    trials: usize,
    seed: u64,
) -> dgsp::Result<String> {
    let cfg = ExperimentConfig {
        k,
        trials,
        ..config(n, p, w, seed)
    };
    let sweep = experiment::noise_sweep(&cfg)?;
    to_json(&SweepView {
        sigmas: cfg.sigmas.clone(),
        kappa_cycle: sweep.kappa_cycle,
        kappa_perturbed: sweep.kappa_perturbed,
        cycle: sweep.means(experiment::CYCLE),
        perturbed: sweep.means(experiment::PERTURBED),
    })
}

#[derive(Serialize)]
struct SamplingView {
    greedy_set: Vec<usize>,
    greedy_gamma: f64,
    /// Sorted γ of `draws` uniformly random sets of the same size.
    random_gammas: Vec<f64>,
}

/// Greedy sampling set against random sets on the perturbed cycle.
pub fn sampling_json(
    n: usize,
    p: f64,
    w: f64,
    seed: u64,
    k: usize,
    m: usize,
    draws: usize,
) -> dgsp::Result<String> {
    let g = DirectedGraph::perturbed_cycle(n, p, w, seed)?;
    let dec = dgsp::eigen::decompose(&g.laplacian())?;
    let band = sampling::make_band(&dec, k)?;
    let greedy_set = sampling::select_sampling_set(&band, m, SelectionStrategy::GreedyGamma)?;
    let greedy_gamma = sampling::plan_sampling(&band, &greedy_set)?.gamma();
    let mut random_gammas = (0..draws as u64)
        .map(|d| {
            let strategy = SelectionStrategy::Random { seed: seed ^ d };
            let set = sampling::select_sampling_set(&band, m, strategy)?;
            Ok(round_sig(sampling::plan_sampling(&band, &set)?.gamma()))
        })
        .collect::<dgsp::Result<Vec<f64>>>()?;
    random_gammas.sort_by(f64::total_cmp);
    to_json(&SamplingView {
        greedy_set,
        greedy_gamma: round_sig(greedy_gamma),
        random_gammas,
    })
}

fn js(r: dgsp::Result<String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn spectrum(n: usize, p: f64, w: f64, seed: u64) -> Result<String, JsError> {
    js(spectrum_json(n, p, w, seed))
}

#[wasm_bindgen]
pub fn noise_sweep(
    n: usize,
    p: f64,
    w: f64,
    k: usize,
    trials: usize,
    seed: u64,
) -> Result<String, JsError> {
    js(sweep_json(n, p, w, k, trials, seed))
}

#[wasm_bindgen]
pub fn sampling_comparison(
    n: usize,
    p: f64,
    w: f64,
    seed: u64,
    k: usize,
    m: usize,
    draws: usize,
) -> Result<String, JsError> {
    js(sampling_json(n, p, w, seed, k, m, draws))
}
