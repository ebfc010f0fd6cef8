use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use dgsp::bgft::{self, FilterSpec, GraphSignal, SpectralFilter};
use dgsp::eigen::{dc_mode_check, decompose, NormalityDiagnostics};
use dgsp::experiment::{self, ExperimentConfig, GraphMetrics};
use dgsp::graph::{AsymmetryReport, DirectedGraph};
use dgsp::io::{self as dio, round_sig, DecompositionBundle, PlanExport};
use dgsp::sampling::{self, SelectionStrategy};
use dgsp::Error;

const DEFAULT_SEED: u64 = 7;

#[derive(Parser)]
#[command(name = "dgsp", version, about = "Harmonic analysis on directed graphs")]
struct Cli {
    /// Seed for every random draw (generators, sampling, experiments).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Output path; a directory for `experiment`, stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an edge-list CSV.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Asymmetry, normality and conditioning metrics plus the spectrum.
    Analyze {
        graph: PathBuf,
        #[command(flatten)]
        size: GraphSize,
        /// Also write the spectrum CSV here.
        #[arg(long)]
        spectrum: Option<PathBuf>,
        /// Write V.csv and U.csv (cells `re;im`) into this directory.
        #[arg(long)]
        dump_basis: Option<PathBuf>,
    },
    /// Forward or inverse biorthogonal graph Fourier transform.
    Gft {
        graph: PathBuf,
        signal: PathBuf,
        #[command(flatten)]
        size: GraphSize,
        #[arg(long, value_enum, default_value_t = Direction::Forward)]
        direction: Direction,
    },
    /// Apply a spectral filter given as JSON.
    Filter {
        graph: PathBuf,
        signal: PathBuf,
        filter: PathBuf,
        #[command(flatten)]
        size: GraphSize,
    },
    /// Build a sampling plan for the K lowest frequencies and optionally recover a signal.
    Sample {
        graph: PathBuf,
        #[command(flatten)]
        size: GraphSize,
        #[arg(long)]
        k: usize,
        /// Number of sampled vertices.
        #[arg(long)]
        m: Option<usize>,
        /// Explicit comma-separated vertex set (overrides --m/--strategy).
        #[arg(long, value_delimiter = ',')]
        vertices: Option<Vec<usize>>,
        #[arg(long, value_enum, default_value_t = Strategy::Greedy)]
        strategy: Strategy,
        /// Noise norm used for the certificate.
        #[arg(long, default_value_t = 1.0)]
        eta: f64,
        /// Vertex signal to sample and recover.
        #[arg(long)]
        signal: Option<PathBuf>,
        /// Where to write the recovered signal (requires --signal).
        #[arg(long)]
        recovered: Option<PathBuf>,
    },
    /// Reproduce the cycle vs. perturbed cycle experiments.
    Experiment {
        #[command(subcommand)]
        which: Which,
    },
}

#[derive(Args, Clone, Copy)]
struct GraphSize {
    /// Vertex count, when the edge list does not mention the highest vertex.
    #[arg(long = "nodes")]
    nodes: Option<usize>,
}

#[derive(Subcommand)]
enum GenKind {
    Cycle {
        #[arg(long)]
        n: usize,
    },
    PerturbedCycle {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.2)]
        p: f64,
        #[arg(long, default_value_t = 0.8)]
        w: f64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Direction {
    Forward,
    Inverse,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Strategy {
    Greedy,
    Random,
}

#[derive(Subcommand)]
enum Which {
    Fig1(ExperimentArgs),
    Fig2(ExperimentArgs),
}

#[derive(Args)]
struct ExperimentArgs {
    /// JSON config mirroring the experiment parameters.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    w: Option<f64>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    sigmas: Option<Vec<f64>>,
    /// Real Gaussian noise and coefficients instead of circular complex.
    #[arg(long)]
    real_noise: bool,
}

enum Exit {
    Invalid = 1,
    Parse = 3,
    Dimension = 4,
    RankDeficient = 5,
    NearDefective = 6,
    Io = 7,
}

fn exit_code(e: &Error) -> u8 {
    let code = match e {
        Error::Parse(_) => Exit::Parse,
        Error::DimensionMismatch { .. } | Error::WrongDomain { .. } => Exit::Dimension,
        Error::RankDeficient { .. } => Exit::RankDeficient,
        Error::NearDefective { .. } => Exit::NearDefective,
        Error::Io(_) => Exit::Io,
        Error::InvalidGraph(_)
        | Error::InvalidParameter(_)
        | Error::NonSquare { .. }
        | Error::ZeroSignal(_) => Exit::Invalid,
    };
    code as u8
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

type Result<T> = dgsp::Result<T>;

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

/// Writes to `path`, or stdout when `None`.
fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(create(p)?),
        None => Box::new(io::stdout().lock()),
    })
}

fn load_graph(path: &Path, size: GraphSize) -> Result<DirectedGraph> {
    dio::read_edge_list(open(path)?, size.nodes)
}

fn load_signal(path: &Path) -> Result<dgsp::linalg::CVector> {
    dio::read_signal(open(path)?)
}

fn run(cli: Cli) -> Result<()> {
    let seed = cli.seed.unwrap_or(DEFAULT_SEED);
    let out = cli.out.as_deref();
    match cli.command {
        Command::Gen { kind } => {
            let g = match kind {
                GenKind::Cycle { n } => DirectedGraph::directed_cycle(n)?,
                GenKind::PerturbedCycle { n, p, w } => {
                    DirectedGraph::perturbed_cycle(n, p, w, seed)?
                }
            };
            let mut w = output(out)?;
            dio::write_edge_list(&mut w, &g)?;
            w.flush()?;
        }
        Command::Analyze {
            graph,
            size,
            spectrum,
            dump_basis,
        } => analyze(
            &graph,
            size,
            spectrum.as_deref(),
            dump_basis.as_deref(),
            out,
            cli.format,
        )?,
        Command::Gft {
            graph,
            signal,
            size,
            direction,
        } => {
            let g = load_graph(&graph, size)?;
            let dec = decompose(&g.laplacian())?;
            let values = load_signal(&signal)?;
            let result = match direction {
                Direction::Forward => bgft::forward(&GraphSignal::vertex(values), &dec)?,
                Direction::Inverse => bgft::inverse(&GraphSignal::spectral(values), &dec)?,
            };
            let mut w = output(out)?;
            dio::write_signal(&mut w, &result.values)?;
            w.flush()?;
        }
        Command::Filter {
            graph,
            signal,
            filter,
            size,
        } => {
            let g = load_graph(&graph, size)?;
            let dec = decompose(&g.laplacian())?;
            let x = GraphSignal::vertex(load_signal(&signal)?);
            let spec: FilterSpec = serde_json::from_reader(open(&filter)?)?;
            let h = SpectralFilter::from_spec(&spec, dec.n())?;
            let y = bgft::apply_filter(&x, &h, &dec)?;
            let mut w = output(out)?;
            dio::write_signal(&mut w, &y.values)?;
            w.flush()?;
        }
        Command::Sample {
            graph,
            size,
            k,
            m,
            vertices,
            strategy,
            eta,
            signal,
            recovered,
        } => {
            let g = load_graph(&graph, size)?;
            let dec = decompose(&g.laplacian())?;
            let band = sampling::make_band(&dec, k)?;
            let set = match vertices {
                Some(v) => v,
                None => {
                    let m = m.ok_or_else(|| {
                        Error::InvalidParameter("either --m or --vertices is required".into())
                    })?;
                    let strategy = match strategy {
                        Strategy::Greedy => SelectionStrategy::GreedyGamma,
                        Strategy::Random => SelectionStrategy::Random { seed },
                    };
                    sampling::select_sampling_set(&band, m, strategy)?
                }
            };
            let plan = sampling::plan_sampling(&band, &set)?;
            let certificate = sampling::noise_certificate(&plan, &band, eta)
                .ok()
                .map(|c| round_sig(c.tight));
            let export = PlanExport {
                omega: band.omega().to_vec(),
                sample_set: plan.sample_set().to_vec(),
                gamma: round_sig(plan.gamma()),
                b_norm: round_sig(plan.b_norm()),
                certificate,
            };
            if let Some(path) = signal {
                let x = GraphSignal::vertex(load_signal(&path)?);
                let y = plan.sample(&x)?;
                let report = sampling::recover(&plan, &band, &y)?;
                let mut w = output(recovered.as_deref())?;
                dio::write_signal(&mut w, &report.x_rec.values)?;
                w.flush()?;
            }
            let mut w = output(out)?;
            dio::write_json(&mut w, &export)?;
            w.flush()?;
        }
        Command::Experiment { which } => match which {
            Which::Fig1(args) => {
                let cfg = experiment_config(&args, cli.seed)?;
                let cmp = experiment::spectrum_comparison(&cfg)?;
                match out {
                    Some(dir) => {
                        std::fs::create_dir_all(dir)?;
                        for m in [&cmp.cycle, &cmp.perturbed] {
                            let lambdas: Vec<_> = m
                                .spectrum
                                .iter()
                                .map(|z| dgsp::linalg::c(z[0], z[1]))
                                .collect();
                            let path = dir.join(format!("fig1_{}_spectrum.csv", m.graph));
                            dio::write_spectrum(create(&path)?, &lambdas)?;
                        }
                        let bundle = Fig1Bundle {
                            provenance: experiment::Provenance::new(&cfg),
                            metrics: &cmp,
                        };
                        dio::write_json(create(&dir.join("fig1_metrics.json"))?, &bundle)?;
                    }
                    None => {
                        let bundle = Fig1Bundle {
                            provenance: experiment::Provenance::new(&cfg),
                            metrics: &cmp,
                        };
                        dio::write_json(io::stdout().lock(), &bundle)?;
                    }
                }
            }
            Which::Fig2(args) => {
                let cfg = experiment_config(&args, cli.seed)?;
                let (bundle, sweep) = experiment::result_bundle(&cfg)?;
                match out {
                    Some(dir) => {
                        std::fs::create_dir_all(dir)?;
                        dio::write_sweep(create(&dir.join("fig2_sweep.csv"))?, &sweep.rows)?;
                        write_summary_csv(create(&dir.join("fig2_summary.csv"))?, &bundle.sweep)?;
                        dio::write_json(create(&dir.join("fig2_bundle.json"))?, &bundle)?;
                    }
                    None => match cli.format {
                        Format::Json => dio::write_json(io::stdout().lock(), &bundle)?,
                        Format::Csv => write_summary_csv(io::stdout().lock(), &bundle.sweep)?,
                    },
                }
            }
        },
    }
    Ok(())
}

#[derive(Serialize)]
struct Fig1Bundle<'a> {
    provenance: experiment::Provenance,
    metrics: &'a experiment::SpectrumComparison,
}

fn write_summary_csv<W: Write>(mut w: W, rows: &[experiment::SweepSummary]) -> Result<()> {
    writeln!(w, "graph,sigma,mean_err,std_err,mean_abs_err,mean_bound")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            r.graph,
            dio::fmt_num(r.sigma),
            dio::fmt_num(r.mean_err),
            dio::fmt_num(r.std_err),
            dio::fmt_num(r.mean_abs_err),
            dio::fmt_num(r.mean_bound)
        )?;
    }
    w.flush()?;
    Ok(())
}

fn experiment_config(args: &ExperimentArgs, seed: Option<u64>) -> Result<ExperimentConfig> {
    let mut cfg: ExperimentConfig = match &args.config {
        Some(path) => serde_json::from_reader(open(path)?)?,
        None => ExperimentConfig::default(),
    };
    if let Some(n) = args.n {
        cfg.n = n;
    }
    if let Some(p) = args.p {
        cfg.p = p;
    }
    if let Some(w) = args.w {
        cfg.w = w;
    }
    if let Some(k) = args.k {
        cfg.k = k;
    }
    if let Some(t) = args.trials {
        cfg.trials = t;
    }
    if let Some(s) = &args.sigmas {
        cfg.sigmas = s.clone();
    }
    if let Some(seed) = seed {
        cfg.seed = seed;
    }
    cfg.real_noise |= args.real_noise;
    cfg.validate()?;
    Ok(cfg)
}

#[derive(Serialize)]
struct AnalyzeReport {
    n: usize,
    edges: usize,
    alpha: f64,
    delta: f64,
    henrici: f64,
    kappa: f64,
    gram_min: f64,
    gram_max: f64,
    residual: f64,
    biorth_error: f64,
    dc_mode: bool,
    zero_multiplicity: usize,
    spectrum_csv: Option<String>,
    decomposition: DecompositionBundle,
}

fn analyze(
    path: &Path,
    size: GraphSize,
    spectrum: Option<&Path>,
    dump_basis: Option<&Path>,
    out: Option<&Path>,
    format: Format,
) -> Result<()> {
    let g = load_graph(path, size)?;
    let l = g.laplacian();
    let dec = decompose(&l)?;
    if format == Format::Csv {
        let mut w = output(out)?;
        dio::write_spectrum(&mut w, dec.lambdas())?;
        return Ok(w.flush()?);
    }
    let asym = AsymmetryReport::of(&l)?;
    let diag = NormalityDiagnostics::compute(&l, &dec)?;
    let dc = dc_mode_check(&dec, g.n());
    if let Some(p) = spectrum {
        dio::write_spectrum(create(p)?, dec.lambdas())?;
    }
    if let Some(dir) = dump_basis {
        std::fs::create_dir_all(dir)?;
        dio::write_matrix(create(&dir.join("V.csv"))?, dec.v())?;
        dio::write_matrix(create(&dir.join("U.csv"))?, dec.u())?;
    }
    // metrics share the experiment's rounding
    let m = GraphMetrics::from_parts("input", &g, &l, &dec)?;
    let report = AnalyzeReport {
        n: g.n(),
        edges: g.edges().len(),
        alpha: round_sig(asym.alpha),
        delta: round_sig(asym.delta),
        henrici: m.henrici,
        kappa: m.kappa,
        gram_min: m.gram_min,
        gram_max: m.gram_max,
        residual: m.residual,
        biorth_error: round_sig(dec.biorth_error()),
        dc_mode: dc.holds,
        zero_multiplicity: dc.zero_multiplicity,
        spectrum_csv: spectrum.map(|p| p.display().to_string()),
        decomposition: DecompositionBundle::new(
            dec.lambdas(),
            diag.kappa,
            diag.henrici,
            dec.residual(),
        ),
    };
    let mut w = output(out)?;
    dio::write_json(&mut w, &report)?;
    Ok(w.flush()?)
}
