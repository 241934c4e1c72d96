use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use subhom::baselines::{run_benchmark, summarize, BenchOptions};
use subhom::ensemble::{sample_hash, EnsembleConfig, DEFAULT_MAX_SIMPLICES};
use subhom::error::{Error, Result};
use subhom::formats::{
    read_ensemble, read_matrix, read_points, write_bench_csv, write_json, write_persistence,
    write_points, BasisJson, BenchSummaryJson, ComplexJson, EnsembleJson, ReportJson,
};
use subhom::pipeline::{estimate_by_size, run_pipeline};
use subhom::pointcloud::{generate_annulus, generate_figure8, subsample, SampleSchedule, ThresholdRule};
use subhom_core::{
    build_rips, check_annulus, check_figure8, persistence_baseline, reduce, DedupAxis, PrimeField, WeightOptions,
    DEFAULT_MAX_SUBSET,
};

#[derive(Parser)]
#[command(name = "subhom", version, about = "Estimate the homology of a point cloud from random sub-samples")]
struct Cli {
    /// Cap on worker threads; defaults to one per core.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a synthetic point cloud as CSV.
    Generate(GenerateArgs),
    /// Draw a sub-sample of a cloud.
    Sample(SampleArgs),
    /// Build one Rips complex and report its Betti numbers.
    Analyze(AnalyzeArgs),
    /// Induced-map ensemble, greedy basis and Betti estimate from a cloud.
    Pipeline(PipelineArgs),
    /// Greedy basis and Betti estimate from a stored ensemble.
    Estimate(EstimateArgs),
    /// Look for the figure-8 or annulus dependence pattern in a basis.
    Check(CheckArgs),
    /// Time persistence, the greedy estimate and bootstrapping on shared sub-samples.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Shape {
    Figure8,
    Annulus,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    shape: Shape,
    #[arg(long, default_value_t = 1000)]
    n: usize,
    #[arg(long, default_value_t = 0.1)]
    noise: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1.0)]
    r_inner: f64,
    #[arg(long, default_value_t = 1.5)]
    r_outer: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long)]
    cloud: PathBuf,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct FieldArgs {
    /// Prime modulus of the coefficient field.
    #[arg(long, default_value_t = 3)]
    p: u32,
}

impl FieldArgs {
    fn field(&self) -> Result<PrimeField> {
        Ok(PrimeField::new(self.p)?)
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long)]
    cloud: PathBuf,
    #[arg(long)]
    threshold: f64,
    #[arg(long, default_value_t = 2)]
    max_dim: usize,
    #[command(flatten)]
    field: FieldArgs,
    /// Write the simplices as JSON.
    #[arg(long)]
    dump_complex: Option<PathBuf>,
    /// Write persistence pairs up to `threshold` as CSV.
    #[arg(long)]
    persistence: Option<PathBuf>,
    #[arg(long, default_value_t = 10)]
    steps: usize,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Threshold is this plus twice the Hausdorff distance to the full cloud.
    #[arg(long, default_value_t = 0.25)]
    threshold_base: f64,
    /// Use one constant threshold instead.
    #[arg(long)]
    threshold_fixed: Option<f64>,
    #[arg(long, value_delimiter = ',', default_value = "300")]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 10)]
    replicates: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 2)]
    max_dim: usize,
    /// Store wall-clock timings in the ensemble (makes output nondeterministic).
    #[arg(long)]
    record_timings: bool,
    /// Abort when a complex would exceed this many simplices.
    #[arg(long, default_value_t = DEFAULT_MAX_SIMPLICES)]
    max_simplices: usize,
}

impl RunArgs {
    fn config(&self) -> Result<EnsembleConfig> {
        let threshold = match self.threshold_fixed {
            Some(r) => ThresholdRule::Fixed(r),
            None => ThresholdRule::Hausdorff { base: self.threshold_base },
        };
        Ok(EnsembleConfig {
            field: self.field.field()?,
            threshold,
            schedule: SampleSchedule::new(self.sizes.clone(), self.replicates, self.seed),
            max_dim: self.max_dim,
            k: 1,
            record_timings: self.record_timings,
            max_simplices: self.max_simplices,
        })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Dedup {
    Columns,
    Rows,
}

#[derive(Args)]
struct WeightArgs {
    /// Do not count an all-zero column towards a map's weight.
    #[arg(long)]
    ignore_zero_columns: bool,
    #[arg(long, value_enum, default_value_t = Dedup::Columns)]
    dedup: Dedup,
}

impl WeightArgs {
    fn options(&self) -> WeightOptions {
        WeightOptions {
            ignore_zero_columns: self.ignore_zero_columns,
            axis: match self.dedup {
                Dedup::Columns => DedupAxis::Columns,
                Dedup::Rows => DedupAxis::Rows,
            },
        }
    }
}

#[derive(Args)]
struct PipelineArgs {
    #[arg(long)]
    cloud: PathBuf,
    #[command(flatten)]
    run: RunArgs,
    #[command(flatten)]
    weights: WeightArgs,
    /// Output directory for `ensemble.json` and `basis.json`.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct EstimateArgs {
    /// Ensemble JSON: an array of records or an object with a `maps` array.
    #[arg(long)]
    ensemble: PathBuf,
    /// Number of components of the full space.
    #[arg(long, default_value_t = 1)]
    beta0: usize,
    /// Only use maps from sub-samples of this size.
    #[arg(long)]
    size: Option<usize>,
    #[command(flatten)]
    weights: WeightArgs,
    /// Basis JSON, one entry per sample size; printed to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Figure8,
    Annulus,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    /// Matrix JSON whose columns are the basis vectors.
    #[arg(long)]
    matrix: PathBuf,
    /// Read the matrix as rows-are-vectors.
    #[arg(long)]
    transpose: bool,
    #[arg(long, default_value_t = DEFAULT_MAX_SUBSET)]
    max_subset: usize,
    /// Report JSON; printed to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    cloud: PathBuf,
    #[command(flatten)]
    run: RunArgs,
    #[command(flatten)]
    weights: WeightArgs,
    #[arg(long, default_value_t = 1)]
    runs: usize,
    /// Filtration steps of the persistence baseline.
    #[arg(long, default_value_t = 10)]
    steps: usize,
    /// Output directory for `bench.csv` and `bench_summary.json`.
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_usage() { 2 } else { 1 })
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(Error::invalid("--threads must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::invalid(e.to_string()))?;
    }
    match cli.command {
        Command::Generate(a) => generate(a),
        Command::Sample(a) => sample(a),
        Command::Analyze(a) => analyze(a),
        Command::Pipeline(a) => pipeline(a),
        Command::Estimate(a) => estimate(a),
        Command::Check(a) => check(a),
        Command::Bench(a) => bench(a),
    }
}

fn generate(a: GenerateArgs) -> Result<()> {
    let cloud = match a.shape {
        Shape::Figure8 => generate_figure8(a.n, a.noise, a.seed)?,
        Shape::Annulus => generate_annulus(a.n, a.r_inner, a.r_outer, a.noise, a.seed)?,
    };
    write_points(&a.out, &cloud)
}

fn sample(a: SampleArgs) -> Result<()> {
    let cloud = read_points(&a.cloud)?;
    let s = subsample(&cloud, a.n, a.seed)?;
    write_points(&a.out, &s.cloud)?;
    println!("sample_hash {}", sample_hash(&s.indices));
    Ok(())
}

fn analyze(a: AnalyzeArgs) -> Result<()> {
    let cloud = read_points(&a.cloud)?;
    let field = a.field.field()?;
    let complex = build_rips(&cloud, a.threshold, a.max_dim)?;
    let betti = reduce(&complex.chain_complex(field))?.betti();
    if let Some(path) = &a.dump_complex {
        write_json(path, &ComplexJson::from(&complex))?;
    }
    if let Some(path) = &a.persistence {
        write_persistence(path, &persistence_baseline(&cloud, a.threshold, a.steps, field)?)?;
    }
    println!(
        "simplices ({}, {}, {}) betti {betti}",
        complex.count(0),
        complex.count(1),
        complex.count(2)
    );
    Ok(())
}

fn create_dir(path: &Path) -> Result<()> {
    fs::create_dir_all(path).map_err(|source| Error::Io { path: path.into(), source })
}

fn pipeline(a: PipelineArgs) -> Result<()> {
    let cloud = read_points(&a.cloud)?;
    let config = a.run.config()?;
    config.validate(&cloud)?;
    let out = run_pipeline(&cloud, &config, a.weights.options())?;
    create_dir(&a.out)?;
    write_json(&a.out.join("ensemble.json"), &EnsembleJson::from(&out.ensemble))?;
    let bases: Vec<_> =
        out.estimates.iter().map(|e| BasisJson::new(&e.basis, &e.estimate, Some(e.size))).collect();
    write_json(&a.out.join("basis.json"), &bases)?;
    for e in &out.estimates {
        println!("size {} estimate {}", e.size, e.estimate);
    }
    Ok(())
}

fn estimate(a: EstimateArgs) -> Result<()> {
    let mut maps = read_ensemble(&a.ensemble)?;
    if let Some(size) = a.size {
        maps.retain(|m| m.sample_size == size);
        if maps.is_empty() {
            return Err(Error::invalid(format!("no maps of sample size {size}")));
        }
    }
    let estimates = estimate_by_size(&maps, a.beta0, a.weights.options())?;
    let bases: Vec<_> = estimates.iter().map(|e| BasisJson::new(&e.basis, &e.estimate, Some(e.size))).collect();
    match &a.out {
        Some(path) => {
            write_json(path, &bases)?;
            for e in &estimates {
                println!("size {} estimate {}", e.size, e.estimate);
            }
        }
        None => println!("{}", serde_json::to_string_pretty(&bases).expect("bases serialize")),
    }
    Ok(())
}

fn check(a: CheckArgs) -> Result<()> {
    let mut h = read_matrix(&a.matrix)?;
    if a.transpose {
        h = h.transpose();
    }
    let report = match a.kind {
        Kind::Figure8 => check_figure8(&h, a.max_subset),
        Kind::Annulus => check_annulus(&h, a.max_subset),
    };
    let json = ReportJson::from(&report);
    match &a.out {
        Some(path) => write_json(path, &json),
        None => {
            println!("{}", serde_json::to_string_pretty(&json).expect("report serializes"));
            Ok(())
        }
    }
}

fn bench(a: BenchArgs) -> Result<()> {
    let cloud = read_points(&a.cloud)?;
    let config = a.run.config()?;
    config.validate(&cloud)?;
    if a.runs == 0 || a.steps == 0 {
        return Err(Error::invalid("--runs and --steps must be positive"));
    }
    let options = BenchOptions { runs: a.runs, steps: a.steps, weights: a.weights.options() };
    let records = run_benchmark(&cloud, &config, options)?;
    create_dir(&a.out)?;
    write_bench_csv(&a.out.join("bench.csv"), &records)?;
    let summary: Vec<BenchSummaryJson> = summarize(&records).iter().map(Into::into).collect();
    write_json(&a.out.join("bench_summary.json"), &summary)?;
    for s in &summary {
        println!(
            "{:<4} size {:>5}  mean {:.6} s  homology {:?}",
            s.method, s.size, s.mean_wall_time_s, s.mean_homology
        );
    }
    Ok(())
}
