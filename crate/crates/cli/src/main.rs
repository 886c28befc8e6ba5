use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use softgraph::io::{self as gio, Form, ImportDiagnostics, IoError, Mode};
use softgraph::{
    BfParams, DependencyGraph, Direction, ErParams, FitError, FitModel, GdGncParams, GenerateError, GraphError,
    GraphModel, GridSpec, ModelSpec, Objective, ParamRange, StatsError,
};

const EXIT_CODES: &str = "\
Exit codes: 0 success, 1 usage error, 2 I/O error, 3 invalid input or parameters, 4 internal error.

CSV column orders:
  analyze         nodes,edges,density,self_loops_dropped,duplicates_dropped
  distribution    degree,value
  compare         direction,statistic,n1,n2,alpha,critical_value,reject_h0
  fit             p,q,stage,delta_min,delta_median,delta_max
  evaluate        model,replicates,delta_min,delta_median,delta_max
  compare-models  model,replicates,delta_min,delta_median,delta_max (one row per model),
                  then u_statistic,n1,n2,p_value,alpha,reject_h0
  pairwise-ks     direction,rejected,not_rejected,tests,rejected_ratio";

/// Generate synthetic dependency graphs and compare their degree
/// distributions with real ones.
#[derive(Debug, Parser)]
#[command(name = "softgraph", version, after_help = EXIT_CODES)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a graph and write it as an edge list.
    Generate(GenerateArgs),
    /// Print node count, edge count and density; optionally export distributions.
    Analyze(AnalyzeArgs),
    /// Write one degree distribution as `degree,value` CSV.
    Distribution(DistributionArgs),
    /// Keep only edges between application nodes.
    FilterEndo(FilterEndoArgs),
    /// Two-sample KS tests between two graphs, for in- and out-degrees.
    Compare(CompareArgs),
    /// Grid-search model parameters against a graph.
    Fit(FitArgs),
    /// Distance summary of one model's replicates against a graph.
    Evaluate(EvaluateArgs),
    /// Mann–Whitney comparison of two models' distances to a graph.
    CompareModels(CompareModelsArgs),
    /// KS tests between every pair of graphs in a directory.
    PairwiseKs(PairwiseArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelName {
    Gdgnc,
    Er,
    Bf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FitModelName {
    Gdgnc,
    Bf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DirectionArg {
    In,
    Out,
}

impl From<DirectionArg> for Direction {
    fn from(d: DirectionArg) -> Self {
        match d {
            DirectionArg::In => Direction::In,
            DirectionArg::Out => Direction::Out,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormArg {
    Cdf,
    Icd,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Proportion,
    Count,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AggregateArg {
    Median,
    Min,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DistanceArg {
    Delta,
    In,
    Out,
}

#[derive(Debug, Args)]
struct ModelParams {
    /// GD-GNC probability of GNC attachment.
    #[arg(long)]
    p: Option<f64>,
    /// GD-GNC probability of a second attachment.
    #[arg(long)]
    q: Option<f64>,
    /// Erdős–Rényi edge probability (defaults to the reference density where one exists).
    #[arg(long)]
    edge_prob: Option<f64>,
    /// Baxter–Frean node creation probability.
    #[arg(long)]
    create_prob: Option<f64>,
    /// Baxter–Frean edge transfer probability.
    #[arg(long)]
    transfer_prob: Option<f64>,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    model: ModelName,
    /// Node count (for bf: nodes to reach, unless --iterations is given).
    #[arg(long)]
    nodes: Option<usize>,
    /// Baxter–Frean iteration count.
    #[arg(long)]
    iterations: Option<usize>,
    #[command(flatten)]
    params: ModelParams,
    /// Random seed; chosen from the clock and reported when omitted.
    #[arg(long)]
    seed: Option<u64>,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    graph: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write `{in,out}_{cdf,icd}_{proportion,count}.csv` into this directory.
    #[arg(long)]
    emit_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DistributionArgs {
    graph: PathBuf,
    #[arg(long, value_enum)]
    direction: DirectionArg,
    #[arg(long, value_enum, default_value = "icd")]
    form: FormArg,
    #[arg(long, value_enum, default_value = "proportion")]
    mode: ModeArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FilterEndoArgs {
    graph: PathBuf,
    /// File of application identifier prefixes, one per line.
    #[arg(long)]
    app_prefixes: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CompareArgs {
    first: PathBuf,
    second: PathBuf,
    #[arg(long, default_value_t = 0.01)]
    alpha: f64,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Debug, Args)]
struct FitArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum, default_value = "gdgnc")]
    model: FitModelName,
    /// Coarse grid step on both axes.
    #[arg(long, default_value_t = 0.05)]
    step: f64,
    #[arg(long)]
    p_lo: Option<f64>,
    #[arg(long)]
    p_hi: Option<f64>,
    #[arg(long)]
    q_lo: Option<f64>,
    #[arg(long)]
    q_hi: Option<f64>,
    /// Step of the refinement pass around the best coarse cell.
    #[arg(long, default_value_t = 0.01)]
    refine_step: f64,
    #[arg(long)]
    no_refine: bool,
    #[arg(long, default_value_t = 30)]
    replicates: usize,
    #[arg(long, value_enum, default_value = "median")]
    objective: AggregateArg,
    #[arg(long, value_enum, default_value = "delta")]
    distance: DistanceArg,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EvaluateArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum)]
    model: ModelName,
    #[command(flatten)]
    params: ModelParams,
    #[arg(long, default_value_t = 30)]
    replicates: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Debug, Args)]
struct CompareModelsArgs {
    #[arg(long)]
    graph: PathBuf,
    /// First model, e.g. `gdgnc:p=0.8,q=0.3`, `er` or `bf:create_prob=0.2,transfer_prob=0.1`.
    #[arg(long)]
    a: ModelArg,
    /// Second model, same syntax as --a.
    #[arg(long)]
    b: ModelArg,
    #[arg(long, default_value_t = 30)]
    replicates: usize,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Debug, Args)]
struct PairwiseArgs {
    /// Directory of edge-list files (every regular file not starting with `.`).
    dir: PathBuf,
    #[arg(long, default_value_t = 0.01)]
    alpha: f64,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Also write every individual test result as JSON to this file.
    #[arg(long)]
    detail: Option<PathBuf>,
}

/// A model given as `name[:key=value,...]`; missing ER edge probability is
/// filled from the reference graph.
#[derive(Debug, Clone, PartialEq)]
struct ModelArg {
    name: ModelName,
    p: Option<f64>,
    q: Option<f64>,
    edge_prob: Option<f64>,
    create_prob: Option<f64>,
    transfer_prob: Option<f64>,
}

impl FromStr for ModelArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let name = ModelName::from_str(name, true)?;
        let mut m = ModelArg { name, p: None, q: None, edge_prob: None, create_prob: None, transfer_prob: None };
        for kv in rest.split(',').filter(|kv| !kv.is_empty()) {
            let (k, v) = kv.split_once('=').ok_or_else(|| format!("expected key=value, got {kv:?}"))?;
            let v: f64 = v.parse().map_err(|_| format!("{k}: not a number: {v:?}"))?;
            let slot = match k {
                "p" => &mut m.p,
                "q" => &mut m.q,
                "edge_prob" => &mut m.edge_prob,
                "create_prob" => &mut m.create_prob,
                "transfer_prob" => &mut m.transfer_prob,
                _ => return Err(format!("unknown parameter {k:?}")),
            };
            *slot = Some(v);
        }
        Ok(m)
    }
}

#[derive(Debug)]
enum CliError {
    Io(String),
    Invalid(String),
    Internal(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Io(_) => 2,
            CliError::Invalid(_) => 3,
            CliError::Internal(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Io(m) | CliError::Invalid(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        match e {
            IoError::File { .. } | IoError::Io(_) => CliError::Io(e.to_string()),
            IoError::Malformed { .. } | IoError::Graph(_) => CliError::Invalid(e.to_string()),
            IoError::Json(_) => CliError::Internal(e.to_string()),
        }
    }
}

impl From<GenerateError> for CliError {
    fn from(e: GenerateError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<StatsError> for CliError {
    fn from(e: StatsError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<FitError> for CliError {
    fn from(e: FitError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}

type CliResult<T = ()> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(command: Command) -> CliResult {
    match command {
        Command::Generate(a) => generate(a),
        Command::Analyze(a) => analyze(a),
        Command::Distribution(a) => distribution(a),
        Command::FilterEndo(a) => filter_endo(a),
        Command::Compare(a) => compare(a),
        Command::Fit(a) => fit(a),
        Command::Evaluate(a) => evaluate(a),
        Command::CompareModels(a) => compare_models(a),
        Command::PairwiseKs(a) => pairwise(a),
    }
}

/// Uses the given seed or picks one from the clock; reported on stderr either way.
fn effective_seed(seed: Option<u64>) -> u64 {
    let seed = seed.unwrap_or_else(|| {
        let nanos = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_nanos() as u64)
            .unwrap_or(0);
        softgraph::rng::splitmix64(nanos)
    });
    eprintln!("seed: {seed}");
    seed
}

fn with_output<F>(path: Option<&Path>, write: F) -> CliResult
where
    F: FnOnce(&mut dyn Write) -> CliResult,
{
    match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            let mut w = BufWriter::new(file);
            write(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            write(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn load(path: &Path) -> CliResult<(DependencyGraph, ImportDiagnostics)> {
    let (g, d) = gio::parse_edge_list(path)?;
    if d.self_loops_dropped > 0 || d.duplicates_dropped > 0 {
        eprintln!(
            "{}: dropped {} self-loop(s) and {} duplicate edge(s)",
            path.display(),
            d.self_loops_dropped,
            d.duplicates_dropped
        );
    }
    Ok((g, d))
}

fn load_non_empty(path: &Path) -> CliResult<DependencyGraph> {
    let (g, _) = load(path)?;
    if g.is_empty() {
        return Err(CliError::Invalid(format!("{}: graph has no nodes", path.display())));
    }
    Ok(g)
}

fn require(value: Option<f64>, flag: &str) -> CliResult<f64> {
    value.ok_or_else(|| CliError::Invalid(format!("missing --{flag}")))
}

fn model_spec(name: ModelName, params: &ModelParams, reference: Option<&DependencyGraph>) -> CliResult<ModelSpec> {
    Ok(match name {
        ModelName::Gdgnc => ModelSpec::Gdgnc { p: require(params.p, "p")?, q: params.q.unwrap_or(0.0) },
        ModelName::Er => {
            let edge_prob = match (params.edge_prob, reference) {
                (Some(e), _) => e,
                (None, Some(g)) => g.density()?,
                (None, None) => return Err(CliError::Invalid("missing --edge-prob".into())),
            };
            ModelSpec::ErdosRenyi { edge_prob }
        }
        ModelName::Bf => ModelSpec::BaxterFrean {
            create_prob: require(params.create_prob, "create-prob")?,
            transfer_prob: require(params.transfer_prob, "transfer-prob")?,
        },
    })
}

fn generate(a: GenerateArgs) -> CliResult {
    let seed = effective_seed(a.seed);
    let g = match (a.model, a.iterations) {
        (ModelName::Bf, Some(n_iterations)) => softgraph::generate_bf(&BfParams {
            n_iterations,
            create_prob: require(a.params.create_prob, "create-prob")?,
            transfer_prob: require(a.params.transfer_prob, "transfer-prob")?,
            seed,
        })?,
        (_, Some(_)) => return Err(CliError::Invalid("--iterations only applies to --model bf".into())),
        (model, None) => {
            let n_nodes = a.nodes.ok_or_else(|| CliError::Invalid("missing --nodes".into()))?;
            match model_spec(model, &a.params, None)? {
                ModelSpec::Gdgnc { p, q } => softgraph::generate_gdgnc(&GdGncParams { n_nodes, p, q, seed })?,
                ModelSpec::ErdosRenyi { edge_prob } => {
                    softgraph::generate_er(&ErParams { n_nodes, edge_prob, seed })?
                }
                spec => spec.generate(n_nodes, seed)?,
            }
        }
    };
    with_output(a.out.as_deref(), |w| Ok(gio::write_edge_list(&g, w)?))
}

fn analyze(a: AnalyzeArgs) -> CliResult {
    let (g, d) = load(&a.graph)?;
    with_output(None, |w| {
        match a.format {
            Format::Json => gio::write_json(&d, &mut *w)?,
            Format::Csv => {
                writeln!(w, "nodes,edges,density,self_loops_dropped,duplicates_dropped")?;
                let density = d.density.map(|x| x.to_string()).unwrap_or_default();
                writeln!(w, "{},{},{density},{},{}", d.nodes, d.edges, d.self_loops_dropped, d.duplicates_dropped)?;
            }
        }
        Ok(())
    })?;
    if let Some(dir) = a.emit_dir {
        if g.is_empty() {
            return Err(CliError::Invalid("cannot emit distributions of an empty graph".into()));
        }
        fs::create_dir_all(&dir)?;
        for direction in [Direction::In, Direction::Out] {
            for (form, fname) in [(Form::Cdf, "cdf"), (Form::Icd, "icd")] {
                for (mode, mname) in [(Mode::Proportion, "proportion"), (Mode::Count, "count")] {
                    let path = dir.join(format!("{direction}_{fname}_{mname}.csv"));
                    gio::emit_distribution(&g, direction, form, mode, &path)?;
                }
            }
        }
    }
    Ok(())
}

fn distribution(a: DistributionArgs) -> CliResult {
    let g = load_non_empty(&a.graph)?;
    let form = match a.form {
        FormArg::Cdf => Form::Cdf,
        FormArg::Icd => Form::Icd,
    };
    let mode = match a.mode {
        ModeArg::Proportion => Mode::Proportion,
        ModeArg::Count => Mode::Count,
    };
    let view = g.degree_view(a.direction.into());
    with_output(a.out.as_deref(), |w| Ok(gio::write_distribution(&view, form, mode, w)?))
}

fn filter_endo(a: FilterEndoArgs) -> CliResult {
    let (g, _) = load(&a.graph)?;
    let file = File::open(&a.app_prefixes).map_err(|e| CliError::Io(format!("{}: {e}", a.app_prefixes.display())))?;
    let classifier = gio::read_classifier(file)?;
    let endo = g.filter_endo(&classifier);
    eprintln!("kept {} of {} nodes, {} of {} edges", endo.node_count(), g.node_count(), endo.edge_count(), g.edge_count());
    with_output(a.out.as_deref(), |w| Ok(gio::write_edge_list(&endo, w)?))
}

fn compare(a: CompareArgs) -> CliResult {
    let first = load_non_empty(&a.first)?;
    let second = load_non_empty(&a.second)?;
    let mut results = Vec::new();
    for direction in [Direction::In, Direction::Out] {
        let r = softgraph::ks_two_sample_test(&first.degree_view(direction), &second.degree_view(direction), a.alpha)?;
        results.push((direction, r));
    }
    with_output(None, |w| {
        match a.format {
            Format::Json => {
                let doc: serde_json::Map<String, serde_json::Value> = results
                    .iter()
                    .map(|(d, r)| Ok((d.name().to_owned(), serde_json::to_value(r)?)))
                    .collect::<Result<_, serde_json::Error>>()?;
                gio::write_json(&doc, &mut *w)?;
            }
            Format::Csv => {
                writeln!(w, "direction,statistic,n1,n2,alpha,critical_value,reject_h0")?;
                for (d, r) in &results {
                    writeln!(w, "{d},{},{},{},{},{},{}", r.statistic, r.n1, r.n2, r.alpha, r.critical_value, r.reject_h0)?;
                }
            }
        }
        Ok(())
    })
}

fn fit(a: FitArgs) -> CliResult {
    let real = load_non_empty(&a.graph)?;
    let seed = effective_seed(a.seed);
    let model = match a.model {
        FitModelName::Gdgnc => FitModel::Gdgnc,
        FitModelName::Bf => FitModel::BaxterFrean,
    };
    let defaults = GridSpec::default_for(model);
    let grid = GridSpec {
        p_range: ParamRange::new(a.p_lo.unwrap_or(defaults.p_range.lo), a.p_hi.unwrap_or(defaults.p_range.hi), a.step),
        q_range: ParamRange::new(a.q_lo.unwrap_or(defaults.q_range.lo), a.q_hi.unwrap_or(defaults.q_range.hi), a.step),
        replicates: a.replicates,
        refine_step: (!a.no_refine).then_some(a.refine_step),
    };
    let objective = Objective {
        aggregate: match a.objective {
            AggregateArg::Median => softgraph::Aggregate::Median,
            AggregateArg::Min => softgraph::Aggregate::Min,
        },
        distance: match a.distance {
            DistanceArg::Delta => softgraph::Distance::Delta,
            DistanceArg::In => softgraph::Distance::In,
            DistanceArg::Out => softgraph::Distance::Out,
        },
    };
    let report = softgraph::fit_with(&real, model, &grid, seed, objective)?;
    eprintln!("best p={} q={} objective={}", report.best_p, report.best_q, report.objective);
    with_output(a.out.as_deref(), |w| {
        match a.format {
            Format::Json => gio::write_json(&report, w)?,
            Format::Csv => gio::write_fit_csv(&report, w)?,
        }
        Ok(())
    })
}

fn evaluate(a: EvaluateArgs) -> CliResult {
    let real = load_non_empty(&a.graph)?;
    let spec = model_spec(a.model, &a.params, Some(&real))?;
    let seed = effective_seed(a.seed);
    let eval = softgraph::evaluate(&real, &spec, a.replicates, seed)?;
    with_output(None, |w| {
        match a.format {
            Format::Json => gio::write_json(&serde_json::json!({ "spec": spec, "evaluation": eval }), w)?,
            Format::Csv => gio::write_evaluation_csv(spec.name(), &eval, true, w)?,
        }
        Ok(())
    })
}

fn resolve(m: &ModelArg, real: &DependencyGraph) -> CliResult<ModelSpec> {
    let params = ModelParams {
        p: m.p,
        q: m.q,
        edge_prob: m.edge_prob,
        create_prob: m.create_prob,
        transfer_prob: m.transfer_prob,
    };
    model_spec(m.name, &params, Some(real))
}

fn compare_models(a: CompareModelsArgs) -> CliResult {
    let real = load_non_empty(&a.graph)?;
    let first = resolve(&a.a, &real)?;
    let second = resolve(&a.b, &real)?;
    let seed = effective_seed(a.seed);
    let c = softgraph::compare_models(&real, &first, &second, a.replicates, a.alpha, seed)?;
    with_output(None, |w| {
        match a.format {
            Format::Json => gio::write_json(
                &serde_json::json!({ "first": { "spec": first, "evaluation": c.first },
                                     "second": { "spec": second, "evaluation": c.second },
                                     "test": c.test }),
                w,
            )?,
            Format::Csv => {
                gio::write_evaluation_csv(first.name(), &c.first, true, &mut *w)?;
                gio::write_evaluation_csv(second.name(), &c.second, false, &mut *w)?;
                let t = &c.test;
                writeln!(w, "u_statistic,n1,n2,p_value,alpha,reject_h0")?;
                writeln!(w, "{},{},{},{},{},{}", t.u_statistic, t.n1, t.n2, t.p_value, t.alpha, t.reject_h0)?;
            }
        }
        Ok(())
    })
}

fn pairwise(a: PairwiseArgs) -> CliResult {
    let mut paths: Vec<PathBuf> = fs::read_dir(&a.dir)
        .map_err(|e| CliError::Io(format!("{}: {e}", a.dir.display())))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && !p.file_name().is_some_and(|n| n.to_string_lossy().starts_with('.')))
        .collect();
    paths.sort();
    if paths.len() < 2 {
        return Err(CliError::Invalid(format!("{}: need at least two graphs", a.dir.display())));
    }
    let graphs = paths
        .iter()
        .map(|p| {
            let name = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            Ok((name, load_non_empty(p)?))
        })
        .collect::<CliResult<Vec<_>>>()?;
    let summary = softgraph::pairwise_ks(&graphs, a.alpha)?;
    if let Some(detail) = &a.detail {
        with_output(Some(detail), |w| Ok(gio::write_json(&summary.tests, w)?))?;
    }
    with_output(None, |w| {
        match a.format {
            Format::Json => gio::write_json(&serde_json::json!({ "alpha": summary.alpha, "counts": summary.counts, "total": summary.total() }), w)?,
            Format::Csv => gio::write_pairwise_csv(&summary, w)?,
        }
        Ok(())
    })
}
