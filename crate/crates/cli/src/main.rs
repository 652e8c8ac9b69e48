use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use artkit::engine::{fit, Learner, ModelKind, Policy};
use artkit::metrics::{accuracy, adjusted_rand_index};
use artkit::persist::{self, ModelFile, PersistError, SavedModel};
use artkit::preprocess::{self, DataError, Dataset, NormalizationRanges};
use artkit::{build_network, build_sfam, ArtError, HyperParams, MatchTracking};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Upper bound on passes for `--epochs auto`.
const AUTO_EPOCH_CAP: usize = 100;

#[derive(Parser)]
#[command(
    name = "artkit",
    version,
    about = "Adaptive resonance theory clustering and classification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cluster a CSV file and save the trained model.
    Fit(FitArgs),
    /// Train an ARTMAP classifier on a labelled CSV file.
    FitSupervised(FitSupervisedArgs),
    /// Label every row of a CSV file with a saved model.
    Predict(PredictArgs),
    /// Compare two label files.
    Eval(EvalArgs),
    /// Describe a saved model.
    Info(InfoArgs),
}

#[derive(Clone, Copy, Debug)]
enum Epochs {
    Fixed(usize),
    Auto,
}

impl Epochs {
    fn cap(self) -> usize {
        match self {
            Epochs::Fixed(n) => n,
            Epochs::Auto => AUTO_EPOCH_CAP,
        }
    }
}

impl FromStr for Epochs {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "auto" {
            return Ok(Epochs::Auto);
        }
        match s.parse::<usize>() {
            Ok(n) if n > 0 => Ok(Epochs::Fixed(n)),
            _ => Err(format!("expected a positive integer or `auto`, got {s:?}")),
        }
    }
}

#[derive(Args)]
struct ModelArgs {
    /// Vigilance (upper vigilance for dvfa, determinant bound for bayes).
    #[arg(long)]
    rho: f64,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    /// Lower vigilance of dual-vigilance ART.
    #[arg(long = "rho-lb")]
    rho_lb: Option<f64>,
    /// Minor-to-major axis ratio of ellipsoid categories.
    #[arg(long)]
    mu: Option<f64>,
    /// Radial extent; derived from the training data when omitted.
    #[arg(long)]
    rbar: Option<f64>,
    #[arg(long = "sigma-init")]
    sigma_init: Option<f64>,
    /// Restrict Bayesian ART covariances to the diagonal.
    #[arg(long)]
    diagonal: bool,
    #[arg(long)]
    phi: Option<u64>,
    #[arg(long)]
    tau: Option<u64>,
    #[arg(long)]
    beta2: Option<f64>,
    /// ART 1 choice bias.
    #[arg(long = "L")]
    l: Option<f64>,
}

impl ModelArgs {
    fn hyper(&self) -> HyperParams {
        HyperParams {
            rho: self.rho,
            alpha: self.alpha,
            beta: self.beta,
            rho_lb: self.rho_lb,
            mu: self.mu,
            rbar: self.rbar,
            sigma_init: self.sigma_init,
            diagonal: self.diagonal,
            phi: self.phi,
            tau: self.tau,
            beta2: self.beta2,
            l: self.l,
        }
    }
}

#[derive(Args)]
struct TrainArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "auto")]
    epochs: Epochs,
    /// Shuffle the presentation order once with this seed.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    output: PathBuf,
    /// Write the per-row labels found during training.
    #[arg(long = "labels-out")]
    labels_out: Option<PathBuf>,
}

#[derive(Args)]
struct FitArgs {
    #[arg(long = "model")]
    model: ModelKind,
    #[command(flatten)]
    params: ModelArgs,
    #[command(flatten)]
    train: TrainArgs,
    /// Column to drop from the features.
    #[arg(long = "label-column")]
    label_column: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MtArg {
    Plus,
    Minus,
}

#[derive(Args)]
struct FitSupervisedArgs {
    #[arg(long = "model", default_value = "fuzzy")]
    model: ModelKind,
    #[command(flatten)]
    params: ModelArgs,
    #[command(flatten)]
    train: TrainArgs,
    #[arg(long = "label-column")]
    label_column: String,
    #[arg(long, value_enum, default_value = "plus")]
    mt: MtArg,
    /// Match-tracking offset; defaults to 0.001 for plus and -0.001 for minus.
    #[arg(long, allow_hyphen_values = true)]
    epsilon: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    Strict,
    Nearest,
}

#[derive(Args)]
struct PredictArgs {
    #[arg(long = "model-file")]
    model_file: PathBuf,
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
    /// Defaults to strict for clustering models and nearest for classifiers.
    #[arg(long, value_enum)]
    policy: Option<PolicyArg>,
    /// Column to drop from the features.
    #[arg(long = "label-column")]
    label_column: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    Ari,
    Accuracy,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    pred: PathBuf,
    #[arg(long)]
    truth: PathBuf,
    #[arg(long, value_enum)]
    metric: MetricArg,
}

#[derive(Args)]
struct InfoArgs {
    #[arg(long = "model-file")]
    model_file: PathBuf,
}

/// Failure with its exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Data(String),
    Model(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Data(_) => 2,
            Failure::Model(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Data(m) | Failure::Model(m) => f.write_str(m),
        }
    }
}

impl From<DataError> for Failure {
    fn from(e: DataError) -> Self {
        Failure::Data(e.to_string())
    }
}

impl From<ArtError> for Failure {
    fn from(e: ArtError) -> Self {
        use ArtError::*;
        let msg = e.to_string();
        match e {
            InvalidParameter(_) | UnsupportedInner(_) => Failure::Usage(msg),
            EmptySample
            | DimensionMismatch { .. }
            | NonFinite { .. }
            | OutOfUnitRange { .. }
            | NonBinary { .. }
            | ZeroNorm
            | EmptyDataset
            | RaggedData { .. }
            | LabelCount { .. } => Failure::Data(msg),
            _ => Failure::Model(msg),
        }
    }
}

impl From<PersistError> for Failure {
    fn from(e: PersistError) -> Self {
        Failure::Model(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let text = e.to_string();
                let body = text.split("\n\n").next().unwrap_or_default();
                let line = body.split_whitespace().collect::<Vec<_>>().join(" ");
                eprintln!("error: {}", line.trim_start_matches("error: "));
                return ExitCode::from(1);
            }
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Fit(args) => fit_cmd(args),
        Command::FitSupervised(args) => fit_supervised_cmd(args),
        Command::Predict(args) => predict_cmd(args),
        Command::Eval(args) => eval_cmd(args),
        Command::Info(args) => info_cmd(args),
    }
}

/// Min-max scales the data, except for binary ART 1 input.
fn prepare_training(kind: ModelKind, data: Dataset) -> Result<(Dataset, Option<NormalizationRanges>), Failure> {
    if kind == ModelKind::Art1 {
        return Ok((data, None));
    }
    let (scaled, ranges) = preprocess::normalize_fit_apply(&data)?;
    Ok((scaled, Some(ranges)))
}

fn write_labels(path: &Path, labels: impl IntoIterator<Item = String>) -> Result<(), Failure> {
    let io = |e: csv::Error| Failure::Data(format!("cannot write {}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    w.write_record(["label"]).map_err(io)?;
    for label in labels {
        w.write_record([label]).map_err(io)?;
    }
    w.flush()
        .map_err(|e| Failure::Data(format!("cannot write {}: {e}", path.display())))
}

fn cluster_label(label: Option<usize>) -> String {
    label.map_or_else(|| "-1".to_owned(), |c| c.to_string())
}

fn class_label(names: &[String], class: Option<usize>) -> String {
    class.map_or_else(|| "-1".to_owned(), |c| names[c].clone())
}

fn fit_cmd(args: FitArgs) -> Result<(), Failure> {
    let data = preprocess::load_csv(&args.train.input, args.label_column.as_deref())?;
    let (data, ranges) = prepare_training(args.model, data)?;
    let mut net = build_network(args.model, &args.params.hyper(), data.dim())?;
    let report = fit(&mut net, &data.rows, args.train.epochs.cap(), args.train.seed)?;
    let summary = net.summary();
    persist::save(
        &ModelFile::new(SavedModel::Unsupervised(net), ranges, None),
        &args.train.output,
    )?;
    if let Some(path) = &args.train.labels_out {
        write_labels(path, report.labels.iter().map(|&l| cluster_label(l)))?;
    }
    println!(
        "categories={} clusters={} epochs={} converged={}",
        summary.category_count, summary.cluster_count, report.epochs_run, report.converged
    );
    Ok(())
}

fn fit_supervised_cmd(args: FitSupervisedArgs) -> Result<(), Failure> {
    let data = preprocess::load_csv(&args.train.input, Some(&args.label_column))?;
    let labels = data.labels.clone().unwrap_or_default();
    let names = data.label_names.clone();
    let (data, ranges) = prepare_training(args.model, data)?;
    let mode = match args.mt {
        MtArg::Plus => MatchTracking::Plus,
        MtArg::Minus => MatchTracking::Minus,
    };
    let epsilon = args.epsilon.unwrap_or(mode.default_epsilon());
    let mut sfam = build_sfam(args.model, &args.params.hyper(), data.dim(), mode, epsilon)?;
    let report = sfam.fit(&data.rows, &labels, args.train.epochs.cap(), args.train.seed)?;
    if let Some(path) = &args.train.labels_out {
        let predicted = data
            .rows
            .iter()
            .map(|x| Ok(class_label(&names, sfam.predict(x, false)?)))
            .collect::<Result<Vec<_>, ArtError>>()?;
        write_labels(path, predicted)?;
    }
    let summary = sfam.summary();
    persist::save(
        &ModelFile::new(SavedModel::Supervised(sfam), ranges, Some(names)),
        &args.train.output,
    )?;
    println!(
        "categories={} classes={} epochs={} converged={}",
        summary.category_count, summary.cluster_count, report.epochs_run, report.converged
    );
    Ok(())
}

fn predict_cmd(args: PredictArgs) -> Result<(), Failure> {
    let file = persist::load(&args.model_file)?;
    let mut data = preprocess::load_csv(&args.input, args.label_column.as_deref())?;
    if data.dim() != file.input_dim {
        return Err(Failure::Data(format!(
            "{} has {} feature columns, model expects {}",
            args.input.display(),
            data.dim(),
            file.input_dim
        )));
    }
    if let Some(ranges) = &file.normalization {
        data = preprocess::normalize_apply(ranges, &data)?;
    }
    let labels: Vec<String> = match &file.model {
        SavedModel::Unsupervised(net) => {
            let policy = match args.policy.unwrap_or(PolicyArg::Strict) {
                PolicyArg::Strict => Policy::Strict,
                PolicyArg::Nearest => Policy::Nearest,
            };
            data.rows
                .iter()
                .map(|x| Ok(cluster_label(net.predict(x, policy)?)))
                .collect::<Result<_, ArtError>>()?
        }
        SavedModel::Supervised(sfam) => {
            let strict = matches!(args.policy, Some(PolicyArg::Strict));
            let names = file.class_labels.as_deref().unwrap_or_default();
            data.rows
                .iter()
                .map(|x| Ok(class_label(names, sfam.predict(x, strict)?)))
                .collect::<Result<_, ArtError>>()?
        }
    };
    write_labels(&args.output, labels)
}

/// Reads the `label` column, or the only column of a one-column file.
fn read_label_file(path: &Path) -> Result<Vec<String>, Failure> {
    let bad = |e: csv::Error| Failure::Data(format!("{}: {e}", path.display()));
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(bad)?;
    let header = rdr.headers().map_err(bad)?.clone();
    let column = match header.iter().position(|h| h == "label") {
        Some(i) => i,
        None if header.len() == 1 => 0,
        None => return Err(Failure::Data(format!("{} has no `label` column", path.display()))),
    };
    let mut out = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(bad)?;
        let cell = record
            .get(column)
            .ok_or_else(|| Failure::Data(format!("{}: short row", path.display())))?;
        out.push(cell.to_owned());
    }
    if out.is_empty() {
        return Err(Failure::Data(format!("{} has no rows", path.display())));
    }
    Ok(out)
}

fn eval_cmd(args: EvalArgs) -> Result<(), Failure> {
    let pred: Vec<Option<String>> = read_label_file(&args.pred)?
        .into_iter()
        .map(|l| (l != "-1").then_some(l))
        .collect();
    let truth = read_label_file(&args.truth)?;
    let value = match args.metric {
        MetricArg::Ari => adjusted_rand_index(&pred, &truth)?,
        MetricArg::Accuracy => accuracy(&pred, &truth)?,
    };
    println!("metric={value}");
    Ok(())
}

fn info_cmd(args: InfoArgs) -> Result<(), Failure> {
    let file = persist::load(&args.model_file)?;
    let (summary, task) = match &file.model {
        SavedModel::Unsupervised(net) => (net.summary(), "clustering"),
        SavedModel::Supervised(sfam) => (sfam.summary(), "classification"),
    };
    println!("kind={}", summary.kind);
    println!("task={task}");
    println!("input_dim={}", summary.input_dim);
    println!("complement_coded={}", file.complement_coded);
    println!("categories={}", summary.category_count);
    match task {
        "classification" => println!("classes={}", summary.cluster_count),
        _ => println!("clusters={}", summary.cluster_count),
    }
    if let Some((min, mean, max)) = summary.size_stats() {
        println!("size_min={min}");
        println!("size_mean={mean}");
        println!("size_max={max}");
    }
    Ok(())
}
