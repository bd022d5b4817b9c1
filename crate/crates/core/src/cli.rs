//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 for data or numerical failures, 2 for usage
//! errors. Every command echoes its fully resolved configuration as `#` lines
//! on stdout and at the top of its key=value reports and model files.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bounds::bound_report;
use crate::completion::{
    find_minimizer, norm_surface, surface_csv, CompletionNorm, CompletionProblem,
};
use crate::data::{
    load_arff, load_arff_with_xml, load_model, save_model, stats, synth_low_rank, write_arff,
    MultiLabelDataset, SynthSpec,
};
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::metrics::{EvalPair, MetricReport};
use crate::solver::{
    fit, lipschitz_constant, predict, theta_from_fraction, Regularizer, SolverConfig,
    DEFAULT_GAMMA, DEFAULT_MAX_ITERS, DEFAULT_REL_TOL,
};

#[derive(Debug, Parser)]
#[command(
    name = "lrml",
    version,
    about = "Multi-label learning with tail singular value regularization"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit a predictor by proximal gradient descent.
    Train(TrainArgs),
    /// Write the score matrix XW for a dataset.
    Predict(PredictArgs),
    /// Evaluate a model on a labelled dataset.
    Eval(EvalArgs),
    /// Grid-search completion of the 3x4 two-hole example matrix.
    DemoCompletion(DemoArgs),
    /// Evaluate generalization bound diagnostics for a model.
    Bound(BoundArgs),
    /// Generate a planted low-rank dataset.
    Synth(SynthArgs),
    /// Label statistics of one or more ARFF files (rows are concatenated).
    Stats(StatsArgs),
}

#[derive(Debug, Args)]
pub struct DataArgs {
    /// ARFF dataset file.
    #[arg(long)]
    pub data: PathBuf,
    /// Number of label attributes.
    #[arg(long, required_unless_present = "xml")]
    pub labels: Option<usize>,
    /// Label attributes come first instead of last.
    #[arg(long)]
    pub labels_first: bool,
    /// Mulan XML file naming the label attributes.
    #[arg(long, conflicts_with_all = ["labels", "labels_first"])]
    pub xml: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegKind {
    Tail,
    Trace,
    Frobenius,
    None,
}

#[derive(Debug, Args)]
pub struct ThetaArgs {
    /// Number of protected leading singular values.
    #[arg(long, conflicts_with = "theta_frac")]
    pub theta: Option<usize>,
    /// Protected singular values as a fraction of the label count.
    #[arg(long, value_parser = parse_fraction)]
    pub theta_frac: Option<f64>,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[arg(long, value_enum)]
    pub reg: RegKind,
    #[command(flatten)]
    pub theta: ThetaArgs,
    /// Regularization weight.
    #[arg(long, value_parser = parse_non_negative)]
    pub c: f64,
    /// Initial step parameter (default: 2·σ_max(X)²).
    #[arg(long, value_parser = parse_positive)]
    pub t0: Option<f64>,
    /// Step parameter growth factor, must exceed 1.
    #[arg(long, default_value_t = DEFAULT_GAMMA, value_parser = parse_gamma)]
    pub gamma: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_ITERS, value_parser = parse_at_least_one)]
    pub max_iters: usize,
    #[arg(long, default_value_t = DEFAULT_REL_TOL, value_parser = parse_positive)]
    pub rel_tol: f64,
    /// Starting model file (default: zero matrix).
    #[arg(long)]
    pub init: Option<PathBuf>,
    /// Output model file.
    #[arg(long)]
    pub out: PathBuf,
    /// Convergence trace CSV.
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    #[arg(long)]
    pub model: PathBuf,
    #[command(flatten)]
    pub data: DataArgs,
    /// Score CSV output.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Kv,
    Csv,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub model: PathBuf,
    #[command(flatten)]
    pub data: DataArgs,
    /// Cutoffs for top-k accuracy.
    #[arg(long, value_delimiter = ',', default_value = "1,3,5")]
    pub k: Vec<usize>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Kv)]
    pub format: ReportFormat,
    /// Report file (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormKind {
    Trace,
    Tail,
}

#[derive(Debug, Args)]
pub struct DemoArgs {
    #[arg(long, value_enum)]
    pub norm: NormKind,
    /// Protected singular values for the tail norm.
    #[arg(long, default_value_t = 2)]
    pub theta: usize,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub lo: f64,
    #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
    pub hi: f64,
    /// Coarse grid step, also used for the contour CSV.
    #[arg(long, default_value_t = 0.05, value_parser = parse_positive)]
    pub step: f64,
    #[arg(long, default_value_t = 3)]
    pub refine: usize,
    /// Contour CSV output.
    #[arg(long)]
    pub out: PathBuf,
    /// Minimizer report output.
    #[arg(long)]
    pub report: PathBuf,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long)]
    pub model: PathBuf,
    /// Training-set size.
    #[arg(long, value_parser = parse_at_least_one)]
    pub n: usize,
    #[arg(long, default_value_t = 0.05, value_parser = parse_delta)]
    pub delta: f64,
    /// Assumed second-moment radius.
    #[arg(long, default_value_t = 1.0, value_parser = parse_non_negative)]
    pub r: f64,
    #[command(flatten)]
    pub theta: ThetaArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Training examples.
    #[arg(long)]
    pub n: usize,
    /// Test examples (0 skips the test file).
    #[arg(long, default_value_t = 0)]
    pub n_test: usize,
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub l: usize,
    #[arg(long)]
    pub rank: usize,
    #[arg(long, default_value_t = 0.0, value_parser = parse_non_negative)]
    pub noise: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Writes `<prefix>-train.arff`, `<prefix>-test.arff`, `<prefix>-truth.model`.
    #[arg(long)]
    pub out_prefix: PathBuf,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    /// One or more ARFF files with identical attributes.
    #[arg(long, num_args = 1.., required = true)]
    pub data: Vec<PathBuf>,
    #[arg(long, required_unless_present = "xml")]
    pub labels: Option<usize>,
    #[arg(long)]
    pub labels_first: bool,
    #[arg(long, conflicts_with_all = ["labels", "labels_first"])]
    pub xml: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_f64(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if !v.is_finite() {
        return Err(format!("'{s}' is not finite"));
    }
    Ok(v)
}

fn parse_at_least_one(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(v) if v >= 1 => Ok(v),
        _ => Err(format!("expected an integer of at least 1, got '{s}'")),
    }
}

fn parse_gamma(s: &str) -> std::result::Result<f64, String> {
    let v = parse_f64(s)?;
    if v <= 1.0 {
        return Err(format!("gamma must be greater than 1, got {v}"));
    }
    Ok(v)
}

fn parse_positive(s: &str) -> std::result::Result<f64, String> {
    let v = parse_f64(s)?;
    if v <= 0.0 {
        return Err(format!("must be positive, got {v}"));
    }
    Ok(v)
}

fn parse_non_negative(s: &str) -> std::result::Result<f64, String> {
    let v = parse_f64(s)?;
    if v < 0.0 {
        return Err(format!("must be non-negative, got {v}"));
    }
    Ok(v)
}

fn parse_fraction(s: &str) -> std::result::Result<f64, String> {
    let v = parse_f64(s)?;
    if !(0.0..=1.0).contains(&v) {
        return Err(format!("must lie in [0, 1], got {v}"));
    }
    Ok(v)
}

fn parse_delta(s: &str) -> std::result::Result<f64, String> {
    let v = parse_f64(s)?;
    if !(v > 0.0 && v < 1.0) {
        return Err(format!("must lie in (0, 1), got {v}"));
    }
    Ok(v)
}

pub fn parse_args<I, T>(argv: I) -> std::result::Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    RunConfig::try_parse_from(argv)
}

/// Parses `argv` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match parse_args(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{rendered}");
            } else {
                let _ = write!(stderr, "{rendered}");
            }
            return code;
        }
    };
    match execute(&config.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if e.is_usage() {
                2
            } else {
                1
            }
        }
    }
}

/// Resolved configuration as ordered `key=value` pairs.
struct Echo(Vec<(String, String)>);

impl Echo {
    fn new(command: &str) -> Self {
        Self(vec![("command".into(), command.into())])
    }

    fn add(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.0.push((key.into(), value.to_string()));
        self
    }

    fn add_path(&mut self, key: &str, value: &Path) -> &mut Self {
        self.add(key, value.display())
    }

    fn lines(&self) -> Vec<String> {
        self.0.iter().map(|(k, v)| format!("{k}={v}")).collect()
    }

    fn comment_block(&self) -> String {
        self.lines().iter().map(|l| format!("# {l}\n")).collect()
    }
}

fn require_file(path: &Path) -> Result<()> {
    if !path.is_file() {
        return Err(Error::Usage(format!(
            "input file {} does not exist",
            path.display()
        )));
    }
    Ok(())
}

fn require_output(path: &Path) -> Result<()> {
    let parent = path.parent().filter(|p| !p.as_os_str().is_empty());
    if let Some(dir) = parent {
        if !dir.is_dir() {
            return Err(Error::Usage(format!(
                "output directory {} does not exist",
                dir.display()
            )));
        }
    }
    Ok(())
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

impl DataArgs {
    fn validate(&self) -> Result<()> {
        require_file(&self.data)?;
        if let Some(xml) = &self.xml {
            require_file(xml)?;
        }
        Ok(())
    }

    fn load(&self) -> Result<MultiLabelDataset> {
        load_dataset(
            &self.data,
            self.labels,
            self.labels_first,
            self.xml.as_deref(),
        )
    }

    fn echo(&self, echo: &mut Echo) {
        echo.add_path("data", &self.data);
        match (&self.xml, self.labels) {
            (Some(xml), _) => {
                echo.add_path("xml", xml);
            }
            (None, Some(l)) => {
                echo.add("labels", l).add(
                    "label_position",
                    if self.labels_first { "first" } else { "last" },
                );
            }
            (None, None) => {}
        }
    }
}

fn load_dataset(
    path: &Path,
    labels: Option<usize>,
    labels_first: bool,
    xml: Option<&Path>,
) -> Result<MultiLabelDataset> {
    match (xml, labels) {
        (Some(xml), _) => load_arff_with_xml(path, xml),
        (None, Some(l)) => load_arff(path, l, !labels_first),
        (None, None) => Err(Error::Usage("either --labels or --xml is required".into())),
    }
}

impl ThetaArgs {
    fn resolve(&self, d: usize, l: usize) -> Option<usize> {
        match (self.theta, self.theta_frac) {
            (Some(t), _) => Some(t),
            (None, Some(f)) => Some(theta_from_fraction(f, d, l)),
            (None, None) => None,
        }
    }

    fn given(&self) -> bool {
        self.theta.is_some() || self.theta_frac.is_some()
    }
}

fn execute(command: &Command, stdout: &mut dyn Write) -> Result<()> {
    match command {
        Command::Train(a) => train(a, stdout),
        Command::Predict(a) => predict_cmd(a, stdout),
        Command::Eval(a) => eval(a, stdout),
        Command::DemoCompletion(a) => demo(a, stdout),
        Command::Bound(a) => bound(a, stdout),
        Command::Synth(a) => synth(a, stdout),
        Command::Stats(a) => stats_cmd(a, stdout),
    }
}

fn emit(stdout: &mut dyn Write, text: &str) -> Result<()> {
    stdout
        .write_all(text.as_bytes())
        .map_err(|e| Error::io("<stdout>", e))
}

fn train(a: &TrainArgs, stdout: &mut dyn Write) -> Result<()> {
    a.data.validate()?;
    if let Some(init) = &a.init {
        require_file(init)?;
    }
    require_output(&a.out)?;
    if let Some(t) = &a.trace {
        require_output(t)?;
    }
    match (a.reg, a.theta.given()) {
        (RegKind::Tail, false) => {
            return Err(Error::Usage(
                "--reg tail needs --theta or --theta-frac".into(),
            ))
        }
        (RegKind::Tail, true) => {}
        (_, true) => {
            return Err(Error::Usage(
                "--theta/--theta-frac only apply to --reg tail".into(),
            ))
        }
        (_, false) => {}
    }

    let ds = a.data.load()?;
    let (x, y) = (ds.features(), ds.labels());
    let (d, l) = (x.cols(), y.cols());
    let regularizer = match a.reg {
        RegKind::Tail => Regularizer::Tail {
            theta: a.theta.resolve(d, l).expect("checked above"),
        },
        RegKind::Trace => Regularizer::Trace,
        RegKind::Frobenius => Regularizer::Frobenius,
        RegKind::None => Regularizer::None,
    };
    let w0 = match &a.init {
        Some(p) => Some(load_model(p)?),
        None => None,
    };
    let t0 = match a.t0 {
        Some(t) => t,
        None => lipschitz_constant(x)?.max(f64::MIN_POSITIVE),
    };
    let config = SolverConfig {
        regularizer,
        c: a.c,
        t0: Some(t0),
        gamma: a.gamma,
        max_iters: a.max_iters,
        rel_tol: a.rel_tol,
        w0,
    };

    let mut echo = Echo::new("train");
    a.data.echo(&mut echo);
    echo.add("n", ds.n())
        .add("d", d)
        .add("l", l)
        .add("reg", regularizer.name());
    if let Regularizer::Tail { theta } = regularizer {
        echo.add("theta", theta);
        if let Some(f) = a.theta.theta_frac {
            echo.add("theta_frac", f);
        }
    }
    echo.add("c", a.c)
        .add("t0", t0)
        .add("gamma", a.gamma)
        .add("max_iters", a.max_iters)
        .add("rel_tol", a.rel_tol)
        .add(
            "init",
            a.init
                .as_ref()
                .map(|p| p.display().to_string())
                .unwrap_or_else(|| "zero".into()),
        );
    emit(stdout, &echo.comment_block())?;

    let (w, trace) = fit(x, y, &config)?;
    let final_obj = *trace.objectives.last().expect("trace is non-empty");
    let mut comments = echo.lines();
    comments.push(format!("iterations={}", trace.iterations_run));
    comments.push(format!("converged={}", trace.converged));
    comments.push(format!("final_objective={final_obj}"));
    save_model(&w, &a.out, &comments)?;
    if let Some(p) = &a.trace {
        write_file(p, &trace.to_csv())?;
    }
    emit(
        stdout,
        &format!(
            "iterations={}\nconverged={}\nfinal_objective={final_obj}\n",
            trace.iterations_run, trace.converged
        ),
    )
}

fn load_model_for(path: &Path, ds: &MultiLabelDataset) -> Result<DenseMatrix> {
    let w = load_model(path)?;
    if w.rows() != ds.features().cols() || w.cols() != ds.labels().cols() {
        return Err(Error::DimensionMismatch(format!(
            "model is {}x{} but the data has d={} and L={}",
            w.rows(),
            w.cols(),
            ds.features().cols(),
            ds.labels().cols()
        )));
    }
    Ok(w)
}

fn predict_cmd(a: &PredictArgs, stdout: &mut dyn Write) -> Result<()> {
    require_file(&a.model)?;
    a.data.validate()?;
    require_output(&a.out)?;
    let mut echo = Echo::new("predict");
    echo.add_path("model", &a.model);
    a.data.echo(&mut echo);
    emit(stdout, &echo.comment_block())?;

    let ds = a.data.load()?;
    let w = load_model_for(&a.model, &ds)?;
    let scores = predict(&w, ds.features())?;
    let mut csv = ds.label_names().join(",");
    csv.push('\n');
    for i in 0..scores.rows() {
        let row: Vec<String> = scores.row(i).iter().map(|v| v.to_string()).collect();
        csv.push_str(&row.join(","));
        csv.push('\n');
    }
    write_file(&a.out, &csv)
}

fn eval(a: &EvalArgs, stdout: &mut dyn Write) -> Result<()> {
    require_file(&a.model)?;
    a.data.validate()?;
    if let Some(out) = &a.out {
        require_output(out)?;
    }
    let ds = a.data.load()?;
    let l = ds.labels().cols();
    if let Some(&bad) = a.k.iter().find(|&&k| k == 0 || k > l) {
        return Err(Error::Usage(format!("--k {bad} outside 1..={l}")));
    }
    let w = load_model_for(&a.model, &ds)?;

    let mut echo = Echo::new("eval");
    echo.add_path("model", &a.model);
    a.data.echo(&mut echo);
    let ks: Vec<String> = a.k.iter().map(|k| k.to_string()).collect();
    echo.add("k", ks.join(",")).add("n", ds.n());
    emit(stdout, &echo.comment_block())?;

    let scores = predict(&w, ds.features())?;
    let pair = EvalPair::new(&scores, ds.labels())?;
    let report = MetricReport::compute(&pair, &a.k)?;
    let body = match a.format {
        ReportFormat::Kv => format!("{}{}", echo.comment_block(), report.to_key_values()),
        ReportFormat::Csv => report.to_csv(),
    };
    match &a.out {
        Some(p) => write_file(p, &body),
        None => emit(
            stdout,
            match a.format {
                ReportFormat::Kv => &body[echo.comment_block().len()..],
                ReportFormat::Csv => &body,
            },
        ),
    }
}

fn demo(a: &DemoArgs, stdout: &mut dyn Write) -> Result<()> {
    require_output(&a.out)?;
    require_output(&a.report)?;
    let norm = match a.norm {
        NormKind::Trace => CompletionNorm::Trace,
        NormKind::Tail => CompletionNorm::Tail { theta: a.theta },
    };
    let problem = CompletionProblem::motivating_example(norm, a.lo, a.hi);
    problem.validate()?;

    let mut echo = Echo::new("demo-completion");
    echo.add(
        "norm",
        match a.norm {
            NormKind::Trace => "trace",
            NormKind::Tail => "tail",
        },
    );
    if let CompletionNorm::Tail { theta } = norm {
        echo.add("theta", theta);
    }
    echo.add("lo", a.lo)
        .add("hi", a.hi)
        .add("step", a.step)
        .add("refine", a.refine);
    emit(stdout, &echo.comment_block())?;

    let surface = norm_surface(&problem, a.step)?;
    let min = find_minimizer(&problem, a.step, a.refine)?;
    write_file(&a.out, &surface_csv(&surface))?;
    let report = format!("{}{}", echo.comment_block(), min.to_key_values());
    write_file(&a.report, &report)?;
    emit(stdout, &min.to_key_values())
}

fn bound(a: &BoundArgs, stdout: &mut dyn Write) -> Result<()> {
    require_file(&a.model)?;
    if let Some(out) = &a.out {
        require_output(out)?;
    }
    let w = load_model(&a.model)?;
    let theta = a.theta.resolve(w.rows(), w.cols()).unwrap_or(0);
    let mut echo = Echo::new("bound");
    echo.add_path("model", &a.model)
        .add("d", w.rows())
        .add("l", w.cols())
        .add("n", a.n)
        .add("delta", a.delta)
        .add("r", a.r)
        .add("theta", theta);
    emit(stdout, &echo.comment_block())?;

    let rep = bound_report(&w, a.n, a.delta, a.r, theta)?;
    match &a.out {
        Some(p) => write_file(
            p,
            &format!("{}{}", echo.comment_block(), rep.to_key_values()),
        ),
        None => emit(stdout, &rep.to_key_values()),
    }
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn synth(a: &SynthArgs, stdout: &mut dyn Write) -> Result<()> {
    let train_path = with_suffix(&a.out_prefix, "-train.arff");
    let test_path = with_suffix(&a.out_prefix, "-test.arff");
    let truth_path = with_suffix(&a.out_prefix, "-truth.model");
    require_output(&train_path)?;

    let spec = SynthSpec {
        n: a.n + a.n_test,
        d: a.d,
        l: a.l,
        rank: a.rank,
        noise: a.noise,
        seed: a.seed,
    };
    let mut echo = Echo::new("synth");
    echo.add("n", a.n)
        .add("n_test", a.n_test)
        .add("d", a.d)
        .add("l", a.l)
        .add("rank", a.rank)
        .add("noise", a.noise)
        .add("seed", a.seed)
        .add("rng", "ChaCha8Rng::seed_from_u64");
    emit(stdout, &echo.comment_block())?;
    if a.n == 0 {
        return Err(Error::Usage("--n must be positive".into()));
    }

    let (all, w_star) = synth_low_rank(&spec)?;
    let split = |r0: usize, r1: usize| -> Result<MultiLabelDataset> {
        MultiLabelDataset::new(
            all.features().slice(r0, r1, 0, a.d)?,
            all.labels().slice(r0, r1, 0, a.l)?,
            all.feature_names().to_vec(),
            all.label_names().to_vec(),
        )
    };
    let relation = format!("synth-seed{}", a.seed);
    write_file(&train_path, &write_arff(&split(0, a.n)?, &relation, false))?;
    if a.n_test > 0 {
        write_file(
            &test_path,
            &write_arff(&split(a.n, a.n + a.n_test)?, &relation, false),
        )?;
    }
    save_model(&w_star, &truth_path, &echo.lines())
}

fn stats_cmd(a: &StatsArgs, stdout: &mut dyn Write) -> Result<()> {
    for p in &a.data {
        require_file(p)?;
    }
    if let Some(xml) = &a.xml {
        require_file(xml)?;
    }
    if let Some(out) = &a.out {
        require_output(out)?;
    }
    let mut echo = Echo::new("stats");
    let files: Vec<String> = a.data.iter().map(|p| p.display().to_string()).collect();
    echo.add("data", files.join(","));
    match (&a.xml, a.labels) {
        (Some(x), _) => {
            echo.add_path("xml", x);
        }
        (None, Some(l)) => {
            echo.add("labels", l).add(
                "label_position",
                if a.labels_first { "first" } else { "last" },
            );
        }
        (None, None) => {}
    }
    emit(stdout, &echo.comment_block())?;

    let mut merged: Option<MultiLabelDataset> = None;
    for p in &a.data {
        let ds = load_dataset(p, a.labels, a.labels_first, a.xml.as_deref())?;
        merged = Some(match merged {
            None => ds,
            Some(m) => m.concat(&ds)?,
        });
    }
    let st = stats(&merged.expect("at least one file"));
    match &a.out {
        Some(p) => write_file(
            p,
            &format!("{}{}", echo.comment_block(), st.to_key_values()),
        ),
        None => emit(stdout, &st.to_key_values()),
    }
}
