//! `braidwalk`: braid-group words, orders, translation numbers, closure
//! invariants, and recorded random walks from the command line.
//!
//! Exit codes: 0 success, 2 usage/configuration error, 3 inconclusive
//! (a search budget ran out before the answer was determined).

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use num::BigRational;

use braidwalk_core::error::Error as CoreError;
use braidwalk_core::experiments::{
    self, ExperimentKind, ExperimentSpec, DEFAULT_CONJUGACY_BUDGET, DEFAULT_KMAX, DEFAULT_QMAX,
};
use braidwalk_core::rat::{parse_rat, rat_int, rat_str};
use braidwalk_core::walk::{self, Measure, WalkConfig, DEFAULT_COLLAPSE_THRESHOLD};
use braidwalk_core::word::BraidWord;
use braidwalk_core::{dehornoy, fdtc, garside, invariants, quasimorphism};

#[derive(Parser)]
#[command(
    name = "braidwalk",
    version,
    about = "Random walks on braid groups and invariants of their closures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the left normal form of a word
    Nf {
        #[arg(long)]
        n: usize,
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Decide whether two words are the same element
    Eq {
        #[arg(long)]
        n: usize,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Decide conjugacy and print a witness when one exists
    Conj {
        #[arg(long)]
        n: usize,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        /// Search budget (conjugates explored) before giving up
        #[arg(long, default_value_t = DEFAULT_CONJUGACY_BUDGET)]
        budget: u64,
    },
    /// Order sign of a word (positive, negative, or zero)
    Sign {
        #[arg(long)]
        n: usize,
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Compare two words in the left-invariant order
    Cmp {
        #[arg(long)]
        n: usize,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Floor of a word against powers of the full twist
    Floor {
        #[arg(long)]
        n: usize,
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Translation-number interval, and the exact value when recoverable
    Fdtc {
        #[arg(long)]
        n: usize,
        #[arg(allow_hyphen_values = true)]
        word: String,
        /// Largest denominator considered for exact recovery
        #[arg(long, default_value_t = 10)]
        qmax: u64,
        /// Largest power entering the estimate
        #[arg(long, default_value_t = 64)]
        kmax: i64,
        /// Additivity-gap bound used for the error band
        #[arg(long, default_value = "2")]
        defect: String,
    },
    /// Invariants of the closure of a word
    Inv {
        #[arg(long)]
        n: usize,
        #[arg(allow_hyphen_values = true)]
        word: String,
        /// Also estimate the translation number and its genus bound
        #[arg(long)]
        fdtc: bool,
        #[arg(long, default_value_t = DEFAULT_QMAX)]
        qmax: u64,
        #[arg(long, default_value_t = DEFAULT_KMAX)]
        kmax: i64,
        #[arg(long, default_value = "2")]
        defect: String,
        /// Emit a single JSON object instead of key = value lines
        #[arg(long)]
        json: bool,
    },
    /// Scan word pairs for the largest additivity failure of a functional
    Defect {
        functional: String,
        #[arg(long)]
        n: usize,
        /// Longest word considered
        #[arg(long, default_value_t = 3)]
        max_len: usize,
        /// Scan this many seeded random pairs instead of all pairs
        #[arg(long)]
        random: Option<u64>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Beam-search growth probe for a functional along a measure's support
    Probe {
        functional: String,
        #[arg(long)]
        measure: PathBuf,
        /// Longest product explored
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        #[arg(long, default_value_t = 64)]
        beam: usize,
    },
    /// Run a recorded random walk and print per-checkpoint records
    Walk(WalkArgs),
    /// Run a named experiment and print its replayable output
    Exp(ExpArgs),
    /// Rerun an experiment from a previous run's output file
    Replay {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
}

#[derive(Args)]
struct WalkArgs {
    /// Measure file: 'n=<strands>', then weighted atom lines; may also
    /// carry 'key = value' defaults for the options below
    #[arg(long)]
    measure: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    start: Option<String>,
    #[arg(long)]
    steps: Option<u64>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Space- or comma-separated steps to record at (default: final step)
    #[arg(long)]
    checkpoints: Option<String>,
    /// Space- or comma-separated functional names to record
    #[arg(long)]
    functionals: Option<String>,
    /// Rewrite the walking word via its normal form past this length
    #[arg(long)]
    collapse: Option<usize>,
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Emit JSON lines instead of CSV
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ExpArgs {
    /// One of: fdtc-escape, genus-growth, conjugacy, transience, slice,
    /// alternating
    name: String,
    #[arg(long)]
    measure: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    start: Option<String>,
    #[arg(long)]
    steps: Option<u64>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    checkpoints: Option<String>,
    #[arg(long)]
    collapse: Option<usize>,
    /// Magnitude threshold for escape/growth/slice fractions
    #[arg(long = "C", allow_hyphen_values = true)]
    c_threshold: Option<String>,
    /// Genus cutoff for the transience predicate
    #[arg(long, allow_hyphen_values = true)]
    g: Option<i64>,
    /// Translation-number cutoff for the conjugacy experiment
    #[arg(long, allow_hyphen_values = true)]
    r: Option<String>,
    #[arg(long)]
    qmax: Option<u64>,
    #[arg(long)]
    kmax: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    defect: Option<String>,
    /// Conjugacy search budget
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

fn main() {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(2);
        }
    }
}

/// Writes to stdout without panicking: a closed pipe (e.g. `| head`) ends the
/// process quietly, and any other write failure is reported as an error.
fn emit(args: std::fmt::Arguments<'_>) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(err) = out.write_fmt(args) {
        if err.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write to stdout: {err}");
        std::process::exit(2);
    }
}

macro_rules! out {
    ($($arg:tt)*) => { emit(format_args!($($arg)*)) };
}

macro_rules! outln {
    () => { emit(format_args!("\n")) };
    ($fmt:literal $($arg:tt)*) => { emit(format_args!(concat!($fmt, "\n") $($arg)*)) };
}

fn parse_word(text: &str, n: usize) -> anyhow::Result<BraidWord> {
    let expanded = walk::expand_macros(text, n)?;
    Ok(BraidWord::parse(&expanded, n)?)
}

fn parse_rational(text: &str) -> anyhow::Result<BigRational> {
    Ok(parse_rat(text)?)
}

/// Keys a measure file may set as defaults for walk/experiment options.
const PARAM_KEYS: [&str; 14] = [
    "steps",
    "trials",
    "seed",
    "checkpoints",
    "start",
    "functionals",
    "collapse",
    "C",
    "g",
    "r",
    "qmax",
    "kmax",
    "defect",
    "budget",
];

struct MeasureFile {
    measure: Measure,
    params: HashMap<String, String>,
}

fn load_measure(path: &Path) -> anyhow::Result<MeasureFile> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading measure file {}", path.display()))?;
    let (measure, param_list) = walk::parse_measure_text(&text)?;
    let mut params = HashMap::new();
    for (key, value) in param_list {
        if !PARAM_KEYS.contains(&key.as_str()) {
            bail!("unknown parameter '{key}' in {}", path.display());
        }
        params.insert(key, value);
    }
    Ok(MeasureFile { measure, params })
}

fn parse_list(text: &str) -> Vec<String> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(str::to_string)
        .collect()
}

fn parse_checkpoints(text: &str) -> anyhow::Result<Vec<u64>> {
    parse_list(text)
        .iter()
        .map(|t| t.parse().map_err(|_| anyhow!("bad checkpoint '{t}'")))
        .collect()
}

/// CLI flag if given, else measure-file parameter, else default.
fn pick<T, E: Into<anyhow::Error>>(
    flag: Option<T>,
    file: Option<anyhow::Result<T, E>>,
    default: T,
) -> anyhow::Result<T> {
    match (flag, file) {
        (Some(v), _) => Ok(v),
        (None, Some(r)) => r.map_err(Into::into),
        (None, None) => Ok(default),
    }
}

fn file_param<T, E: Into<anyhow::Error>>(
    params: &HashMap<String, String>,
    key: &str,
    parse: impl Fn(&str) -> Result<T, E>,
) -> Option<Result<T, E>> {
    params.get(key).map(|v| parse(v))
}

fn build_walk_config(args: &WalkArgs) -> anyhow::Result<WalkConfig> {
    let MeasureFile { measure, params } = load_measure(&args.measure)?;
    let n = measure.strands();
    let start_text = args
        .start
        .clone()
        .or_else(|| params.get("start").cloned())
        .unwrap_or_default();
    let config = WalkConfig {
        start: parse_word(&start_text, n)?,
        steps: pick(
            args.steps,
            file_param(&params, "steps", |v| v.parse::<u64>()),
            32,
        )
        .context("steps")?,
        trials: pick(
            args.trials,
            file_param(&params, "trials", |v| v.parse::<u64>()),
            5,
        )
        .context("trials")?,
        seed: pick(
            args.seed,
            file_param(&params, "seed", |v| v.parse::<u64>()),
            1,
        )
        .context("seed")?,
        checkpoints: pick(
            args.checkpoints.as_deref().map(parse_checkpoints).transpose()?,
            file_param(&params, "checkpoints", parse_checkpoints),
            Vec::new(),
        )?,
        functionals: pick(
            args.functionals.as_deref().map(parse_list),
            file_param(&params, "functionals", |v| {
                Ok::<_, anyhow::Error>(parse_list(v))
            }),
            vec!["exp_sum".to_string()],
        )?,
        collapse_threshold: pick(
            args.collapse,
            file_param(&params, "collapse", |v| v.parse::<usize>()),
            DEFAULT_COLLAPSE_THRESHOLD,
        )
        .context("collapse")?,
        measure,
    };
    Ok(config)
}

fn build_experiment_spec(args: &ExpArgs) -> anyhow::Result<ExperimentSpec> {
    let kind = ExperimentKind::from_name(&args.name)?;
    let MeasureFile { measure, params } = load_measure(&args.measure)?;
    let n = measure.strands();
    let start_text = args
        .start
        .clone()
        .or_else(|| params.get("start").cloned())
        .unwrap_or_default();
    let steps = pick(
        args.steps,
        file_param(&params, "steps", |v| v.parse::<u64>()),
        64,
    )
    .context("steps")?;
    let mut checkpoints = pick(
        args.checkpoints.as_deref().map(parse_checkpoints).transpose()?,
        file_param(&params, "checkpoints", parse_checkpoints),
        Vec::new(),
    )?;
    if checkpoints.is_empty() && kind == ExperimentKind::Transience {
        // Transience is about every step, not a sparse sample.
        checkpoints = (1..=steps).collect();
    }
    let walk = WalkConfig {
        start: parse_word(&start_text, n)?,
        steps,
        trials: pick(
            args.trials,
            file_param(&params, "trials", |v| v.parse::<u64>()),
            50,
        )
        .context("trials")?,
        seed: pick(
            args.seed,
            file_param(&params, "seed", |v| v.parse::<u64>()),
            1,
        )
        .context("seed")?,
        checkpoints,
        functionals: Vec::new(),
        collapse_threshold: pick(
            args.collapse,
            file_param(&params, "collapse", |v| v.parse::<usize>()),
            DEFAULT_COLLAPSE_THRESHOLD,
        )
        .context("collapse")?,
        measure,
    };
    Ok(ExperimentSpec {
        kind,
        walk,
        c_threshold: pick(
            args.c_threshold.as_deref().map(parse_rational).transpose()?,
            file_param(&params, "C", parse_rat),
            rat_int(1),
        )?,
        genus_cutoff: pick(
            args.g,
            file_param(&params, "g", |v| v.parse::<i64>()),
            1,
        )
        .context("g")?,
        fdtc_cutoff: match args.r.as_deref() {
            Some(v) => Some(parse_rational(v)?),
            None => params.get("r").map(|v| parse_rat(v)).transpose()?,
        },
        q_max: pick(
            args.qmax,
            file_param(&params, "qmax", |v| v.parse::<u64>()),
            DEFAULT_QMAX,
        )
        .context("qmax")?,
        k_max: pick(
            args.kmax,
            file_param(&params, "kmax", |v| v.parse::<i64>()),
            DEFAULT_KMAX,
        )
        .context("kmax")?,
        defect: pick(
            args.defect.as_deref().map(parse_rational).transpose()?,
            file_param(&params, "defect", parse_rat),
            rat_int(2),
        )?,
        conjugacy_budget: pick(
            args.budget,
            file_param(&params, "budget", |v| v.parse::<u64>()),
            DEFAULT_CONJUGACY_BUDGET,
        )
        .context("budget")?,
    })
}

fn render_value(v: &Option<BigRational>) -> String {
    match v {
        Some(v) => rat_str(v),
        None => "undefined".to_string(),
    }
}

fn print_walk_records(config: &WalkConfig, records: &[walk::WalkRecord], json: bool) {
    if json {
        for r in records {
            let mut fields = vec![
                format!("\"trial\":{}", r.trial),
                format!("\"k\":{}", r.k),
                format!("\"len\":{}", r.len),
            ];
            for (name, value) in config.functionals.iter().zip(&r.values) {
                let rendered = match value {
                    Some(v) => format!("\"{}\"", rat_str(v)),
                    None => "null".to_string(),
                };
                fields.push(format!("\"{}\":{}", name, rendered));
            }
            outln!("{{{}}}", fields.join(","));
        }
    } else {
        outln!("trial,k,len,{}", config.functionals.join(","));
        for r in records {
            let values: Vec<String> = r.values.iter().map(render_value).collect();
            outln!("{},{},{},{}", r.trial, r.k, r.len, values.join(","));
        }
    }
}

fn inconclusive_rows(output: &str) -> bool {
    let mut lines = output.lines().filter(|l| !l.starts_with('#'));
    let Some(header) = lines.next() else {
        return false;
    };
    let Some(col) = header.split(',').position(|c| c == "inconclusive") else {
        return false;
    };
    lines.any(|row| {
        row.split(',')
            .nth(col)
            .and_then(|v| v.parse::<u64>().ok())
            .map_or(false, |v| v > 0)
    })
}

fn run(command: Command) -> anyhow::Result<i32> {
    match command {
        Command::Nf { n, word } => {
            let w = parse_word(&word, n)?;
            let nf = garside::left_normal_form(&w);
            outln!("delta_power = {}", nf.delta_power());
            outln!("canonical_length = {}", nf.canonical_length());
            for factor in nf.factors() {
                outln!("factor = {}", garside::simple_word(factor));
            }
            outln!("word = {}", garside::collapse(&w));
            Ok(0)
        }
        Command::Eq { n, a, b } => {
            let a = parse_word(&a, n)?;
            let b = parse_word(&b, n)?;
            outln!(
                "{}",
                if garside::equals(&a, &b)? {
                    "equal"
                } else {
                    "different"
                }
            );
            Ok(0)
        }
        Command::Conj { n, a, b, budget } => {
            let a = parse_word(&a, n)?;
            let b = parse_word(&b, n)?;
            match garside::are_conjugate(&a, &b, budget) {
                Ok(cert) => {
                    if cert.conjugate {
                        outln!("conjugate");
                        if let Some(w) = cert.witness {
                            outln!("witness = {}", w);
                        }
                    } else {
                        outln!("not conjugate");
                    }
                    Ok(0)
                }
                Err(CoreError::BudgetExceeded { .. }) => {
                    outln!("inconclusive (budget exhausted)");
                    Ok(3)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Sign { n, word } => {
            let w = parse_word(&word, n)?;
            let sign = dehornoy::order_sign(&w)?;
            outln!(
                "{}",
                match sign {
                    dehornoy::OrderSign::Positive => "positive",
                    dehornoy::OrderSign::Negative => "negative",
                    dehornoy::OrderSign::Zero => "zero",
                }
            );
            Ok(0)
        }
        Command::Cmp { n, a, b } => {
            let a = parse_word(&a, n)?;
            let b = parse_word(&b, n)?;
            outln!(
                "{}",
                match dehornoy::compare(&a, &b)? {
                    std::cmp::Ordering::Less => "less",
                    std::cmp::Ordering::Equal => "equal",
                    std::cmp::Ordering::Greater => "greater",
                }
            );
            Ok(0)
        }
        Command::Floor { n, word } => {
            let w = parse_word(&word, n)?;
            outln!("{}", dehornoy::dehornoy_floor(&w)?.floor);
            Ok(0)
        }
        Command::Fdtc {
            n,
            word,
            qmax,
            kmax,
            defect,
        } => {
            let w = parse_word(&word, n)?;
            let defect = parse_rational(&defect)?;
            match fdtc::fdtc_exact(&w, qmax, kmax, &defect) {
                Ok(est) => {
                    outln!(
                        "interval = [{}, {}]",
                        rat_str(&est.interval.lo),
                        rat_str(&est.interval.hi)
                    );
                    match &est.exact {
                        Some(v) => outln!("exact = {}", rat_str(v)),
                        None => outln!("exact = none"),
                    }
                    outln!("power_used = {}", est.power_used);
                    Ok(if est.exact.is_some() { 0 } else { 3 })
                }
                Err(CoreError::BudgetExceeded { .. }) => {
                    outln!("inconclusive (budget exhausted)");
                    Ok(3)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Inv {
            n,
            word,
            fdtc: with_fdtc,
            qmax,
            kmax,
            defect,
            json,
        } => {
            let w = parse_word(&word, n)?;
            let mut report = invariants::invariant_report(&w);
            let mut fdtc_est = None;
            if with_fdtc {
                let defect = parse_rational(&defect)?;
                if let Ok(est) = fdtc::fdtc_exact(&w, qmax, kmax, &defect) {
                    report.fdtc_genus_bound =
                        Some(fdtc::genus_lower_bound_from_fdtc(&est));
                    fdtc_est = Some(est);
                }
            }
            let nonalt = report.s.map(|s| {
                invariants::nonalternating_certificate(
                    report.signature,
                    &s,
                    invariants::AlternatingConvention::default(),
                )
            });
            if json {
                let opt_int = |v: Option<i64>| {
                    v.map(|x| x.to_string()).unwrap_or_else(|| "null".into())
                };
                let mut fields = vec![
                    format!("\"exponent_sum\":{}", report.exponent_sum),
                    format!("\"components\":{}", report.components),
                    format!("\"signature\":{}", report.signature),
                    format!("\"alexander\":\"{}\"", report.alexander),
                    format!("\"s_lo\":{}", opt_int(report.s.map(|s| s.lo))),
                    format!("\"s_hi\":{}", opt_int(report.s.map(|s| s.hi))),
                    format!(
                        "\"diagram_genus_bound\":{}",
                        opt_int(report.diagram_genus_bound)
                    ),
                    format!(
                        "\"g4_lower\":{}",
                        report
                            .g4_lower
                            .as_ref()
                            .map(|v| format!("\"{}\"", rat_str(v)))
                            .unwrap_or_else(|| "null".into())
                    ),
                    format!(
                        "\"nonalternating\":{}",
                        nonalt
                            .map(|b| b.to_string())
                            .unwrap_or_else(|| "null".into())
                    ),
                ];
                if with_fdtc {
                    fields.push(format!(
                        "\"fdtc_genus_bound\":{}",
                        report
                            .fdtc_genus_bound
                            .as_ref()
                            .map(|v| format!("\"{}\"", rat_str(v)))
                            .unwrap_or_else(|| "null".into())
                    ));
                }
                outln!("{{{}}}", fields.join(","));
            } else {
                outln!("exponent_sum = {}", report.exponent_sum);
                outln!("components = {}", report.components);
                outln!("signature = {}", report.signature);
                outln!("alexander = {}", report.alexander);
                match report.s {
                    Some(s) => outln!("s_interval = [{}, {}]", s.lo, s.hi),
                    None => outln!("s_interval = undefined (link)"),
                }
                match report.diagram_genus_bound {
                    Some(g) => outln!("diagram_genus_bound = {}", g),
                    None => outln!("diagram_genus_bound = undefined (split)"),
                }
                match &report.g4_lower {
                    Some(v) => outln!("g4_lower = {}", rat_str(v)),
                    None => outln!("g4_lower = undefined (link)"),
                }
                match nonalt {
                    Some(b) => outln!("nonalternating = {}", b),
                    None => outln!("nonalternating = undefined (link)"),
                }
                if with_fdtc {
                    match fdtc_est {
                        Some(est) => {
                            outln!(
                                "fdtc_interval = [{}, {}]",
                                rat_str(&est.interval.lo),
                                rat_str(&est.interval.hi)
                            );
                            match &est.exact {
                                Some(v) => outln!("fdtc_exact = {}", rat_str(v)),
                                None => outln!("fdtc_exact = none"),
                            }
                            outln!(
                                "fdtc_genus_bound = {}",
                                rat_str(report.fdtc_genus_bound.as_ref().unwrap())
                            );
                        }
                        None => outln!("fdtc_interval = undefined (budget exhausted)"),
                    }
                }
            }
            Ok(0)
        }
        Command::Defect {
            functional,
            n,
            max_len,
            random,
            seed,
        } => {
            let f = quasimorphism::lookup(&functional)?;
            let source = match random {
                Some(pairs) => quasimorphism::PairSource::Random {
                    strands: n,
                    max_len,
                    pairs,
                    seed,
                },
                None => quasimorphism::PairSource::ExhaustiveFreelyReduced {
                    strands: n,
                    max_len,
                },
            };
            let report = quasimorphism::defect_scan(&f, &source)?;
            outln!("max_observed = {}", rat_str(&report.max_observed));
            match &report.argmax {
                Some((g, h)) => {
                    outln!("argmax_g = {}", g);
                    outln!("argmax_h = {}", h);
                }
                None => outln!("argmax = none"),
            }
            outln!("pairs_scanned = {}", report.pairs_scanned);
            outln!("pairs_skipped = {}", report.pairs_skipped);
            Ok(0)
        }
        Command::Probe {
            functional,
            measure,
            max_len,
            beam,
        } => {
            let f = quasimorphism::lookup(&functional)?;
            let MeasureFile { measure, .. } = load_measure(&measure)?;
            let table = quasimorphism::unboundedness_probe(&measure, &f, max_len, beam)?;
            outln!("len,max_abs_value");
            for (level, value) in table {
                outln!("{},{}", level, rat_str(&value));
            }
            Ok(0)
        }
        Command::Walk(args) => {
            let config = build_walk_config(&args)?;
            let records = walk::run_trials(&config, args.threads)?;
            print_walk_records(&config, &records, args.json);
            Ok(0)
        }
        Command::Exp(args) => {
            let spec = build_experiment_spec(&args)?;
            let output = experiments::run_experiment(&spec, args.threads)?;
            out!("{output}");
            Ok(if inconclusive_rows(&output) { 3 } else { 0 })
        }
        Command::Replay { file, threads } => {
            let text = std::fs::read_to_string(&file)
                .with_context(|| format!("reading {}", file.display()))?;
            let output = experiments::replay(&text, threads)?;
            out!("{output}");
            Ok(if inconclusive_rows(&output) { 3 } else { 0 })
        }
    }
}
