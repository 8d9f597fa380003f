//! Named walk experiments with self-describing, replayable text output.
//!
//! Every run emits a header of `# key = value` lines that completely
//! determines the run (measure, seed, budgets, thresholds), followed by
//! CSV rows. `replay` parses that header back into a spec and reruns it;
//! because trials use per-trial generator substreams and aggregation is
//! order-independent, the output is identical byte for byte at any thread
//! count.

use num::{BigInt, BigRational, Signed, Zero};

use crate::error::{Error, Result};
use crate::fdtc;
use crate::garside;
use crate::invariants;
use crate::rat::{parse_rat, rat_dec, rat_int, rat_str};
use crate::rng::RNG_NAME;
use crate::walk::{self, WalkConfig};
use crate::word::BraidWord;

const FORMAT_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    /// Fraction of trials whose translation-number estimate stays within
    /// a threshold, per checkpoint — and the fraction beyond 1.
    FdtcEscape,
    /// Mean translation-number genus bound per checkpoint, and the
    /// fraction exceeding a cutoff.
    GenusGrowth,
    /// Independent walk pairs: how often both translation numbers clear a
    /// cutoff, and how often pairs with equal cheap invariants are
    /// actually conjugate.
    Conjugacy,
    /// Per-trial counts of checkpoints where the diagram's surface genus
    /// stays at or below a cutoff, with a letter-count audit of every
    /// visited word.
    Transience,
    /// Fraction of trials whose 4-genus lower bound exceeds a cutoff.
    Slice,
    /// Fraction of trials where the non-alternating certificate fires.
    Alternating,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 6] = [
        ExperimentKind::FdtcEscape,
        ExperimentKind::GenusGrowth,
        ExperimentKind::Conjugacy,
        ExperimentKind::Transience,
        ExperimentKind::Slice,
        ExperimentKind::Alternating,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::FdtcEscape => "fdtc-escape",
            ExperimentKind::GenusGrowth => "genus-growth",
            ExperimentKind::Conjugacy => "conjugacy",
            ExperimentKind::Transience => "transience",
            ExperimentKind::Slice => "slice",
            ExperimentKind::Alternating => "alternating",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == name)
            .ok_or_else(|| Error::Config(format!("unknown experiment '{name}'")))
    }
}

/// A fully pinned experiment: the walk plus every threshold and budget the
/// analysis uses. Rendering the spec into an output header and parsing it
/// back is lossless.
#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub kind: ExperimentKind,
    pub walk: WalkConfig,
    /// Magnitude threshold `C` (escape fraction, genus cutoffs, ...).
    pub c_threshold: BigRational,
    /// Genus cutoff `g` for the transience predicate.
    pub genus_cutoff: i64,
    /// Translation-number cutoff `r` (conjugacy experiment only).
    pub fdtc_cutoff: Option<BigRational>,
    /// Denominator bound for exact translation-number recovery.
    pub q_max: u64,
    /// Largest power used by translation-number estimates.
    pub k_max: i64,
    /// Additivity-gap bound used for translation-number error bands.
    pub defect: BigRational,
    /// Search budget for conjugacy decisions.
    pub conjugacy_budget: u64,
}

pub const DEFAULT_QMAX: u64 = 8;
pub const DEFAULT_KMAX: i64 = 16;
pub const DEFAULT_CONJUGACY_BUDGET: u64 = 10_000;

fn render_header(spec: &ExperimentSpec) -> String {
    let w = &spec.walk;
    let mut out = String::new();
    let mut line = |key: &str, value: String| {
        out.push_str(&format!("# {} = {}\n", key, value));
    };
    line("experiment", spec.kind.name().to_string());
    line("format", FORMAT_VERSION.to_string());
    line("rng", RNG_NAME.to_string());
    line("n", w.measure.strands().to_string());
    line("seed", w.seed.to_string());
    line("trials", w.trials.to_string());
    line("steps", w.steps.to_string());
    line(
        "checkpoints",
        w.effective_checkpoints()
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(" "),
    );
    line("start", w.start.to_string());
    line("collapse", w.collapse_threshold.to_string());
    for (word, weight) in w.measure.atoms() {
        line("atom", format!("{} {}", rat_str(weight), word));
    }
    line("C", rat_str(&spec.c_threshold));
    line("g", spec.genus_cutoff.to_string());
    if let Some(r) = &spec.fdtc_cutoff {
        line("r", rat_str(r));
    }
    line("qmax", spec.q_max.to_string());
    line("kmax", spec.k_max.to_string());
    line("defect", rat_str(&spec.defect));
    line("budget", spec.conjugacy_budget.to_string());
    out
}

/// Rebuild a spec from the header of a previous run's output.
pub fn parse_experiment_output(text: &str) -> Result<ExperimentSpec> {
    let mut kv: Vec<(String, String)> = Vec::new();
    for line in text.lines() {
        let Some(rest) = line.strip_prefix("# ") else {
            break;
        };
        let (key, value) = rest
            .split_once(" = ")
            .ok_or_else(|| Error::Parse(format!("malformed header line '{line}'")))?;
        kv.push((key.to_string(), value.to_string()));
    }
    let get = |key: &str| -> Result<&str> {
        kv.iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
            .ok_or_else(|| Error::Parse(format!("output header is missing '{key}'")))
    };
    let format = get("format")?;
    if format != FORMAT_VERSION {
        return Err(Error::Parse(format!(
            "unsupported output format '{format}'"
        )));
    }
    let rng = get("rng")?;
    if rng != RNG_NAME {
        return Err(Error::Parse(format!(
            "output was produced by generator '{rng}', not '{RNG_NAME}'"
        )));
    }
    let parse_int = |key: &str| -> Result<i64> {
        get(key)?
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad integer for '{key}'")))
    };
    let n = parse_int("n")? as usize;
    let mut atoms = Vec::new();
    for (key, value) in &kv {
        if key != "atom" {
            continue;
        }
        let (weight_text, word_text) = match value.split_once(char::is_whitespace) {
            Some((w, rest)) => (w, rest),
            None => (value.as_str(), ""),
        };
        let weight = parse_rat(weight_text)?;
        let word = BraidWord::parse(word_text, n)?;
        atoms.push((word, weight));
    }
    let checkpoints: Vec<u64> = get("checkpoints")?
        .split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| Error::Parse(format!("bad checkpoint '{t}'")))
        })
        .collect::<Result<_>>()?;
    let walk = WalkConfig {
        measure: walk::Measure::new(n, atoms)?,
        start: BraidWord::parse(get("start")?, n)?,
        steps: parse_int("steps")? as u64,
        trials: parse_int("trials")? as u64,
        seed: get("seed")?
            .trim()
            .parse()
            .map_err(|_| Error::Parse("bad seed".into()))?,
        checkpoints,
        functionals: Vec::new(),
        collapse_threshold: parse_int("collapse")? as usize,
    };
    Ok(ExperimentSpec {
        kind: ExperimentKind::from_name(get("experiment")?)?,
        walk,
        c_threshold: parse_rat(get("C")?)?,
        genus_cutoff: parse_int("g")?,
        fdtc_cutoff: match kv.iter().find(|(k, _)| k == "r") {
            Some((_, v)) => Some(parse_rat(v)?),
            None => None,
        },
        q_max: parse_int("qmax")? as u64,
        k_max: parse_int("kmax")?,
        defect: parse_rat(get("defect")?)?,
        conjugacy_budget: parse_int("budget")? as u64,
    })
}

fn frac_cols(num: u64, den: u64) -> (String, String) {
    if den == 0 {
        ("na".to_string(), "na".to_string())
    } else {
        let f = BigRational::new(BigInt::from(num), BigInt::from(den));
        (rat_str(&f), rat_dec(&f))
    }
}

/// Evaluate one optional rational per checkpoint per trial, in parallel
/// over trials with deterministic ordering.
fn values_per_trial(
    spec: &ExperimentSpec,
    threads: usize,
    eval: impl Fn(&BraidWord) -> Option<BigRational> + Sync,
) -> Result<Vec<Vec<Option<BigRational>>>> {
    walk::over_trials(spec.walk.trials, threads, |t| {
        let positions = walk::sample_positions(&spec.walk, t)?;
        Ok(positions.iter().map(|(_, w)| eval(w)).collect())
    })
}

fn fdtc_point_value(spec: &ExperimentSpec, w: &BraidWord) -> Option<fdtc::FdtcEstimate> {
    fdtc::fdtc_exact(w, spec.q_max, spec.k_max, &spec.defect).ok()
}

fn escape_body(spec: &ExperimentSpec, threads: usize) -> Result<String> {
    let values = values_per_trial(spec, threads, |w| {
        fdtc_point_value(spec, w).map(|est| est.point_estimate())
    })?;
    let one = rat_int(1);
    let mut lines =
        vec!["k,frac_abs_le_C,frac_abs_le_C_dec,frac_abs_gt_1,frac_abs_gt_1_dec,defined,undefined".to_string()];
    for (i, k) in spec.walk.effective_checkpoints().iter().enumerate() {
        let (mut le, mut gt1, mut defined, mut undefined) = (0u64, 0u64, 0u64, 0u64);
        for trial in &values {
            match &trial[i] {
                Some(v) => {
                    defined += 1;
                    if v.abs() <= spec.c_threshold {
                        le += 1;
                    }
                    if v.abs() > one {
                        gt1 += 1;
                    }
                }
                None => undefined += 1,
            }
        }
        let (a, b) = frac_cols(le, defined);
        let (c, d) = frac_cols(gt1, defined);
        lines.push(format!("{k},{a},{b},{c},{d},{defined},{undefined}"));
    }
    Ok(lines.join("\n") + "\n")
}

fn genus_growth_body(spec: &ExperimentSpec, threads: usize) -> Result<String> {
    let values = values_per_trial(spec, threads, |w| {
        fdtc_point_value(spec, w).map(|est| fdtc::genus_lower_bound_from_fdtc(&est))
    })?;
    let mut lines = vec![
        "k,mean_genus_bound,mean_genus_bound_dec,frac_gt_C,frac_gt_C_dec,defined,undefined"
            .to_string(),
    ];
    for (i, k) in spec.walk.effective_checkpoints().iter().enumerate() {
        let (mut sum, mut gt, mut defined, mut undefined) =
            (BigRational::zero(), 0u64, 0u64, 0u64);
        for trial in &values {
            match &trial[i] {
                Some(v) => {
                    defined += 1;
                    sum += v;
                    if *v > spec.c_threshold {
                        gt += 1;
                    }
                }
                None => undefined += 1,
            }
        }
        let (mean, mean_dec) = if defined == 0 {
            ("na".to_string(), "na".to_string())
        } else {
            let mean = sum / rat_int(defined as i64);
            (rat_str(&mean), rat_dec(&mean))
        };
        let (f, fd) = frac_cols(gt, defined);
        lines.push(format!("{k},{mean},{mean_dec},{f},{fd},{defined},{undefined}"));
    }
    Ok(lines.join("\n") + "\n")
}

fn slice_body(spec: &ExperimentSpec, threads: usize) -> Result<String> {
    let values = values_per_trial(spec, threads, |w| {
        let s = invariants::s_interval(w).ok()?;
        Some(invariants::g4_lower_bound(invariants::signature(w), &s))
    })?;
    let mut lines = vec!["k,frac_g4_gt_C,frac_g4_gt_C_dec,defined,undefined".to_string()];
    for (i, k) in spec.walk.effective_checkpoints().iter().enumerate() {
        let (mut gt, mut defined, mut undefined) = (0u64, 0u64, 0u64);
        for trial in &values {
            match &trial[i] {
                Some(v) => {
                    defined += 1;
                    if *v > spec.c_threshold {
                        gt += 1;
                    }
                }
                None => undefined += 1,
            }
        }
        let (f, fd) = frac_cols(gt, defined);
        lines.push(format!("{k},{f},{fd},{defined},{undefined}"));
    }
    Ok(lines.join("\n") + "\n")
}

fn alternating_body(spec: &ExperimentSpec, threads: usize) -> Result<String> {
    let values = values_per_trial(spec, threads, |w| {
        let fired = match invariants::s_interval(w) {
            Ok(s) => invariants::nonalternating_certificate(
                invariants::signature(w),
                &s,
                invariants::AlternatingConvention::default(),
            ),
            Err(_) => false,
        };
        Some(rat_int(fired as i64))
    })?;
    let one = rat_int(1);
    let mut lines = vec!["k,frac_certified,frac_certified_dec,defined,undefined".to_string()];
    for (i, k) in spec.walk.effective_checkpoints().iter().enumerate() {
        let (mut fired, mut defined, mut undefined) = (0u64, 0u64, 0u64);
        for trial in &values {
            match &trial[i] {
                Some(v) => {
                    defined += 1;
                    if *v == one {
                        fired += 1;
                    }
                }
                None => undefined += 1,
            }
        }
        let (f, fd) = frac_cols(fired, defined);
        lines.push(format!("{k},{f},{fd},{defined},{undefined}"));
    }
    Ok(lines.join("\n") + "\n")
}

fn transience_body(spec: &ExperimentSpec, threads: usize) -> Result<String> {
    struct Row {
        k: u64,
        genus: i64,
        sigma1: usize,
        blocks: usize,
    }
    let per_trial: Vec<Vec<Row>> = walk::over_trials(spec.walk.trials, threads, |t| {
        let positions = walk::sample_positions(&spec.walk, t)?;
        Ok(positions
            .into_iter()
            .map(|(k, w)| Row {
                k,
                genus: invariants::blockwise_genus_bound(&w),
                sigma1: w.letters().iter().filter(|l| l.abs() == 1).count(),
                blocks: w.sigma1_block_decomposition().part_count(),
            })
            .collect())
    })?;
    let mut lines = vec!["trial,visits,last_visit_k".to_string()];
    for (t, rows) in per_trial.iter().enumerate() {
        let visited: Vec<&Row> = rows.iter().filter(|r| r.genus <= spec.genus_cutoff).collect();
        let last = visited
            .last()
            .map(|r| r.k.to_string())
            .unwrap_or_else(|| "-".to_string());
        lines.push(format!("{t},{},{last}", visited.len()));
    }
    lines.push("# table = audit".to_string());
    lines.push("trial,k,sigma1_count,block_count,bound_ok".to_string());
    for (t, rows) in per_trial.iter().enumerate() {
        for r in rows.iter().filter(|r| r.genus <= spec.genus_cutoff) {
            let ok = (r.blocks <= 2 * r.sigma1 + 1) as u8;
            lines.push(format!("{t},{},{},{},{}", r.k, r.sigma1, r.blocks, ok));
        }
    }
    Ok(lines.join("\n") + "\n")
}

fn conjugacy_body(spec: &ExperimentSpec, threads: usize) -> Result<String> {
    let r_cut = spec.fdtc_cutoff.clone().ok_or_else(|| {
        Error::Config("the conjugacy experiment needs an fdtc cutoff r".into())
    })?;
    #[derive(PartialEq)]
    enum Outcome {
        NotMatched,
        Conjugate,
        NotConjugate,
        Inconclusive,
    }
    struct PairObs {
        a_val: Option<BigRational>,
        b_val: Option<BigRational>,
        outcome: Outcome,
    }
    let pairs: Vec<Vec<PairObs>> = walk::over_trials(spec.walk.trials, threads, |p| {
        let pa = walk::sample_positions(&spec.walk, 2 * p)?;
        let pb = walk::sample_positions(&spec.walk, 2 * p + 1)?;
        pa.iter()
            .zip(&pb)
            .map(|((_, wa), (_, wb))| {
                let a_val = fdtc_point_value(spec, wa).map(|e| e.point_estimate());
                let b_val = fdtc_point_value(spec, wb).map(|e| e.point_estimate());
                let matched = wa.closure_component_count() == wb.closure_component_count()
                    && invariants::signature(wa) == invariants::signature(wb)
                    && invariants::alexander_polynomial(wa)
                        == invariants::alexander_polynomial(wb);
                let outcome = if !matched {
                    Outcome::NotMatched
                } else {
                    match garside::are_conjugate(wa, wb, spec.conjugacy_budget) {
                        Ok(cert) if cert.conjugate => Outcome::Conjugate,
                        Ok(_) => Outcome::NotConjugate,
                        Err(Error::BudgetExceeded { .. }) => Outcome::Inconclusive,
                        Err(e) => return Err(e),
                    }
                };
                Ok(PairObs {
                    a_val,
                    b_val,
                    outcome,
                })
            })
            .collect()
    })?;
    let mut lines = vec![
        "k,pairs,fdtc_defined_pairs,both_fdtc_gt_r,frac_both_gt_r,frac_both_gt_r_dec,invariant_matched,conjugate,inconclusive,frac_conjugate,frac_conjugate_dec"
            .to_string(),
    ];
    for (i, k) in spec.walk.effective_checkpoints().iter().enumerate() {
        let (mut both_defined, mut both_gt) = (0u64, 0u64);
        let (mut matched, mut conjugate, mut inconclusive) = (0u64, 0u64, 0u64);
        for pair in &pairs {
            let obs = &pair[i];
            if let (Some(a), Some(b)) = (&obs.a_val, &obs.b_val) {
                both_defined += 1;
                if a.abs() > r_cut && b.abs() > r_cut {
                    both_gt += 1;
                }
            }
            match obs.outcome {
                Outcome::NotMatched => {}
                Outcome::Conjugate => {
                    matched += 1;
                    conjugate += 1;
                }
                Outcome::NotConjugate => matched += 1,
                Outcome::Inconclusive => {
                    matched += 1;
                    inconclusive += 1;
                }
            }
        }
        let (fb, fbd) = frac_cols(both_gt, both_defined);
        let (fc, fcd) = frac_cols(conjugate, matched - inconclusive);
        lines.push(format!(
            "{k},{},{both_defined},{both_gt},{fb},{fbd},{matched},{conjugate},{inconclusive},{fc},{fcd}",
            pairs.len()
        ));
    }
    Ok(lines.join("\n") + "\n")
}

/// Run an experiment and render its complete output (header plus CSV).
/// `threads == 0` uses the library default; the output is independent of
/// the thread count.
pub fn run_experiment(spec: &ExperimentSpec, threads: usize) -> Result<String> {
    spec.walk.validate()?;
    let body = match spec.kind {
        ExperimentKind::FdtcEscape => escape_body(spec, threads)?,
        ExperimentKind::GenusGrowth => genus_growth_body(spec, threads)?,
        ExperimentKind::Conjugacy => conjugacy_body(spec, threads)?,
        ExperimentKind::Transience => transience_body(spec, threads)?,
        ExperimentKind::Slice => slice_body(spec, threads)?,
        ExperimentKind::Alternating => alternating_body(spec, threads)?,
    };
    Ok(render_header(spec) + &body)
}

/// Parse a previous run's output and rerun it from its own header.
pub fn replay(output: &str, threads: usize) -> Result<String> {
    let spec = parse_experiment_output(output)?;
    run_experiment(&spec, threads)
}
