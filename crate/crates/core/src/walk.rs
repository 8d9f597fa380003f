//! Random walks on a braid group driven by a finitely supported step
//! distribution with exact rational weights.
//!
//! Sampling is exact (common-denominator thresholds, no floating point),
//! trials run on independent generator substreams, and the walking word is
//! kept short by free reduction at every step plus a normal-form rewrite
//! once it grows past a threshold — so records are reproducible bit for
//! bit at any thread count.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::garside;
use crate::quasimorphism::{self, Functional};
use crate::rng::{substream_rng, uniform_below};
use crate::word::BraidWord;

/// Rewrite the walking word through its normal form once its letter count
/// exceeds this, keeping later functional evaluations affordable.
pub const DEFAULT_COLLAPSE_THRESHOLD: usize = 512;

/// A finitely supported step distribution: words with positive rational
/// weights summing to exactly 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Measure {
    strands: usize,
    atoms: Vec<(BraidWord, BigRational)>,
    /// Cumulative weight numerators over the common denominator; the last
    /// entry equals the denominator.
    cumulative: Vec<u64>,
    denominator: u64,
}

impl Measure {
    /// Validate and prepare a measure: every weight must be positive, the
    /// weights must sum to exactly 1, every atom must live on the same
    /// number of strands, and the common denominator must fit the exact
    /// integer sampler.
    pub fn new(strands: usize, atoms: Vec<(BraidWord, BigRational)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidMeasure("a measure needs at least one atom".into()));
        }
        let mut total = BigRational::zero();
        let mut denom = BigInt::one();
        for (word, weight) in &atoms {
            if word.strands() != strands {
                return Err(Error::InvalidMeasure(format!(
                    "atom on {} strands in a measure on {} strands",
                    word.strands(),
                    strands
                )));
            }
            if !weight.is_positive() {
                return Err(Error::InvalidMeasure(format!(
                    "weight {} is not positive",
                    weight
                )));
            }
            total += weight;
            denom = denom.lcm(weight.denom());
        }
        if !total.is_one() {
            return Err(Error::InvalidMeasure(format!(
                "weights sum to {}, not 1",
                total
            )));
        }
        let denominator = denom
            .to_u64()
            .ok_or_else(|| Error::InvalidMeasure("common denominator exceeds 64 bits".into()))?;
        let mut cumulative = Vec::with_capacity(atoms.len());
        let mut acc: u64 = 0;
        for (_, weight) in &atoms {
            let scaled = (weight * BigRational::from(denom.clone()))
                .to_integer()
                .to_u64()
                .expect("scaled weight fits after the denominator check");
            acc += scaled;
            cumulative.push(acc);
        }
        debug_assert_eq!(acc, denominator);
        Ok(Measure {
            strands,
            atoms,
            cumulative,
            denominator,
        })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn atoms(&self) -> &[(BraidWord, BigRational)] {
        &self.atoms
    }

    /// Draw one atom index with exactly the declared probabilities.
    pub fn sample_index(&self, rng: &mut ChaCha8Rng) -> usize {
        let r = uniform_below(rng, self.denominator);
        self.cumulative.partition_point(|&c| c <= r)
    }
}

/// Replace every token of the form `D2^k` (k a signed integer) with the
/// letters of the k-th power of the full twist on `strands` strands.
pub fn expand_macros(text: &str, strands: usize) -> Result<String> {
    let mut out: Vec<String> = Vec::new();
    for token in text.split_whitespace() {
        if let Some(exp) = token.strip_prefix("D2^") {
            let k: i64 = exp
                .parse()
                .map_err(|_| Error::Parse(format!("bad full-twist power '{token}'")))?;
            let twist = BraidWord::full_twist_power(strands, k)?;
            for &l in twist.letters() {
                out.push(l.to_string());
            }
        } else {
            out.push(token.to_string());
        }
    }
    Ok(out.join(" "))
}

/// Parse the text form of a measure, returning the measure plus any
/// `key = value` parameter lines for the caller to interpret.
///
/// Format: `#` starts a comment; the first content line is `n=<strands>`;
/// every other content line is either `key = value` or an atom line
/// `<weight> <word>`, where the word may use the `D2^k` macro and may be
/// empty (an identity step).
pub fn parse_measure_text(text: &str) -> Result<(Measure, Vec<(String, String)>)> {
    let mut strands: Option<usize> = None;
    let mut atoms: Vec<(BraidWord, BigRational)> = Vec::new();
    let mut params: Vec<(String, String)> = Vec::new();
    for raw in text.lines() {
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if strands.is_none() {
            let rest = line
                .strip_prefix("n")
                .map(str::trim_start)
                .and_then(|r| r.strip_prefix("="))
                .ok_or_else(|| {
                    Error::Parse(format!("expected 'n=<strands>' first, found '{line}'"))
                })?;
            let n: usize = rest
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad strand count '{}'", rest.trim())))?;
            strands = Some(n);
            continue;
        }
        if let Some((key, value)) = line.split_once('=') {
            params.push((key.trim().to_string(), value.trim().to_string()));
            continue;
        }
        let n = strands.unwrap();
        let (weight_text, word_text) = match line.split_once(char::is_whitespace) {
            Some((w, rest)) => (w, rest),
            None => (line, ""),
        };
        let weight = crate::rat::parse_rat(weight_text)?;
        let word = BraidWord::parse(&expand_macros(word_text, n)?, n)?;
        atoms.push((word, weight));
    }
    let strands =
        strands.ok_or_else(|| Error::Parse("measure text has no 'n=<strands>' line".into()))?;
    let measure = Measure::new(strands, atoms)?;
    Ok((measure, params))
}

/// Full description of a walk study: the step distribution, where to
/// start, how long and how often to sample, and which functionals to
/// record.
#[derive(Debug, Clone)]
pub struct WalkConfig {
    pub measure: Measure,
    pub start: BraidWord,
    pub steps: u64,
    pub trials: u64,
    pub seed: u64,
    /// Strictly increasing steps at which to record; empty means record
    /// at the final step only.
    pub checkpoints: Vec<u64>,
    /// Names resolved against the functional registry.
    pub functionals: Vec<String>,
    pub collapse_threshold: usize,
}

impl WalkConfig {
    pub fn effective_checkpoints(&self) -> Vec<u64> {
        if self.checkpoints.is_empty() {
            vec![self.steps]
        } else {
            self.checkpoints.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.start.strands() != self.measure.strands() {
            return Err(Error::StrandMismatch {
                left: self.start.strands(),
                right: self.measure.strands(),
            });
        }
        if self.steps == 0 {
            return Err(Error::Config("a walk needs at least one step".into()));
        }
        if self.trials == 0 {
            return Err(Error::Config("a walk needs at least one trial".into()));
        }
        let cps = &self.checkpoints;
        if !cps.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Config(
                "checkpoints must be strictly increasing".into(),
            ));
        }
        if let (Some(&first), Some(&last)) = (cps.first(), cps.last()) {
            if first == 0 || last > self.steps {
                return Err(Error::Config(format!(
                    "checkpoints must lie in 1..={}",
                    self.steps
                )));
            }
        }
        for name in &self.functionals {
            quasimorphism::lookup(name)?;
        }
        Ok(())
    }
}

/// One sampled observation: the walk position's length and functional
/// values (in the order the config lists them; `None` marks a functional
/// that was undefined or over budget on this word).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkRecord {
    pub trial: u64,
    pub k: u64,
    pub len: usize,
    pub values: Vec<Option<BigRational>>,
}

/// Drive one trial's walk, invoking `visit` at each checkpoint with the
/// maintained (freely reduced, possibly normal-form-rewritten) position.
fn walk_positions(
    config: &WalkConfig,
    trial: u64,
    mut visit: impl FnMut(u64, &BraidWord),
) -> Result<()> {
    let mut rng = substream_rng(config.seed, trial);
    let mut position = config.start.free_reduce();
    let checkpoints = config.effective_checkpoints();
    let mut next_cp = 0usize;
    for k in 1..=config.steps {
        let atom = &config.measure.atoms()[config.measure.sample_index(&mut rng)].0;
        position = position.compose(atom)?;
        if position.len() > config.collapse_threshold {
            position = garside::collapse(&position);
        }
        if next_cp < checkpoints.len() && checkpoints[next_cp] == k {
            visit(k, &position);
            next_cp += 1;
        }
    }
    Ok(())
}

/// The checkpointed positions of one trial.
pub fn sample_positions(config: &WalkConfig, trial: u64) -> Result<Vec<(u64, BraidWord)>> {
    let mut out = Vec::new();
    walk_positions(config, trial, |k, w| out.push((k, w.clone())))?;
    Ok(out)
}

/// One trial's records, evaluating the config's functionals at every
/// checkpoint. Evaluation failures (links where a knot is required,
/// budget exhaustion, ...) are recorded as undefined, never aborting.
pub fn sample_path(config: &WalkConfig, trial: u64) -> Result<Vec<WalkRecord>> {
    let functionals: Vec<Functional> = config
        .functionals
        .iter()
        .map(|n| quasimorphism::lookup(n))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    walk_positions(config, trial, |k, w| {
        let values = functionals.iter().map(|f| f.eval(w).ok()).collect();
        out.push(WalkRecord {
            trial,
            k,
            len: w.len(),
            values,
        });
    })?;
    Ok(out)
}

/// Run a function over trial indices on a dedicated thread pool, returning
/// results in trial order regardless of scheduling. `threads == 0` uses
/// the library default.
pub(crate) fn over_trials<T: Send>(
    trials: u64,
    threads: usize,
    job: impl Fn(u64) -> Result<T> + Sync,
) -> Result<Vec<T>> {
    use rayon::prelude::*;
    let run = || (0..trials).into_par_iter().map(|t| job(t)).collect();
    if threads == 0 {
        run()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
        pool.install(run)
    }
}

/// All trials' records, sorted by (trial, step). Deterministic for a
/// given config at any thread count.
pub fn run_trials(config: &WalkConfig, threads: usize) -> Result<Vec<WalkRecord>> {
    config.validate()?;
    let per_trial = over_trials(config.trials, threads, |t| sample_path(config, t))?;
    let mut records: Vec<WalkRecord> = per_trial.into_iter().flatten().collect();
    records.sort_by_key(|r| (r.trial, r.k));
    Ok(records)
}

/// Per-checkpoint tally of how often a functional's recorded magnitude
/// stays within a threshold. Undefined values are excluded from both
/// sides of the fraction but counted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EscapeRow {
    pub k: u64,
    pub within: u64,
    pub defined: u64,
    pub undefined: u64,
}

impl EscapeRow {
    /// `within / defined`, or `None` when nothing was defined.
    pub fn fraction(&self) -> Option<BigRational> {
        if self.defined == 0 {
            None
        } else {
            Some(BigRational::new(
                BigInt::from(self.within),
                BigInt::from(self.defined),
            ))
        }
    }
}

/// Tally `|value| <= c` per checkpoint for the named functional.
pub fn empirical_escape(
    config: &WalkConfig,
    records: &[WalkRecord],
    functional: &str,
    c: &BigRational,
) -> Result<Vec<EscapeRow>> {
    let index = config
        .functionals
        .iter()
        .position(|n| n == functional)
        .ok_or_else(|| Error::UnknownFunctional(functional.to_string()))?;
    let mut rows: BTreeMap<u64, EscapeRow> = BTreeMap::new();
    for record in records {
        let row = rows.entry(record.k).or_insert(EscapeRow {
            k: record.k,
            within: 0,
            defined: 0,
            undefined: 0,
        });
        match &record.values[index] {
            Some(v) => {
                row.defined += 1;
                if v.abs() <= *c {
                    row.within += 1;
                }
            }
            None => row.undefined += 1,
        }
    }
    Ok(rows.into_values().collect())
}

/// How often records satisfying a predicate occur: in total, per trial,
/// and the last step at which one occurred.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VisitStats {
    pub total: u64,
    pub last_visit_step: Option<u64>,
    /// (trial, matching record count), for every trial present in the
    /// records, in trial order.
    pub per_trial: Vec<(u64, u64)>,
}

pub fn visit_statistics(
    records: &[WalkRecord],
    predicate: impl Fn(&WalkRecord) -> bool,
) -> VisitStats {
    let mut per_trial: BTreeMap<u64, u64> = BTreeMap::new();
    let mut total = 0;
    let mut last_visit_step = None;
    for record in records {
        per_trial.entry(record.trial).or_insert(0);
        if predicate(record) {
            total += 1;
            *per_trial.get_mut(&record.trial).unwrap() += 1;
            last_visit_step = last_visit_step.max(Some(record.k));
        }
    }
    VisitStats {
        total,
        last_visit_step,
        per_trial: per_trial.into_iter().collect(),
    }
}
