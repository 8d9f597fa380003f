//! A registry of named rational-valued functionals on braid words, plus
//! tools for studying them: empirical defect scans over word pairs,
//! power-averaged (homogenized) values with error bars, and a beam-search
//! probe for unbounded growth along a step distribution's support.

use std::sync::Arc;

use num::{BigRational, Signed, Zero};

use crate::dehornoy;
use crate::error::{Error, Result};
use crate::fdtc::{self, RationalInterval};
use crate::garside;
use crate::invariants;
use crate::rat::rat_int;
use crate::rng::{substream_rng, uniform_below};
use crate::walk::{Measure, DEFAULT_COLLAPSE_THRESHOLD};
use crate::word::BraidWord;

/// Budget parameters for the translation-number point estimates exposed
/// through the registry (`fdtc_mid`, `fdtc_genus`). Chosen so that small
/// torus words resolve to their exact values while a single evaluation
/// stays affordable inside a walk.
pub const FDTC_POINT_QMAX: u64 = 8;
pub const FDTC_POINT_KMAX: i64 = 16;
pub const FDTC_POINT_DEFECT: i64 = 2;

/// Whether equal group elements are guaranteed equal values (`Element`),
/// or the value may depend on the written word (`Word`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionalKind {
    Element,
    Word,
}

/// A named functional. Evaluation is pure and thread-safe; errors mean
/// the value is undefined on that word (wrong closure type, budget
/// exhaustion), not that the functional is broken.
#[derive(Clone)]
pub struct Functional {
    pub name: &'static str,
    pub kind: FunctionalKind,
    eval: Arc<dyn Fn(&BraidWord) -> Result<BigRational> + Send + Sync>,
}

impl Functional {
    fn new(
        name: &'static str,
        kind: FunctionalKind,
        eval: impl Fn(&BraidWord) -> Result<BigRational> + Send + Sync + 'static,
    ) -> Self {
        Functional {
            name,
            kind,
            eval: Arc::new(eval),
        }
    }

    pub fn eval(&self, w: &BraidWord) -> Result<BigRational> {
        (self.eval)(w)
    }
}

impl std::fmt::Debug for Functional {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Functional")
            .field("name", &self.name)
            .field("kind", &self.kind)
            .finish()
    }
}

fn fdtc_point(w: &BraidWord) -> Result<fdtc::FdtcEstimate> {
    fdtc::fdtc_exact(
        w,
        FDTC_POINT_QMAX,
        FDTC_POINT_KMAX,
        &rat_int(FDTC_POINT_DEFECT),
    )
}

/// All built-in functionals, in a fixed order.
///
/// Element-level entries depend only on the group element (or its closure);
/// word-level entries read the diagram as written: surface genus and the
/// block structure count letters, and the writhe interval sharpens to a
/// point only when the written word is positive.
pub fn registry() -> Vec<Functional> {
    vec![
        Functional::new("exp_sum", FunctionalKind::Element, |w| {
            Ok(rat_int(w.exponent_sum()))
        }),
        Functional::new("floor", FunctionalKind::Element, |w| {
            dehornoy::dehornoy_floor(w).map(|f| rat_int(f.floor))
        }),
        Functional::new("sigma", FunctionalKind::Element, |w| {
            Ok(rat_int(invariants::signature(w)))
        }),
        Functional::new("fdtc_mid", FunctionalKind::Element, |w| {
            fdtc_point(w).map(|est| est.point_estimate())
        }),
        Functional::new("fdtc_genus", FunctionalKind::Element, |w| {
            fdtc_point(w).map(|est| fdtc::genus_lower_bound_from_fdtc(&est))
        }),
        Functional::new("s_mid", FunctionalKind::Word, |w| {
            invariants::s_interval(w).map(|s| s.midpoint())
        }),
        Functional::new("g4_lower", FunctionalKind::Word, |w| {
            let s = invariants::s_interval(w)?;
            Ok(invariants::g4_lower_bound(invariants::signature(w), &s))
        }),
        Functional::new("n_alt", FunctionalKind::Word, |w| {
            // One-sided: multi-component closures report 0 (no certificate).
            let fired = match invariants::s_interval(w) {
                Ok(s) => invariants::nonalternating_certificate(
                    invariants::signature(w),
                    &s,
                    invariants::AlternatingConvention::default(),
                ),
                Err(_) => false,
            };
            Ok(rat_int(fired as i64))
        }),
        Functional::new("genus_bound", FunctionalKind::Word, |w| {
            Ok(rat_int(invariants::blockwise_genus_bound(w)))
        }),
        Functional::new("sigma1_count", FunctionalKind::Word, |w| {
            Ok(rat_int(
                w.letters().iter().filter(|l| l.abs() == 1).count() as i64
            ))
        }),
        Functional::new("block_count", FunctionalKind::Word, |w| {
            Ok(rat_int(w.sigma1_block_decomposition().part_count() as i64))
        }),
    ]
}

pub fn names() -> Vec<&'static str> {
    registry().iter().map(|f| f.name).collect()
}

pub fn lookup(name: &str) -> Result<Functional> {
    registry()
        .into_iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::UnknownFunctional(name.to_string()))
}

/// Power-averaged value with an error band: `f(w^k)/k` plus/minus
/// `defect/k`. For element-level `f` with defect at most `defect`, the
/// band contains the homogenization's limit. Long powers are rewritten
/// through their normal form before evaluation.
pub fn homogenize(
    f: &Functional,
    w: &BraidWord,
    k: i64,
    defect: &BigRational,
) -> Result<RationalInterval> {
    assert!(k >= 1, "homogenize needs a positive power");
    let mut p = w.power(k);
    if p.len() > DEFAULT_COLLAPSE_THRESHOLD {
        p = garside::collapse(&p);
    }
    let value = f.eval(&p)? / rat_int(k);
    let radius = defect / rat_int(k);
    Ok(RationalInterval::new(
        &value - &radius,
        &value + &radius,
    ))
}

/// Where a defect scan draws its word pairs from.
#[derive(Debug, Clone)]
pub enum PairSource {
    /// Every ordered pair of freely reduced words up to a length, in
    /// length-then-lexicographic order.
    ExhaustiveFreelyReduced { strands: usize, max_len: usize },
    /// Seeded random pairs of freely reduced words of length 1..=max_len.
    Random {
        strands: usize,
        max_len: usize,
        pairs: u64,
        seed: u64,
    },
    Explicit(Vec<(BraidWord, BraidWord)>),
}

/// Largest observed value of `|f(gh) - f(g) - f(h)|` over a pair sample.
/// Pairs on which any of the three evaluations is undefined are skipped
/// and counted.
#[derive(Debug, Clone)]
pub struct DefectReport {
    pub max_observed: BigRational,
    pub argmax: Option<(BraidWord, BraidWord)>,
    pub pairs_scanned: u64,
    pub pairs_skipped: u64,
}

/// Every freely reduced word of length 0..=max_len, in length-then-
/// lexicographic order (letters compared as signed integers).
pub fn freely_reduced_words(strands: usize, max_len: usize) -> Vec<BraidWord> {
    let n = strands as i32;
    let candidates: Vec<i32> = (-(n - 1)..=n - 1).filter(|&l| l != 0).collect();
    let mut all: Vec<BraidWord> = Vec::new();
    let mut level: Vec<BraidWord> =
        vec![BraidWord::empty(strands).expect("at least two strands")];
    all.extend(level.iter().cloned());
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(level.len() * candidates.len());
        for w in &level {
            let last = w.letters().last().copied();
            for &c in &candidates {
                if last == Some(-c) {
                    continue;
                }
                let mut letters = w.letters().to_vec();
                letters.push(c);
                next.push(
                    BraidWord::new(strands, letters).expect("letters stay in range"),
                );
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    all
}

fn random_reduced_word(
    rng: &mut rand_chacha::ChaCha8Rng,
    strands: usize,
    max_len: usize,
) -> BraidWord {
    let n = strands as i32;
    let candidates: Vec<i32> = (-(n - 1)..=n - 1).filter(|&l| l != 0).collect();
    let len = 1 + uniform_below(rng, max_len as u64) as usize;
    let mut letters: Vec<i32> = Vec::with_capacity(len);
    while letters.len() < len {
        let allowed: Vec<i32> = candidates
            .iter()
            .copied()
            .filter(|&c| letters.last() != Some(&-c))
            .collect();
        let pick = allowed[uniform_below(rng, allowed.len() as u64) as usize];
        letters.push(pick);
    }
    BraidWord::new(strands, letters).expect("letters stay in range")
}

/// Scan pairs for the largest additivity failure of `f`. Deterministic:
/// pairs are visited in a fixed order and the first pair attaining the
/// maximum is kept as the witness.
pub fn defect_scan(f: &Functional, source: &PairSource) -> Result<DefectReport> {
    let mut report = DefectReport {
        max_observed: BigRational::zero(),
        argmax: None,
        pairs_scanned: 0,
        pairs_skipped: 0,
    };
    let consider = |g: &BraidWord,
                        h: &BraidWord,
                        fg: Option<&BigRational>,
                        fh: Option<&BigRational>,
                        report: &mut DefectReport|
     -> Result<()> {
        let (Some(fg), Some(fh)) = (fg, fh) else {
            report.pairs_skipped += 1;
            return Ok(());
        };
        let Ok(fgh) = f.eval(&g.compose(h)?) else {
            report.pairs_skipped += 1;
            return Ok(());
        };
        let d = (&fgh - fg - fh).abs();
        report.pairs_scanned += 1;
        if report.argmax.is_none() || d > report.max_observed {
            report.max_observed = d;
            report.argmax = Some((g.clone(), h.clone()));
        }
        Ok(())
    };
    match source {
        PairSource::ExhaustiveFreelyReduced { strands, max_len } => {
            let words = freely_reduced_words(*strands, *max_len);
            let values: Vec<Option<BigRational>> =
                words.iter().map(|w| f.eval(w).ok()).collect();
            for (g, fg) in words.iter().zip(&values) {
                for (h, fh) in words.iter().zip(&values) {
                    consider(g, h, fg.as_ref(), fh.as_ref(), &mut report)?;
                }
            }
        }
        PairSource::Random {
            strands,
            max_len,
            pairs,
            seed,
        } => {
            for p in 0..*pairs {
                let mut rng = substream_rng(*seed, p);
                let g = random_reduced_word(&mut rng, *strands, *max_len);
                let h = random_reduced_word(&mut rng, *strands, *max_len);
                let fg = f.eval(&g).ok();
                let fh = f.eval(&h).ok();
                consider(&g, &h, fg.as_ref(), fh.as_ref(), &mut report)?;
            }
        }
        PairSource::Explicit(pairs) => {
            for (g, h) in pairs {
                let fg = f.eval(g).ok();
                let fh = f.eval(h).ok();
                consider(g, h, fg.as_ref(), fh.as_ref(), &mut report)?;
            }
        }
    }
    Ok(report)
}

/// Beam-search probe for growth of `|f|` along products of a measure's
/// support. Row `L` holds the largest `|f|` seen on any product of at
/// most `L` atoms explored by a beam of the given width, so the table is
/// non-decreasing; words where `f` is undefined stay in the beam but
/// never score.
pub fn unboundedness_probe(
    measure: &Measure,
    f: &Functional,
    max_len: usize,
    beam_width: usize,
) -> Result<Vec<(usize, BigRational)>> {
    assert!(beam_width > 0, "the probe needs a positive beam width");
    let mut beam: Vec<BraidWord> = vec![BraidWord::empty(measure.strands())?];
    let mut running_max: Option<BigRational> = None;
    let mut table = Vec::with_capacity(max_len);
    for level in 1..=max_len {
        let mut seen: std::collections::HashSet<Vec<i32>> = std::collections::HashSet::new();
        let mut scored: Vec<(Option<BigRational>, BraidWord)> = Vec::new();
        for base in &beam {
            for (atom, _) in measure.atoms() {
                let next = base.compose(atom)?;
                if !seen.insert(next.letters().to_vec()) {
                    continue;
                }
                let score = f.eval(&next).ok().map(|v| v.abs());
                scored.push((score, next));
            }
        }
        scored.sort_by(|(sa, wa), (sb, wb)| {
            sb.cmp(sa)
                .then_with(|| wa.len().cmp(&wb.len()))
                .then_with(|| wa.letters().cmp(wb.letters()))
        });
        if let Some((Some(best), _)) = scored.first() {
            if running_max.as_ref().map_or(true, |m| best > m) {
                running_max = Some(best.clone());
            }
        }
        table.push((level, running_max.clone().unwrap_or_else(BigRational::zero)));
        scored.truncate(beam_width);
        beam = scored.into_iter().map(|(_, w)| w).collect();
        if beam.is_empty() {
            break;
        }
    }
    Ok(table)
}
