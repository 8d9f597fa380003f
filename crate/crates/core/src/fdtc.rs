//! The fractional twist coefficient of a braid: the translation number of
//! the floor along powers. Yields rigorous rational interval bounds, exact
//! rational recovery under a denominator bound, and a certified genus lower
//! bound.
//!
//! Two certifications are combined. The floor is superadditive with unit
//! excess — `floor(g h) - floor(g) - floor(h)` is 0 or 1, from
//! left-invariance of the order plus centrality of the full twist — so the
//! limit value always lies in the closed interval
//! `[floor(w^k)/k, (floor(w^k)+1)/k]` for every single `k`. Independently,
//! a quasimorphism defect bound `D` gives the symmetric band
//! `floor(w^k)/k ± D/k`. Exact recovery intersects the sharp enclosures over
//! a doubling power schedule and stops as soon as the intersection pins a
//! unique rational with denominator at most the requested bound.

use num::{BigInt, BigRational, Integer, Signed, Zero};

use crate::dehornoy::dehornoy_floor_of_normal_form;
use crate::error::{Error, Result};
use crate::garside::left_normal_form;
use crate::rat::rat_int;
use crate::word::BraidWord;

/// Closed interval with exact rational endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RationalInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RationalInterval { lo, hi }
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn intersect(&self, other: &RationalInterval) -> Option<RationalInterval> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        if lo <= hi {
            Some(RationalInterval { lo, hi })
        } else {
            None
        }
    }
}

/// Result of interval estimation with optional exact recovery.
#[derive(Debug, Clone)]
pub struct FdtcEstimate {
    /// Certified to contain the true value (given the defect bound used).
    pub interval: RationalInterval,
    /// Present when the interval work isolated a unique rational with
    /// denominator at most the requested bound; that rational is the value.
    pub exact: Option<BigRational>,
    /// Largest power whose floor entered the estimate.
    pub power_used: i64,
    /// The defect bound the symmetric band was computed with.
    pub defect_bound: BigRational,
}

impl FdtcEstimate {
    /// The exact value when recovered, else the certified interval's
    /// midpoint: the best single number this estimate supports.
    pub fn point_estimate(&self) -> BigRational {
        self.exact
            .clone()
            .unwrap_or_else(|| crate::rat::midpoint(&self.interval.lo, &self.interval.hi))
    }
}

/// Powers `1, 2, 4, ...` up to `k_max`.
fn doubling_schedule(k_max: i64) -> Vec<i64> {
    let mut ks = Vec::new();
    let mut k = 1i64;
    while k <= k_max {
        ks.push(k);
        k *= 2;
    }
    ks
}

/// Floors of `w^k` for `k` on the doubling schedule.
pub fn floor_growth(w: &BraidWord, k_max: i64) -> Result<Vec<(i64, i64)>> {
    if k_max < 1 {
        return Err(Error::Config(format!("k_max must be >= 1, got {}", k_max)));
    }
    let nf = left_normal_form(w);
    let mut out = Vec::new();
    for k in doubling_schedule(k_max) {
        let f = dehornoy_floor_of_normal_form(&nf.power(k))?.floor;
        out.push((k, f));
    }
    Ok(out)
}

/// The symmetric band `[floor(w^k)/k - D/k, floor(w^k)/k + D/k]`.
pub fn fdtc_bounds(w: &BraidWord, k: i64, defect: &BigRational) -> Result<RationalInterval> {
    if k < 1 {
        return Err(Error::Config(format!("power must be >= 1, got {}", k)));
    }
    if defect.is_negative() {
        return Err(Error::Config("defect bound must be >= 0".into()));
    }
    let nf = left_normal_form(w);
    let f = dehornoy_floor_of_normal_form(&nf.power(k))?.floor;
    let center = BigRational::new(BigInt::from(f), BigInt::from(k));
    let radius = defect / rat_int(k);
    Ok(RationalInterval::new(&center - &radius, &center + &radius))
}

/// Distinct rationals `p/q` with `q <= q_max` inside `[lo, hi]`, reduced
/// form only, stopping once more than `cap` are found.
fn rationals_in(lo: &BigRational, hi: &BigRational, q_max: u64, cap: usize) -> Vec<BigRational> {
    let mut out: Vec<BigRational> = Vec::new();
    for q in 1..=q_max {
        let qb = BigInt::from(q);
        let p_lo = (lo * BigRational::from(qb.clone())).ceil().to_integer();
        let p_hi = (hi * BigRational::from(qb.clone())).floor().to_integer();
        let mut p = p_lo;
        while p <= p_hi {
            if p.gcd(&qb) == BigInt::from(1) {
                out.push(BigRational::new(p.clone(), qb.clone()));
                if out.len() > cap {
                    return out;
                }
            }
            p += 1;
        }
    }
    out
}

/// Estimate the value of `w`, recovering it exactly when the intersected
/// floor enclosures isolate a unique rational with denominator `<= q_max`.
///
/// Powers follow the doubling schedule up to `k_max`. Early exits: a unique
/// candidate (exact recovered) or zero candidates (no rational with such a
/// denominator can ever be recovered, since enclosures only shrink). When
/// the schedule is exhausted, `exact` is absent and the last certified
/// interval is returned — inconclusive, not a failure.
pub fn fdtc_exact(
    w: &BraidWord,
    q_max: u64,
    k_max: i64,
    defect: &BigRational,
) -> Result<FdtcEstimate> {
    if q_max < 1 {
        return Err(Error::Config("q_max must be >= 1".into()));
    }
    if k_max < 1 {
        return Err(Error::Config(format!("k_max must be >= 1, got {}", k_max)));
    }
    if defect.is_negative() {
        return Err(Error::Config("defect bound must be >= 0".into()));
    }
    let nf = left_normal_form(w);
    let mut enclosure: Option<RationalInterval> = None;
    let mut last: Option<(i64, RationalInterval)> = None;
    for k in doubling_schedule(k_max) {
        let f = dehornoy_floor_of_normal_form(&nf.power(k))?.floor;
        let center = BigRational::new(BigInt::from(f), BigInt::from(k));
        let sharp = RationalInterval::new(
            center.clone(),
            BigRational::new(BigInt::from(f + 1), BigInt::from(k)),
        );
        let merged = match &enclosure {
            None => sharp,
            Some(e) => e
                .intersect(&sharp)
                .expect("floor superadditivity keeps power enclosures consistent"),
        };
        let radius = defect / rat_int(k);
        let band = RationalInterval::new(&center - &radius, &center + &radius);
        let reported = merged.intersect(&band).unwrap_or_else(|| merged.clone());
        enclosure = Some(merged.clone());
        last = Some((k, reported.clone()));
        let candidates = rationals_in(&merged.lo, &merged.hi, q_max, 2);
        match candidates.len() {
            1 => {
                return Ok(FdtcEstimate {
                    interval: reported,
                    exact: Some(candidates.into_iter().next().expect("one candidate")),
                    power_used: k,
                    defect_bound: defect.clone(),
                });
            }
            0 => {
                return Ok(FdtcEstimate {
                    interval: reported,
                    exact: None,
                    power_used: k,
                    defect_bound: defect.clone(),
                });
            }
            _ => {}
        }
    }
    let (k, reported) = last.expect("schedule is non-empty");
    Ok(FdtcEstimate {
        interval: reported,
        exact: None,
        power_used: k,
        defect_bound: defect.clone(),
    })
}

/// Genus lower bound certified by the estimate: `|value|` when exact,
/// otherwise the smallest absolute value the interval still allows (zero
/// when the interval straddles zero — conservative, never overstated).
pub fn genus_lower_bound_from_fdtc(est: &FdtcEstimate) -> BigRational {
    if let Some(v) = &est.exact {
        return v.abs();
    }
    let lo = &est.interval.lo;
    let hi = &est.interval.hi;
    if !lo.is_positive() && !hi.is_negative() {
        BigRational::zero()
    } else {
        lo.abs().min(hi.abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn w(text: &str, n: usize) -> BraidWord {
        BraidWord::parse(text, n).unwrap()
    }

    #[test]
    fn floor_growth_examples() {
        let full_twist = BraidWord::full_twist_power(3, 1).unwrap();
        assert_eq!(
            floor_growth(&full_twist, 8).unwrap(),
            vec![(1, 1), (2, 2), (4, 4), (8, 8)]
        );
        assert_eq!(
            floor_growth(&w("1", 2), 8).unwrap(),
            vec![(1, 0), (2, 1), (4, 2), (8, 4)]
        );
        assert_eq!(
            floor_growth(&w("", 3), 4).unwrap(),
            vec![(1, 0), (2, 0), (4, 0)]
        );
    }

    #[test]
    fn bounds_examples() {
        let two = rat_int(2);
        let full_twist = BraidWord::full_twist_power(3, 1).unwrap();
        let iv = fdtc_bounds(&full_twist, 8, &two).unwrap();
        assert_eq!(iv.lo, rat(3, 4));
        assert_eq!(iv.hi, rat(5, 4));
        assert!(iv.contains(&rat_int(1)));

        let iv = fdtc_bounds(&w("1", 2), 8, &two).unwrap();
        assert_eq!((iv.lo.clone(), iv.hi.clone()), (rat(1, 4), rat(3, 4)));

        let iv = fdtc_bounds(&w("1 -2", 3), 16, &two).unwrap();
        assert!(iv.contains(&rat_int(0)));
    }

    #[test]
    fn exact_recovery_examples() {
        let two = rat_int(2);
        let full_twist = BraidWord::full_twist_power(3, 1).unwrap();
        let est = fdtc_exact(&full_twist, 10, 64, &two).unwrap();
        assert_eq!(est.exact, Some(rat_int(1)));

        let est = fdtc_exact(&w("1", 2), 10, 64, &two).unwrap();
        assert_eq!(est.exact, Some(rat(1, 2)));

        let est = fdtc_exact(&w("1 -2", 3), 10, 64, &two).unwrap();
        assert_eq!(est.exact, Some(rat_int(0)));
    }

    #[test]
    fn exact_value_is_homogeneous() {
        let two = rat_int(2);
        let base = w("1 2", 3);
        let v1 = fdtc_exact(&base, 10, 64, &two).unwrap().exact.unwrap();
        assert_eq!(v1, rat(1, 3));
        for m in [2i64, 3] {
            let vm = fdtc_exact(&base.power(m), 10, 64, &two)
                .unwrap()
                .exact
                .unwrap();
            assert_eq!(vm, rat_int(m) * &v1);
        }
    }

    #[test]
    fn genus_bound_examples() {
        let two = rat_int(2);
        let full_twist = BraidWord::full_twist_power(3, 1).unwrap();
        let est = fdtc_exact(&full_twist, 10, 64, &two).unwrap();
        assert_eq!(genus_lower_bound_from_fdtc(&est), rat_int(1));

        let est = fdtc_exact(&w("1 -2", 3), 10, 64, &two).unwrap();
        assert_eq!(genus_lower_bound_from_fdtc(&est), rat_int(0));

        let big = BraidWord::full_twist_power(3, 5).unwrap();
        let est = fdtc_exact(&big, 10, 64, &two).unwrap();
        assert_eq!(genus_lower_bound_from_fdtc(&est), rat_int(5));
    }

    #[test]
    fn intervals_for_growing_powers_intersect() {
        let two = rat_int(2);
        let word = w("1 1 2", 3);
        let mut prev: Option<RationalInterval> = None;
        for k in [1i64, 2, 4, 8] {
            let iv = fdtc_bounds(&word, k, &two).unwrap();
            if let Some(p) = &prev {
                assert!(p.intersect(&iv).is_some());
            }
            prev = Some(iv);
        }
    }

    #[test]
    fn conjugation_leaves_exact_value() {
        let two = rat_int(2);
        let beta = w("1 2", 3);
        let g = w("2 -1", 3);
        let conj = BraidWord::conjugate_by(&g, &beta).unwrap();
        let a = fdtc_exact(&beta, 10, 64, &two).unwrap().exact;
        let b = fdtc_exact(&conj, 10, 64, &two).unwrap().exact;
        assert_eq!(a, b);
        assert!(a.is_some());
    }
}
