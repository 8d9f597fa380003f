//! Invariants of the closure of a braid word, computed from the banded
//! surface the closure bounds: the integer linking matrix, exact signature,
//! the determinant polynomial of the closure, genus and 4-genus bounds,
//! the writhe-derived concordance interval, and a detector for closures
//! that admit no alternating diagram.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::laurent::{determinant, LaurentPoly};
use crate::word::BraidWord;

/// Linking matrix of the banded surface, plus the number of closure
/// components. Rows/columns are indexed by the surface's independent
/// cycles: for each generator index, consecutive occurrences in the word
/// bound one cycle, and cycles are ordered by generator index and then by
/// position of the first occurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertData {
    pub matrix: Vec<Vec<i64>>,
    pub components: usize,
}

/// Closed integer interval of possible values for the concordance
/// functional of a knot closure, derived from writhe and strand count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SInterval {
    pub lo: i64,
    pub hi: i64,
}

impl SInterval {
    pub fn contains(&self, v: i64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn midpoint(&self) -> BigRational {
        BigRational::new(BigInt::from(self.lo + self.hi), BigInt::from(2))
    }

    /// Width zero means the functional is pinned exactly.
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }
}

/// Sign convention relating the concordance functional to the signature
/// on alternating knots. The default matches signature -2 for the closure
/// of the cube of the first generator (functional value +2 there).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlternatingConvention {
    SEqualsNegSigma,
    SEqualsSigma,
}

impl Default for AlternatingConvention {
    fn default() -> Self {
        AlternatingConvention::SEqualsNegSigma
    }
}

/// Everything computed in one pass over a word. Fields that only make
/// sense for knots (single-component closures) or connected diagrams are
/// optional.
#[derive(Debug, Clone)]
pub struct InvariantReport {
    pub exponent_sum: i64,
    pub components: usize,
    pub signature: i64,
    pub alexander: LaurentPoly,
    pub s: Option<SInterval>,
    pub diagram_genus_bound: Option<i64>,
    pub g4_lower: Option<BigRational>,
    pub fdtc_genus_bound: Option<BigRational>,
}

/// One cycle of the banded surface: the strip between two consecutive
/// bands in the same column.
struct SurfaceCycle {
    col: usize,
    start: usize,
    end: usize,
    sign_start: i64,
    sign_end: i64,
}

fn surface_cycles(letters: &[i32]) -> Vec<SurfaceCycle> {
    let mut occurrences: std::collections::BTreeMap<usize, Vec<usize>> =
        std::collections::BTreeMap::new();
    for (pos, &l) in letters.iter().enumerate() {
        occurrences.entry(l.unsigned_abs() as usize).or_default().push(pos);
    }
    let mut cycles = Vec::new();
    for (col, positions) in occurrences {
        for pair in positions.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            cycles.push(SurfaceCycle {
                col,
                start: a,
                end: b,
                sign_start: letters[a].signum() as i64,
                sign_end: letters[b].signum() as i64,
            });
        }
    }
    cycles
}

/// Linking matrix entries for a word in which every generator index of the
/// group occurs (the banded surface is connected).
fn build_matrix(letters: &[i32]) -> Vec<Vec<i64>> {
    let cycles = surface_cycles(letters);
    let r = cycles.len();
    let mut v = vec![vec![0i64; r]; r];
    for (x, cx) in cycles.iter().enumerate() {
        v[x][x] = -(cx.sign_start + cx.sign_end) / 2;
        for (y, cy) in cycles.iter().enumerate().skip(x + 1) {
            if cx.col == cy.col {
                // Cycles in one column are ordered by position; only
                // neighbours share a band, and the shared band is cx.end.
                if cx.end == cy.start {
                    if cx.sign_end > 0 {
                        v[x][y] = 1;
                    } else {
                        v[y][x] = -1;
                    }
                }
            } else if cy.col == cx.col + 1 {
                // Adjacent columns link only when the spans interleave,
                // and the sign depends on which cycle starts first, not on
                // crossing signs. `cx` is always the lower column here.
                if cx.start < cy.start && cy.start < cx.end && cx.end < cy.end {
                    v[x][y] = -1;
                } else if cy.start < cx.start && cx.start < cy.end && cy.end < cx.end {
                    v[x][y] = 1;
                }
            }
            // Distance >= 2, nested or disjoint spans: no linking.
        }
    }
    v
}

/// Maximal runs of consecutive generator indices present in `letters`,
/// each extracted as a standalone word on its own strands. Letters from
/// different runs commute, so the closure is the split union of the run
/// closures plus one circle per strand no run touches.
fn index_blocks(word: &BraidWord) -> Vec<BraidWord> {
    let mut present = vec![false; word.strands()];
    for &l in word.letters() {
        present[l.unsigned_abs() as usize] = true;
    }
    let mut blocks = Vec::new();
    let mut i = 1;
    while i < word.strands() {
        if !present[i] {
            i += 1;
            continue;
        }
        let mut j = i;
        while j + 1 < word.strands() && present[j + 1] {
            j += 1;
        }
        let letters: Vec<i32> = word
            .letters()
            .iter()
            .filter(|l| {
                let idx = l.unsigned_abs() as usize;
                i <= idx && idx <= j
            })
            .map(|&l| l.signum() * (l.abs() - i as i32 + 1))
            .collect();
        blocks.push(
            BraidWord::new(j - i + 2, letters).expect("re-indexed block letters are in range"),
        );
        i = j + 1;
    }
    blocks
}

fn first_missing_index(word: &BraidWord) -> Option<usize> {
    let mut present = vec![false; word.strands()];
    for &l in word.letters() {
        present[l.unsigned_abs() as usize] = true;
    }
    (1..word.strands()).find(|&i| !present[i])
}

/// Linking matrix of the banded surface of the freely reduced word.
/// Errors when some generator index never occurs: the surface is then
/// disconnected and callers must work blockwise instead.
pub fn seifert_matrix(word: &BraidWord) -> Result<SeifertData> {
    let reduced = word.free_reduce();
    if let Some(missing_index) = first_missing_index(&reduced) {
        return Err(Error::SplitDiagram { missing_index });
    }
    Ok(SeifertData {
        matrix: build_matrix(reduced.letters()),
        components: reduced.closure_component_count(),
    })
}

/// Signature of the symmetric bilinear form with matrix `V + V^T`, by
/// exact congruence diagonalization over the rationals.
fn symmetric_signature(v: &[Vec<i64>]) -> i64 {
    let r = v.len();
    let mut m: Vec<Vec<BigRational>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| BigRational::from(BigInt::from(v[i][j] + v[j][i])))
                .collect()
        })
        .collect();
    let mut signature = 0i64;
    let mut i = 0;
    while i < r {
        // Prefer a nonzero diagonal pivot.
        if let Some(k) = (i..r).find(|&k| !m[k][k].is_zero()) {
            if k != i {
                m.swap(i, k);
                for row in m.iter_mut() {
                    row.swap(i, k);
                }
            }
            let a = m[i][i].clone();
            signature += if a.is_positive() { 1 } else { -1 };
            for p in i + 1..r {
                let f = &m[p][i] / &a;
                if f.is_zero() {
                    continue;
                }
                for q in i + 1..r {
                    let delta = &f * &m[i][q];
                    m[p][q] = &m[p][q] - delta;
                }
            }
            // Symmetrize the remaining block explicitly (row and column
            // operations coincide for a symmetric form).
            for p in i + 1..r {
                m[i][p] = BigRational::zero();
                m[p][i] = BigRational::zero();
            }
            for p in i + 1..r {
                for q in p + 1..r {
                    m[q][p] = m[p][q].clone();
                }
            }
            i += 1;
            continue;
        }
        // All active diagonal entries vanish: look for an off-diagonal
        // entry to form a hyperbolic pair, else the rest is the zero form.
        let mut pair = None;
        'outer: for p in i..r {
            for q in p + 1..r {
                if !m[p][q].is_zero() {
                    pair = Some((p, q));
                    break 'outer;
                }
            }
        }
        let Some((p, q)) = pair else { break };
        let swap_rc = |m: &mut Vec<Vec<BigRational>>, a: usize, b: usize| {
            if a != b {
                m.swap(a, b);
                for row in m.iter_mut() {
                    row.swap(a, b);
                }
            }
        };
        swap_rc(&mut m, i, p);
        swap_rc(&mut m, i + 1, q);
        let a = m[i][i + 1].clone();
        // The plane spanned by the two pivot vectors has matrix
        // [[0, a], [a, 0]]: one positive and one negative eigenvalue, so
        // the block contributes nothing to the signature.
        let s: Vec<BigRational> = (i + 2..r).map(|k| m[k][i].clone()).collect();
        let t: Vec<BigRational> = (i + 2..r).map(|k| m[k][i + 1].clone()).collect();
        for k in i + 2..r {
            for l in i + 2..r {
                let correction =
                    (&s[k - i - 2] * &t[l - i - 2] + &t[k - i - 2] * &s[l - i - 2]) / &a;
                m[k][l] = &m[k][l] - correction;
            }
        }
        for k in i..i + 2 {
            for l in 0..r {
                if l != i && l != i + 1 {
                    m[k][l] = BigRational::zero();
                    m[l][k] = BigRational::zero();
                }
            }
        }
        i += 2;
    }
    signature
}

/// Signature of the closure of `word`. Split closures are handled by
/// summing over the independent index blocks, so this never fails.
pub fn signature(word: &BraidWord) -> i64 {
    let reduced = word.free_reduce();
    index_blocks(&reduced)
        .iter()
        .map(|block| symmetric_signature(&build_matrix(block.letters())))
        .sum()
}

/// Normalize a determinant polynomial: strip the monomial unit so the
/// span is centered around degree zero and the top coefficient is
/// positive. The zero polynomial stays zero.
fn normalized_determinant(p: LaurentPoly) -> LaurentPoly {
    if p.is_zero() {
        return p;
    }
    let stripped = p.shifted(-p.low_degree().unwrap());
    let stripped = if stripped.leading_coeff().unwrap().is_negative() {
        stripped.neg()
    } else {
        stripped
    };
    let span = stripped.span();
    stripped.shifted(-(span / 2))
}

/// Determinant polynomial of the closure: `det(V - t V^T)` for the
/// linking matrix `V`, normalized to a centered representative with
/// positive top coefficient. Split closures give the zero polynomial;
/// the unknot gives 1.
pub fn alexander_polynomial(word: &BraidWord) -> LaurentPoly {
    let reduced = word.free_reduce();
    if first_missing_index(&reduced).is_some() {
        return LaurentPoly::zero();
    }
    let v = build_matrix(reduced.letters());
    let r = v.len();
    let t = LaurentPoly::monomial(BigInt::one(), 1);
    let m: Vec<Vec<LaurentPoly>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| LaurentPoly::constant(v[i][j]).sub(&t.mul(&LaurentPoly::constant(v[j][i]))))
                .collect()
        })
        .collect();
    normalized_determinant(determinant(m))
}

/// Genus of the banded surface of the freely reduced word, an upper bound
/// for the genus of the closure. Requires a connected surface: errors on
/// split diagrams (use `blockwise_genus_bound` there).
pub fn diagram_genus_upper_bound(word: &BraidWord) -> Result<i64> {
    let reduced = word.free_reduce();
    if let Some(missing_index) = first_missing_index(&reduced) {
        return Err(Error::SplitDiagram { missing_index });
    }
    Ok(connected_genus(&reduced))
}

fn connected_genus(reduced: &BraidWord) -> i64 {
    let n = reduced.strands() as i64;
    let l = reduced.len() as i64;
    let c = reduced.closure_component_count() as i64;
    let doubled = 2 - c - (n - l);
    debug_assert!(doubled % 2 == 0, "surface genus must be an integer");
    doubled / 2
}

/// Sum of the per-block surface genera of the freely reduced word: equals
/// `diagram_genus_upper_bound` on connected diagrams and extends it
/// additively to split ones (free circles contribute 0).
pub fn blockwise_genus_bound(word: &BraidWord) -> i64 {
    let reduced = word.free_reduce();
    index_blocks(&reduced).iter().map(connected_genus).sum()
}

/// Interval certain to contain the concordance functional of a knot
/// closure, from exponent sum and strand count; degenerate (exact) when
/// the reduced word is a positive braid. Errors unless the closure is a
/// knot.
pub fn s_interval(word: &BraidWord) -> Result<SInterval> {
    let reduced = word.free_reduce();
    let components = reduced.closure_component_count();
    if components != 1 {
        return Err(Error::MultiComponent { components });
    }
    let e = reduced.exponent_sum();
    let n = reduced.strands() as i64;
    let lo = e - n + 1;
    let hi = if reduced.is_positive() { lo } else { e + n - 1 };
    Ok(SInterval { lo, hi })
}

/// Lower bound for the smooth 4-genus of a knot closure from the
/// signature and the concordance interval.
pub fn g4_lower_bound(signature: i64, s: &SInterval) -> BigRational {
    let from_sig = signature.abs();
    let from_s = s.lo.max(0).max(-s.hi).max(0);
    BigRational::new(BigInt::from(from_sig.max(from_s)), BigInt::from(2))
}

/// True when no value in the concordance interval satisfies the
/// convention forced on alternating knots, certifying that the closure
/// admits no alternating diagram. One-sided: `false` is inconclusive.
pub fn nonalternating_certificate(
    signature: i64,
    s: &SInterval,
    convention: AlternatingConvention,
) -> bool {
    let target = match convention {
        AlternatingConvention::SEqualsNegSigma => -signature,
        AlternatingConvention::SEqualsSigma => signature,
    };
    !s.contains(target)
}

/// Compute all invariants of one word. Knot-only and connected-only
/// fields are `None` where undefined; `fdtc_genus_bound` is left for the
/// caller, since it needs a translation-number computation with its own
/// budget parameters.
pub fn invariant_report(word: &BraidWord) -> InvariantReport {
    let reduced = word.free_reduce();
    let sig = signature(&reduced);
    let s = s_interval(&reduced).ok();
    InvariantReport {
        exponent_sum: reduced.exponent_sum(),
        components: reduced.closure_component_count(),
        signature: sig,
        alexander: alexander_polynomial(&reduced),
        s,
        diagram_genus_bound: diagram_genus_upper_bound(&reduced).ok(),
        g4_lower: s.map(|ref s| g4_lower_bound(sig, s)),
        fdtc_genus_bound: None,
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
    fn seifert_matrix_of_generator_cube() {
        let data = seifert_matrix(&w("1 1 1", 2)).unwrap();
        assert_eq!(data.matrix, vec![vec![-1, 1], vec![0, -1]]);
        assert_eq!(data.components, 1);
    }

    #[test]
    fn seifert_matrix_errors_on_split() {
        let err = seifert_matrix(&w("2 2", 3)).unwrap_err();
        match err {
            Error::SplitDiagram { missing_index } => assert_eq!(missing_index, 1),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn signatures_of_torus_closures() {
        assert_eq!(signature(&w("1 1 1", 2)), -2);
        assert_eq!(signature(&w("1 1 1 1 1", 2)), -4);
        assert_eq!(signature(&w("-1 -1 -1", 2)), 2);
        assert_eq!(signature(&w("1 -2 1 -2", 3)), 0);
        assert_eq!(signature(&w("1 2 1 2 1 2 1 2", 3)), -6);
        assert_eq!(signature(&w("1 2 1 2 1 2 1 2 1 2", 3)), -8);
        // 7 repeats of "1 2": signature -8.
        assert_eq!(signature(&w("1 2 1 2 1 2 1 2 1 2 1 2 1 2", 3)), -8);
        // Trivial closures.
        assert_eq!(signature(&BraidWord::empty(2).unwrap()), 0);
        assert_eq!(signature(&w("1", 2)), 0);
    }

    #[test]
    fn signature_is_additive_on_split_words() {
        // Only the second generator occurs: same closure as a two-strand
        // cube plus a free circle.
        assert_eq!(signature(&w("2 2 2", 3)), -2);
        // Two independent blocks in five strands.
        assert_eq!(signature(&w("1 1 1 4 4 4", 5)), -4);
    }

    #[test]
    fn alexander_of_small_knots() {
        // Closure of the generator cube: 1 - t + t^2, centered.
        let p = alexander_polynomial(&w("1 1 1", 2));
        assert_eq!(p.to_string(), "1:-1 -1:0 1:1");
        // Mirror has the same polynomial.
        let p = alexander_polynomial(&w("-1 -1 -1", 2));
        assert_eq!(p.to_string(), "1:-1 -1:0 1:1");
        // Figure-eight closure: -1 + 3t - t^2, centered and made monic
        // with positive top coefficient.
        let p = alexander_polynomial(&w("1 -2 1 -2", 3));
        assert_eq!(p.to_string(), "1:-1 -3:0 1:1");
        // Unknot.
        let p = alexander_polynomial(&w("1", 2));
        assert_eq!(p.to_string(), "1:0");
        // Split closures give zero.
        let p = alexander_polynomial(&w("2 2 2", 3));
        assert!(p.is_zero());
        assert!(alexander_polynomial(&BraidWord::empty(2).unwrap()).is_zero());
    }

    #[test]
    fn alexander_is_symmetric_for_knots() {
        for (text, n) in [
            ("1 1 1", 2),
            ("1 -2 1 -2", 3),
            ("1 2 1 2 1 2 1 2", 3),
            ("1 1 1 2 -1 2", 3),
        ] {
            let word = w(text, n);
            assert_eq!(word.closure_component_count(), 1);
            let p = alexander_polynomial(&word);
            assert_eq!(p, p.reversed(), "word {text}");
        }
    }

    #[test]
    fn genus_bounds() {
        assert_eq!(diagram_genus_upper_bound(&w("1 1 1", 2)).unwrap(), 1);
        assert_eq!(diagram_genus_upper_bound(&w("1", 2)).unwrap(), 0);
        assert_eq!(diagram_genus_upper_bound(&w("1 2 1 2 1 2", 3)).unwrap(), 1);
        assert_eq!(diagram_genus_upper_bound(&w("1 -2 1 -2", 3)).unwrap(), 1);
        assert!(diagram_genus_upper_bound(&w("2 2", 3)).is_err());
        assert_eq!(blockwise_genus_bound(&w("2 2", 3)), 0);
        assert_eq!(blockwise_genus_bound(&w("2 2 2", 3)), 1);
        assert_eq!(blockwise_genus_bound(&w("1 1 1 4 4 4", 5)), 2);
        assert_eq!(blockwise_genus_bound(&BraidWord::empty(3).unwrap()), 0);
        assert_eq!(
            blockwise_genus_bound(&w("1 2 1 2", 3)),
            diagram_genus_upper_bound(&w("1 2 1 2", 3)).unwrap()
        );
    }

    #[test]
    fn s_interval_examples() {
        // Positive knot word: interval degenerates to e - n + 1.
        let s = s_interval(&w("1 1 1", 2)).unwrap();
        assert_eq!((s.lo, s.hi), (2, 2));
        assert!(s.is_exact());
        // (sigma1 sigma2)^4 in three strands: e = 8, pinned at 6.
        let s = s_interval(&w("1 2 1 2 1 2 1 2", 3)).unwrap();
        assert_eq!((s.lo, s.hi), (6, 6));
        // Figure-eight: e = 0, n = 3, interval [-2, 2].
        let s = s_interval(&w("1 -2 1 -2", 3)).unwrap();
        assert_eq!((s.lo, s.hi), (-2, 2));
        assert_eq!(s.midpoint(), rat(0, 1));
        // Links are rejected.
        assert!(matches!(
            s_interval(&w("1 1", 2)),
            Err(Error::MultiComponent { components: 2 })
        ));
    }

    #[test]
    fn g4_and_certificate() {
        // Trefoil: g4 >= 1 and no certificate (it is alternating).
        let s = s_interval(&w("1 1 1", 2)).unwrap();
        assert_eq!(g4_lower_bound(-2, &s), rat(1, 1));
        assert!(!nonalternating_certificate(
            -2,
            &s,
            AlternatingConvention::default()
        ));
        // (sigma1 sigma2)^7: s pinned at 12, signature -8, so s != -sigma
        // and the certificate fires.
        let word = w("1 2 1 2 1 2 1 2 1 2 1 2 1 2", 3);
        let s = s_interval(&word).unwrap();
        assert_eq!((s.lo, s.hi), (12, 12));
        let sig = signature(&word);
        assert_eq!(sig, -8);
        assert!(nonalternating_certificate(
            sig,
            &s,
            AlternatingConvention::default()
        ));
        assert_eq!(g4_lower_bound(sig, &s), rat(6, 1));
        // Unknot: nothing fires.
        let s = s_interval(&w("1", 2)).unwrap();
        assert_eq!(g4_lower_bound(0, &s), rat(0, 1));
        assert!(!nonalternating_certificate(
            0,
            &s,
            AlternatingConvention::default()
        ));
        // Figure-eight under the flipped convention still has 0 in range.
        let s = s_interval(&w("1 -2 1 -2", 3)).unwrap();
        assert!(!nonalternating_certificate(
            0,
            &s,
            AlternatingConvention::SEqualsSigma
        ));
    }

    #[test]
    fn invariance_spot_checks() {
        // Conjugation preserves closure invariants.
        let a = w("1 1 1", 2);
        let g = w("1 1 -1 1", 2).free_reduce();
        let conj = BraidWord::conjugate_by(&g, &a).unwrap();
        assert_eq!(signature(&conj), signature(&a));
        assert_eq!(alexander_polynomial(&conj), alexander_polynomial(&a));
        // Stabilization preserves them too.
        for sign in [1, -1] {
            let stab = a.markov_stabilize(sign);
            assert_eq!(signature(&stab), signature(&a));
            assert_eq!(alexander_polynomial(&stab), alexander_polynomial(&a));
            assert_eq!(
                stab.closure_component_count(),
                a.closure_component_count()
            );
        }
    }

    #[test]
    fn report_collects_everything() {
        let report = invariant_report(&w("1 1 1", 2));
        assert_eq!(report.exponent_sum, 3);
        assert_eq!(report.components, 1);
        assert_eq!(report.signature, -2);
        assert_eq!(report.alexander.to_string(), "1:-1 -1:0 1:1");
        assert_eq!(report.s.unwrap(), SInterval { lo: 2, hi: 2 });
        assert_eq!(report.diagram_genus_bound, Some(1));
        assert_eq!(report.g4_lower, Some(rat(1, 1)));
        assert!(report.fdtc_genus_bound.is_none());
        // A link closure: knot-only fields are absent.
        let report = invariant_report(&w("1 1", 2));
        assert_eq!(report.components, 2);
        assert!(report.s.is_none());
        assert!(report.g4_lower.is_none());
        assert_eq!(report.diagram_genus_bound, Some(0));
        // A split word: genus bound absent, polynomial zero.
        let report = invariant_report(&w("2", 3));
        assert!(report.diagram_genus_bound.is_none());
        assert!(report.alexander.is_zero());
    }
}
