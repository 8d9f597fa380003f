//! Garside left normal forms: the canonical representation behind exact
//! equality testing, collapsed products/powers, and conjugacy decision via
//! super summit sets.
//!
//! An element is written `D^p . A_1 ... A_m` where `D` is the positive half
//! twist and each factor `A_i` is a permutation braid (every pair of strands
//! crosses at most once), with the left-weighting condition: the starting set
//! of each factor is contained in the finishing set of its left neighbour.
//! This form is unique, so structural equality decides group equality.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::word::BraidWord;

/// Left normal form `D^p . A_1 ... A_m`; factors are stored as permutations,
/// each different from the identity and from the half twist.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalForm {
    strands: usize,
    delta_power: i64,
    factors: Vec<Permutation>,
}

/// Outcome of a conjugacy decision. When `conjugate` holds, `witness` is a
/// word `c` with `c . a . c^-1 = b`.
#[derive(Debug, Clone)]
pub struct ConjugacyCertificate {
    pub conjugate: bool,
    pub witness: Option<BraidWord>,
}

/// Bitmask of descents of a permutation: bit `g` is set when the images of
/// positions `g` and `g+1` are out of order. Descents of `p` form the
/// starting set of the permutation braid `p`; descents of `p^-1` form its
/// finishing set.
fn descent_mask(p: &Permutation) -> u64 {
    let image = p.image();
    debug_assert!(image.len() <= 64);
    let mut mask = 0u64;
    for g in 0..image.len().saturating_sub(1) {
        if image[g] > image[g + 1] {
            mask |= 1 << g;
        }
    }
    mask
}

/// Canonical positive word of a permutation braid: repeatedly peel the
/// smallest starting-set letter from the front. Length equals the inversion
/// count of the permutation.
fn simple_letters(p: &Permutation) -> Vec<i32> {
    let n = p.n();
    let mut cur = p.clone();
    let mut letters = Vec::with_capacity(cur.inversions());
    loop {
        let mask = descent_mask(&cur);
        if mask == 0 {
            break;
        }
        let g = mask.trailing_zeros() as usize;
        letters.push(g as i32 + 1);
        cur = Permutation::transposition(n, g).then(&cur);
    }
    debug_assert!(cur.is_identity());
    letters
}

/// The canonical positive word spelling a permutation braid, as a word.
pub fn simple_word(p: &Permutation) -> BraidWord {
    BraidWord::from_validated(p.n(), simple_letters(p))
}

/// Move every movable crossing from the front of `b` to the back of `a`
/// until the pair is left-weighted. Returns true when anything moved.
fn pair_fix(a: &mut Permutation, b: &mut Permutation, n: usize) -> bool {
    let mut moved = false;
    loop {
        let start_b = descent_mask(b);
        if start_b == 0 {
            break;
        }
        let finish_a = descent_mask(&a.inverse());
        let movable = start_b & !finish_a;
        if movable == 0 {
            break;
        }
        let g = movable.trailing_zeros() as usize;
        let t = Permutation::transposition(n, g);
        *a = a.then(&t);
        *b = t.then(b);
        moved = true;
    }
    moved
}

/// Normalize a factor list into left normal form: sweep left-weighting fixes
/// right to left, then drop identity factors and absorb half-twist factors
/// into the delta power (flipping everything to their left), until stable.
/// Terminates because each change strictly decreases the sum over factors of
/// (position + 1) * crossing count.
fn normalize(strands: usize, mut delta_power: i64, mut factors: Vec<Permutation>) -> NormalForm {
    let delta = Permutation::half_twist(strands);
    loop {
        let mut changed = false;
        if factors.len() >= 2 {
            for j in (0..factors.len() - 1).rev() {
                let (left, right) = factors.split_at_mut(j + 1);
                if pair_fix(&mut left[j], &mut right[0], strands) {
                    changed = true;
                }
            }
        }
        let mut cleaned: Vec<Permutation> = Vec::with_capacity(factors.len());
        for f in factors.drain(..) {
            if f.is_identity() {
                changed = true;
            } else if f == delta {
                delta_power += 1;
                for g in cleaned.iter_mut() {
                    *g = g.flip();
                }
                changed = true;
            } else {
                cleaned.push(f);
            }
        }
        factors = cleaned;
        if !changed {
            break;
        }
    }
    NormalForm {
        strands,
        delta_power,
        factors,
    }
}

/// Compute the left normal form of a word.
///
/// Positive letters become transposition factors directly. A negative letter
/// contributes one inverse half twist plus the positive complement factor;
/// all inverse half twists are pushed to the front in one pass (a factor is
/// flipped once per inverse half twist to its right), then the factor list
/// is normalized.
pub fn left_normal_form(w: &BraidWord) -> NormalForm {
    let n = w.strands();
    let delta = Permutation::half_twist(n);
    let mut rev_factors: Vec<Permutation> = Vec::with_capacity(w.len());
    let mut inverse_twists = 0i64;
    for &l in w.letters().iter().rev() {
        let g = l.unsigned_abs() as usize - 1;
        let t = Permutation::transposition(n, g);
        if l > 0 {
            let s = if inverse_twists % 2 == 1 { t.flip() } else { t };
            rev_factors.push(s);
        } else {
            // l encodes an inverse generator: it equals (half twist)^-1
            // times the positive complement below.
            let c = delta.then(&t);
            let s = if inverse_twists % 2 == 1 { c.flip() } else { c };
            rev_factors.push(s);
            inverse_twists += 1;
        }
    }
    rev_factors.reverse();
    normalize(n, -inverse_twists, rev_factors)
}

impl NormalForm {
    pub fn trivial(strands: usize) -> Self {
        NormalForm {
            strands,
            delta_power: 0,
            factors: Vec::new(),
        }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn delta_power(&self) -> i64 {
        self.delta_power
    }

    pub fn factors(&self) -> &[Permutation] {
        &self.factors
    }

    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.delta_power == 0 && self.factors.is_empty()
    }

    /// `(delta power, delta power + factor count)`: conjugacy invariants of
    /// the super summit set and the seed for floor brackets.
    pub fn inf_sup(&self) -> (i64, i64) {
        (self.delta_power, self.delta_power + self.factors.len() as i64)
    }

    /// Rebuild a word: delta-power blocks (half-twist words, inverted blocks
    /// for negative powers) followed by the canonical factor words. Not
    /// freely reduced; the block structure is kept so that composing with
    /// full-twist words cancels block by block.
    pub fn to_word(&self) -> BraidWord {
        let delta_word = BraidWord::half_twist(self.strands).expect("strands >= 2");
        let mut letters = Vec::new();
        if self.delta_power >= 0 {
            for _ in 0..self.delta_power {
                letters.extend_from_slice(delta_word.letters());
            }
        } else {
            let inv = delta_word.inverse();
            for _ in 0..(-self.delta_power) {
                letters.extend_from_slice(inv.letters());
            }
        }
        for f in &self.factors {
            letters.extend(simple_letters(f));
        }
        BraidWord::from_validated(self.strands, letters)
    }

    /// Product of two normal forms: delta powers add, the left factor list is
    /// flipped once per odd right delta power, and the concatenation is
    /// renormalized.
    pub fn mul(&self, other: &NormalForm) -> Result<NormalForm> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch {
                left: self.strands,
                right: other.strands,
            });
        }
        let flip = other.delta_power.rem_euclid(2) == 1;
        let mut factors: Vec<Permutation> = self
            .factors
            .iter()
            .map(|f| if flip { f.flip() } else { f.clone() })
            .collect();
        factors.extend(other.factors.iter().cloned());
        Ok(normalize(
            self.strands,
            self.delta_power + other.delta_power,
            factors,
        ))
    }

    pub fn inverse(&self) -> NormalForm {
        left_normal_form(&self.to_word().inverse())
    }

    /// Power by repeated squaring (negative exponents via the inverse).
    pub fn power(&self, m: i64) -> NormalForm {
        if m < 0 {
            return self.inverse().power(-m);
        }
        let mut result = NormalForm::trivial(self.strands);
        let mut base = self.clone();
        let mut m = m as u64;
        while m > 0 {
            if m & 1 == 1 {
                result = result.mul(&base).expect("same strand count");
            }
            m >>= 1;
            if m > 0 {
                base = base.mul(&base).expect("same strand count");
            }
        }
        result
    }
}

/// True iff the two words represent the same group element.
pub fn equals(a: &BraidWord, b: &BraidWord) -> Result<bool> {
    if a.strands() != b.strands() {
        return Err(Error::StrandMismatch {
            left: a.strands(),
            right: b.strands(),
        });
    }
    Ok(left_normal_form(a) == left_normal_form(b))
}

/// `(inf, sup)` of the element represented by the word.
pub fn inf_sup(w: &BraidWord) -> (i64, i64) {
    left_normal_form(w).inf_sup()
}

/// Rewrite a word through its normal form and freely reduce; represents the
/// same element, usually much shorter than a long unreduced product.
pub fn collapse(w: &BraidWord) -> BraidWord {
    left_normal_form(w).to_word().free_reduce()
}

/// Cycling: conjugate so the first factor wraps to the back. Returns the new
/// form and the conjugator `u` with `new = u^-1 . old . u`.
fn cycling(x: &NormalForm) -> (NormalForm, BraidWord) {
    debug_assert!(!x.factors.is_empty());
    let first = &x.factors[0];
    let moved = if x.delta_power.rem_euclid(2) == 1 {
        first.flip()
    } else {
        first.clone()
    };
    let mut factors = x.factors[1..].to_vec();
    factors.push(moved.clone());
    let nf = normalize(x.strands, x.delta_power, factors);
    let u = BraidWord::from_validated(x.strands, simple_letters(&moved));
    (nf, u)
}

/// Decycling: conjugate so the last factor wraps to the front (past the
/// delta power). Returns the new form and the conjugator `u` with
/// `new = u^-1 . old . u` (here `u` is the inverse of the last factor).
fn decycling(x: &NormalForm) -> (NormalForm, BraidWord) {
    debug_assert!(!x.factors.is_empty());
    let last = x.factors.last().expect("non-empty");
    let moved = if x.delta_power.rem_euclid(2) == 1 {
        last.flip()
    } else {
        last.clone()
    };
    let mut factors = Vec::with_capacity(x.factors.len());
    factors.push(moved);
    factors.extend_from_slice(&x.factors[..x.factors.len() - 1]);
    let nf = normalize(x.strands, x.delta_power, factors);
    let u = BraidWord::from_validated(x.strands, simple_letters(last)).inverse();
    (nf, u)
}

/// Drive a normal form to a super summit representative (maximal delta
/// power, then minimal factor count) by iterated cycling and decycling.
/// Within each phase, revisiting a form without improvement certifies the
/// extreme has been reached. Returns the representative and a conjugator `g`
/// with `rep = g^-1 . x . g`.
fn to_super_summit(x: &NormalForm) -> (NormalForm, BraidWord) {
    let mut x = x.clone();
    let mut g = BraidWord::from_validated(x.strands, Vec::new());
    loop {
        let before = x.inf_sup();
        let mut seen: HashSet<NormalForm> = HashSet::new();
        while !x.factors.is_empty() {
            if !seen.insert(x.clone()) {
                break;
            }
            let (y, u) = cycling(&x);
            if y.delta_power > x.delta_power {
                seen.clear();
            }
            g = g.compose(&u).expect("same strand count");
            x = y;
        }
        seen.clear();
        while !x.factors.is_empty() {
            if !seen.insert(x.clone()) {
                break;
            }
            let (y, u) = decycling(&x);
            if y.inf_sup().1 < x.inf_sup().1 {
                seen.clear();
            }
            g = g.compose(&u).expect("same strand count");
            x = y;
        }
        if x.inf_sup() == before {
            break;
        }
    }
    (x, g)
}

/// All permutations of `0..n` (Heap's algorithm), identity excluded.
fn all_nontrivial_simples(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    out.push(a.clone());
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out.into_iter()
        .map(Permutation::from_image)
        .filter(|p| !p.is_identity())
        .collect()
}

/// Conjugate a normal form by a permutation braid: `s^-1 . x . s`.
fn conjugate_by_simple(x: &NormalForm, s: &Permutation) -> NormalForm {
    let n = x.strands;
    let delta = Permutation::half_twist(n);
    // s^-1 = (half twist)^-1 times the positive complement below.
    let complement = delta.then(&s.inverse());
    let s_inverse_nf = normalize(n, -1, vec![complement]);
    let s_nf = normalize(n, 0, vec![s.clone()]);
    s_inverse_nf
        .mul(x)
        .and_then(|m| m.mul(&s_nf))
        .expect("same strand count")
}

/// Decide conjugacy by super summit sets: drive both elements to super
/// summit representatives, compare the (inf, sup) invariants, then close the
/// first element's super summit set under conjugation by permutation braids,
/// looking for the second representative. `budget` caps the number of orbit
/// elements stored; exceeding it is an inconclusive error, never a verdict.
pub fn are_conjugate(a: &BraidWord, b: &BraidWord, budget: u64) -> Result<ConjugacyCertificate> {
    if a.strands() != b.strands() {
        return Err(Error::StrandMismatch {
            left: a.strands(),
            right: b.strands(),
        });
    }
    let not_conjugate = ConjugacyCertificate {
        conjugate: false,
        witness: None,
    };
    if a.exponent_sum() != b.exponent_sum() {
        return Ok(not_conjugate);
    }
    let n = a.strands();
    let (a_rep, g_a) = to_super_summit(&left_normal_form(a));
    let (b_rep, g_b) = to_super_summit(&left_normal_form(b));
    if a_rep.inf_sup() != b_rep.inf_sup() {
        return Ok(not_conjugate);
    }
    let certificate = |h: &BraidWord| -> Result<ConjugacyCertificate> {
        let witness = g_b.compose(&h.inverse())?.compose(&g_a.inverse())?;
        Ok(ConjugacyCertificate {
            conjugate: true,
            witness: Some(witness),
        })
    };
    let empty = BraidWord::from_validated(n, Vec::new());
    if a_rep == b_rep {
        return certificate(&empty);
    }
    let target_inf_sup = a_rep.inf_sup();
    let simples = all_nontrivial_simples(n);
    let mut visited: HashMap<NormalForm, BraidWord> = HashMap::new();
    let mut queue: VecDeque<NormalForm> = VecDeque::new();
    visited.insert(a_rep.clone(), empty);
    queue.push_back(a_rep);
    while let Some(x) = queue.pop_front() {
        let h = visited.get(&x).expect("queued implies visited").clone();
        for s in &simples {
            let y = conjugate_by_simple(&x, s);
            if y.inf_sup() != target_inf_sup || visited.contains_key(&y) {
                continue;
            }
            if visited.len() as u64 >= budget {
                return Err(Error::BudgetExceeded {
                    what: "super summit orbit",
                    budget,
                });
            }
            let h_y = h.compose(&BraidWord::from_validated(n, simple_letters(s)))?;
            if y == b_rep {
                return certificate(&h_y);
            }
            visited.insert(y.clone(), h_y);
            queue.push_back(y);
        }
    }
    Ok(not_conjugate)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str, n: usize) -> BraidWord {
        BraidWord::parse(text, n).unwrap()
    }

    #[test]
    fn normal_form_of_generators_and_twists() {
        let nf = left_normal_form(&w("1", 3));
        assert_eq!(nf.delta_power(), 0);
        assert_eq!(nf.canonical_length(), 1);

        let nf = left_normal_form(&w("1 2 1", 3));
        assert_eq!(nf.delta_power(), 1);
        assert_eq!(nf.canonical_length(), 0);

        let nf = left_normal_form(&w("2 1 2", 3));
        assert_eq!((nf.delta_power(), nf.canonical_length()), (1, 0));
    }

    #[test]
    fn normal_form_of_inverse_generator() {
        // s1^-1 in B3 = D^-1 . (s1 s2)
        let nf = left_normal_form(&w("-1", 3));
        assert_eq!(nf.delta_power(), -1);
        assert_eq!(nf.canonical_length(), 1);
        assert_eq!(simple_letters(&nf.factors()[0]), vec![1, 2]);
        assert!(equals(&nf.to_word(), &w("-1", 3)).unwrap());
    }

    #[test]
    fn equality_examples() {
        assert!(equals(&w("1 2 1", 3), &w("2 1 2", 3)).unwrap());
        assert!(!equals(&w("1 2", 3), &w("2 1", 3)).unwrap());
        assert!(equals(&w("1 3", 4), &w("3 1", 4)).unwrap());
        assert!(equals(&w("1 -1", 2), &w("", 2)).unwrap());
        assert!(equals(&w("", 2), &w("", 2)).unwrap());
        assert!(equals(&w("1", 2), &w("1", 3)).is_err());
    }

    #[test]
    fn full_twist_is_central_on_samples() {
        let ft = BraidWord::full_twist_power(3, 1).unwrap();
        for text in ["1", "2 -1", "1 1 2", "-2 -2 1"] {
            let beta = w(text, 3);
            let left = ft.compose(&beta).unwrap();
            let right = beta.compose(&ft).unwrap();
            assert!(equals(&left, &right).unwrap());
        }
    }

    #[test]
    fn full_twist_conventions_pin() {
        for n in 2..=5usize {
            let ft = BraidWord::full_twist_power(n, 1).unwrap();
            let delta_sq = BraidWord::half_twist(n).unwrap().power(2);
            assert!(equals(&ft, &delta_sq).unwrap());
            let ascending: Vec<i32> = (1..n as i32).collect();
            let band = BraidWord::new(n, ascending).unwrap();
            assert!(equals(&ft, &band.power(n as i64)).unwrap());
        }
    }

    #[test]
    fn inf_sup_examples() {
        assert_eq!(inf_sup(&BraidWord::full_twist_power(3, 1).unwrap()), (2, 2));
        assert_eq!(inf_sup(&w("1", 3)), (0, 1));
        assert_eq!(inf_sup(&w("-1", 3)), (-1, 0));
    }

    #[test]
    fn normal_form_round_trip_is_idempotent() {
        for text in ["1 2 -1 -2 1", "-1 -1 2", "1 1 1 2 2", "2 -1 2 -1", ""] {
            let word = w(text, 3);
            let nf = left_normal_form(&word);
            let rebuilt = nf.to_word();
            assert!(equals(&word, &rebuilt).unwrap());
            assert_eq!(left_normal_form(&rebuilt), nf);
        }
    }

    #[test]
    fn nf_mul_and_power_match_word_arithmetic() {
        let a = w("1 2 -1", 3);
        let b = w("-2 1 1", 3);
        let via_nf = left_normal_form(&a).mul(&left_normal_form(&b)).unwrap();
        let via_words = left_normal_form(&a.compose(&b).unwrap());
        assert_eq!(via_nf, via_words);

        let p = left_normal_form(&a).power(5);
        assert_eq!(p, left_normal_form(&a.power(5)));
        let q = left_normal_form(&a).power(-3);
        assert_eq!(q, left_normal_form(&a.power(-3)));
    }

    #[test]
    fn collapse_preserves_element() {
        let word = w("1 -1 2 2 -2 1 1 -1", 3);
        let short = collapse(&word);
        assert!(equals(&word, &short).unwrap());
    }

    #[test]
    fn conjugacy_examples() {
        let cert = are_conjugate(&w("1", 3), &w("2", 3), 10_000).unwrap();
        assert!(cert.conjugate);
        let c = cert.witness.unwrap();
        let lhs = BraidWord::conjugate_by(&c, &w("1", 3)).unwrap();
        assert!(equals(&lhs, &w("2", 3)).unwrap());

        let cert = are_conjugate(&w("1", 2), &w("-1", 2), 10_000).unwrap();
        assert!(!cert.conjugate);

        let cert = are_conjugate(&w("1 -2", 3), &w("2 -1", 3), 10_000).unwrap();
        assert!(cert.conjugate);
        let c = cert.witness.unwrap();
        let lhs = BraidWord::conjugate_by(&c, &w("1 -2", 3)).unwrap();
        assert!(equals(&lhs, &w("2 -1", 3)).unwrap());
    }

    #[test]
    fn conjugacy_with_constructed_conjugates() {
        let g = w("2 -1 2 2", 3);
        for text in ["1 1 2", "-1 2 -2 1", "1 2 1 2"] {
            let beta = w(text, 3);
            let other = BraidWord::conjugate_by(&g, &beta).unwrap();
            let cert = are_conjugate(&beta, &other, 10_000).unwrap();
            assert!(cert.conjugate);
            let c = cert.witness.unwrap();
            let lhs = BraidWord::conjugate_by(&c, &beta).unwrap();
            assert!(equals(&lhs, &other).unwrap());
        }
    }

    #[test]
    fn non_conjugate_same_exponent_sum() {
        // s1 s2 (exponent sum 2, closure = unknot) vs s1 s1 (exponent sum 2,
        // closure = 2-component link): permutation cycle structure differs,
        // so they cannot be conjugate.
        let cert = are_conjugate(&w("1 2", 3), &w("1 1", 3), 10_000).unwrap();
        assert!(!cert.conjugate);
    }

    #[test]
    fn simple_letters_reconstructs_permutation() {
        for s in all_nontrivial_simples(4) {
            let letters = simple_letters(&s);
            assert_eq!(letters.len(), s.inversions());
            let word = BraidWord::new(4, letters).unwrap();
            assert_eq!(word.permutation(), s);
        }
    }
}
