//! Braid words: the universal currency of the crate.
//!
//! A word lives in the braid group on `strands` strands and is a flat sequence
//! of signed generator indices: the letter `i` (with `1 <= i <= strands-1`)
//! is the positive Artin generator crossing strands `i` and `i+1`, and `-i`
//! is its inverse. Words are immutable; every operation returns a new value.

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

/// One part of a block decomposition: either a maximal subword free of the
/// first generator, or a single occurrence of that generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlockPart {
    /// A (possibly empty) subword containing no letter of index 1.
    Free(BraidWord),
    /// A single letter `+1` or `-1`.
    Sigma1(i32),
}

/// Decomposition of a word at every occurrence of the first generator.
///
/// Parts alternate strictly: free block, letter, free block, ..., letter,
/// free block (the outer free blocks may be empty). Concatenating the parts
/// restores the source word letter for letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub parts: Vec<BlockPart>,
    pub sigma1_count: usize,
}

impl BlockDecomposition {
    /// Total number of parts; always equal to `2 * sigma1_count + 1`.
    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    /// Concatenate all parts back into a single word.
    pub fn concat(&self) -> BraidWord {
        let strands = match &self.parts[0] {
            BlockPart::Free(w) => w.strands(),
            BlockPart::Sigma1(_) => unreachable!("decomposition starts with a free block"),
        };
        let mut letters = Vec::new();
        for part in &self.parts {
            match part {
                BlockPart::Free(w) => letters.extend_from_slice(w.letters()),
                BlockPart::Sigma1(l) => letters.push(*l),
            }
        }
        BraidWord::from_validated(strands, letters)
    }
}

impl BraidWord {
    /// Build a word, validating every letter against the strand count.
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands < 2 {
            return Err(Error::TooFewStrands { strands });
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(Error::InvalidGenerator { index: l, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Internal constructor for letters already known to be in range.
    pub(crate) fn from_validated(strands: usize, letters: Vec<i32>) -> Self {
        debug_assert!(strands >= 2);
        debug_assert!(letters
            .iter()
            .all(|&l| l != 0 && (l.unsigned_abs() as usize) < strands));
        BraidWord { strands, letters }
    }

    pub fn empty(strands: usize) -> Result<Self> {
        Self::new(strands, Vec::new())
    }

    /// Parse whitespace-separated signed generator indices, e.g. `"1 -2 1"`.
    pub fn parse(text: &str, strands: usize) -> Result<Self> {
        if strands < 2 {
            return Err(Error::TooFewStrands { strands });
        }
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let l: i32 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("malformed generator token {:?}", tok)))?;
            if l == 0 {
                return Err(Error::Parse("generator index 0 is not allowed".into()));
            }
            if l.unsigned_abs() as usize >= strands {
                return Err(Error::InvalidGenerator { index: l, strands });
            }
            letters.push(l);
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn check_strands(&self, other: &BraidWord) -> Result<()> {
        if self.strands != other.strands {
            Err(Error::StrandMismatch {
                left: self.strands,
                right: other.strands,
            })
        } else {
            Ok(())
        }
    }

    /// Cancel all adjacent inverse pairs. One stack pass reaches the fixed
    /// point; the result represents the same group element.
    pub fn free_reduce(&self) -> Self {
        let mut stack: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if stack.last() == Some(&-l) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        BraidWord {
            strands: self.strands,
            letters: stack,
        }
    }

    /// Concatenation followed by free reduction.
    pub fn compose(&self, other: &BraidWord) -> Result<Self> {
        self.check_strands(other)?;
        let mut letters = Vec::with_capacity(self.letters.len() + other.letters.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        }
        .free_reduce())
    }

    /// Reverse the word and flip every sign.
    pub fn inverse(&self) -> Self {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
        .free_reduce()
    }

    /// `m`-th power by repeated concatenation (negative `m` via the inverse),
    /// freely reduced. No normal-form collapse happens here; callers that
    /// need short words opt in via the Garside module.
    pub fn power(&self, m: i64) -> Self {
        if m < 0 {
            return self.inverse().power(-m);
        }
        let base = self.free_reduce();
        let mut letters = Vec::with_capacity(base.letters.len() * m as usize);
        for _ in 0..m {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord {
            strands: self.strands,
            letters,
        }
        .free_reduce()
    }

    /// `g . w . g^-1`.
    pub fn conjugate_by(g: &BraidWord, w: &BraidWord) -> Result<Self> {
        g.compose(w)?.compose(&g.inverse())
    }

    /// Sum of the letter signs; a homomorphism to the integers.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|&l| l.signum() as i64).sum()
    }

    /// The underlying permutation of strand start positions (0-based).
    pub fn permutation(&self) -> Permutation {
        let mut p = Permutation::identity(self.strands);
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            p = p.then(&Permutation::transposition(self.strands, i));
        }
        p
    }

    /// Number of components of the closure: cycle count of the permutation.
    pub fn closure_component_count(&self) -> usize {
        self.permutation().cycles().len()
    }

    /// The positive half twist `(s1 s2 ... s_{n-1})(s1 ... s_{n-2})...(s1)`.
    pub fn half_twist(strands: usize) -> Result<Self> {
        if strands < 2 {
            return Err(Error::TooFewStrands { strands });
        }
        let mut letters = Vec::with_capacity(strands * (strands - 1) / 2);
        for top in (1..strands).rev() {
            for i in 1..=top {
                letters.push(i as i32);
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// The `k`-th power of the full twist, as the word `(half twist)^(2k)`;
    /// negative `k` yields the inverse word.
    pub fn full_twist_power(strands: usize, k: i64) -> Result<Self> {
        let delta = Self::half_twist(strands)?;
        Ok(if k >= 0 {
            let mut letters = Vec::with_capacity(delta.letters.len() * 2 * k as usize);
            for _ in 0..2 * k {
                letters.extend_from_slice(&delta.letters);
            }
            BraidWord { strands, letters }
        } else {
            let inv = delta.inverse();
            let mut letters = Vec::with_capacity(inv.letters.len() * 2 * (-k) as usize);
            for _ in 0..2 * (-k) {
                letters.extend_from_slice(&inv.letters);
            }
            BraidWord { strands, letters }
        })
    }

    /// Append one crossing of the new last strand: `w` in the group on `n`
    /// strands becomes `w . s_n^{sign}` on `n+1` strands. The closure of the
    /// result is isotopic to the closure of `w`.
    pub fn markov_stabilize(&self, sign: i32) -> Self {
        assert!(sign == 1 || sign == -1, "stabilization sign must be +1 or -1");
        let mut letters = self.letters.clone();
        letters.push(sign * self.strands as i32);
        BraidWord {
            strands: self.strands + 1,
            letters,
        }
    }

    /// True when every letter is positive (a word-level check; no rewriting).
    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|&l| l > 0)
    }

    /// Flip the sign of every letter; the closure of the result is the mirror
    /// image of the closure of `w`.
    pub fn mirror(&self) -> Self {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().map(|&l| -l).collect(),
        }
    }

    /// Split the word at every occurrence of the first generator. Parts
    /// alternate free block / single letter / free block ...; concatenation
    /// round-trips exactly and the part count is `2 m + 1` for `m`
    /// occurrences.
    pub fn sigma1_block_decomposition(&self) -> BlockDecomposition {
        let mut parts = Vec::new();
        let mut current: Vec<i32> = Vec::new();
        let mut sigma1_count = 0usize;
        for &l in &self.letters {
            if l.abs() == 1 {
                parts.push(BlockPart::Free(BraidWord::from_validated(
                    self.strands,
                    std::mem::take(&mut current),
                )));
                parts.push(BlockPart::Sigma1(l));
                sigma1_count += 1;
            } else {
                current.push(l);
            }
        }
        parts.push(BlockPart::Free(BraidWord::from_validated(
            self.strands,
            current,
        )));
        BlockDecomposition {
            parts,
            sigma1_count,
        }
    }
}

impl std::fmt::Display for BraidWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for &l in &self.letters {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{}", l)?;
            first = false;
        }
        Ok(())
    }
}
