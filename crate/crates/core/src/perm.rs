//! Permutations of strand positions, used both for closure bookkeeping and as
//! the compact representation of permutation braids (simple elements).
//!
//! Convention: a braid word is read left to right and `image[i]` is the final
//! position of the strand that *starts* at position `i` (0-based internally).
//! Composition follows word order: `a.then(b)` is "do `a`, then `b`".

/// A permutation of `0..n`, stored as the image vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n).collect(),
        }
    }

    /// Build from an image vector; panics if it is not a bijection.
    pub fn from_image(image: Vec<usize>) -> Self {
        let n = image.len();
        let mut seen = vec![false; n];
        for &v in &image {
            assert!(v < n && !seen[v], "not a permutation: {:?}", image);
            seen[v] = true;
        }
        Permutation { image }
    }

    /// The adjacent transposition swapping positions `i` and `i+1` (0-based).
    pub fn transposition(n: usize, i: usize) -> Self {
        assert!(i + 1 < n);
        let mut image: Vec<usize> = (0..n).collect();
        image.swap(i, i + 1);
        Permutation { image }
    }

    /// The half-twist permutation `i -> n-1-i`.
    pub fn half_twist(n: usize) -> Self {
        Permutation {
            image: (0..n).rev().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn inverse(&self) -> Self {
        let mut image = vec![0; self.image.len()];
        for (i, &v) in self.image.iter().enumerate() {
            image[v] = i;
        }
        Permutation { image }
    }

    /// Word-order composition: first `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Self {
        assert_eq!(self.n(), other.n());
        Permutation {
            image: self.image.iter().map(|&v| other.image[v]).collect(),
        }
    }

    /// Number of inversions: pairs `i < j` with `image[i] > image[j]`.
    /// Equals the positive-letter length of the corresponding permutation braid.
    pub fn inversions(&self) -> usize {
        let n = self.n();
        let mut count = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                if self.image[i] > self.image[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Cycles of the permutation (each cycle sorted to start at its minimum,
    /// cycles ordered by minimum). Cycle count = closure component count.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                cycle.push(j);
                j = self.image[j];
            }
            out.push(cycle);
        }
        out
    }

    /// Conjugation by the half twist: `delta^-1 . self . delta` as a position
    /// map, i.e. image `i -> n-1-image[n-1-i]`. This is the flip that moves a
    /// factor through one power of the half twist.
    pub fn flip(&self) -> Self {
        let n = self.n();
        let mut image = vec![0; n];
        for i in 0..n {
            image[i] = n - 1 - self.image[n - 1 - i];
        }
        Permutation { image }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_follows_word_order() {
        // word s1 s2 on 3 strands: start 0 -> 1 -> 2, start 1 -> 0, start 2 -> 1
        let s1 = Permutation::transposition(3, 0);
        let s2 = Permutation::transposition(3, 1);
        let p = s1.then(&s2);
        assert_eq!(p.image(), &[2, 0, 1]);
    }

    #[test]
    fn inverse_roundtrip() {
        let p = Permutation::from_image(vec![2, 0, 3, 1]);
        assert!(p.then(&p.inverse()).is_identity());
        assert!(p.inverse().then(&p).is_identity());
    }

    #[test]
    fn half_twist_flip_moves_transpositions() {
        // flip of s_i is s_{n-i} (1-based): transposition 0 <-> transposition n-2
        let n = 4;
        let s1 = Permutation::transposition(n, 0);
        assert_eq!(s1.flip(), Permutation::transposition(n, 2));
        let delta = Permutation::half_twist(n);
        assert_eq!(delta.inversions(), n * (n - 1) / 2);
        assert_eq!(delta.flip(), delta);
    }

    #[test]
    fn cycles_of_identity() {
        let id = Permutation::identity(4);
        assert_eq!(id.cycles().len(), 4);
    }
}
