//! Permutations, packed words, shuffles, and the standardization and
//! packing maps between integer words.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("word has a repeated letter {0}")]
    DuplicateLetter(u32),
    #[error("{0:?} is not a permutation of 1..n")]
    NotPermutation(Vec<u32>),
    #[error("{0:?} is not a packed word")]
    NotPacked(Vec<u32>),
    #[error("restriction index {index} outside 0..={max}")]
    RestrictOutOfRange { index: u32, max: u32 },
    #[error("cannot parse word from {0:?}")]
    Parse(String),
}

/// One-line notation of a permutation of `1..=n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn new(letters: Vec<u32>) -> Result<Self, WordError> {
        let n = letters.len() as u32;
        let mut seen = vec![false; letters.len()];
        for &x in &letters {
            if x == 0 || x > n || seen[(x - 1) as usize] {
                return Err(WordError::NotPermutation(letters));
            }
            seen[(x - 1) as usize] = true;
        }
        Ok(Permutation(letters))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u32).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<u32> {
        self.0
    }

    /// `σ(i)` for `1 <= i <= n`.
    pub fn at(&self, i: usize) -> u32 {
        self.0[i - 1]
    }

    /// 1-based position of letter `v`, i.e. `σ⁻¹(v)`.
    pub fn position_of(&self, v: u32) -> usize {
        self.0.iter().position(|&x| x == v).expect("letter in range") + 1
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[(x - 1) as usize] = i as u32 + 1;
        }
        Permutation(inv)
    }

    /// All permutations of size `n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<u32> = (1..=n as u32).collect();
        loop {
            out.push(Permutation(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
                return out;
            };
            let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
    }
}

/// Word whose letter set is exactly `1..=max`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PackedWord(Vec<u32>);

impl PackedWord {
    pub fn new(letters: Vec<u32>) -> Result<Self, WordError> {
        if letters.is_empty() || !is_packed(&letters) {
            return Err(WordError::NotPacked(letters));
        }
        Ok(PackedWord(letters))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn max_letter(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// All packed words of length `n`, in lexicographic order.
    pub fn all(n: usize) -> Vec<PackedWord> {
        let mut out = Vec::new();
        if n == 0 {
            return out;
        }
        let mut cur = vec![1u32; n];
        loop {
            if is_packed(&cur) {
                out.push(PackedWord(cur.clone()));
            }
            let Some(i) = (0..n).rev().find(|&i| cur[i] < n as u32) else {
                return out;
            };
            cur[i] += 1;
            for x in &mut cur[i + 1..] {
                *x = 1;
            }
        }
    }
}

fn is_packed(w: &[u32]) -> bool {
    let set: BTreeSet<u32> = w.iter().copied().collect();
    set.iter().copied().eq(1..=set.len() as u32)
}

/// Standardization: the permutation with the same relative order as `word`.
pub fn std(word: &[u32]) -> Result<Permutation, WordError> {
    let mut sorted = word.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(WordError::DuplicateLetter(w[0]));
    }
    Ok(Permutation(
        word.iter()
            .map(|x| sorted.binary_search(x).unwrap() as u32 + 1)
            .collect(),
    ))
}

/// Replaces every letter by its rank among the distinct letters of `word`.
pub fn pack(word: &[u32]) -> Result<PackedWord, WordError> {
    if word.is_empty() {
        return Err(WordError::NotPacked(Vec::new()));
    }
    let mut distinct = word.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    Ok(PackedWord(
        word.iter()
            .map(|x| distinct.binary_search(x).unwrap() as u32 + 1)
            .collect(),
    ))
}

/// Adds `k` to every letter.
pub fn shift(word: &[u32], k: u32) -> Vec<u32> {
    word.iter().map(|x| x + k).collect()
}

/// Splits a packed word by value: letters `<= i` and letters `> i`,
/// each kept in their original order. The right part is not repacked.
pub fn restrict(u: &PackedWord, i: u32) -> Result<(Vec<u32>, Vec<u32>), WordError> {
    let max = u.max_letter();
    if i > max {
        return Err(WordError::RestrictOutOfRange { index: i, max });
    }
    let (left, right) = u.0.iter().partition(|&&x| x <= i);
    Ok((left, right))
}

/// A `(k, l)`-shuffle: `σ ∈ S_{k+l}` increasing on `1..=k` and on
/// `k+1..=k+l`. `σ(i)` is the position taken by the `i`-th letter of the
/// concatenated word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shuffle {
    k: usize,
    sigma: Vec<u32>,
}

impl Shuffle {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.sigma.len() - self.k
    }

    pub fn as_permutation(&self) -> Permutation {
        Permutation(self.sigma.clone())
    }

    /// `σ⁻¹(p)` for a 1-based position `p`.
    pub fn source_of(&self, p: u32) -> usize {
        self.sigma.iter().position(|&x| x == p).unwrap() + 1
    }

    /// The word whose letter at position `σ(i)` is the `i`-th letter of `u ++ v`.
    pub fn interleave<T: Clone>(&self, u: &[T], v: &[T]) -> Vec<T> {
        debug_assert_eq!(u.len(), self.k);
        debug_assert_eq!(v.len(), self.l());
        let mut out: Vec<Option<T>> = vec![None; self.sigma.len()];
        for (i, x) in u.iter().chain(v.iter()).enumerate() {
            out[(self.sigma[i] - 1) as usize] = Some(x.clone());
        }
        out.into_iter().map(Option::unwrap).collect()
    }
}

/// All `(k, l)`-shuffles, ordered lexicographically by the position set
/// of the first block.
pub fn shuffles(k: usize, l: usize) -> Vec<Shuffle> {
    let n = k + l;
    let mut out = Vec::new();
    let mut first: Vec<u32> = (1..=k as u32).collect();
    loop {
        let mut sigma = first.clone();
        sigma.extend((1..=n as u32).filter(|p| !first.contains(p)));
        out.push(Shuffle { k, sigma });
        // next k-subset of 1..=n in lexicographic order
        let Some(i) = (0..k).rev().find(|&i| first[i] < (n - k + i + 1) as u32) else {
            return out;
        };
        first[i] += 1;
        for j in i + 1..k {
            first[j] = first[j - 1] + 1;
        }
    }
}

fn fmt_word(f: &mut fmt::Formatter<'_>, w: &[u32]) -> fmt::Result {
    let compact = w.iter().all(|&x| x <= 9);
    write!(f, "(")?;
    for (i, x) in w.iter().enumerate() {
        if i > 0 && !compact {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

/// Parses `"(3412)"` (single digits) or `"(10,2,1)"` (comma separated).
pub fn parse_word(s: &str) -> Result<Vec<u32>, WordError> {
    let bad = || WordError::Parse(s.to_string());
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(bad)?;
    if inner.contains(',') {
        inner
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| bad()))
            .collect()
    } else {
        inner
            .chars()
            .map(|c| c.to_digit(10).ok_or_else(bad))
            .collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_word(f, &self.0)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_word(f, &self.0)
    }
}

impl fmt::Display for PackedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_word(f, &self.0)
    }
}

impl fmt::Debug for PackedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_word(f, &self.0)
    }
}

impl FromStr for Permutation {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Permutation::new(parse_word(s)?)
    }
}

impl FromStr for PackedWord {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PackedWord::new(parse_word(s)?)
    }
}

/// Shorthand for tests and examples: `perm("(3412)")`.
pub fn perm(s: &str) -> Permutation {
    s.parse().expect("valid permutation literal")
}

/// Shorthand for tests and examples: `packed("(121)")`.
pub fn packed(s: &str) -> PackedWord {
    s.parse().expect("valid packed word literal")
}
