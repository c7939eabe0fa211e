//! Permutations, rank encoding, and pattern involvement.
//!
//! Permutations are written in one-line notation over `1..=n` and all
//! positions in the public interface are 1-based. The rank encoding maps a
//! permutation to the word whose `i`-th letter is the rank of `p[i]` among the
//! suffix `p[i..]`; it is injective, and a word is an encoding of some
//! permutation exactly when every letter is at most its distance to the end
//! of the word.

use std::cmp::Ordering;
use std::fmt;

use crate::{Error, Result};

/// A permutation of `{1..n}` in one-line notation. May be empty.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    values: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation, checking that `values` is a rearrangement of
    /// `1..=n`.
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n];
        for &v in &values {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} outside 1..={n}"
                )));
            }
            if seen[v - 1] {
                return Err(Error::InvalidPermutation(format!("value {v} repeats")));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { values })
    }

    pub fn empty() -> Self {
        Permutation { values: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            values: (1..=n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// One-line notation; `values()[i]` is the image of position `i + 1`.
    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// The group inverse: `inverse()[p[i] - 1] == i + 1`.
    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.values.len()];
        for (i, &v) in self.values.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { values: inv }
    }

    /// Removes the element at 1-based `position` and relabels the rest.
    pub fn delete_at(&self, position: usize) -> Result<Self> {
        let n = self.values.len();
        if position == 0 || position > n {
            return Err(Error::PositionOutOfRange { position, len: n });
        }
        let removed = self.values[position - 1];
        let values = self
            .values
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != position - 1)
            .map(|(_, &v)| if v > removed { v - 1 } else { v })
            .collect();
        Ok(Permutation { values })
    }

    /// Does `self` contain `pattern`? That is, is there a subsequence of
    /// `self` in the same relative order as `pattern`?
    pub fn involves(&self, pattern: &Permutation) -> bool {
        let host = &self.values;
        let pat = &pattern.values;
        if pat.len() > host.len() {
            return false;
        }
        if pat.is_empty() {
            return true;
        }
        // Backtracking over positions; each candidate must sit between the
        // already-chosen values that the pattern places below and above it.
        fn search(host: &[usize], pat: &[usize], chosen: &mut Vec<usize>, start: usize) -> bool {
            let k = chosen.len();
            if k == pat.len() {
                return true;
            }
            let last = host.len() - (pat.len() - k) + 1;
            for pos in start..last {
                let v = host[pos];
                let ok = chosen
                    .iter()
                    .zip(pat)
                    .all(|(&c, &q)| (q < pat[k]) == (c < v));
                if ok {
                    chosen.push(v);
                    if search(host, pat, chosen, pos + 1) {
                        return true;
                    }
                    chosen.pop();
                }
            }
            false
        }
        search(host, pat, &mut Vec::new(), 0)
    }

    pub fn avoids(&self, pattern: &Permutation) -> bool {
        !self.involves(pattern)
    }

    /// Rank encoding: letter `i` is the rank of `values[i]` among the suffix
    /// `values[i..]`. Runs in `O(n log n)`.
    pub fn rank_encode(&self) -> RankWord {
        let n = self.values.len();
        let mut tree = Fenwick::new(n);
        let mut letters = vec![0; n];
        for i in (0..n).rev() {
            letters[i] = tree.prefix(self.values[i] - 1) + 1;
            tree.add(self.values[i], 1);
        }
        RankWord { letters }
    }

    /// Largest letter of the rank encoding (0 for the empty permutation).
    pub fn max_rank(&self) -> usize {
        self.rank_encode().letters.iter().copied().max().unwrap_or(0)
    }

    /// All permutations of length `n` in lexicographic order.
    pub fn all_of_length(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn rec(
            n: usize,
            current: &mut Vec<usize>,
            used: &mut Vec<bool>,
            out: &mut Vec<Permutation>,
        ) {
            if current.len() == n {
                out.push(Permutation {
                    values: current.clone(),
                });
                return;
            }
            for v in 1..=n {
                if !used[v - 1] {
                    used[v - 1] = true;
                    current.push(v);
                    rec(n, current, used, out);
                    current.pop();
                    used[v - 1] = false;
                }
            }
        }
        rec(n, &mut current, &mut used, &mut out);
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.values {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

/// Length-major order: shorter permutations first, lexicographic within a
/// length. This is the order used whenever sets of permutations are listed.
impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.values.len(), &self.values).cmp(&(other.values.len(), &other.values))
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A word of positive integers in the image alphabet of the rank encoding.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RankWord {
    letters: Vec<usize>,
}

impl RankWord {
    /// Builds a word, checking every letter is positive.
    pub fn new(letters: Vec<usize>) -> Result<Self> {
        if let Some(pos) = letters.iter().position(|&l| l == 0) {
            return Err(Error::InvalidWord(format!(
                "letter at position {} is 0",
                pos + 1
            )));
        }
        Ok(RankWord { letters })
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn max_letter(&self) -> usize {
        self.letters.iter().copied().max().unwrap_or(0)
    }

    /// Recovers the permutation this word encodes. Fails, naming the first
    /// offending position, when some letter exceeds its distance to the end
    /// of the word. Runs in `O(n log n)`.
    pub fn decode(&self) -> Result<Permutation> {
        let n = self.letters.len();
        let mut tree = Fenwick::new(n);
        for v in 1..=n {
            tree.add(v, 1);
        }
        let mut values = Vec::with_capacity(n);
        for (i, &letter) in self.letters.iter().enumerate() {
            let remaining = n - i;
            if letter > remaining {
                return Err(Error::UndecodableWord {
                    position: i + 1,
                    letter,
                    bound: remaining,
                });
            }
            let v = tree.select(letter);
            tree.add(v, -1);
            values.push(v);
        }
        Ok(Permutation { values })
    }
}

impl fmt::Display for RankWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.letters {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
            first = false;
        }
        Ok(())
    }
}

/// A finite antichain of permutations (no element involves another), kept in
/// length-major order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Basis {
    elements: Vec<Permutation>,
}

impl Basis {
    /// Builds a basis, deduplicating and rejecting comparable pairs.
    pub fn new(elements: Vec<Permutation>) -> Result<Self> {
        let mut elements = elements;
        elements.sort();
        elements.dedup();
        for i in 0..elements.len() {
            for j in 0..elements.len() {
                if i != j && elements[j].involves(&elements[i]) {
                    return Err(Error::NotAntichain(format!(
                        "{} is a pattern of {}",
                        elements[i], elements[j]
                    )));
                }
            }
        }
        Ok(Basis { elements })
    }

    pub fn empty() -> Self {
        Basis {
            elements: Vec::new(),
        }
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// All permutations of length at most `maxlen` avoiding every element of
/// `basis`, grouped by length. Exhaustive generation — an oracle, not an
/// algorithm for large lengths.
pub fn avoidance_class(basis: &[Permutation], maxlen: usize) -> Vec<Vec<Permutation>> {
    (0..=maxlen)
        .map(|n| {
            Permutation::all_of_length(n)
                .into_iter()
                .filter(|p| basis.iter().all(|b| p.avoids(b)))
                .collect()
        })
        .collect()
}

/// Minimal non-members of `member` among permutations of length at most
/// `maxlen`: the `p` with `member(p)` false whose every one-element deletion
/// satisfies `member`. Fails if the result is not an antichain, which means
/// `member` does not describe a closed set.
pub fn brute_basis(member: impl Fn(&Permutation) -> bool, maxlen: usize) -> Result<Basis> {
    let mut found = Vec::new();
    for n in 0..=maxlen {
        for p in Permutation::all_of_length(n) {
            if member(&p) {
                continue;
            }
            let minimal = (1..=n).all(|i| member(&p.delete_at(i).expect("position in range")));
            if minimal {
                found.push(p);
            }
        }
    }
    Basis::new(found).map_err(|e| Error::NotClosed(e.to_string()))
}

/// Fenwick tree over `1..=n` supporting prefix sums and rank selection.
struct Fenwick {
    tree: Vec<i64>,
}

impl Fenwick {
    fn new(n: usize) -> Self {
        Fenwick {
            tree: vec![0; n + 1],
        }
    }

    fn add(&mut self, mut i: usize, delta: i64) {
        while i < self.tree.len() {
            self.tree[i] += delta;
            i += i & i.wrapping_neg();
        }
    }

    fn prefix(&self, mut i: usize) -> usize {
        let mut sum = 0;
        while i > 0 {
            sum += self.tree[i];
            i -= i & i.wrapping_neg();
        }
        sum as usize
    }

    /// Smallest index whose prefix sum reaches `k` (1-based rank).
    fn select(&self, k: usize) -> usize {
        let n = self.tree.len() - 1;
        let mut pos = 0;
        let mut rem = k as i64;
        let mut bit = n.next_power_of_two();
        if bit > n {
            bit >>= 1;
        }
        while bit > 0 {
            let next = pos + bit;
            if next <= n && self.tree[next] < rem {
                pos = next;
                rem -= self.tree[next];
            }
            bit >>= 1;
        }
        pos + 1
    }
}
