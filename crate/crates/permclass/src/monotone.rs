//! Permutations built from consecutive monotone segments.
//!
//! Fix a nonempty sequence of signs `φ = f_1 … f_k`. A permutation lies in
//! the segment set of `φ` when it splits into `k` consecutive blocks
//! (possibly empty) with block `i` increasing if `f_i` is `+` and decreasing
//! if `-`. A *computation word* `c` over `{1..k}` describes such a
//! permutation by naming, for each value `v` (in increasing order), the
//! block that holds it; [`decode_word`] rebuilds the permutation and
//! [`encodings`] lists every word describing a given one.
//!
//! Each member has one distinguished *greedy* encoding, from the
//! segmentation that always takes the longest possible block
//! ([`greedy_encoding`]); the greedy words form a regular language
//! ([`greedy_automaton`]), which makes exact enumeration possible. Closed
//! subsets given by forbidden patterns are likewise regular at the word
//! level ([`closed_subset_acceptor`]), and [`gf_monotone`] counts their
//! members by intersecting the two machines.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::automaton::{Automaton, Direction};
use crate::enumeration::{generating_function, RationalGf};
use crate::perm::Permutation;
use crate::{Error, Result};

/// Direction of one monotone segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Up,
    Down,
}

impl Sign {
    /// May `b` follow `a` inside a segment of this direction?
    fn allows(self, a: usize, b: usize) -> bool {
        match self {
            Sign::Up => a < b,
            Sign::Down => a > b,
        }
    }
}

/// A nonempty sequence of segment directions, e.g. `+--`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignSequence {
    signs: Vec<Sign>,
}

impl SignSequence {
    pub fn new(signs: Vec<Sign>) -> Result<Self> {
        if signs.is_empty() {
            return Err(Error::InvalidWord("sign sequence must be nonempty".into()));
        }
        Ok(SignSequence { signs })
    }

    /// Number of segments; also the computation-word alphabet size.
    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }
}

impl FromStr for SignSequence {
    type Err = Error;

    /// Parses strings like `+--`; both ASCII `-` and the minus sign `−`
    /// denote a decreasing segment.
    fn from_str(s: &str) -> Result<Self> {
        let mut signs = Vec::new();
        for c in s.chars() {
            match c {
                '+' => signs.push(Sign::Up),
                '-' | '−' => signs.push(Sign::Down),
                other => {
                    return Err(Error::InvalidWord(format!(
                        "unexpected character {other:?} in sign sequence"
                    )))
                }
            }
        }
        SignSequence::new(signs)
    }
}

impl fmt::Display for SignSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.signs {
            write!(f, "{}", if *s == Sign::Up { '+' } else { '-' })?;
        }
        Ok(())
    }
}

/// The permutation a computation word describes: value `v` goes to block
/// `word[v-1]`, blocks are concatenated in order, each arranged by its sign.
pub fn decode_word(signs: &SignSequence, word: &[usize]) -> Result<Permutation> {
    let k = signs.len();
    for &letter in word {
        if letter == 0 || letter > k {
            return Err(Error::LetterOutOfRange {
                letter,
                alphabet: k,
            });
        }
    }
    let mut values = Vec::with_capacity(word.len());
    for (block, &sign) in signs.signs().iter().enumerate() {
        // Values arrive in increasing order by construction.
        let members = (1..=word.len()).filter(|&v| word[v - 1] == block + 1);
        match sign {
            Sign::Up => values.extend(members),
            Sign::Down => {
                let mut group: Vec<usize> = members.collect();
                group.reverse();
                values.extend(group);
            }
        }
    }
    Ok(Permutation::new(values).expect("blocks partition the values"))
}

/// Every computation word describing `p`: one word per way of cutting `p`
/// into `k` consecutive blocks monotone in the directions of `signs`.
/// Empty exactly when `p` is not in the segment set.
pub fn encodings(signs: &SignSequence, p: &Permutation) -> Vec<Vec<usize>> {
    let values = p.values();
    let k = signs.len();
    let mut cuts = Vec::with_capacity(k);
    let mut out = Vec::new();
    fn rec(
        signs: &[Sign],
        values: &[usize],
        block: usize,
        start: usize,
        cuts: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = values.len();
        if block == signs.len() {
            if start == n {
                let mut word = vec![0; n];
                let mut from = 0;
                for (i, &to) in cuts.iter().enumerate() {
                    for pos in from..to {
                        word[values[pos] - 1] = i + 1;
                    }
                    from = to;
                }
                out.push(word);
            }
            return;
        }
        let sign = signs[block];
        let mut end = start;
        loop {
            cuts.push(end);
            rec(signs, values, block + 1, end, cuts, out);
            cuts.pop();
            // A block stays monotone only while consecutive entries agree
            // with its sign, so stop extending at the first break.
            if end < n && (end == start || sign.allows(values[end - 1], values[end])) {
                end += 1;
            } else {
                break;
            }
        }
    }
    rec(signs.signs(), values, 0, 0, &mut cuts, &mut out);
    out.sort();
    out
}

/// The greedy encoding: every block takes as many elements as it can before
/// the next block starts. Errors with the first position that no block can
/// hold when `p` is not in the segment set (greedy failure and
/// non-membership coincide).
pub fn greedy_encoding(signs: &SignSequence, p: &Permutation) -> Result<Vec<usize>> {
    let values = p.values();
    let n = values.len();
    let mut word = vec![0; n];
    let mut start = 0;
    for (block, &sign) in signs.signs().iter().enumerate() {
        let mut end = start;
        if end < n {
            end += 1;
            while end < n && sign.allows(values[end - 1], values[end]) {
                end += 1;
            }
        }
        for pos in start..end {
            word[values[pos] - 1] = block + 1;
        }
        start = end;
    }
    if start < n {
        return Err(Error::NotMonotoneDecomposable {
            position: start + 1,
        });
    }
    Ok(word)
}

/// Deterministic acceptor of exactly the greedy encodings.
///
/// A word is greedy if and only if (a) its letters form a gapless set
/// `{1..m}` — blocks empty out only when no elements remain — and (b) for
/// each pair of consecutive letters `p`, `q = p+1` both present, the
/// block-maximality condition holds, phrased on letter positions:
///
/// * `+ +`: the last `p` comes after the first `q`;
/// * `+ -`: the last `p` comes after the last `q`;
/// * `- +`: the first `p` comes before the first `q`;
/// * `- -`: the first `p` comes before the last `q`.
///
/// Each condition says precisely that the first element of block `q` cannot
/// extend block `p`.
pub fn greedy_automaton(signs: &SignSequence) -> Automaton {
    let k = signs.len();
    let mut result = support_automaton(k);
    for p in 1..k {
        let pair = pair_automaton(k, p, signs.signs()[p - 1], signs.signs()[p]);
        result = result
            .intersect(&pair)
            .expect("same alphabet and direction");
    }
    result.minimize()
}

/// Words whose letter set is `{1..m}` for some `m` (no gaps). States are
/// bitmasks of the letters seen.
fn support_automaton(k: usize) -> Automaton {
    let mut transitions = Vec::new();
    for mask in 0..1usize << k {
        for e in 1..=k {
            transitions.push((mask, Some(e), mask | (1 << (e - 1))));
        }
    }
    let finals: Vec<usize> = (0..1usize << k)
        .filter(|&mask| (mask & (mask + 1)) == 0)
        .collect();
    Automaton::new(k, Direction::Forward, 1 << k, 0, &finals, &transitions)
        .expect("support machine is well-formed")
}

/// The positional condition for the consecutive letters `p` and `q = p+1`,
/// vacuous whenever `q` is missing (a missing `p` with `q` present is left
/// to the support condition). See [`greedy_automaton`].
fn pair_automaton(k: usize, p: usize, sign_p: Sign, sign_q: Sign) -> Automaton {
    let q = p + 1;
    // Rows: state -> (on p, on q, on other); `None` marks a final state in
    // the separate list below.
    let (table, finals): (Vec<(usize, usize, usize)>, Vec<usize>) = match (sign_p, sign_q) {
        // Accept when some q is later followed by a p (or q never occurs).
        (Sign::Up, Sign::Up) => (
            vec![(0, 1, 0), (2, 1, 1), (2, 2, 2)],
            vec![0, 2],
        ),
        // Accept when the last of the two letters to occur is p.
        (Sign::Up, Sign::Down) => (
            vec![(1, 2, 0), (1, 4, 1), (3, 2, 2), (3, 4, 3), (3, 4, 4)],
            vec![0, 1, 2, 3],
        ),
        // Accept when p occurs before any q does.
        (Sign::Down, Sign::Up) => (
            vec![(1, 2, 0), (1, 1, 1), (3, 2, 2), (3, 3, 3)],
            vec![0, 1, 2],
        ),
        // Accept when some p is later followed by a q (or either is absent).
        (Sign::Down, Sign::Down) => (
            vec![(2, 1, 0), (3, 1, 1), (2, 4, 2), (3, 4, 3), (4, 4, 4)],
            vec![0, 1, 2, 4],
        ),
    };
    let mut transitions = Vec::new();
    for (state, &(on_p, on_q, on_other)) in table.iter().enumerate() {
        for e in 1..=k {
            let target = if e == p {
                on_p
            } else if e == q {
                on_q
            } else {
                on_other
            };
            transitions.push((state, Some(e), target));
        }
    }
    Automaton::new(
        k,
        Direction::Forward,
        table.len(),
        0,
        &finals,
        &transitions,
    )
    .expect("pair machine is well-formed")
}

/// Acceptor of the computation words of the members avoiding every pattern
/// in `basis`: the complement of the words containing an encoding of some
/// forbidden pattern as a scattered subword. (A sub-permutation's encodings
/// appear inside every encoding of the host, so one complementation
/// captures avoidance exactly.)
pub fn closed_subset_acceptor(signs: &SignSequence, basis: &[Permutation]) -> Automaton {
    let k = signs.len();
    let mut forbidden: BTreeSet<Vec<usize>> = BTreeSet::new();
    for b in basis {
        forbidden.extend(encodings(signs, b));
    }
    // One NFA: state 0 loops on everything; each forbidden word gets a chain
    // that also loops on everything, advancing on its next letter.
    let mut transitions: Vec<(usize, Option<usize>, usize)> = Vec::new();
    let mut finals = Vec::new();
    let mut next_id = 1;
    for e in 1..=k {
        transitions.push((0, Some(e), 0));
    }
    for word in &forbidden {
        if word.is_empty() {
            finals.push(0);
            continue;
        }
        let chain: Vec<usize> = (next_id..next_id + word.len()).collect();
        next_id += word.len();
        transitions.push((0, Some(word[0]), chain[0]));
        for (i, &state) in chain.iter().enumerate() {
            for e in 1..=k {
                transitions.push((state, Some(e), state));
            }
            if i + 1 < chain.len() {
                transitions.push((state, Some(word[i + 1]), chain[i + 1]));
            }
        }
        finals.push(chain[chain.len() - 1]);
    }
    let containing = Automaton::new(k, Direction::Forward, next_id, 0, &finals, &transitions)
        .expect("subword machine is well-formed");
    containing.complement().minimize()
}

/// Is `p` a member of the segment set that avoids every pattern in `basis`?
/// Decided by running the greedy encoding through the closed-subset
/// acceptor; any single encoding settles membership because the acceptor's
/// language contains all encodings of a member or none of them.
pub fn member_monotone(signs: &SignSequence, basis: &[Permutation], p: &Permutation) -> bool {
    let Ok(word) = greedy_encoding(signs, p) else {
        return false;
    };
    closed_subset_acceptor(signs, basis)
        .accepts(&word)
        .expect("letters are within the alphabet")
}

/// The generating function counting, by length, the members of the segment
/// set that avoid every pattern in `basis`. Intersecting with the greedy
/// language counts each permutation once.
pub fn gf_monotone(signs: &SignSequence, basis: &[Permutation]) -> RationalGf {
    let language = closed_subset_acceptor(signs, basis)
        .intersect(&greedy_automaton(signs))
        .expect("same alphabet and direction");
    generating_function(&language)
}
