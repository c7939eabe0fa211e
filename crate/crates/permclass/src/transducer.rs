//! Finite-state transducers relating rank encodings.
//!
//! The two central machines both read words from the last letter to the
//! first ([`Direction::Reversed`]):
//!
//! * [`Transducer::deletion`] relates the encoding of a permutation to the
//!   encodings of all permutations obtained by deleting exactly one
//!   position, and
//! * [`Transducer::involvement`] relates it to the encodings of all
//!   sub-permutations (any number of deleted positions, including none).
//!
//! [`Transducer::image`] pushes a regular language through a transducer,
//! which is how whole languages of encodings are differentiated at once.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::automaton::{Automaton, Direction};
use crate::perm::RankWord;
use crate::{Error, Result};

/// One transition: consume `input` (or nothing), emit `output` (or
/// nothing), move to `target`.
pub type TransducerArc = (Option<usize>, Option<usize>, usize);

/// A nondeterministic finite-state transducer with one initial state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transducer {
    input_alphabet: usize,
    output_alphabet: usize,
    direction: Direction,
    initial: usize,
    finals: Vec<bool>,
    /// `trans[s]` lists `(input, output, target)`, sorted.
    trans: Vec<Vec<TransducerArc>>,
}

impl Transducer {
    pub fn new(
        input_alphabet: usize,
        output_alphabet: usize,
        direction: Direction,
        state_count: usize,
        initial: usize,
        finals: &[usize],
        transitions: &[(usize, Option<usize>, Option<usize>, usize)],
    ) -> Result<Self> {
        if input_alphabet == 0 || output_alphabet == 0 {
            return Err(Error::InvalidAutomaton("alphabet must be nonempty".into()));
        }
        if state_count == 0 {
            return Err(Error::InvalidAutomaton("no states".into()));
        }
        if initial >= state_count {
            return Err(Error::InvalidAutomaton(format!(
                "initial state {initial} out of range"
            )));
        }
        let mut final_flags = vec![false; state_count];
        for &f in finals {
            if f >= state_count {
                return Err(Error::InvalidAutomaton(format!(
                    "final state {f} out of range"
                )));
            }
            final_flags[f] = true;
        }
        let mut trans = vec![Vec::new(); state_count];
        for &(src, input, output, dst) in transitions {
            if src >= state_count || dst >= state_count {
                return Err(Error::InvalidAutomaton(format!(
                    "transition ({src}, _, _, {dst}) out of range"
                )));
            }
            if let Some(letter) = input {
                if letter == 0 || letter > input_alphabet {
                    return Err(Error::LetterOutOfRange {
                        letter,
                        alphabet: input_alphabet,
                    });
                }
            }
            if let Some(letter) = output {
                if letter == 0 || letter > output_alphabet {
                    return Err(Error::LetterOutOfRange {
                        letter,
                        alphabet: output_alphabet,
                    });
                }
            }
            trans[src].push((input, output, dst));
        }
        for row in &mut trans {
            row.sort_unstable();
            row.dedup();
        }
        Ok(Transducer {
            input_alphabet,
            output_alphabet,
            direction,
            initial,
            finals: final_flags,
            trans,
        })
    }

    /// Relates each valid rank encoding to the encodings of all one-position
    /// deletions. Reads right to left: state `0` copies letters until the
    /// deleted position is (nondeterministically) chosen; the counting state
    /// `r` then tracks the deleted element's rank among the letters still to
    /// come, decrementing every strictly larger letter passed on the way.
    /// Exactly one deletion happens, so the copying state is not final.
    pub fn deletion(k: usize) -> Transducer {
        assert!(k >= 1, "alphabet bound must be at least 1");
        let mut transitions = Vec::new();
        // State 0 copies; states 1..=k count with register r = state index.
        for e in 1..=k {
            transitions.push((0, Some(e), Some(e), 0));
            transitions.push((0, Some(e), None, e));
        }
        for r in 1..=k {
            for e in 1..=k {
                if e > r {
                    transitions.push((r, Some(e), Some(e - 1), r));
                } else {
                    transitions.push((r, Some(e), Some(e), (r + 1).min(k)));
                }
            }
        }
        let finals: Vec<usize> = (1..=k).collect();
        Transducer::new(
            k,
            k,
            Direction::Reversed,
            k + 1,
            0,
            &finals,
            &transitions,
        )
        .expect("deletion transducer is well-formed")
    }

    /// Relates each valid rank encoding to the encodings of all
    /// sub-permutations (any set of positions deleted, possibly empty).
    /// Reads right to left; a state is a vector of `k-1` bits whose `f`-th
    /// entry records whether the `f`-th smallest element still expected on
    /// the left-hand side was deleted. Only reachable vectors are
    /// materialized. Every state is final.
    pub fn involvement(k: usize) -> Transducer {
        assert!(k >= 1, "alphabet bound must be at least 1");
        let bits = k - 1;
        let start = vec![false; bits];
        let mut ids: HashMap<Vec<bool>, usize> = HashMap::new();
        ids.insert(start.clone(), 0);
        let mut states = vec![start];
        let mut transitions = Vec::new();
        let mut queue = VecDeque::from([0]);
        while let Some(id) = queue.pop_front() {
            let s = states[id].clone();
            for e in 1..=k {
                let deleted_below: usize = s[..e - 1].iter().filter(|&&b| b).count();
                for deleted in [false, true] {
                    let mut next = s.clone();
                    next.insert(e - 1, deleted);
                    next.truncate(bits);
                    let target = match ids.get(&next) {
                        Some(&t) => t,
                        None => {
                            let t = states.len();
                            ids.insert(next.clone(), t);
                            states.push(next);
                            queue.push_back(t);
                            t
                        }
                    };
                    let output = if deleted { None } else { Some(e - deleted_below) };
                    transitions.push((id, Some(e), output, target));
                }
            }
        }
        let finals: Vec<usize> = (0..states.len()).collect();
        Transducer::new(
            k,
            k,
            Direction::Reversed,
            states.len(),
            0,
            &finals,
            &transitions,
        )
        .expect("involvement transducer is well-formed")
    }

    /// The transducer copying every word to itself.
    pub fn identity(alphabet: usize, direction: Direction) -> Transducer {
        let transitions: Vec<_> = (1..=alphabet)
            .map(|e| (0, Some(e), Some(e), 0))
            .collect();
        Transducer::new(alphabet, alphabet, direction, 1, 0, &[0], &transitions)
            .expect("identity transducer is well-formed")
    }

    pub fn input_alphabet(&self) -> usize {
        self.input_alphabet
    }

    pub fn output_alphabet(&self) -> usize {
        self.output_alphabet
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn state_count(&self) -> usize {
        self.trans.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn final_states(&self) -> Vec<usize> {
        (0..self.trans.len()).filter(|&s| self.finals[s]).collect()
    }

    pub fn transitions(&self) -> Vec<(usize, Option<usize>, Option<usize>, usize)> {
        let mut out = Vec::new();
        for (src, row) in self.trans.iter().enumerate() {
            for &(input, output, dst) in row {
                out.push((src, input, output, dst));
            }
        }
        out
    }

    /// The transducer of the inverse relation: every arc's input and output
    /// swap places.
    pub fn transpose(&self) -> Transducer {
        let mut out = self.clone();
        let swap = |(i, o, t): &TransducerArc| (*o, *i, *t);
        out.trans = self
            .trans
            .iter()
            .map(|row| {
                let mut v: Vec<TransducerArc> = row.iter().map(swap).collect();
                v.sort_unstable();
                v
            })
            .collect();
        std::mem::swap(&mut out.input_alphabet, &mut out.output_alphabet);
        out
    }

    /// Does the relation contain the pair `(input, output)`? Both words are
    /// given in ordinary order; a reversed machine consumes both from their
    /// last letters.
    pub fn relates(&self, input: &[usize], output: &[usize]) -> Result<bool> {
        self.check_word(input, self.input_alphabet)?;
        self.check_word(output, self.output_alphabet)?;
        let input = self.oriented(input);
        let output = self.oriented(output);
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([(self.initial, 0usize, 0usize)]);
        seen.insert((self.initial, 0, 0));
        while let Some((state, i, j)) = queue.pop_front() {
            if i == input.len() && j == output.len() && self.finals[state] {
                return Ok(true);
            }
            for &(arc_in, arc_out, target) in &self.trans[state] {
                let ni = match arc_in {
                    None => i,
                    Some(letter) if i < input.len() && input[i] == letter => i + 1,
                    Some(_) => continue,
                };
                let nj = match arc_out {
                    None => j,
                    Some(letter) if j < output.len() && output[j] == letter => j + 1,
                    Some(_) => continue,
                };
                if seen.insert((target, ni, nj)) {
                    queue.push_back((target, ni, nj));
                }
            }
        }
        Ok(false)
    }

    /// All words related to `input`, in ordinary order. Only supported when
    /// every arc consumes an input letter (true of [`Transducer::deletion`]
    /// and [`Transducer::involvement`]), which guarantees the output set is
    /// finite.
    pub fn outputs_for(&self, input: &[usize]) -> Result<BTreeSet<Vec<usize>>> {
        if self
            .trans
            .iter()
            .any(|row| row.iter().any(|&(i, _, _)| i.is_none()))
        {
            return Err(Error::InvalidAutomaton(
                "outputs_for requires every arc to consume an input letter".into(),
            ));
        }
        self.check_word(input, self.input_alphabet)?;
        let input = self.oriented(input);
        // The (state, position) graph is layered by position, so memoize the
        // raw output suffixes produced from each pair.
        let mut memo: HashMap<(usize, usize), BTreeSet<Vec<usize>>> = HashMap::new();
        fn suffixes(
            t: &Transducer,
            state: usize,
            pos: usize,
            input: &[usize],
            memo: &mut HashMap<(usize, usize), BTreeSet<Vec<usize>>>,
        ) -> BTreeSet<Vec<usize>> {
            if let Some(cached) = memo.get(&(state, pos)) {
                return cached.clone();
            }
            let mut out = BTreeSet::new();
            if pos == input.len() {
                if t.finals[state] {
                    out.insert(Vec::new());
                }
            } else {
                for &(arc_in, arc_out, target) in &t.trans[state] {
                    if arc_in != Some(input[pos]) {
                        continue;
                    }
                    for rest in suffixes(t, target, pos + 1, input, memo) {
                        let mut word = Vec::with_capacity(rest.len() + 1);
                        if let Some(letter) = arc_out {
                            word.push(letter);
                        }
                        word.extend(rest);
                        out.insert(word);
                    }
                }
            }
            memo.insert((state, pos), out.clone());
            out
        }
        let raw = suffixes(self, self.initial, 0, &input, &mut memo);
        Ok(raw
            .into_iter()
            .map(|w| match self.direction {
                Direction::Forward => w,
                Direction::Reversed => w.into_iter().rev().collect(),
            })
            .collect())
    }

    /// The language `{ v : (u, v) in relation for some u accepted by
    /// `acceptor` }`, as an automaton over the output alphabet. The product
    /// pairs transducer states with the states of the determinized acceptor;
    /// arcs with no input letter leave the acceptor in place.
    pub fn image(&self, acceptor: &Automaton) -> Result<Automaton> {
        if acceptor.alphabet() != self.input_alphabet {
            return Err(Error::AlphabetMismatch {
                left: self.input_alphabet,
                right: acceptor.alphabet(),
            });
        }
        if acceptor.direction() != self.direction {
            return Err(Error::DirectionMismatch {
                left: self.direction,
                right: acceptor.direction(),
            });
        }
        let dfa = acceptor.determinize();
        let mut step: HashMap<(usize, usize), usize> = HashMap::new();
        for (s, label, t) in dfa.transitions() {
            if let Some(letter) = label {
                step.insert((s, letter), t);
            }
        }
        let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
        let start = (self.initial, dfa.initial());
        ids.insert(start, 0);
        let mut pairs = vec![start];
        let mut transitions: Vec<(usize, Option<usize>, usize)> = Vec::new();
        let mut finals = Vec::new();
        let mut queue = VecDeque::from([0]);
        while let Some(id) = queue.pop_front() {
            let (ts, qs) = pairs[id];
            if self.finals[ts] && dfa.is_final(qs) {
                finals.push(id);
            }
            for &(arc_in, arc_out, target) in &self.trans[ts] {
                let next_q = match arc_in {
                    None => Some(qs),
                    Some(letter) => step.get(&(qs, letter)).copied(),
                };
                let Some(nq) = next_q else { continue };
                let pair = (target, nq);
                let pid = match ids.get(&pair) {
                    Some(&p) => p,
                    None => {
                        let p = pairs.len();
                        ids.insert(pair, p);
                        pairs.push(pair);
                        queue.push_back(p);
                        p
                    }
                };
                transitions.push((id, arc_out, pid));
            }
        }
        Automaton::new(
            self.output_alphabet,
            self.direction,
            pairs.len(),
            0,
            &finals,
            &transitions,
        )
    }

    fn check_word(&self, word: &[usize], alphabet: usize) -> Result<()> {
        for &letter in word {
            if letter == 0 || letter > alphabet {
                return Err(Error::LetterOutOfRange { letter, alphabet });
            }
        }
        Ok(())
    }

    fn oriented(&self, word: &[usize]) -> Vec<usize> {
        match self.direction {
            Direction::Forward => word.to_vec(),
            Direction::Reversed => word.iter().rev().copied().collect(),
        }
    }
}

/// Deletes the letter at `position` (1-based) from a valid rank encoding and
/// repairs the remaining letters in one right-to-left pass, without decoding:
/// the result encodes the permutation with that position removed. The
/// register `r` tracks the deleted element's rank among the elements at or
/// after the current position; letters greater than `r` counted the deleted
/// element and drop by one.
pub fn delete_letter(word: &RankWord, position: usize) -> Result<RankWord> {
    let letters = word.letters();
    if position == 0 || position > letters.len() {
        return Err(Error::PositionOutOfRange {
            position,
            len: letters.len(),
        });
    }
    word.decode()?; // validity check only
    let i = position - 1;
    let mut out = Vec::with_capacity(letters.len() - 1);
    out.extend_from_slice(&letters[..i]);
    out.extend_from_slice(&letters[i + 1..]);
    let mut r = letters[i];
    for j in (0..i).rev() {
        if letters[j] > r {
            out[j] = letters[j] - 1;
        } else {
            r += 1;
        }
    }
    RankWord::new(out)
}

/// The three regular languages derived from a language `L` of valid rank
/// encodings over `{1..k}`:
///
/// 1. all one-position deletions of members of `L`;
/// 2. the valid encodings with *some* one-position deletion in `L`;
/// 3. the valid encodings with *every* one-position deletion in `L`
///    (vacuously including the empty word).
///
/// The results match the acceptor's direction. Errors if `L` contains an
/// invalid encoding.
pub fn derivative_languages(
    acceptor: &Automaton,
) -> Result<(Automaton, Automaton, Automaton)> {
    let k = acceptor.alphabet();
    let l = match acceptor.direction() {
        Direction::Reversed => acceptor.clone(),
        Direction::Forward => acceptor.reverse(),
    };
    let valid = crate::bounded::omega_acceptor(k).reverse();
    if !l.is_subset(&valid)? {
        return Err(Error::NotRankBounded {
            k,
            detail: "language contains words that are not valid rank encodings".into(),
        });
    }
    let deletion = Transducer::deletion(k);
    let insertion = deletion.transpose();
    let deleted = deletion.image(&l)?.minimize();
    let some_deletion = insertion.image(&l)?.intersect(&valid)?.minimize();
    let all_deletions = insertion
        .image(&l.complement())?
        .complement()
        .intersect(&valid)?
        .minimize();
    let orient = |a: Automaton| -> Automaton {
        if a.direction() == acceptor.direction() {
            a
        } else {
            a.reverse().minimize()
        }
    };
    Ok((orient(deleted), orient(some_deletion), orient(all_deletions)))
}
