//! Finite automata over the alphabet `{1..k}` with an explicit reading
//! direction.
//!
//! Machines produced by the transducer constructions consume words from the
//! last letter to the first, so every automaton carries a [`Direction`] and
//! the language of an automaton is always a set of words read the ordinary
//! way: a `Reversed` machine accepts `w` when its raw transition structure
//! accepts `w` spelled backwards. Binary operations require equal directions
//! and equal alphabets; [`Automaton::reverse`] converts between the two
//! representations without changing the language.
//!
//! States are plain indices. Every construction numbers its result by
//! breadth-first discovery order with letters taken in increasing order, so
//! equal inputs give byte-identical outputs.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::{Error, Result};

/// How a machine's raw transitions consume a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// First letter first.
    Forward,
    /// Last letter first.
    Reversed,
}

/// Letters are `1..=alphabet`; `None` labels an epsilon move.
pub type Label = Option<usize>;

/// A nondeterministic finite automaton with one initial state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automaton {
    alphabet: usize,
    direction: Direction,
    initial: usize,
    finals: Vec<bool>,
    /// `trans[s]` lists `(label, target)` sorted, epsilon first.
    trans: Vec<Vec<(Label, usize)>>,
}

impl Automaton {
    /// Builds an automaton from parts, validating all indices and labels.
    pub fn new(
        alphabet: usize,
        direction: Direction,
        state_count: usize,
        initial: usize,
        finals: &[usize],
        transitions: &[(usize, Label, usize)],
    ) -> Result<Self> {
        if alphabet == 0 {
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
        for &(src, label, dst) in transitions {
            if src >= state_count || dst >= state_count {
                return Err(Error::InvalidAutomaton(format!(
                    "transition ({src}, _, {dst}) out of range"
                )));
            }
            if let Some(letter) = label {
                if letter == 0 || letter > alphabet {
                    return Err(Error::LetterOutOfRange { letter, alphabet });
                }
            }
            trans[src].push((label, dst));
        }
        for row in &mut trans {
            row.sort_unstable();
            row.dedup();
        }
        Ok(Automaton {
            alphabet,
            direction,
            initial,
            finals: final_flags,
            trans,
        })
    }

    /// The automaton accepting no word at all.
    pub fn empty_language(alphabet: usize, direction: Direction) -> Self {
        Automaton {
            alphabet,
            direction,
            initial: 0,
            finals: vec![false],
            trans: vec![Vec::new()],
        }
    }

    /// The automaton accepting every word over the alphabet.
    pub fn all_words(alphabet: usize, direction: Direction) -> Self {
        let trans = vec![(1..=alphabet).map(|l| (Some(l), 0)).collect()];
        Automaton {
            alphabet,
            direction,
            initial: 0,
            finals: vec![true],
            trans,
        }
    }

    /// A deterministic acceptor of exactly the given finite set of words.
    pub fn from_words<W: AsRef<[usize]>>(
        alphabet: usize,
        direction: Direction,
        words: &[W],
    ) -> Result<Self> {
        let mut finals = vec![false];
        let mut next: Vec<HashMap<usize, usize>> = vec![HashMap::new()];
        for w in words {
            let mut state = 0;
            let raw: Vec<usize> = match direction {
                Direction::Forward => w.as_ref().to_vec(),
                Direction::Reversed => w.as_ref().iter().rev().copied().collect(),
            };
            for &letter in &raw {
                if letter == 0 || letter > alphabet {
                    return Err(Error::LetterOutOfRange { letter, alphabet });
                }
                state = match next[state].get(&letter) {
                    Some(&t) => t,
                    None => {
                        let id = next.len();
                        next.push(HashMap::new());
                        finals.push(false);
                        next[state].insert(letter, id);
                        id
                    }
                };
            }
            finals[state] = true;
        }
        let trans = next
            .into_iter()
            .map(|row| {
                let mut v: Vec<(Label, usize)> =
                    row.into_iter().map(|(l, t)| (Some(l), t)).collect();
                v.sort_unstable();
                v
            })
            .collect();
        let out = Automaton {
            alphabet,
            direction,
            initial: 0,
            finals,
            trans,
        };
        // Renumber canonically: insertion order depends on the word list.
        Ok(out.determinize())
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
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

    pub fn is_final(&self, state: usize) -> bool {
        self.finals[state]
    }

    pub fn final_states(&self) -> Vec<usize> {
        (0..self.trans.len()).filter(|&s| self.finals[s]).collect()
    }

    /// All transitions as `(source, label, target)`, sorted.
    pub fn transitions(&self) -> Vec<(usize, Label, usize)> {
        let mut out = Vec::new();
        for (src, row) in self.trans.iter().enumerate() {
            for &(label, dst) in row {
                out.push((src, label, dst));
            }
        }
        out
    }

    /// No epsilon moves and at most one target per state and letter.
    pub fn is_deterministic(&self) -> bool {
        self.trans.iter().all(|row| {
            row.iter().all(|&(l, _)| l.is_some())
                && row.windows(2).all(|w| w[0].0 != w[1].0)
        })
    }

    fn eps_closure(&self, set: &mut BTreeSet<usize>) {
        let mut queue: VecDeque<usize> = set.iter().copied().collect();
        while let Some(s) = queue.pop_front() {
            for &(label, t) in &self.trans[s] {
                if label.is_none() && set.insert(t) {
                    queue.push_back(t);
                }
            }
        }
    }

    /// Does the machine accept `word`? Reversed machines consume the word
    /// from its last letter. Linear in the word length on a deterministic
    /// machine.
    pub fn accepts(&self, word: &[usize]) -> Result<bool> {
        for &letter in word {
            if letter == 0 || letter > self.alphabet {
                return Err(Error::LetterOutOfRange {
                    letter,
                    alphabet: self.alphabet,
                });
            }
        }
        let iter: Box<dyn Iterator<Item = usize> + '_> = match self.direction {
            Direction::Forward => Box::new(word.iter().copied()),
            Direction::Reversed => Box::new(word.iter().rev().copied()),
        };
        if self.is_deterministic() {
            let mut state = self.initial;
            for letter in iter {
                match self.step(state, letter) {
                    Some(t) => state = t,
                    None => return Ok(false),
                }
            }
            Ok(self.finals[state])
        } else {
            let mut current = BTreeSet::from([self.initial]);
            self.eps_closure(&mut current);
            for letter in iter {
                let mut next = BTreeSet::new();
                for &s in &current {
                    for &(label, t) in &self.trans[s] {
                        if label == Some(letter) {
                            next.insert(t);
                        }
                    }
                }
                self.eps_closure(&mut next);
                if next.is_empty() {
                    return Ok(false);
                }
                current = next;
            }
            Ok(current.iter().any(|&s| self.finals[s]))
        }
    }

    fn step(&self, state: usize, letter: usize) -> Option<usize> {
        self.trans[state]
            .iter()
            .find(|&&(l, _)| l == Some(letter))
            .map(|&(_, t)| t)
    }

    /// Subset construction. The result is deterministic (possibly partial:
    /// missing transitions reject), epsilon-free, and numbered by
    /// breadth-first discovery with letters in increasing order.
    pub fn determinize(&self) -> Automaton {
        let mut start = BTreeSet::from([self.initial]);
        self.eps_closure(&mut start);
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let start_key: Vec<usize> = start.iter().copied().collect();
        ids.insert(start_key, 0);
        let mut subsets = vec![start];
        let mut trans: Vec<Vec<(Label, usize)>> = vec![Vec::new()];
        let mut finals = vec![false];
        let mut queue = VecDeque::from([0]);
        while let Some(id) = queue.pop_front() {
            let subset = subsets[id].clone();
            finals[id] = subset.iter().any(|&s| self.finals[s]);
            for letter in 1..=self.alphabet {
                let mut next = BTreeSet::new();
                for &s in &subset {
                    for &(label, t) in &self.trans[s] {
                        if label == Some(letter) {
                            next.insert(t);
                        }
                    }
                }
                if next.is_empty() {
                    continue;
                }
                self.eps_closure(&mut next);
                let key: Vec<usize> = next.iter().copied().collect();
                let target = match ids.get(&key) {
                    Some(&t) => t,
                    None => {
                        let t = subsets.len();
                        ids.insert(key, t);
                        subsets.push(next);
                        trans.push(Vec::new());
                        finals.push(false);
                        queue.push_back(t);
                        t
                    }
                };
                trans[id].push((Some(letter), target));
            }
        }
        Automaton {
            alphabet: self.alphabet,
            direction: self.direction,
            initial: 0,
            finals,
            trans,
        }
    }

    /// Adds a rejecting sink so every state has a move on every letter.
    fn complete(&self) -> Automaton {
        let n = self.trans.len();
        let missing: Vec<(usize, usize)> = (0..n)
            .flat_map(|s| {
                (1..=self.alphabet)
                    .filter(move |&l| self.step_any(s, l).is_none())
                    .map(move |l| (s, l))
            })
            .collect();
        if missing.is_empty() {
            return self.clone();
        }
        let mut out = self.clone();
        let sink = n;
        out.trans.push((1..=self.alphabet).map(|l| (Some(l), sink)).collect());
        out.finals.push(false);
        for (s, l) in missing {
            out.trans[s].push((Some(l), sink));
        }
        for row in &mut out.trans {
            row.sort_unstable();
        }
        out
    }

    fn step_any(&self, state: usize, letter: usize) -> Option<usize> {
        self.step(state, letter)
    }

    /// Complement within the full word set of the alphabet.
    pub fn complement(&self) -> Automaton {
        let mut d = self.determinize().complete();
        for f in d.finals.iter_mut() {
            *f = !*f;
        }
        d
    }

    /// Complement relative to `within`: the words of `within` not accepted
    /// by `self`.
    pub fn complement_within(&self, within: &Automaton) -> Result<Automaton> {
        self.complement().intersect(within)
    }

    /// Product automaton for the intersection of two languages.
    pub fn intersect(&self, other: &Automaton) -> Result<Automaton> {
        self.check_compatible(other)?;
        let a = self.determinize();
        let b = other.determinize();
        let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
        ids.insert((a.initial, b.initial), 0);
        let mut pairs = vec![(a.initial, b.initial)];
        let mut trans: Vec<Vec<(Label, usize)>> = vec![Vec::new()];
        let mut finals = vec![false];
        let mut queue = VecDeque::from([0]);
        while let Some(id) = queue.pop_front() {
            let (sa, sb) = pairs[id];
            finals[id] = a.finals[sa] && b.finals[sb];
            for letter in 1..=a.alphabet {
                if let (Some(ta), Some(tb)) = (a.step(sa, letter), b.step(sb, letter)) {
                    let target = match ids.get(&(ta, tb)) {
                        Some(&t) => t,
                        None => {
                            let t = pairs.len();
                            ids.insert((ta, tb), t);
                            pairs.push((ta, tb));
                            trans.push(Vec::new());
                            finals.push(false);
                            queue.push_back(t);
                            t
                        }
                    };
                    trans[id].push((Some(letter), target));
                }
            }
        }
        Ok(Automaton {
            alphabet: a.alphabet,
            direction: a.direction,
            initial: 0,
            finals,
            trans,
        })
    }

    /// Union of two languages.
    pub fn union(&self, other: &Automaton) -> Result<Automaton> {
        self.check_compatible(other)?;
        let offset_a = 1;
        let offset_b = 1 + self.trans.len();
        let state_count = 1 + self.trans.len() + other.trans.len();
        let mut transitions = vec![
            (0, None, offset_a + self.initial),
            (0, None, offset_b + other.initial),
        ];
        for (src, label, dst) in self.transitions() {
            transitions.push((offset_a + src, label, offset_a + dst));
        }
        for (src, label, dst) in other.transitions() {
            transitions.push((offset_b + src, label, offset_b + dst));
        }
        let mut finals = Vec::new();
        finals.extend(self.final_states().iter().map(|&f| offset_a + f));
        finals.extend(other.final_states().iter().map(|&f| offset_b + f));
        Automaton::new(
            self.alphabet,
            self.direction,
            state_count,
            0,
            &finals,
            &transitions,
        )
    }

    fn check_compatible(&self, other: &Automaton) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet,
                right: other.alphabet,
            });
        }
        if self.direction != other.direction {
            return Err(Error::DirectionMismatch {
                left: self.direction,
                right: other.direction,
            });
        }
        Ok(())
    }

    /// Reverses every transition, swaps the initial/final roles, and toggles
    /// the direction flag. The language as a set of words is unchanged; only
    /// the raw reading order flips.
    pub fn reverse(&self) -> Automaton {
        let n = self.trans.len();
        let finals = self.final_states();
        let (state_count, initial, extra_eps): (usize, usize, Vec<(usize, Label, usize)>) =
            if finals.len() == 1 {
                (n, finals[0], Vec::new())
            } else {
                // Fresh initial state with epsilon moves to every old final.
                let eps = finals.iter().map(|&f| (n, None, f)).collect();
                (n + 1, n, eps)
            };
        let mut transitions = extra_eps;
        for (src, label, dst) in self.transitions() {
            transitions.push((dst, label, src));
        }
        let direction = match self.direction {
            Direction::Forward => Direction::Reversed,
            Direction::Reversed => Direction::Forward,
        };
        Automaton::new(
            self.alphabet,
            direction,
            state_count,
            initial,
            &[self.initial],
            &transitions,
        )
        .expect("reversal preserves well-formedness")
    }

    /// Is the language empty?
    pub fn is_empty(&self) -> bool {
        let mut seen = vec![false; self.trans.len()];
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(s) = queue.pop_front() {
            if self.finals[s] {
                return false;
            }
            for &(_, t) in &self.trans[s] {
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        true
    }

    /// Is the language finite? Decided by looking for a cycle among states
    /// that lie on some accepting path.
    pub fn is_finite(&self) -> bool {
        let d = self.determinize();
        let live = d.live_states();
        // Depth-first search for a cycle within the live part.
        let n = d.trans.len();
        let mut color = vec![0u8; n]; // 0 unvisited, 1 on stack, 2 done
        let mut stack: Vec<(usize, usize)> = Vec::new();
        for start in 0..n {
            if !live[start] || color[start] != 0 {
                continue;
            }
            color[start] = 1;
            stack.push((start, 0));
            while let Some((s, idx)) = stack.pop() {
                let row = &d.trans[s];
                let mut i = idx;
                let mut descended = false;
                while i < row.len() {
                    let (_, t) = row[i];
                    i += 1;
                    if !live[t] {
                        continue;
                    }
                    match color[t] {
                        0 => {
                            stack.push((s, i));
                            color[t] = 1;
                            stack.push((t, 0));
                            descended = true;
                            break;
                        }
                        1 => return false,
                        _ => {}
                    }
                }
                if !descended {
                    color[s] = 2;
                }
            }
        }
        true
    }

    /// States both reachable from the initial state and able to reach a
    /// final state.
    fn live_states(&self) -> Vec<bool> {
        let n = self.trans.len();
        let mut reach = vec![false; n];
        reach[self.initial] = true;
        let mut queue = VecDeque::from([self.initial]);
        while let Some(s) = queue.pop_front() {
            for &(_, t) in &self.trans[s] {
                if !reach[t] {
                    reach[t] = true;
                    queue.push_back(t);
                }
            }
        }
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (src, _, dst) in self.transitions() {
            rev[dst].push(src);
        }
        let mut co = vec![false; n];
        let mut queue: VecDeque<usize> = (0..n).filter(|&s| self.finals[s]).collect();
        for &s in &queue {
            co[s] = true;
        }
        while let Some(s) = queue.pop_front() {
            for &p in &rev[s] {
                if !co[p] {
                    co[p] = true;
                    queue.push_back(p);
                }
            }
        }
        (0..n).map(|s| reach[s] && co[s]).collect()
    }

    /// Is every word of `self` accepted by `other`?
    pub fn is_subset(&self, other: &Automaton) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.intersect(&other.complement())?.is_empty())
    }

    /// Do the two machines accept exactly the same words?
    pub fn language_equal(&self, other: &Automaton) -> Result<bool> {
        Ok(self.is_subset(other)? && other.is_subset(self)?)
    }

    /// The unique minimal deterministic acceptor of the language, with dead
    /// states removed and states numbered by breadth-first discovery, so two
    /// machines with equal language, alphabet, and direction minimize to
    /// structurally identical automata.
    pub fn minimize(&self) -> Automaton {
        let d = self.determinize().complete();
        let n = d.trans.len();
        // Moore partition refinement. Class ids stay dense and are assigned
        // by first occurrence in state order, so a stable partition compares
        // equal and the fixpoint test terminates.
        let mut class: Vec<usize> = {
            let mut ids: HashMap<bool, usize> = HashMap::new();
            d.finals
                .iter()
                .map(|&f| {
                    let fresh = ids.len();
                    *ids.entry(f).or_insert(fresh)
                })
                .collect()
        };
        loop {
            let mut sig_ids: HashMap<(usize, Vec<Option<usize>>), usize> = HashMap::new();
            let mut next_class = vec![0; n];
            for s in 0..n {
                let sig: Vec<Option<usize>> = (1..=d.alphabet)
                    .map(|l| d.step(s, l).map(|t| class[t]))
                    .collect();
                let key = (class[s], sig);
                let id = sig_ids.len();
                next_class[s] = *sig_ids.entry(key).or_insert(id);
            }
            if next_class == class {
                break;
            }
            class = next_class;
        }
        let class_count = class.iter().max().map_or(0, |&m| m + 1);
        let mut rep = vec![usize::MAX; class_count];
        for s in 0..n {
            if rep[class[s]] == usize::MAX {
                rep[class[s]] = s;
            }
        }
        let mut finals = Vec::new();
        let mut transitions = Vec::new();
        for c in 0..class_count {
            let s = rep[c];
            if d.finals[s] {
                finals.push(c);
            }
            for &(label, t) in &d.trans[s] {
                transitions.push((c, label, class[t]));
            }
        }
        let quotient = Automaton::new(
            d.alphabet,
            d.direction,
            class_count,
            class[d.initial],
            &finals,
            &transitions,
        )
        .expect("quotient is well-formed");
        quotient.trim()
    }

    /// Removes states that cannot lie on an accepting path, renumbering the
    /// rest by breadth-first order. An empty language trims to the one-state
    /// rejecting machine.
    fn trim(&self) -> Automaton {
        let live = self.live_states();
        if !live[self.initial] {
            return Automaton::empty_language(self.alphabet, self.direction);
        }
        // Breadth-first renumber over live states, letters ascending.
        let mut ids: HashMap<usize, usize> = HashMap::new();
        ids.insert(self.initial, 0);
        let mut order = vec![self.initial];
        let mut queue = VecDeque::from([self.initial]);
        while let Some(s) = queue.pop_front() {
            for &(_, t) in &self.trans[s] {
                if live[t] && !ids.contains_key(&t) {
                    ids.insert(t, order.len());
                    order.push(t);
                    queue.push_back(t);
                }
            }
        }
        let mut transitions = Vec::new();
        let mut finals = Vec::new();
        for (new_id, &s) in order.iter().enumerate() {
            if self.finals[s] {
                finals.push(new_id);
            }
            for &(label, t) in &self.trans[s] {
                if live[t] {
                    transitions.push((new_id, label, ids[&t]));
                }
            }
        }
        Automaton::new(
            self.alphabet,
            self.direction,
            order.len(),
            0,
            &finals,
            &transitions,
        )
        .expect("trimmed machine is well-formed")
    }

    /// A shortest accepted word, or `None` for the empty language. Forward
    /// machines yield the lexicographically least shortest word.
    pub fn shortest_word(&self) -> Option<Vec<usize>> {
        let d = self.determinize();
        let n = d.state_count();
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[d.initial()] = true;
        let mut queue = VecDeque::from([d.initial()]);
        let mut hit = None;
        'search: while let Some(s) = queue.pop_front() {
            if d.finals[s] {
                hit = Some(s);
                break 'search;
            }
            for &(label, t) in &d.trans[s] {
                if !seen[t] {
                    seen[t] = true;
                    parent[t] = Some((s, label.expect("determinized machines are epsilon-free")));
                    queue.push_back(t);
                }
            }
        }
        let mut state = hit?;
        let mut word = Vec::new();
        while let Some((prev, letter)) = parent[state] {
            word.push(letter);
            state = prev;
        }
        if self.direction == Direction::Forward {
            word.reverse();
        }
        Some(word)
    }

    /// All accepted words of length at most `max_len`, in length-major order.
    pub fn enumerate_words(&self, max_len: usize) -> Vec<Vec<usize>> {
        let d = self.determinize();
        let mut out = Vec::new();
        let mut word = Vec::new();
        fn rec(
            d: &Automaton,
            state: usize,
            max_len: usize,
            word: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if d.finals[state] {
                out.push(word.clone());
            }
            if word.len() == max_len {
                return;
            }
            for &(label, t) in &d.trans[state] {
                if let Some(letter) = label {
                    word.push(letter);
                    rec(d, t, max_len, word, out);
                    word.pop();
                }
            }
        }
        rec(&d, d.initial, max_len, &mut word, &mut out);
        if self.direction == Direction::Reversed {
            for w in &mut out {
                w.reverse();
            }
        }
        out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        out
    }

    /// The same machine read over a larger alphabet (the language is
    /// unchanged; the complement is not).
    pub fn with_alphabet(&self, alphabet: usize) -> Result<Automaton> {
        if alphabet < self.alphabet {
            let used = self
                .transitions()
                .into_iter()
                .filter_map(|(_, l, _)| l)
                .max()
                .unwrap_or(0);
            if used > alphabet {
                return Err(Error::LetterOutOfRange {
                    letter: used,
                    alphabet,
                });
            }
        }
        let mut out = self.clone();
        out.alphabet = alphabet;
        Ok(out)
    }
}
