//! Concrete permuting machines used as independent oracles.
//!
//! A permuting machine reads the identity `1..n` and emits a rearrangement;
//! the permutations it can emit form a set closed under patterns. Two
//! machines are modeled:
//!
//! * a stack with optional capacity bound — tokens are pushed in input
//!   order and popped to the output (last in, first out);
//! * a riffle shuffler — the input is cut into a front segment `1..j` and a
//!   back segment `j+1..n`, then the two segments are interleaved, each
//!   keeping its own order.
//!
//! Membership queries run in linear time ([`stack_generates`],
//! [`riffle_member`]); full output sets come from exhaustive
//! nondeterministic simulation ([`Machine::outputs`]), deliberately a
//! different algorithm so the two can check each other.

use std::collections::BTreeSet;

use crate::perm::Permutation;

/// A permuting machine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Machine {
    /// Last-in-first-out buffer holding at most `capacity` tokens at once
    /// (`None` = unbounded).
    Stack { capacity: Option<usize> },
    /// Two-segment cut-and-interleave shuffler.
    Riffle,
}

impl Machine {
    pub fn unbounded_stack() -> Self {
        Machine::Stack { capacity: None }
    }

    pub fn bounded_stack(capacity: usize) -> Self {
        Machine::Stack {
            capacity: Some(capacity),
        }
    }

    /// Can the machine, fed `1..n`, output exactly `p`?
    pub fn generates(&self, p: &Permutation) -> bool {
        match *self {
            Machine::Stack { capacity } => stack_generates(capacity, p),
            Machine::Riffle => riffle_member(p),
        }
    }

    /// Can the machine rearrange the input stream `p` into the identity?
    /// Equivalent to generating the inverse of `p`.
    pub fn sorts(&self, p: &Permutation) -> bool {
        self.generates(&p.inverse())
    }

    /// Every permutation of length `n` the machine can emit, by exhaustive
    /// simulation of all nondeterministic choices.
    pub fn outputs(&self, n: usize) -> BTreeSet<Permutation> {
        match *self {
            Machine::Stack { capacity } => stack_outputs(capacity, n),
            Machine::Riffle => riffle_outputs(n),
        }
    }
}

/// The record of simulating one machine at one length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MachineRun {
    pub machine: Machine,
    pub n: usize,
    pub outputs: BTreeSet<Permutation>,
}

impl MachineRun {
    pub fn simulate(machine: Machine, n: usize) -> Self {
        MachineRun {
            machine,
            n,
            outputs: machine.outputs(n),
        }
    }
}

/// Linear-time decision of stack generation.
///
/// The simulation is forced at every step: popping is only ever useful when
/// the top of the stack is the next value the output needs (anything pushed
/// on top of a needed value would have to be emitted first, too early), so
/// the machine pops on a match and otherwise pushes the next input token,
/// failing when the input is exhausted or the stack is full.
pub fn stack_generates(capacity: Option<usize>, p: &Permutation) -> bool {
    let target = p.values();
    let n = target.len();
    let mut stack: Vec<usize> = Vec::new();
    let mut next_input = 1;
    for &needed in target {
        loop {
            if stack.last() == Some(&needed) {
                stack.pop();
                break;
            }
            if next_input > n || capacity.is_some_and(|c| stack.len() >= c) {
                return false;
            }
            stack.push(next_input);
            next_input += 1;
        }
    }
    true
}

/// All length-`n` outputs of a stack with the given capacity, by trying
/// every interleaving of pushes and pops.
pub fn stack_outputs(capacity: Option<usize>, n: usize) -> BTreeSet<Permutation> {
    fn rec(
        next_input: usize,
        n: usize,
        capacity: Option<usize>,
        stack: &mut Vec<usize>,
        emitted: &mut Vec<usize>,
        out: &mut BTreeSet<Permutation>,
    ) {
        if emitted.len() == n {
            out.insert(Permutation::new(emitted.clone()).expect("simulation emits permutations"));
            return;
        }
        if next_input <= n && capacity.map_or(true, |c| stack.len() < c) {
            stack.push(next_input);
            rec(next_input + 1, n, capacity, stack, emitted, out);
            stack.pop();
        }
        if let Some(top) = stack.pop() {
            emitted.push(top);
            rec(next_input, n, capacity, stack, emitted, out);
            emitted.pop();
            stack.push(top);
        }
    }
    let mut out = BTreeSet::new();
    rec(1, n, capacity, &mut Vec::new(), &mut Vec::new(), &mut out);
    out
}

/// Linear-time riffle membership: `p` is an interleaving of the value
/// segments `1..j` and `j+1..n` for some cut `j`, each segment appearing in
/// increasing position order.
pub fn riffle_member(p: &Permutation) -> bool {
    let n = p.len();
    let mut pos = vec![0; n + 1];
    for (i, &v) in p.values().iter().enumerate() {
        pos[v] = i;
    }
    // ascending_to[j]: positions of values 1..j strictly increase;
    // ascending_from[j]: positions of values j..n strictly increase.
    let mut ascending_to = vec![true; n + 1];
    for j in 2..=n {
        ascending_to[j] = ascending_to[j - 1] && pos[j - 1] < pos[j];
    }
    let mut ascending_from = vec![true; n + 2];
    for j in (1..n).rev() {
        ascending_from[j] = ascending_from[j + 1] && pos[j] < pos[j + 1];
    }
    (0..=n).any(|j| ascending_to[j] && ascending_from[j + 1])
}

/// All length-`n` riffle outputs, by enumerating every cut and every
/// interleaving directly.
fn riffle_outputs(n: usize) -> BTreeSet<Permutation> {
    fn rec(
        front_next: usize,
        front_end: usize,
        back_next: usize,
        back_end: usize,
        emitted: &mut Vec<usize>,
        out: &mut BTreeSet<Permutation>,
    ) {
        if front_next > front_end && back_next > back_end {
            out.insert(Permutation::new(emitted.clone()).expect("interleavings are permutations"));
            return;
        }
        if front_next <= front_end {
            emitted.push(front_next);
            rec(front_next + 1, front_end, back_next, back_end, emitted, out);
            emitted.pop();
        }
        if back_next <= back_end {
            emitted.push(back_next);
            rec(front_next, front_end, back_next + 1, back_end, emitted, out);
            emitted.pop();
        }
    }
    let mut out = BTreeSet::new();
    for cut in 0..=n {
        rec(1, cut, cut + 1, n, &mut Vec::new(), &mut out);
    }
    out
}
