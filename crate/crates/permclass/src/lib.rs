//! Pattern-closed sets of permutations as regular languages of rank encodings.
//!
//! A permutation is encoded letter by letter: position `i` maps to the rank of
//! `p[i]` among the suffix `p[i..]`. Sets of permutations whose every pattern
//! stays in the set (closed sets) with bounded rank correspond exactly to
//! regular languages over the alphabet `{1..k}`, which makes the usual
//! questions — membership, basis computation, exact enumeration — decidable
//! with automata constructions:
//!
//! * [`perm`] — permutations, rank encoding/decoding, pattern involvement;
//! * [`automaton`] — finite automata with an explicit reading direction and
//!   the boolean/language algebra on them;
//! * [`transducer`] — letter-to-letter transducers implementing single-element
//!   deletion and pattern involvement on encodings;
//! * [`bounded`] — bounded closed classes: closure from a basis, basis from a
//!   closure, closedness and finite-basedness decisions, linear membership;
//! * [`enumeration`] — exact counting and rational generating functions via
//!   transfer matrices over big integers;
//! * [`monotone`] — classes produced by machines whose buffer splits into
//!   monotone segments, with their own encodings and enumeration;
//! * [`machines`] — concrete permuting machines (stacks, riffle shufflers)
//!   used as independent oracles.

pub mod automaton;
pub mod bounded;
pub mod enumeration;
pub mod machines;
pub mod monotone;
pub mod perm;
pub mod transducer;

pub use automaton::{Automaton, Direction};
pub use bounded::BoundedClass;
pub use enumeration::{CountSequence, LinearRecurrence, Polynomial, RationalGf};
pub use machines::{Machine, MachineRun};
pub use monotone::{Sign, SignSequence};
pub use perm::{Basis, Permutation, RankWord};
pub use transducer::Transducer;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("not a permutation: {0}")]
    InvalidPermutation(String),
    #[error("not a rank word: {0}")]
    InvalidWord(String),
    #[error("position {position} out of range 1..={len}")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("letter {letter} at position {position} exceeds the distance {bound} to the end of the word; the word decodes no permutation")]
    UndecodableWord {
        position: usize,
        letter: usize,
        bound: usize,
    },
    #[error("letter {letter} outside alphabet 1..={alphabet}")]
    LetterOutOfRange { letter: usize, alphabet: usize },
    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch { left: usize, right: usize },
    #[error("reading-direction mismatch: {left:?} vs {right:?}")]
    DirectionMismatch { left: Direction, right: Direction },
    #[error("malformed automaton: {0}")]
    InvalidAutomaton(String),
    #[error("set is not an antichain: {0}")]
    NotAntichain(String),
    #[error("language is not deletion-closed: {0}")]
    NotClosed(String),
    #[error("language contains words that encode no permutation of rank <= {k}: {detail}")]
    NotRankBounded { k: usize, detail: String },
    #[error("element at position {position} extends no remaining segment")]
    NotMonotoneDecomposable { position: usize },
    #[error("series coefficient {index} is negative")]
    NegativeCoefficient { index: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
