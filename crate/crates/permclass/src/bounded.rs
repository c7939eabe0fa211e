//! Pattern-closed sets of rank-bounded permutations as regular languages.
//!
//! A permutation belongs to the ground set `Omega_k` when every letter of
//! its rank encoding is at most `k`. A set of permutations is *closed* when
//! it contains every sub-permutation of each member. [`BoundedClass`] wraps
//! a regular language of encodings that has been verified to describe such a
//! set, and supports the conversions in both directions:
//!
//! * from a finite (or regular) set of forbidden patterns to the acceptor of
//!   everything avoiding them ([`closed_from_basis`],
//!   [`closed_from_basis_perms`]), and
//! * from a closed set back to its *basis*, the minimal permutations outside
//!   it ([`BoundedClass::basis`]).
//!
//! Membership of a single permutation is decided by encoding it and running
//! one deterministic automaton, in time linear in the length up to the
//! encoding's bookkeeping.

use crate::automaton::{Automaton, Direction};
use crate::enumeration::{self, CountSequence, RationalGf};
use crate::perm::Permutation;
use crate::transducer::{derivative_languages, Transducer};
use crate::{Error, Result};

/// Deterministic acceptor of the valid rank encodings with letters at most
/// `k` — the encodings of exactly the permutations of `Omega_k`. Reads
/// forward; minimized.
///
/// A word is a valid encoding exactly when each letter is at most its
/// distance from the end, so the invalid words are those with a suffix whose
/// first letter exceeds the suffix length; only suffix lengths below `k`
/// can witness this over the alphabet `{1..k}`. The acceptor is built as
/// the complement of that pattern.
pub fn omega_acceptor(k: usize) -> Automaton {
    assert!(k >= 1, "alphabet bound must be at least 1");
    // NFA for the words with a forbidden suffix: state 0 skips a prefix,
    // then a chain of length i checks "first letter > i, then i-1 more
    // letters, then the word ends".
    let mut transitions = Vec::new();
    for e in 1..=k {
        transitions.push((0, Some(e), 0));
    }
    let mut finals = Vec::new();
    let mut next_id = 1;
    for i in 1..k {
        let chain: Vec<usize> = (next_id..next_id + i).collect();
        next_id += i;
        for e in i + 1..=k {
            transitions.push((0, Some(e), chain[0]));
        }
        for j in 0..i - 1 {
            for e in 1..=k {
                transitions.push((chain[j], Some(e), chain[j + 1]));
            }
        }
        finals.push(chain[i - 1]);
    }
    let invalid = Automaton::new(k, Direction::Forward, next_id, 0, &finals, &transitions)
        .expect("suffix-violation machine is well-formed");
    invalid.complement().minimize()
}

/// Is the language a set of encodings closed under taking sub-permutations?
/// True exactly when every word is a valid encoding over the automaton's
/// alphabet and every one-position deletion of a member stays inside.
pub fn is_closed_language(acceptor: &Automaton) -> Result<bool> {
    let k = acceptor.alphabet();
    let rev = reversed(acceptor);
    let omega_rev = omega_acceptor(k).reverse();
    if !rev.is_subset(&omega_rev)? {
        return Ok(false);
    }
    let deleted = Transducer::deletion(k).image(&rev)?;
    deleted.is_subset(&rev)
}

/// A closed set of permutations with rank encodings bounded by `k`, stored
/// as minimized deterministic acceptors in both reading directions.
#[derive(Debug, Clone)]
pub struct BoundedClass {
    k: usize,
    forward: Automaton,
    reversed: Automaton,
}

impl BoundedClass {
    /// Wraps an acceptor after verifying it describes a closed set: the
    /// language must consist of valid encodings over `{1..k}` and be closed
    /// under one-position deletion.
    pub fn new(k: usize, acceptor: &Automaton) -> Result<Self> {
        if acceptor.alphabet() != k {
            return Err(Error::AlphabetMismatch {
                left: k,
                right: acceptor.alphabet(),
            });
        }
        let rev = reversed(acceptor);
        let omega_rev = omega_acceptor(k).reverse();
        let stray = rev.intersect(&omega_rev.complement())?;
        if let Some(word) = stray.shortest_word() {
            return Err(Error::NotRankBounded {
                k,
                detail: format!("the accepted word {} is not a valid rank encoding", join(&word)),
            });
        }
        let deleted = Transducer::deletion(k).image(&rev)?;
        let escaping = deleted.intersect(&rev.complement())?;
        if let Some(word) = escaping.shortest_word() {
            return Err(Error::NotClosed(format!(
                "deleting one position of a member yields {}, which the language rejects",
                join(&word)
            )));
        }
        let reversed = rev.minimize();
        let forward = reversed.reverse().minimize();
        Ok(BoundedClass {
            k,
            forward,
            reversed,
        })
    }

    /// The full ground set `Omega_k`: every permutation with rank bound `k`.
    pub fn omega(k: usize) -> Self {
        let forward = omega_acceptor(k);
        let reversed = forward.reverse().minimize();
        BoundedClass {
            k,
            forward,
            reversed,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Minimized deterministic acceptor reading encodings first letter
    /// first; the machine behind [`BoundedClass::member`].
    pub fn forward_acceptor(&self) -> &Automaton {
        &self.forward
    }

    /// Minimized acceptor reading encodings last letter first, the
    /// orientation the deletion and involvement transducers use.
    pub fn reversed_acceptor(&self) -> &Automaton {
        &self.reversed
    }

    /// Does the class contain the permutation? Encodes it and runs the
    /// forward acceptor once.
    pub fn member(&self, p: &Permutation) -> bool {
        let encoding = p.rank_encode();
        if encoding.max_letter() > self.k {
            return false;
        }
        self.forward
            .accepts(encoding.letters())
            .expect("letters are within the alphabet")
    }

    /// Acceptor of the encodings of the basis: the minimal permutations
    /// *not* in the class. Basis elements can use one rank above `k` (the
    /// boundary of the ground set), never more, so the result reads forward
    /// over the alphabet `{1..k+1}`.
    pub fn basis(&self) -> Automaton {
        let lifted = self
            .reversed
            .with_alphabet(self.k + 1)
            .expect("growing the alphabet cannot fail");
        let (_, _, all_deletions_inside) =
            derivative_languages(&lifted).expect("a class language is valid and bounded");
        let minimal_outside = all_deletions_inside
            .intersect(&lifted.complement())
            .expect("same alphabet and direction");
        minimal_outside.reverse().minimize()
    }

    /// Does a finite set of forbidden patterns define the class?
    pub fn is_finitely_based(&self) -> bool {
        self.basis().is_finite()
    }

    /// How many members of each length `0..=max_len` the class has.
    pub fn count_sequence(&self, max_len: usize) -> CountSequence {
        enumeration::count_sequence(&self.forward, max_len)
    }

    /// The rational generating function of the length counts.
    pub fn generating_function(&self) -> RationalGf {
        enumeration::generating_function(&self.forward)
    }
}

/// The class of all rank-bounded permutations avoiding every pattern in the
/// given language of encodings. The language must consist of valid
/// encodings over `{1..k}`; it need not be an antichain — any generating
/// set yields the same class.
pub fn closed_from_basis(basis_acceptor: &Automaton, k: usize) -> Result<BoundedClass> {
    if basis_acceptor.alphabet() != k {
        return Err(Error::AlphabetMismatch {
            left: k,
            right: basis_acceptor.alphabet(),
        });
    }
    let rev = reversed(basis_acceptor);
    let omega_rev = omega_acceptor(k).reverse();
    let stray = rev.intersect(&omega_rev.complement())?;
    if let Some(word) = stray.shortest_word() {
        return Err(Error::NotRankBounded {
            k,
            detail: format!(
                "basis language accepts {}, which is not a valid rank encoding",
                join(&word)
            ),
        });
    }
    // A permutation is excluded exactly when some sub-permutation of it is
    // a forbidden pattern: push the basis backwards through the involvement
    // relation and complement within the valid encodings.
    let involving = Transducer::involvement(k).transpose().image(&rev)?;
    let closed = involving.complement().intersect(&omega_rev)?.minimize();
    BoundedClass::new(k, &closed)
}

/// [`closed_from_basis`] for patterns given as permutations. Patterns whose
/// rank bound exceeds `k` cannot occur inside any member of `Omega_k`, so
/// they constrain nothing; they are skipped and reported back in the second
/// component.
pub fn closed_from_basis_perms(
    patterns: &[Permutation],
    k: usize,
) -> Result<(BoundedClass, Vec<Permutation>)> {
    let mut words = Vec::new();
    let mut vacuous = Vec::new();
    for p in patterns {
        if p.max_rank() <= k {
            words.push(p.rank_encode().letters().to_vec());
        } else {
            vacuous.push(p.clone());
        }
    }
    let acceptor = Automaton::from_words(k, Direction::Reversed, &words)?;
    let class = closed_from_basis(&acceptor, k)?;
    Ok((class, vacuous))
}

fn reversed(a: &Automaton) -> Automaton {
    match a.direction() {
        Direction::Reversed => a.clone(),
        Direction::Forward => a.reverse(),
    }
}

fn join(word: &[usize]) -> String {
    if word.is_empty() {
        return "the empty word".into();
    }
    word.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}
