//! Command-line interface over the `permclass` library.
//!
//! Subcommands read automata and permutation lists from plain-text files
//! (see `format`), take bulk input one item per line on stdin, and write
//! canonical text to stdout, so every command is deterministic and
//! pipelineable. Boolean answers double as exit codes: 0 = true, 1 = false,
//! 2 = any error.

mod format;

use std::io;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use format::{
    join, parse_automaton, parse_numbers, parse_permutation_line, parse_permutations,
    serialize_automaton,
};
use permclass::bounded::{closed_from_basis_perms, is_closed_language, omega_acceptor};
use permclass::enumeration::{count_sequence, generating_function};
use permclass::machines::{riffle_member, stack_generates, stack_outputs};
use permclass::monotone::{decode_word, encodings, gf_monotone, greedy_encoding, member_monotone};
use permclass::perm::brute_basis;
use permclass::{Automaton, BoundedClass, Permutation, Polynomial, RankWord, RationalGf, SignSequence};

/// Pattern-closed permutation sets as regular languages of rank encodings.
#[derive(Parser)]
#[command(name = "permclass", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rank-encode permutations (stdin: one permutation per line).
    Encode,
    /// Decode rank encodings back to permutations (stdin: one word per line).
    Decode,
    /// Emit the acceptor of all rank encodings with letters at most K.
    Omega {
        /// Rank bound (alphabet size), at least 1.
        #[arg(long)]
        k: usize,
    },
    /// Emit the acceptor of the rank-K-bounded permutations avoiding every
    /// pattern in a file.
    Closure {
        /// Rank bound of the ground set.
        #[arg(long)]
        k: usize,
        /// File of forbidden patterns, one permutation per line.
        #[arg(long)]
        basis: PathBuf,
    },
    /// Emit the acceptor of the minimal permutations outside a closed set.
    Basis {
        /// Automaton file accepting the closed set's encodings.
        #[arg(long)]
        class: PathBuf,
        /// Also print the decoded basis permutations as comment lines.
        #[arg(long)]
        list: bool,
        /// Longest basis permutation to print with --list.
        #[arg(long, default_value_t = 6)]
        maxlen: usize,
    },
    /// Is the language a set of valid encodings closed under pattern
    /// containment? Prints true/false; exit code 0/1.
    IsClosed {
        /// Rank bound the language must respect.
        #[arg(long)]
        k: usize,
        /// Automaton file to test.
        #[arg(long)]
        lang: PathBuf,
    },
    /// Does a finite set of forbidden patterns define the closed set?
    /// Prints true/false; exit code 0/1.
    IsFinitelyBased {
        /// Automaton file accepting the closed set's encodings.
        #[arg(long)]
        class: PathBuf,
    },
    /// Test permutations (stdin, one per line) for membership in a closed
    /// set; prints in/out per line. Exit code 0 iff every line is in.
    Member {
        /// Automaton file accepting the closed set's encodings.
        #[arg(long)]
        class: PathBuf,
    },
    /// Count accepted words of each length 0..=N, one `length count` line
    /// per length.
    Count {
        /// Automaton file.
        #[arg(long)]
        lang: PathBuf,
        /// Largest length to count.
        #[arg(long)]
        upto: usize,
    },
    /// Print the rational generating function of the language's counting
    /// sequence as two coefficient lists (constant term first).
    Gf {
        /// Automaton file.
        #[arg(long)]
        lang: PathBuf,
    },
    /// Print the linear recurrence satisfied by the language's counting
    /// sequence.
    Recurrence {
        /// Automaton file.
        #[arg(long)]
        lang: PathBuf,
    },
    /// Operations on unions of monotone segments described by a sign
    /// sequence.
    Monotone {
        #[command(subcommand)]
        command: MonotoneCommand,
    },
    /// Run token machines and print everything they can output.
    Simulate {
        #[command(subcommand)]
        command: SimulateCommand,
    },
    /// Compute the minimal forbidden patterns of a membership oracle by
    /// exhaustive search up to a length bound.
    BruteBasis {
        /// One of: riffle, stack, stack2, avoid:FILE.
        #[arg(long)]
        oracle: String,
        /// Longest permutation to examine.
        #[arg(long)]
        maxlen: usize,
    },
}

#[derive(Subcommand)]
enum MonotoneCommand {
    /// Decode computation words (stdin, one per line) into permutations.
    Decode {
        /// Sign sequence, e.g. +-- (one sign per segment).
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
    },
    /// Print the greedy encoding of each stdin permutation, or `none` if it
    /// has no segmentation of this shape.
    Greedy {
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
    },
    /// Print every encoding of each stdin permutation, one word per line;
    /// groups for successive inputs are separated by a `--` line.
    Encodings {
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
    },
    /// Generating function of the decomposable permutations avoiding the
    /// given patterns, counted by greedy encodings.
    Gf {
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
        /// Optional file of forbidden patterns.
        #[arg(long)]
        basis: Option<PathBuf>,
    },
    /// Test stdin permutations for decomposability plus pattern avoidance;
    /// prints in/out per line. Exit code 0 iff every line is in.
    Member {
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
        /// Optional file of forbidden patterns.
        #[arg(long)]
        basis: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum SimulateCommand {
    /// Print every permutation of length N the stack machine can output,
    /// one per line, sorted.
    Stack {
        /// Largest number of tokens held at once; unbounded if omitted.
        #[arg(long)]
        capacity: Option<usize>,
        /// Length of the input sequence.
        #[arg(long)]
        n: usize,
    },
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run() -> Result<ExitCode> {
    match Cli::parse().command {
        Command::Encode => cmd_encode(),
        Command::Decode => cmd_decode(),
        Command::Omega { k } => cmd_omega(k),
        Command::Closure { k, basis } => cmd_closure(k, &basis),
        Command::Basis {
            class,
            list,
            maxlen,
        } => cmd_basis(&class, list, maxlen),
        Command::IsClosed { k, lang } => cmd_is_closed(k, &lang),
        Command::IsFinitelyBased { class } => cmd_is_finitely_based(&class),
        Command::Member { class } => cmd_member(&class),
        Command::Count { lang, upto } => cmd_count(&lang, upto),
        Command::Gf { lang } => cmd_gf(&lang),
        Command::Recurrence { lang } => cmd_recurrence(&lang),
        Command::Monotone { command } => match command {
            MonotoneCommand::Decode { phi } => cmd_monotone_decode(&phi),
            MonotoneCommand::Greedy { phi } => cmd_monotone_greedy(&phi),
            MonotoneCommand::Encodings { phi } => cmd_monotone_encodings(&phi),
            MonotoneCommand::Gf { phi, basis } => cmd_monotone_gf(&phi, basis.as_deref()),
            MonotoneCommand::Member { phi, basis } => cmd_monotone_member(&phi, basis.as_deref()),
        },
        Command::Simulate { command } => match command {
            SimulateCommand::Stack { capacity, n } => cmd_simulate_stack(capacity, n),
        },
        Command::BruteBasis { oracle, maxlen } => cmd_brute_basis(&oracle, maxlen),
    }
}

// ---------------------------------------------------------------- commands

fn cmd_encode() -> Result<ExitCode> {
    for (line_no, line) in data_lines(&read_stdin()?) {
        let p = parse_permutation_line(line, "stdin", line_no)?;
        println!("{}", join(p.rank_encode().letters()));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_decode() -> Result<ExitCode> {
    for (line_no, line) in data_lines(&read_stdin()?) {
        let letters = parse_numbers(line, "stdin", line_no)?;
        let word = RankWord::new(letters).map_err(|e| anyhow!("stdin:{line_no}: {e}"))?;
        let p = word.decode().map_err(|e| anyhow!("stdin:{line_no}: {e}"))?;
        println!("{}", join(p.values()));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_omega(k: usize) -> Result<ExitCode> {
    require_positive_k(k)?;
    print!("{}", serialize_automaton(&omega_acceptor(k)));
    Ok(ExitCode::SUCCESS)
}

fn cmd_closure(k: usize, basis: &Path) -> Result<ExitCode> {
    require_positive_k(k)?;
    let patterns = load_permutations(basis)?;
    let (class, vacuous) = closed_from_basis_perms(&patterns, k)?;
    for p in vacuous {
        eprintln!(
            "note: pattern {} needs ranks up to {}, beyond the bound {k}; it excludes nothing",
            join(p.values()),
            p.max_rank()
        );
    }
    print!("{}", serialize_automaton(class.forward_acceptor()));
    Ok(ExitCode::SUCCESS)
}

fn cmd_basis(class: &Path, list: bool, maxlen: usize) -> Result<ExitCode> {
    let class = load_class(class)?;
    let basis = class.basis();
    print!("{}", serialize_automaton(&basis));
    if list {
        let mut perms = Vec::new();
        for word in basis.enumerate_words(maxlen) {
            let p = RankWord::new(word)
                .and_then(|w| w.decode())
                .context("decoding a basis element")?;
            perms.push(p);
        }
        perms.sort_by(|a, b| (a.len(), a.values()).cmp(&(b.len(), b.values())));
        if !basis_listing_complete(&basis, maxlen) {
            println!("# note: elements longer than {maxlen} exist and are not listed");
        }
        for p in perms {
            println!("#{}", prefixed(p.values()));
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// Are all accepted words of length <= maxlen? Words of a finite language
/// accepted by a DFA never revisit a state, so its longest word is shorter
/// than the state count.
fn basis_listing_complete(basis: &Automaton, maxlen: usize) -> bool {
    if !basis.is_finite() {
        return false;
    }
    let longest_possible = basis.state_count().saturating_sub(1);
    if longest_possible <= maxlen {
        return true;
    }
    let counts = count_sequence(basis, longest_possible);
    counts.terms()[maxlen + 1..]
        .iter()
        .all(|t| *t == Default::default())
}

fn cmd_is_closed(k: usize, lang: &Path) -> Result<ExitCode> {
    require_positive_k(k)?;
    let automaton = load_automaton(lang)?;
    if automaton.alphabet() != k {
        bail!(
            "--k is {k} but {} has alphabet {}",
            lang.display(),
            automaton.alphabet()
        );
    }
    bool_output(is_closed_language(&automaton)?)
}

fn cmd_is_finitely_based(class: &Path) -> Result<ExitCode> {
    bool_output(load_class(class)?.is_finitely_based())
}

fn cmd_member(class: &Path) -> Result<ExitCode> {
    let class = load_class(class)?;
    let mut all_in = true;
    for (line_no, line) in data_lines(&read_stdin()?) {
        let p = parse_permutation_line(line, "stdin", line_no)?;
        all_in &= report_membership(class.member(&p));
    }
    Ok(verdict(all_in))
}

fn cmd_count(lang: &Path, upto: usize) -> Result<ExitCode> {
    let automaton = load_automaton(lang)?;
    for (length, count) in count_sequence(&automaton, upto).terms().iter().enumerate() {
        println!("{length} {count}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_gf(lang: &Path) -> Result<ExitCode> {
    print_gf(&generating_function(&load_automaton(lang)?));
    Ok(ExitCode::SUCCESS)
}

fn cmd_recurrence(lang: &Path) -> Result<ExitCode> {
    let recurrence = generating_function(&load_automaton(lang)?).linear_recurrence();
    println!("order {}", recurrence.order());
    println!("coefficients{}", prefixed(&recurrence.coefficients));
    println!("initial{}", prefixed(&recurrence.initial_terms));
    Ok(ExitCode::SUCCESS)
}

fn cmd_monotone_decode(phi: &str) -> Result<ExitCode> {
    let signs = parse_phi(phi)?;
    for (line_no, line) in data_lines(&read_stdin()?) {
        let letters = parse_numbers(line, "stdin", line_no)?;
        let p = decode_word(&signs, &letters).map_err(|e| anyhow!("stdin:{line_no}: {e}"))?;
        println!("{}", join(p.values()));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_monotone_greedy(phi: &str) -> Result<ExitCode> {
    let signs = parse_phi(phi)?;
    for (line_no, line) in data_lines(&read_stdin()?) {
        let p = parse_permutation_line(line, "stdin", line_no)?;
        match greedy_encoding(&signs, &p) {
            Ok(word) => println!("{}", join(&word)),
            Err(_) => println!("none"),
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_monotone_encodings(phi: &str) -> Result<ExitCode> {
    let signs = parse_phi(phi)?;
    let mut first = true;
    for (line_no, line) in data_lines(&read_stdin()?) {
        if !first {
            println!("--");
        }
        first = false;
        let p = parse_permutation_line(line, "stdin", line_no)?;
        for word in encodings(&signs, &p) {
            println!("{}", join(&word));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_monotone_gf(phi: &str, basis: Option<&Path>) -> Result<ExitCode> {
    let signs = parse_phi(phi)?;
    let patterns = load_optional_permutations(basis)?;
    print_gf(&gf_monotone(&signs, &patterns));
    Ok(ExitCode::SUCCESS)
}

fn cmd_monotone_member(phi: &str, basis: Option<&Path>) -> Result<ExitCode> {
    let signs = parse_phi(phi)?;
    let patterns = load_optional_permutations(basis)?;
    let mut all_in = true;
    for (line_no, line) in data_lines(&read_stdin()?) {
        let p = parse_permutation_line(line, "stdin", line_no)?;
        all_in &= report_membership(member_monotone(&signs, &patterns, &p));
    }
    Ok(verdict(all_in))
}

fn cmd_simulate_stack(capacity: Option<usize>, n: usize) -> Result<ExitCode> {
    if capacity == Some(0) {
        bail!("--capacity must be at least 1");
    }
    for p in stack_outputs(capacity, n) {
        println!("{}", join(p.values()));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_brute_basis(oracle: &str, maxlen: usize) -> Result<ExitCode> {
    let basis = if let Some(path) = oracle.strip_prefix("avoid:") {
        let patterns = load_permutations(Path::new(path))?;
        brute_basis(|p| patterns.iter().all(|q| p.avoids(q)), maxlen)?
    } else {
        match oracle {
            "riffle" => brute_basis(riffle_member, maxlen)?,
            "stack" => brute_basis(|p| stack_generates(None, p), maxlen)?,
            "stack2" => brute_basis(|p| stack_generates(Some(2), p), maxlen)?,
            other => bail!("unknown oracle {other:?}; expected riffle, stack, stack2, or avoid:FILE"),
        }
    };
    for p in basis.elements() {
        println!("{}", join(p.values()));
    }
    Ok(ExitCode::SUCCESS)
}

// ----------------------------------------------------------------- helpers

fn read_stdin() -> Result<String> {
    io::read_to_string(io::stdin()).context("reading stdin")
}

/// 1-based line numbers with comment lines removed; blank lines stay (they
/// denote the empty permutation or word).
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(index, raw)| {
        let line = raw.trim();
        (!line.starts_with('#')).then_some((index + 1, line))
    })
}

fn load_automaton(path: &Path) -> Result<Automaton> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    parse_automaton(&text, &path.display().to_string())
}

fn load_permutations(path: &Path) -> Result<Vec<Permutation>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    parse_permutations(&text, &path.display().to_string())
}

fn load_optional_permutations(path: Option<&Path>) -> Result<Vec<Permutation>> {
    path.map_or_else(|| Ok(Vec::new()), load_permutations)
}

/// Wraps an automaton file as a closed class, taking the rank bound from
/// its alphabet.
fn load_class(path: &Path) -> Result<BoundedClass> {
    let automaton = load_automaton(path)?;
    BoundedClass::new(automaton.alphabet(), &automaton)
        .with_context(|| format!("{} does not describe a closed set", path.display()))
}

fn require_positive_k(k: usize) -> Result<()> {
    if k == 0 {
        bail!("--k must be at least 1");
    }
    Ok(())
}

fn parse_phi(phi: &str) -> Result<SignSequence> {
    phi.parse::<SignSequence>()
        .map_err(|e| anyhow!("--phi {phi:?}: {e}"))
}

fn print_gf(gf: &RationalGf) {
    println!("numerator {}", coefficient_list(gf.numerator()));
    println!("denominator {}", coefficient_list(gf.denominator()));
}

/// Coefficients constant term first; the zero polynomial prints as `0`.
fn coefficient_list(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".into();
    }
    p.coeffs()
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Every item rendered with a leading space, so `label{}` needs no
/// separator bookkeeping and an empty list prints as the bare label.
fn prefixed<T: std::fmt::Display>(values: &[T]) -> String {
    values.iter().map(|v| format!(" {v}")).collect()
}

fn report_membership(is_member: bool) -> bool {
    println!("{}", if is_member { "in" } else { "out" });
    is_member
}

fn bool_output(value: bool) -> Result<ExitCode> {
    println!("{value}");
    Ok(verdict(value))
}

fn verdict(value: bool) -> ExitCode {
    if value {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
