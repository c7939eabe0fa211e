//! Plain-text file formats.
//!
//! Automaton files carry five header lines followed by one line per
//! transition (`t <src> <label> <dst>`, label `0` meaning ε); `#` starts a
//! comment. Serialization is canonical — headers in fixed order, transitions
//! sorted — so parse/serialize round-trips are byte-identical on canonical
//! input. Permutation files hold one permutation per line as
//! whitespace-separated values, with an empty line denoting the empty
//! permutation.

use anyhow::{anyhow, bail, Result};
use permclass::{Automaton, Direction, Permutation};

pub fn serialize_automaton(automaton: &Automaton) -> String {
    let mut out = String::new();
    out.push_str(&format!("alphabet {}\n", automaton.alphabet()));
    out.push_str(&format!("states {}\n", automaton.state_count()));
    out.push_str(&format!("initial {}\n", automaton.initial()));
    out.push_str("final");
    for s in automaton.final_states() {
        out.push_str(&format!(" {s}"));
    }
    out.push('\n');
    out.push_str(&format!(
        "direction {}\n",
        match automaton.direction() {
            Direction::Forward => "forward",
            Direction::Reversed => "reversed",
        }
    ));
    for (src, label, dst) in automaton.transitions() {
        out.push_str(&format!("t {src} {} {dst}\n", label.unwrap_or(0)));
    }
    out
}

pub fn parse_automaton(text: &str, source: &str) -> Result<Automaton> {
    let mut alphabet: Option<usize> = None;
    let mut states: Option<usize> = None;
    let mut initial: Option<usize> = None;
    let mut finals: Option<Vec<usize>> = None;
    let mut direction: Option<Direction> = None;
    let mut transitions: Vec<(usize, Option<usize>, usize)> = Vec::new();

    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let keyword = parts.next().unwrap();
        let rest: Vec<&str> = parts.collect();
        let one_number = |rest: &[&str], what: &str| -> Result<usize> {
            match rest {
                [value] => value
                    .parse()
                    .map_err(|_| anyhow!("{source}:{line_no}: {what} must be an integer")),
                _ => bail!("{source}:{line_no}: expected `{what} <integer>`"),
            }
        };
        match keyword {
            "alphabet" => {
                if alphabet.is_some() {
                    bail!("{source}:{line_no}: duplicate alphabet line");
                }
                alphabet = Some(one_number(&rest, "alphabet")?);
            }
            "states" => {
                if states.is_some() {
                    bail!("{source}:{line_no}: duplicate states line");
                }
                states = Some(one_number(&rest, "states")?);
            }
            "initial" => {
                if initial.is_some() {
                    bail!("{source}:{line_no}: duplicate initial line");
                }
                initial = Some(one_number(&rest, "initial")?);
            }
            "final" => {
                if finals.is_some() {
                    bail!("{source}:{line_no}: duplicate final line");
                }
                let mut list = Vec::new();
                for value in &rest {
                    list.push(value.parse().map_err(|_| {
                        anyhow!("{source}:{line_no}: final states must be integers")
                    })?);
                }
                finals = Some(list);
            }
            "direction" => {
                if direction.is_some() {
                    bail!("{source}:{line_no}: duplicate direction line");
                }
                direction = Some(match rest.as_slice() {
                    ["forward"] => Direction::Forward,
                    ["reversed"] => Direction::Reversed,
                    _ => bail!(
                        "{source}:{line_no}: direction must be `forward` or `reversed`"
                    ),
                });
            }
            "t" => {
                let numbers: Vec<usize> = rest
                    .iter()
                    .map(|v| {
                        v.parse().map_err(|_| {
                            anyhow!("{source}:{line_no}: transition fields must be integers")
                        })
                    })
                    .collect::<Result<_>>()?;
                let [src, label, dst] = numbers.as_slice() else {
                    bail!("{source}:{line_no}: expected `t <src> <label> <dst>`");
                };
                let label = if *label == 0 { None } else { Some(*label) };
                transitions.push((*src, label, *dst));
            }
            other => bail!("{source}:{line_no}: unknown keyword {other:?}"),
        }
    }

    let alphabet = alphabet.ok_or_else(|| anyhow!("{source}: missing alphabet line"))?;
    let states = states.ok_or_else(|| anyhow!("{source}: missing states line"))?;
    let initial = initial.ok_or_else(|| anyhow!("{source}: missing initial line"))?;
    let finals = finals.ok_or_else(|| anyhow!("{source}: missing final line"))?;
    let direction = direction.ok_or_else(|| anyhow!("{source}: missing direction line"))?;
    Automaton::new(alphabet, direction, states, initial, &finals, &transitions)
        .map_err(|e| anyhow!("{source}: {e}"))
}

/// One permutation per non-comment line; an empty (or all-spaces) line is
/// the empty permutation.
pub fn parse_permutations(text: &str, source: &str) -> Result<Vec<Permutation>> {
    let mut out = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.starts_with('#') {
            continue;
        }
        out.push(parse_permutation_line(line, source, index + 1)?);
    }
    Ok(out)
}

pub fn parse_permutation_line(line: &str, source: &str, line_no: usize) -> Result<Permutation> {
    let values = parse_numbers(line, source, line_no)?;
    Permutation::new(values).map_err(|e| anyhow!("{source}:{line_no}: {e}"))
}

/// Whitespace-separated positive integers; empty input gives the empty list.
pub fn parse_numbers(line: &str, source: &str, line_no: usize) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|v| {
            v.parse()
                .map_err(|_| anyhow!("{source}:{line_no}: {v:?} is not an integer"))
        })
        .collect()
}

pub fn join(values: &[usize]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}
