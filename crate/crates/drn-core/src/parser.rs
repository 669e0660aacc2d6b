//! The `.drn` text format.
//!
//! One reaction per line, written with species names and nonnegative integer
//! stoichiometric coefficients:
//!
//! ```text
//! # comment to end of line
//! species: A B            # optional: fixes species order up front
//! 0 -> 2 A                # '0' denotes the empty side
//! A + B -> 0
//! 5 A -> 4 A + 3 B
//! X <-> Y                 # reversible: expands to two reactions in order
//! ```
//!
//! An omitted coefficient is 1; repeated species on a side add up. Species
//! not covered by a `species:` header are ordered by first appearance. A
//! reaction line `L -> R` becomes origin `L` and drift `R - L`; `L <-> R`
//! additionally appends origin `R`, drift `L - R`.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::model::Drn;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}, column {column}: coefficient must be a positive integer")]
    ZeroCoefficient { line: usize, column: usize },
    #[error("line {line}, column {column}: negative coefficient")]
    NegativeCoefficient { line: usize, column: usize },
    #[error("line {line}, column {column}: duplicate species `{name}` in header")]
    DuplicateSpecies { line: usize, column: usize, name: String },
    #[error("line {line}, column {column}: species header must precede all reactions")]
    LateSpeciesHeader { line: usize, column: usize },
    #[error("network has no species (no header and no reactions mention any)")]
    NoSpecies,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Int(BigInt),
    Plus,
    Arrow,
    BiArrow,
    Minus,
}

/// Tokens with their 1-based starting column.
fn tokenize(line_no: usize, line: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = line.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '+' {
            tokens.push((column, Token::Plus));
            i += 1;
            continue;
        }
        if c == '-' {
            if chars.get(i + 1) == Some(&'>') {
                tokens.push((column, Token::Arrow));
                i += 2;
            } else {
                tokens.push((column, Token::Minus));
                i += 1;
            }
            continue;
        }
        if c == '<' {
            if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') {
                tokens.push((column, Token::BiArrow));
                i += 3;
                continue;
            }
            return Err(ParseError::Syntax {
                line: line_no,
                column,
                message: "expected `<->`".into(),
            });
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let value = text.parse::<BigInt>().expect("digit run parses");
            tokens.push((column, Token::Int(value)));
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            tokens.push((column, Token::Ident(text)));
            continue;
        }
        if c == ':' {
            return Err(ParseError::Syntax {
                line: line_no,
                column,
                message: "`:` is only valid in a `species:` header".into(),
            });
        }
        return Err(ParseError::Syntax {
            line: line_no,
            column,
            message: format!("unexpected character `{c}`"),
        });
    }
    Ok(tokens)
}

/// One side of a reaction: species index, coefficient.
type Side = Vec<(usize, BigInt)>;

struct NetBuilder {
    species: Vec<String>,
    index: HashMap<String, usize>,
    reactions: Vec<(Side, Side, bool)>,
}

impl NetBuilder {
    fn new() -> Self {
        NetBuilder { species: Vec::new(), index: HashMap::new(), reactions: Vec::new() }
    }

    fn species_id(&mut self, name: &str) -> usize {
        if let Some(&id) = self.index.get(name) {
            return id;
        }
        let id = self.species.len();
        self.species.push(name.to_string());
        self.index.insert(name.to_string(), id);
        id
    }
}

/// Parses the text of a `.drn` file into a network.
pub fn parse_network(text: &str) -> Result<Drn, ParseError> {
    let mut builder = NetBuilder::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let header_prefix = raw_line.trim_start();
        if header_prefix.starts_with("species:") {
            let column = raw_line.len() - header_prefix.len() + 1;
            if !builder.reactions.is_empty() {
                return Err(ParseError::LateSpeciesHeader { line: line_no, column });
            }
            parse_species_header(line_no, raw_line, &mut builder)?;
            continue;
        }
        let tokens = tokenize(line_no, raw_line)?;
        if tokens.is_empty() {
            continue;
        }
        parse_reaction_line(line_no, &tokens, &mut builder)?;
    }

    if builder.species.is_empty() {
        return Err(ParseError::NoSpecies);
    }
    let d = builder.species.len();
    let mut drifts = Vec::new();
    let mut origins = Vec::new();
    let mut push_reaction = |from: &Side, to: &Side| {
        let mut origin = vec![BigInt::zero(); d];
        let mut result = vec![BigInt::zero(); d];
        for (id, coeff) in from {
            origin[*id] += coeff;
        }
        for (id, coeff) in to {
            result[*id] += coeff;
        }
        let drift: Vec<BigInt> = result.iter().zip(&origin).map(|(r, o)| r - o).collect();
        origins.push(origin);
        drifts.push(drift);
    };
    for (left, right, reversible) in &builder.reactions {
        push_reaction(left, right);
        if *reversible {
            push_reaction(right, left);
        }
    }
    let net = Drn::new(builder.species, drifts, origins)
        .expect("origins are sums of nonnegative coefficients and results stay nonnegative");
    Ok(net)
}

fn parse_species_header(
    line_no: usize,
    raw_line: &str,
    builder: &mut NetBuilder,
) -> Result<(), ParseError> {
    let offset = raw_line.find("species:").expect("caller checked the prefix") + "species:".len();
    let rest = &raw_line[offset..];
    let tokens = tokenize(line_no, rest)?;
    for (col, token) in tokens {
        let column = offset + col;
        match token {
            Token::Ident(name) => {
                if builder.index.contains_key(&name) {
                    return Err(ParseError::DuplicateSpecies { line: line_no, column, name });
                }
                builder.species_id(&name);
            }
            _ => {
                return Err(ParseError::Syntax {
                    line: line_no,
                    column,
                    message: "species header takes only species names".into(),
                })
            }
        }
    }
    Ok(())
}

fn parse_reaction_line(
    line_no: usize,
    tokens: &[(usize, Token)],
    builder: &mut NetBuilder,
) -> Result<(), ParseError> {
    let arrow_pos = tokens
        .iter()
        .position(|(_, t)| matches!(t, Token::Arrow | Token::BiArrow))
        .ok_or_else(|| ParseError::Syntax {
            line: line_no,
            column: tokens.last().map_or(1, |(c, _)| *c),
            message: "reaction needs `->` or `<->`".into(),
        })?;
    let reversible = matches!(tokens[arrow_pos].1, Token::BiArrow);
    let left = parse_side(line_no, &tokens[..arrow_pos], builder)?;
    let right_tokens = &tokens[arrow_pos + 1..];
    if right_tokens.is_empty() {
        return Err(ParseError::Syntax {
            line: line_no,
            column: tokens[arrow_pos].0,
            message: "missing right-hand side".into(),
        });
    }
    let right = parse_side(line_no, right_tokens, builder)?;
    builder.reactions.push((left, right, reversible));
    Ok(())
}

fn parse_side(
    line_no: usize,
    tokens: &[(usize, Token)],
    builder: &mut NetBuilder,
) -> Result<Side, ParseError> {
    if tokens.is_empty() {
        return Err(ParseError::Syntax {
            line: line_no,
            column: 1,
            message: "missing left-hand side".into(),
        });
    }
    // A lone `0` is the empty side.
    if tokens.len() == 1 {
        if let (_, Token::Int(v)) = &tokens[0] {
            if v.is_zero() {
                return Ok(Vec::new());
            }
        }
    }
    let mut side: Side = Vec::new();
    for term in tokens.split(|(_, t)| matches!(t, Token::Plus)) {
        // split() yields an empty slice for a leading, trailing, or doubled
        // `+`.
        if term.is_empty() {
            return Err(ParseError::Syntax {
                line: line_no,
                column: tokens.last().map_or(1, |(c, _)| *c),
                message: "dangling `+`".into(),
            });
        }
        let (coeff, name) = parse_term(line_no, term)?;
        let id = builder.species_id(&name);
        side.push((id, coeff));
    }
    Ok(side)
}

/// A term is `IDENT` or `INT IDENT`, with `INT >= 1`.
fn parse_term(line_no: usize, term: &[(usize, Token)]) -> Result<(BigInt, String), ParseError> {
    match term {
        [(_, Token::Ident(name))] => Ok((BigInt::one(), name.clone())),
        [(col, Token::Int(v)), (_, Token::Ident(name))] => {
            if v.is_zero() {
                return Err(ParseError::ZeroCoefficient { line: line_no, column: *col });
            }
            Ok((v.clone(), name.clone()))
        }
        [(col, Token::Minus), ..] => {
            Err(ParseError::NegativeCoefficient { line: line_no, column: *col })
        }
        [(col, Token::Int(_))] => Err(ParseError::Syntax {
            line: line_no,
            column: *col,
            message: "expected a species name after the coefficient".into(),
        }),
        [(col, _), ..] => Err(ParseError::Syntax {
            line: line_no,
            column: *col,
            message: "expected `coefficient species` or `species`".into(),
        }),
        [] => unreachable!("empty terms are rejected by the caller"),
    }
}

/// Renders a network back to `.drn` text: a `species:` header followed by one
/// line per reaction (always `->`; reversible pairs stay two lines). Parsing
/// the output reproduces the network exactly.
pub fn serialize_network(drn: &Drn) -> String {
    let mut out = String::new();
    out.push_str("species:");
    for name in drn.species() {
        let _ = write!(out, " {name}");
    }
    out.push('\n');
    for j in 0..drn.size() {
        let origin = drn.origin(j);
        let result: Vec<BigInt> =
            origin.iter().zip(drn.drift(j)).map(|(o, v)| o + v).collect();
        let _ = writeln!(out, "{} -> {}", render_side(drn, origin), render_side(drn, &result));
    }
    out
}

fn render_side(drn: &Drn, coeffs: &[BigInt]) -> String {
    let mut terms = Vec::new();
    for (c, coeff) in coeffs.iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        if coeff.is_one() {
            terms.push(drn.species()[c].clone());
        } else {
            terms.push(format!("{} {}", coeff, drn.species()[c]));
        }
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bigs(vs: &[i64]) -> Vec<BigInt> {
        vs.iter().map(|&v| BigInt::from(v)).collect()
    }

    #[test]
    fn parses_the_branching_network() {
        let net = parse_network("0 -> 2 A\nA + B -> 0\n5 A -> 4 A + 3 B\n").unwrap();
        assert_eq!(net.species(), &["A".to_string(), "B".to_string()]);
        assert_eq!(net.drifts(), &[bigs(&[2, 0]), bigs(&[-1, -1]), bigs(&[-1, 3])]);
        assert_eq!(net.origins(), &[bigs(&[0, 0]), bigs(&[1, 1]), bigs(&[5, 0])]);
    }

    #[test]
    fn header_fixes_species_order() {
        let net = parse_network("species: B A\nA -> B\n").unwrap();
        assert_eq!(net.species(), &["B".to_string(), "A".to_string()]);
        assert_eq!(net.drifts(), &[bigs(&[1, -1])]);
        assert_eq!(net.origins(), &[bigs(&[0, 1])]);
    }

    #[test]
    fn reversible_reaction_expands_in_order() {
        let net = parse_network("X <-> 2 Y\n").unwrap();
        assert_eq!(net.drifts(), &[bigs(&[-1, 2]), bigs(&[1, -2])]);
        assert_eq!(net.origins(), &[bigs(&[1, 0]), bigs(&[0, 2])]);
    }

    #[test]
    fn repeated_species_coefficients_add_up() {
        let net = parse_network("A + A + 2 A -> 0\n").unwrap();
        assert_eq!(net.origins(), &[bigs(&[4])]);
        assert_eq!(net.drifts(), &[bigs(&[-4])]);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let net = parse_network("# leading comment\n\n  \nA -> 0 # trailing\n").unwrap();
        assert_eq!(net.size(), 1);
    }

    #[test]
    fn catalysts_appear_on_both_sides() {
        let net = parse_network("E + S -> E + P\n").unwrap();
        assert_eq!(net.species(), &["E".to_string(), "S".to_string(), "P".to_string()]);
        assert_eq!(net.origins(), &[bigs(&[1, 1, 0])]);
        assert_eq!(net.drifts(), &[bigs(&[0, -1, 1])]);
    }

    #[test]
    fn reports_syntax_errors_with_position() {
        let err = parse_network("A -> \n").unwrap_err();
        assert_eq!(
            err,
            ParseError::Syntax { line: 1, column: 3, message: "missing right-hand side".into() }
        );
        let err = parse_network("A B -> 0\n").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 1, .. }));
        let err = parse_network("A -> ?\n").unwrap_err();
        assert_eq!(
            err,
            ParseError::Syntax { line: 1, column: 6, message: "unexpected character `?`".into() }
        );
        let err = parse_network("A + -> 0\n").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 1, .. }));
    }

    #[test]
    fn rejects_zero_and_negative_coefficients() {
        assert_eq!(
            parse_network("0 A -> B\n").unwrap_err(),
            ParseError::ZeroCoefficient { line: 1, column: 1 }
        );
        assert_eq!(
            parse_network("A -> -2 B\n").unwrap_err(),
            ParseError::NegativeCoefficient { line: 1, column: 6 }
        );
    }

    #[test]
    fn rejects_header_after_reactions_and_duplicates() {
        assert_eq!(
            parse_network("A -> 0\nspecies: A\n").unwrap_err(),
            ParseError::LateSpeciesHeader { line: 2, column: 1 }
        );
        assert!(matches!(
            parse_network("species: A A\n").unwrap_err(),
            ParseError::DuplicateSpecies { line: 1, name, .. } if name == "A"
        ));
    }

    #[test]
    fn rejects_empty_input() {
        assert_eq!(parse_network("# nothing\n").unwrap_err(), ParseError::NoSpecies);
    }

    #[test]
    fn missing_arrow_is_an_error() {
        assert!(matches!(
            parse_network("A + B\n").unwrap_err(),
            ParseError::Syntax { line: 1, .. }
        ));
    }

    #[test]
    fn round_trips_through_serialization() {
        let text = "species: A B\n0 -> 2 A\nA + B -> 0\n5 A -> 4 A + 3 B\n";
        let net = parse_network(text).unwrap();
        let rendered = serialize_network(&net);
        assert_eq!(rendered, text);
        assert_eq!(parse_network(&rendered).unwrap(), net);
    }

    #[test]
    fn serializes_reversible_pairs_as_two_lines() {
        let net = parse_network("X <-> 2 Y\n").unwrap();
        assert_eq!(serialize_network(&net), "species: X Y\nX -> 2 Y\n2 Y -> X\n");
    }
}
