//! Parsing claimed sequents, in the same three shapes they print in:
//!
//! ```text
//! x:A, y:B |- t : A->B | 'a:A
//! c : (x:A |- 'a:B)
//! x:A | e : B |- 'a:C
//! ```
//!
//! The subject slot is skipped; type variables are capitalised names.

use std::collections::BTreeMap;

use mumu_core::typing::{Sequent, SequentForm, SimpleType};
use mumu_core::{CoVarName, VarName};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("malformed sequent: {0}")]
pub struct SequentError(String);

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Turnstile,
    Colon,
    Comma,
    Arrow,
    LParen,
    RParen,
    Bar,
    Name(String),
    CoName(String),
    TypeVar(String),
    /// Anything else; only allowed in the subject slot.
    Other,
}

fn lex(src: &str) -> Vec<Tok> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    let word = |i: &mut usize| {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_alphanumeric() {
            *i += 1;
        }
        chars[start..*i].iter().collect::<String>()
    };
    while i < chars.len() {
        let c = chars[i];
        match c {
            _ if c.is_whitespace() => i += 1,
            '|' if chars.get(i + 1) == Some(&'-') => {
                out.push(Tok::Turnstile);
                i += 2;
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                out.push(Tok::Arrow);
                i += 2;
            }
            '|' => {
                out.push(Tok::Bar);
                i += 1;
            }
            ':' => {
                out.push(Tok::Colon);
                i += 1;
            }
            ',' => {
                out.push(Tok::Comma);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            '\'' => {
                i += 1;
                out.push(Tok::CoName(word(&mut i)));
            }
            _ if c.is_ascii_uppercase() => out.push(Tok::TypeVar(word(&mut i))),
            _ if c.is_ascii_alphanumeric() => out.push(Tok::Name(word(&mut i))),
            _ => {
                out.push(Tok::Other);
                i += 1;
            }
        }
    }
    out
}

fn err<T>(msg: &str) -> Result<T, SequentError> {
    Err(SequentError(msg.into()))
}

/// `T ::= A | (T) | T -> T`, right-associative.
fn parse_type(toks: &[Tok]) -> Result<SimpleType, SequentError> {
    let (t, rest) = type_prefix(toks)?;
    if rest.is_empty() {
        Ok(t)
    } else {
        err("trailing input after a type")
    }
}

fn type_prefix(toks: &[Tok]) -> Result<(SimpleType, &[Tok]), SequentError> {
    let (a, rest) = match toks.first() {
        Some(Tok::TypeVar(v)) => (SimpleType::var(v), &toks[1..]),
        Some(Tok::LParen) => {
            let (t, rest) = type_prefix(&toks[1..])?;
            match rest.first() {
                Some(Tok::RParen) => (t, &rest[1..]),
                _ => return err("unbalanced parentheses in a type"),
            }
        }
        _ => return err("expected a type"),
    };
    match rest.first() {
        Some(Tok::Arrow) => {
            let (b, rest) = type_prefix(&rest[1..])?;
            Ok((SimpleType::arrow(a, b), rest))
        }
        _ => Ok((a, rest)),
    }
}

/// Comma-separated `name:T` bindings.
fn bindings(toks: &[Tok]) -> Result<Vec<(Tok, SimpleType)>, SequentError> {
    let mut out = Vec::new();
    if toks.is_empty() {
        return Ok(out);
    }
    let mut depth = 0i32;
    let mut start = 0;
    for i in 0..=toks.len() {
        let at_end = i == toks.len();
        if !at_end {
            match toks[i] {
                Tok::LParen => depth += 1,
                Tok::RParen => depth -= 1,
                _ => {}
            }
        }
        if at_end || (toks[i] == Tok::Comma && depth == 0) {
            let part = &toks[start..i];
            match part {
                [name @ (Tok::Name(_) | Tok::CoName(_)), Tok::Colon, ty @ ..] => out.push((name.clone(), parse_type(ty)?)),
                _ => return err("expected name:type"),
            }
            start = i + 1;
        }
    }
    Ok(out)
}

fn gamma(toks: &[Tok]) -> Result<BTreeMap<VarName, SimpleType>, SequentError> {
    bindings(toks)?
        .into_iter()
        .map(|(n, t)| match n {
            Tok::Name(x) => Ok((VarName::new(x), t)),
            _ => err("covariable on the left of the turnstile"),
        })
        .collect()
}

fn delta(toks: &[Tok]) -> Result<BTreeMap<CoVarName, SimpleType>, SequentError> {
    bindings(toks)?
        .into_iter()
        .map(|(n, t)| match n {
            Tok::CoName(a) => Ok((CoVarName::new(a), t)),
            _ => err("variable on the right of the turnstile"),
        })
        .collect()
}

fn matching_paren(toks: &[Tok], open: usize) -> Option<usize> {
    let mut depth = 0;
    for (i, t) in toks.iter().enumerate().skip(open) {
        match t {
            Tok::LParen => depth += 1,
            Tok::RParen => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

pub fn parse_sequent(src: &str) -> Result<Sequent, SequentError> {
    let toks = lex(src);
    let turnstiles: Vec<usize> = toks.iter().enumerate().filter(|(_, t)| **t == Tok::Turnstile).map(|(i, _)| i).collect();
    let &[ts] = turnstiles.as_slice() else {
        return err("expected exactly one '|-'");
    };

    // command: SUBJECT : ( Γ |- Δ )
    for i in 0..toks.len().saturating_sub(1) {
        if toks[i] == Tok::Colon && toks[i + 1] == Tok::LParen && matching_paren(&toks, i + 1) == Some(toks.len() - 1) && ts > i + 1 {
            return Ok(Sequent {
                gamma: gamma(&toks[i + 2..ts])?,
                form: SequentForm::Command,
                delta: delta(&toks[ts + 1..toks.len() - 1])?,
            });
        }
    }

    let first_bar = toks.iter().position(|t| *t == Tok::Bar);
    match first_bar {
        // context: Γ | SUBJECT : T |- Δ
        Some(b) if b < ts => {
            let colon = toks[b + 1..ts]
                .iter()
                .rposition(|t| *t == Tok::Colon)
                .map(|i| i + b + 1)
                .ok_or_else(|| SequentError("expected ': type' after the context".into()))?;
            Ok(Sequent {
                gamma: gamma(&toks[..b])?,
                form: SequentForm::Context(parse_type(&toks[colon + 1..ts])?),
                delta: delta(&toks[ts + 1..])?,
            })
        }
        // term: Γ |- SUBJECT : T | Δ
        _ => {
            let colon = toks[ts + 1..]
                .iter()
                .position(|t| *t == Tok::Colon)
                .map(|i| i + ts + 1)
                .ok_or_else(|| SequentError("expected ': type' after the term".into()))?;
            let bar = toks[colon..].iter().position(|t| *t == Tok::Bar).map(|i| i + colon);
            let ty_end = bar.unwrap_or(toks.len());
            Ok(Sequent {
                gamma: gamma(&toks[..ts])?,
                form: SequentForm::Term(parse_type(&toks[colon + 1..ty_end])?),
                delta: match bar {
                    Some(b) => delta(&toks[b + 1..])?,
                    None => BTreeMap::new(),
                },
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn round_trip(text: &str, subject: &str) {
        let s = parse_sequent(text).unwrap();
        assert_eq!(s.render(subject), text);
    }

    #[test]
    fn the_three_forms_round_trip() {
        round_trip("|- \\x.x : A->A", "\\x.x");
        round_trip("f:A->B, y:A |- f y : B", "f y");
        round_trip("|- mu 'a.['a]x : A | 'a:A", "mu 'a.['a]x");
        round_trip("['a]x : (x:A |- 'a:A)", "['a]x");
        round_trip("<x|'a> : (x:A |- 'a:A)", "<x|'a>");
        round_trip("| ['a]# : A |- 'a:A", "['a]#");
        round_trip("x:A | mt y.<x|'b> : B |- 'b:A", "mt y.<x|'b>");
        round_trip("|- \\x.\\y.x : ((A->B)->A)->C->(A->B)->A", "\\x.\\y.x");
    }

    #[test]
    fn malformed() {
        assert!(parse_sequent("x:A").is_err());
        assert!(parse_sequent("|- x : ").is_err());
        assert!(parse_sequent("'a:A |- x : A").is_err());
    }
}
