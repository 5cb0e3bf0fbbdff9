//! Textual cone-structure grammar:
//!
//! ```text
//! spec := term ("x" term)*
//! term := kind ":" size ("*" copies)?
//! kind := "orthant" | "soc" | "psd"
//! ```
//!
//! e.g. `soc:2*3` is three copies of soc_2, `orthant:4 x psd:3` a mixed
//! direct sum. The canonical printer is `ConeStructure::to_spec_string`.

use conefact_core::{BlockKind, ConeStructure};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cone spec error at byte {position}: expected {expected}, found {found:?}")]
pub struct SpecParseError {
    pub position: usize,
    pub expected: &'static str,
    pub found: String,
}

fn err(position: usize, expected: &'static str, found: &str) -> SpecParseError {
    SpecParseError {
        position,
        expected,
        found: found.to_string(),
    }
}

/// Whitespace-separated tokens with their byte offsets.
fn tokens(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut offset = 0;
    for chunk in text.split_inclusive(char::is_whitespace) {
        let token = chunk.trim_end_matches(char::is_whitespace);
        if !token.is_empty() {
            out.push((offset, token));
        }
        offset += chunk.len();
    }
    out
}

fn parse_size(term_pos: usize, text: &str, offset: usize, what: &'static str) -> Result<usize, SpecParseError> {
    let value: usize = text
        .parse()
        .map_err(|_| err(term_pos + offset, what, text))?;
    if value == 0 {
        return Err(err(term_pos + offset, what, text));
    }
    Ok(value)
}

fn parse_term(pos: usize, term: &str, blocks: &mut Vec<BlockKind>) -> Result<(), SpecParseError> {
    let (kind, rest) = term
        .split_once(':')
        .ok_or_else(|| err(pos, "\"kind:size\"", term))?;
    let size_offset = kind.len() + 1;
    let (size_text, copies_text) = match rest.split_once('*') {
        Some((s, c)) => (s, Some(c)),
        None => (rest, None),
    };
    let size = parse_size(pos, size_text, size_offset, "size >= 1")?;
    let copies = match copies_text {
        Some(c) => parse_size(pos, c, size_offset + size_text.len() + 1, "copies >= 1")?,
        None => 1,
    };
    let block = match kind {
        "orthant" => BlockKind::Orthant { k: size },
        "soc" => BlockKind::Soc { k: size },
        "psd" => BlockKind::Sym { n: size },
        other => return Err(err(pos, "\"orthant\", \"soc\", or \"psd\"", other)),
    };
    blocks.extend(std::iter::repeat(block).take(copies));
    Ok(())
}

pub fn parse_cone_spec(text: &str) -> Result<ConeStructure, SpecParseError> {
    let toks = tokens(text);
    if toks.is_empty() {
        return Err(err(0, "a cone term", ""));
    }
    let mut blocks = Vec::new();
    let mut expect_term = true;
    for (pos, tok) in toks {
        if expect_term {
            parse_term(pos, tok, &mut blocks)?;
        } else if tok != "x" {
            return Err(err(pos, "\"x\" separator", tok));
        }
        expect_term = !expect_term;
    }
    if expect_term {
        return Err(err(text.len(), "a cone term after \"x\"", ""));
    }
    ConeStructure::new(blocks).map_err(|e| err(0, "a valid cone structure", &e.to_string()))
}
