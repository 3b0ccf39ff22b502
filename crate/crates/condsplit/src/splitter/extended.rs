//! Optional pattern rules for non-standard conditional forms. These are
//! disabled by default because they trade precision for coverage: an
//! imperative followed by "and" often — but not always — encodes an
//! implicit condition. Each rule returns the token range of the implied
//! condition clause plus the rule id for tracing.

use crate::linguistics::{detect_imperative, Lexicons, Token, TokenFeatures, TokenKind};
use std::ops::Range;

/// Try each extended pattern in order; first match wins. Only called
/// when no explicit condition indicator was found.
pub(super) fn extended_condition_scope(
    tokens: &[Token],
    features: &[TokenFeatures],
    lexicons: &Lexicons,
) -> Option<(Range<usize>, &'static str)> {
    imperative_and(tokens, lexicons)
        .or_else(|| interrogative(tokens))
        .or_else(|| for_phrase(tokens, features))
}

/// "Come now and I'll give you the book." — an imperative clause
/// coordinated with "and" acts as the condition for what follows.
fn imperative_and(tokens: &[Token], lexicons: &Lexicons) -> Option<(Range<usize>, &'static str)> {
    if !detect_imperative(tokens, 0, lexicons) {
        return None;
    }
    let and_idx = tokens.iter().position(|t| t.lower() == "and")?;
    if and_idx == 0 || !has_word(&tokens[and_idx + 1..]) {
        return None;
    }
    Some((0..and_idx, "scope.imperative_and"))
}

/// "Do you like it? You can have it now." — a question immediately
/// answered reads as "if you like it, ...".
fn interrogative(tokens: &[Token]) -> Option<(Range<usize>, &'static str)> {
    let q_idx = tokens.iter().position(|t| t.text == "?")?;
    if !has_word(&tokens[..q_idx]) || !has_word(&tokens[q_idx + 1..]) {
        return None;
    }
    Some((0..q_idx, "scope.interrogative"))
}

/// "For rainy days, children stay home." — a sentence-initial "For"
/// phrase set off by a comma names the conditioning circumstance.
fn for_phrase(
    tokens: &[Token],
    features: &[TokenFeatures],
) -> Option<(Range<usize>, &'static str)> {
    if tokens[0].lower() != "for" {
        return None;
    }
    let comma = features.iter().position(|f| f.is_clause_separator)?;
    if comma < 2 || !has_word(&tokens[comma + 1..]) {
        return None;
    }
    Some((0..comma, "scope.for_phrase"))
}

fn has_word(tokens: &[Token]) -> bool {
    tokens.iter().any(|t| t.kind != TokenKind::Punctuation)
}
