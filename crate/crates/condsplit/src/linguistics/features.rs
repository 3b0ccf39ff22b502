//! Per-token features driving the rule splitter: condition indicators
//! (with exclusion filtering for fixed phrases like "if possible"),
//! obligation modals, imperative cues, flow markers, and clause
//! separators.

use super::lexicon::Lexicons;
use super::tokenizer::{Token, TokenKind};
use std::ops::Range;

/// What kind of conditional cue a token starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndicatorKind {
    /// "if", "when", "in case", ... — introduces the condition clause.
    Subordinator,
    /// "unless" — introduces a negated condition clause.
    NegativeSubordinator,
    /// "otherwise" — refers back to a condition in a previous sentence.
    DiscourseMarker,
}

/// Features computed once per token. `indicator_kind` is `Some` exactly
/// when `is_condition_indicator` is true; multi-word indicators mark
/// their first token and record the span length in `indicator_len`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TokenFeatures {
    pub is_condition_indicator: bool,
    pub indicator_kind: Option<IndicatorKind>,
    /// Number of tokens the indicator covers (0 when not an indicator).
    pub indicator_len: usize,
    pub is_obligation_modal: bool,
    pub is_imperative_candidate: bool,
    pub is_then_marker: bool,
    pub is_clause_separator: bool,
}

/// Punctuation that can delimit candidate clauses.
fn is_separator_char(text: &str) -> bool {
    matches!(
        text,
        "," | ";" | ":" | "(" | ")" | "-" | "\u{2013}" | "\u{2014}"
    )
}

/// Compute features for every token.
pub fn extract_features(tokens: &[Token], lexicons: &Lexicons) -> Vec<TokenFeatures> {
    let lowered: Vec<String> = tokens.iter().map(Token::lower).collect();
    let mut features = vec![TokenFeatures::default(); tokens.len()];
    for (i, feat) in features.iter_mut().enumerate() {
        if tokens[i].kind == TokenKind::Punctuation {
            feat.is_clause_separator = is_separator_char(&tokens[i].text);
            continue;
        }
        if lowered[i] == "then" {
            feat.is_then_marker = true;
        }
        feat.is_imperative_candidate = lexicons.imperative_verbs.contains_word(&lowered[i]);
        if lexicons.obligation_modals.match_at(&lowered, i).is_some() {
            feat.is_obligation_modal = true;
        }
        if excluded_phrase_at(tokens, &lowered, lexicons, i) {
            continue;
        }
        let kinds = [
            (&lexicons.subordinators, IndicatorKind::Subordinator),
            (
                &lexicons.negative_subordinators,
                IndicatorKind::NegativeSubordinator,
            ),
            (&lexicons.discourse_markers, IndicatorKind::DiscourseMarker),
        ];
        for (lexicon, kind) in kinds {
            if let Some(len) = lexicon.match_at(&lowered, i) {
                feat.is_condition_indicator = true;
                feat.indicator_kind = Some(kind);
                feat.indicator_len = len;
                break;
            }
        }
    }
    features
}

/// True when an exclusion phrase ("if possible", "if any", ...) matches
/// at `i` and stands alone, i.e. is followed by punctuation or the end
/// of the sentence. "if any doubt exists" is not excluded because the
/// phrase continues with a word.
fn excluded_phrase_at(tokens: &[Token], lowered: &[String], lexicons: &Lexicons, i: usize) -> bool {
    lexicons
        .exclusions
        .match_lengths_at(lowered, i)
        .into_iter()
        .any(|len| match tokens.get(i + len) {
            None => true,
            Some(t) => t.kind == TokenKind::Punctuation,
        })
}

/// Does the clause starting at `clause_start` read as an imperative?
/// Leading punctuation, step numbers, and preamble words ("then",
/// "please", ...) are skipped; the first remaining word decides by
/// lexicon lookup against known base-form verbs.
pub fn detect_imperative(tokens: &[Token], clause_start: usize, lexicons: &Lexicons) -> bool {
    for token in &tokens[clause_start.min(tokens.len())..] {
        match token.kind {
            TokenKind::Punctuation | TokenKind::Number => continue,
            TokenKind::Word => {
                let word = token.lower();
                if lexicons.imperative_preambles.contains_word(&word) {
                    continue;
                }
                return lexicons.imperative_verbs.contains_word(&word);
            }
        }
    }
    false
}

/// Does the token range contain an obligation modal ("must", "have to",
/// ...)? Multi-word modals must lie entirely inside the range.
pub fn detect_obligation(tokens: &[Token], range: Range<usize>, lexicons: &Lexicons) -> bool {
    let lowered: Vec<String> = tokens.iter().map(Token::lower).collect();
    for i in range.clone() {
        if i >= tokens.len() || tokens[i].kind == TokenKind::Punctuation {
            continue;
        }
        if let Some(len) = lexicons.obligation_modals.match_at(&lowered, i) {
            if i + len <= range.end {
                return true;
            }
        }
    }
    false
}
