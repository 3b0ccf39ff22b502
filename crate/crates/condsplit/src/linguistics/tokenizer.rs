//! Offset-preserving tokenizer. Offsets count Unicode scalar values,
//! matching the annotation format, so `char_slice(text, tok.start, tok.end)`
//! always returns the token text verbatim.
//!
//! Rules: whitespace separates tokens; runs of alphanumeric characters form
//! word tokens; hyphens and apostrophes stay inside a word when flanked by
//! alphanumerics (`opt-out`, `don't`); every other character becomes a
//! one-character punctuation token.

use thiserror::Error;

/// Coarse token class. `Number` covers all-digit tokens such as step
/// numbers; mixed tokens like `3rd` are words.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Word,
    Number,
    Punctuation,
}

/// One token with half-open character offsets into the source sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub text: String,
    pub start: usize,
    pub end: usize,
    pub kind: TokenKind,
}

impl Token {
    /// Lowercased text, used for lexicon matching.
    pub fn lower(&self) -> String {
        self.text.to_lowercase()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TokenizeError {
    #[error("input contains no tokens")]
    EmptyInput,
}

/// Split a sentence into tokens. Errors on input that is empty or
/// whitespace-only; any other input produces at least one token.
pub fn tokenize(sentence: &str) -> Result<Vec<Token>, TokenizeError> {
    let chars: Vec<char> = sentence.chars().collect();
    let mut tokens = Vec::new();
    let mut start: Option<usize> = None;
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            flush(&mut tokens, &chars, &mut start, i);
        } else if c.is_alphanumeric() {
            start.get_or_insert(i);
        } else if is_joiner(c) && start.is_some() && next_is_alphanumeric(&chars, i) {
            // Intra-word hyphen or apostrophe: keep accumulating.
        } else {
            flush(&mut tokens, &chars, &mut start, i);
            tokens.push(Token {
                text: c.to_string(),
                start: i,
                end: i + 1,
                kind: TokenKind::Punctuation,
            });
        }
        i += 1;
    }
    flush(&mut tokens, &chars, &mut start, chars.len());
    if tokens.is_empty() {
        return Err(TokenizeError::EmptyInput);
    }
    Ok(tokens)
}

fn is_joiner(c: char) -> bool {
    matches!(c, '-' | '\'' | '\u{2019}')
}

fn next_is_alphanumeric(chars: &[char], i: usize) -> bool {
    chars.get(i + 1).is_some_and(|c| c.is_alphanumeric())
}

fn flush(tokens: &mut Vec<Token>, chars: &[char], start: &mut Option<usize>, end: usize) {
    if let Some(s) = start.take() {
        let text: String = chars[s..end].iter().collect();
        let kind = if text.chars().all(|c| c.is_ascii_digit()) {
            TokenKind::Number
        } else {
            TokenKind::Word
        };
        tokens.push(Token {
            text,
            start: s,
            end,
            kind,
        });
    }
}
