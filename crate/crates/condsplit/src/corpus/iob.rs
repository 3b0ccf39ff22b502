//! IOB token tagging: B-X opens a span of label X, I-X continues it,
//! O is outside every span. File layout is the conventional two-column
//! form — `token<TAB>tag` lines with a blank line between sentences.
//!
//! Span-to-tag conversion follows token-level truth: a punctuation
//! token at the trailing edge of a span is emitted as O, so a span
//! annotated through a final period round-trips to the last word
//! token's end.

use super::CorpusError;
use crate::linguistics::{tokenize, Token, TokenKind};
use crate::model::{AnnotatedSentence, ClauseSpan, Label};
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

/// One token's tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IobTag {
    Outside,
    Begin(Label),
    Inside(Label),
}

impl IobTag {
    /// The label carried by B-/I- tags.
    pub fn label(self) -> Option<Label> {
        match self {
            IobTag::Outside => None,
            IobTag::Begin(l) | IobTag::Inside(l) => Some(l),
        }
    }
}

impl fmt::Display for IobTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IobTag::Outside => f.write_str("O"),
            IobTag::Begin(l) => write!(f, "B-{l}"),
            IobTag::Inside(l) => write!(f, "I-{l}"),
        }
    }
}

impl FromStr for IobTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "O" {
            return Ok(IobTag::Outside);
        }
        let (prefix, name) = s
            .split_once('-')
            .ok_or_else(|| format!("unknown tag {s:?}"))?;
        let label: Label = name.parse().map_err(|_| format!("unknown tag {s:?}"))?;
        if !label.is_clause_level() {
            return Err(format!("tag {s:?} uses a sentence-level label"));
        }
        match prefix {
            "B" => Ok(IobTag::Begin(label)),
            "I" => Ok(IobTag::Inside(label)),
            _ => Err(format!("unknown tag {s:?}")),
        }
    }
}

/// A tokenized sentence with one tag per token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IobSequence {
    pub tokens: Vec<Token>,
    pub tags: Vec<IobTag>,
}

impl IobSequence {
    /// Build a sequence, enforcing equal lengths and B/I legality.
    pub fn new(tokens: Vec<Token>, tags: Vec<IobTag>) -> Result<Self, CorpusError> {
        if tokens.len() != tags.len() {
            return Err(CorpusError::Line {
                line: 0,
                message: format!("{} tokens but {} tags", tokens.len(), tags.len()),
            });
        }
        check_transitions(&tags)?;
        Ok(IobSequence { tokens, tags })
    }

    /// Sentence text reconstructed by joining tokens with single
    /// spaces. Matches the token offsets produced by [`read_iob`].
    pub fn joined_text(&self) -> String {
        self.tokens
            .iter()
            .map(|t| t.text.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn check_transitions(tags: &[IobTag]) -> Result<(), CorpusError> {
    let mut prev = IobTag::Outside;
    for (index, &tag) in tags.iter().enumerate() {
        if let IobTag::Inside(label) = tag {
            let legal = matches!(prev, IobTag::Begin(p) | IobTag::Inside(p) if p == label);
            if !legal {
                return Err(CorpusError::IllegalTransition {
                    index,
                    prev: prev.to_string(),
                    tag: tag.to_string(),
                });
            }
        }
        prev = tag;
    }
    Ok(())
}

/// Convert an annotated sentence to tags over its tokens.
pub fn to_iob(sentence: &AnnotatedSentence) -> Result<IobSequence, CorpusError> {
    let tokens = tokenize(&sentence.text)?;
    let mut tags = vec![IobTag::Outside; tokens.len()];
    for span in &sentence.spans {
        let mut covered = Vec::new();
        for (i, token) in tokens.iter().enumerate() {
            let overlaps = token.start < span.end && token.end > span.start;
            if !overlaps {
                continue;
            }
            let inside = token.start >= span.start && token.end <= span.end;
            if !inside {
                return Err(CorpusError::TokenStraddlesSpan {
                    token: token.text.clone(),
                    token_start: token.start,
                    token_end: token.end,
                    span_start: span.start,
                    span_end: span.end,
                });
            }
            covered.push(i);
        }
        // Trailing punctuation inside the span stays O; the published
        // convention tags "expires I-Condition, . O" even though the
        // span's character end sits after the period.
        while let Some(&last) = covered.last() {
            if tokens[last].kind == TokenKind::Punctuation {
                covered.pop();
            } else {
                break;
            }
        }
        for (pos, &i) in covered.iter().enumerate() {
            tags[i] = if pos == 0 {
                IobTag::Begin(span.label)
            } else {
                IobTag::Inside(span.label)
            };
        }
    }
    IobSequence::new(tokens, tags)
}

/// Convert tags back to spans over `text`. Maximal B-X (I-X)* runs
/// become spans from the first token's start to the last token's end.
/// A sequence with no tagged tokens yields a sentence-level
/// No-Condition record, since zero spans alone are not a valid
/// annotation.
pub fn from_iob(seq: &IobSequence, text: &str) -> Result<AnnotatedSentence, CorpusError> {
    check_transitions(&seq.tags)?;
    if seq.tokens.len() != seq.tags.len() {
        return Err(CorpusError::Line {
            line: 0,
            message: format!("{} tokens but {} tags", seq.tokens.len(), seq.tags.len()),
        });
    }
    let mut spans: Vec<ClauseSpan> = Vec::new();
    let mut open: Option<(usize, usize, Label)> = None; // (first, last, label)
    for (i, &tag) in seq.tags.iter().enumerate() {
        match tag {
            IobTag::Outside => {
                if let Some((first, last, label)) = open.take() {
                    spans.push(ClauseSpan::new(
                        seq.tokens[first].start,
                        seq.tokens[last].end,
                        label,
                    ));
                }
            }
            IobTag::Begin(label) => {
                if let Some((first, last, l)) = open.take() {
                    spans.push(ClauseSpan::new(
                        seq.tokens[first].start,
                        seq.tokens[last].end,
                        l,
                    ));
                }
                open = Some((i, i, label));
            }
            IobTag::Inside(_) => {
                // Legality was checked; extend the open run.
                if let Some((_, last, _)) = open.as_mut() {
                    *last = i;
                }
            }
        }
    }
    if let Some((first, last, label)) = open {
        spans.push(ClauseSpan::new(
            seq.tokens[first].start,
            seq.tokens[last].end,
            label,
        ));
    }
    if spans.is_empty() {
        return Ok(AnnotatedSentence::with_sentence_label(
            0,
            text,
            Label::NoCondition,
        ));
    }
    Ok(AnnotatedSentence::new(0, text, spans))
}

/// Write sequences in two-column form with blank-line separators.
pub fn write_iob<W: Write>(sequences: &[IobSequence], mut writer: W) -> std::io::Result<()> {
    for seq in sequences {
        for (token, tag) in seq.tokens.iter().zip(&seq.tags) {
            writeln!(writer, "{}\t{}", token.text, tag)?;
        }
        writeln!(writer)?;
    }
    Ok(())
}

/// Read two-column IOB. Token offsets are assigned as if tokens were
/// joined by single spaces (see [`IobSequence::joined_text`]).
pub fn read_iob<R: BufRead>(reader: R) -> Result<Vec<IobSequence>, CorpusError> {
    let mut sequences = Vec::new();
    let mut tokens: Vec<Token> = Vec::new();
    let mut tags: Vec<IobTag> = Vec::new();
    let mut cursor = 0usize;
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        if line.trim().is_empty() {
            flush_sentence(&mut sequences, &mut tokens, &mut tags, &mut cursor, line_no)?;
            continue;
        }
        let (text, tag) = line.split_once('\t').ok_or_else(|| CorpusError::Line {
            line: line_no,
            message: "expected token<TAB>tag".to_string(),
        })?;
        let tag: IobTag = tag.trim().parse().map_err(|e| CorpusError::Line {
            line: line_no,
            message: e,
        })?;
        if let IobTag::Inside(label) = tag {
            let legal =
                matches!(tags.last(), Some(IobTag::Begin(p) | IobTag::Inside(p)) if *p == label);
            if !legal {
                return Err(CorpusError::IllegalTransition {
                    index: tags.len(),
                    prev: tags
                        .last()
                        .map_or_else(|| "O".to_string(), |t| t.to_string()),
                    tag: tag.to_string(),
                }
                .at_line(line_no));
            }
        }
        let start = cursor;
        let end = start + text.chars().count();
        cursor = end + 1;
        tokens.push(Token {
            text: text.to_string(),
            start,
            end,
            kind: classify_token(text),
        });
        tags.push(tag);
    }
    let last_line = 0; // errors here would already have surfaced above
    flush_sentence(
        &mut sequences,
        &mut tokens,
        &mut tags,
        &mut cursor,
        last_line,
    )?;
    Ok(sequences)
}

fn flush_sentence(
    sequences: &mut Vec<IobSequence>,
    tokens: &mut Vec<Token>,
    tags: &mut Vec<IobTag>,
    cursor: &mut usize,
    line_no: usize,
) -> Result<(), CorpusError> {
    if tokens.is_empty() {
        return Ok(());
    }
    let seq = IobSequence::new(std::mem::take(tokens), std::mem::take(tags))
        .map_err(|e| e.at_line(line_no))?;
    sequences.push(seq);
    *cursor = 0;
    Ok(())
}

fn classify_token(text: &str) -> TokenKind {
    if !text.is_empty() && text.chars().all(|c| c.is_ascii_digit()) {
        TokenKind::Number
    } else if text.chars().count() == 1 && !text.chars().next().unwrap().is_alphanumeric() {
        TokenKind::Punctuation
    } else {
        TokenKind::Word
    }
}
