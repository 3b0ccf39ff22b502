//! Shared helpers for the integration tests: golden-fixture loading,
//! seeded fuzz generators, and an independent brute-force scorer used
//! as the oracle for the fast evaluation implementation.
#![allow(dead_code)]

use condsplit::corpus::{read_doccano, ParseMode};
use condsplit::model::{char_len, AnnotatedSentence, ClauseSpan, Label, SplitResult};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::io::BufReader;
use std::path::{Path, PathBuf};

pub fn fixture_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/golden.jsonl")
}

/// Golden sentence plus its subset tag ("standard", "extended", "hard").
pub struct GoldenSentence {
    pub subset: String,
    pub sentence: AnnotatedSentence,
}

/// Load the shipped reference corpus; panics on any defect since the
/// fixture is part of the test contract.
pub fn load_golden() -> Vec<GoldenSentence> {
    let raw = std::fs::read_to_string(fixture_path()).expect("golden fixture readable");
    let report = read_doccano(BufReader::new(raw.as_bytes()), ParseMode::Strict)
        .expect("golden fixture parses strictly");
    let subsets: Vec<String> = raw
        .lines()
        .filter(|line| !line.trim().is_empty())
        .map(|line| {
            let value: serde_json::Value = serde_json::from_str(line).expect("fixture line");
            value["subset"]
                .as_str()
                .expect("subset field present")
                .to_string()
        })
        .collect();
    assert_eq!(subsets.len(), report.sentences.len());
    subsets
        .into_iter()
        .zip(report.sentences)
        .map(|(subset, sentence)| GoldenSentence { subset, sentence })
        .collect()
}

pub fn golden_subset(name: &str) -> Vec<AnnotatedSentence> {
    load_golden()
        .into_iter()
        .filter(|g| g.subset == name)
        .map(|g| g.sentence)
        .collect()
}

const WORDS: &[&str] = &[
    "check", "the", "invoice", "number", "before", "payment", "system", "records", "every",
    "update", "vendor", "sends", "report", "during", "review", "team", "approves", "request",
    "manager", "signs", "form", "within", "two", "days", "order", "status", "changes", "alert",
];

fn random_token(rng: &mut ChaCha8Rng) -> String {
    match rng.random_range(0..10) {
        0 => rng.random_range(1..999u32).to_string(),
        1 => [",", ".", ";", ":"][rng.random_range(0..4)].to_string(),
        _ => WORDS[rng.random_range(0..WORDS.len())].to_string(),
    }
}

fn is_alnum_token(token: &str) -> bool {
    token.chars().all(|c| c.is_alphanumeric())
}

/// Random sentence with token-aligned spans that never end on a
/// punctuation token, so IOB conversion is lossless. Texts are built
/// by single-space joining, which keeps character offsets equal to the
/// space-joined layout the IOB reader reconstructs.
pub fn fuzz_sentence(rng: &mut ChaCha8Rng, id: i64) -> AnnotatedSentence {
    let count = rng.random_range(3..=16);
    let tokens: Vec<String> = (0..count).map(|_| random_token(rng)).collect();
    // Character offset of each token in the joined text.
    let mut offsets = Vec::with_capacity(tokens.len());
    let mut cursor = 0usize;
    for token in &tokens {
        let len = token.chars().count();
        offsets.push((cursor, cursor + len));
        cursor += len + 1;
    }
    let text = tokens.join(" ");

    // Pick up to three non-overlapping token runs ending on a word.
    let mut spans: Vec<ClauseSpan> = Vec::new();
    let mut next_free = 0usize;
    let clause_labels = [
        Label::Condition,
        Label::Action,
        Label::Consequence,
        Label::UnconditionalAction,
    ];
    for _ in 0..rng.random_range(0..=3) {
        if next_free >= tokens.len() {
            break;
        }
        let start_tok = rng.random_range(next_free..tokens.len());
        let max_end = (start_tok + rng.random_range(1..=4)).min(tokens.len());
        // Walk back from the run end until it finishes on a word/number.
        let mut end_tok = max_end;
        while end_tok > start_tok && !is_alnum_token(&tokens[end_tok - 1]) {
            end_tok -= 1;
        }
        if end_tok == start_tok {
            continue;
        }
        spans.push(ClauseSpan::new(
            offsets[start_tok].0,
            offsets[end_tok - 1].1,
            clause_labels[rng.random_range(0..clause_labels.len())],
        ));
        next_free = end_tok;
    }

    if spans.is_empty() {
        let label = if rng.random_bool(0.5) {
            Label::NoCondition
        } else {
            Label::OnlyCondition
        };
        AnnotatedSentence::with_sentence_label(id, &text, label)
    } else {
        AnnotatedSentence::new(id, &text, spans)
    }
}

/// Derive predictions for a gold corpus by mutating spans: keep, drop,
/// relabel, move a boundary, or add a spurious span. Outputs stay
/// valid (sorted, non-overlapping, in bounds).
pub fn mutate_predictions(
    rng: &mut ChaCha8Rng,
    gold: &[AnnotatedSentence],
) -> Vec<AnnotatedSentence> {
    gold.iter()
        .map(|sentence| {
            let len = char_len(&sentence.text);
            let mut spans: Vec<ClauseSpan> = Vec::new();
            for (index, span) in sentence.spans.iter().enumerate() {
                let next_start = sentence
                    .spans
                    .get(index + 1)
                    .map(|s| s.start)
                    .unwrap_or(len);
                match rng.random_range(0..10) {
                    // Dropped span (missing prediction).
                    0 | 1 => {}
                    // Label confusion among the clause labels.
                    2 => {
                        let labels = [Label::Condition, Label::Action, Label::Consequence];
                        spans.push(ClauseSpan::new(
                            span.start,
                            span.end,
                            labels[rng.random_range(0..labels.len())],
                        ));
                    }
                    // Boundary shift: pull the end in or push it out,
                    // staying clear of the next span.
                    3 | 4 => {
                        let max_end = next_start.max(span.start + 1);
                        let end =
                            rng.random_range(span.start + 1..=max_end.min(len).max(span.start + 1));
                        spans.push(ClauseSpan::new(span.start, end, span.label));
                    }
                    _ => spans.push(*span),
                }
            }
            // Occasionally invent a span in the tail gap.
            let tail = spans.last().map(|s| s.end).unwrap_or(0);
            if rng.random_bool(0.15) && tail + 2 < len {
                let start = rng.random_range(tail..len - 1);
                let end = rng.random_range(start + 1..=len);
                spans.push(ClauseSpan::new(start, end, Label::Condition));
            }
            if spans.is_empty() {
                AnnotatedSentence::with_sentence_label(
                    sentence.id,
                    &sentence.text,
                    Label::NoCondition,
                )
            } else {
                AnnotatedSentence::new(sentence.id, &sentence.text, spans)
            }
        })
        .collect()
}

/// Independent scorer used as the oracle: enumerate every gold and
/// predicted span, greedily pair identical (start, trimmed end, label)
/// keys per sentence, and count the leftovers.
pub struct BruteCounts {
    pub tp: usize,
    pub fp: usize,
    pub fn_: usize,
}

fn trimmed_end(text: &str, start: usize, end: usize) -> usize {
    let slice: Vec<char> = text
        .chars()
        .skip(start)
        .take(end.saturating_sub(start))
        .collect();
    let mut keep = slice.len();
    while keep > 0 && !slice[keep - 1].is_alphanumeric() {
        keep -= 1;
    }
    start + keep
}

pub fn brute_force_counts(
    gold: &[AnnotatedSentence],
    pred: &[AnnotatedSentence],
    label: Label,
) -> BruteCounts {
    let mut tp = 0;
    let mut fp = 0;
    let mut fn_ = 0;
    let pred_by_id: std::collections::HashMap<i64, &AnnotatedSentence> =
        pred.iter().map(|s| (s.id, s)).collect();
    let gold_ids: std::collections::HashSet<i64> = gold.iter().map(|s| s.id).collect();
    for sentence in gold {
        let gold_keys: Vec<(usize, usize)> = sentence
            .spans
            .iter()
            .filter(|s| s.label == label)
            .map(|s| (s.start, trimmed_end(&sentence.text, s.start, s.end)))
            .collect();
        let pred_keys: Vec<(usize, usize)> = pred_by_id
            .get(&sentence.id)
            .map(|p| {
                p.spans
                    .iter()
                    .filter(|s| s.label == label)
                    .map(|s| (s.start, trimmed_end(&p.text, s.start, s.end)))
                    .collect()
            })
            .unwrap_or_default();
        let mut used = vec![false; pred_keys.len()];
        for key in &gold_keys {
            match pred_keys
                .iter()
                .enumerate()
                .position(|(i, p)| !used[i] && p == key)
            {
                Some(i) => {
                    used[i] = true;
                    tp += 1;
                }
                None => fn_ += 1,
            }
        }
        fp += used.iter().filter(|u| !**u).count();
    }
    // Predictions for sentences absent from gold are ignored, matching
    // lenient alignment.
    let _ = gold_ids;
    BruteCounts { tp, fp, fn_ }
}

pub fn percent(numerator: usize, denominator: usize) -> f64 {
    if denominator == 0 {
        0.0
    } else {
        100.0 * numerator as f64 / denominator as f64
    }
}

pub fn f1_of(p: f64, r: f64) -> f64 {
    if p + r == 0.0 {
        0.0
    } else {
        2.0 * p * r / (p + r)
    }
}

/// Random split results for graph fuzzing: every sentence is one of
/// the four sentence classes with well-formed spans.
pub fn fuzz_split_results(rng: &mut ChaCha8Rng, sentences: usize) -> Vec<(String, SplitResult)> {
    (0..sentences)
        .map(|_| {
            let count = rng.random_range(4..=10);
            let tokens: Vec<String> = (0..count)
                .map(|_| WORDS[rng.random_range(0..WORDS.len())].to_string())
                .collect();
            let text = tokens.join(" ");
            let len = char_len(&text);
            // A boundary at some space between tokens.
            let cut_tok = rng.random_range(1..count);
            let cut = tokens[..cut_tok]
                .iter()
                .map(|t| t.chars().count() + 1)
                .sum::<usize>()
                - 1;
            let condition = ClauseSpan::new(0, cut, Label::Condition);
            match rng.random_range(0..4) {
                0 => (text, SplitResult::no_condition()),
                1 => (
                    text,
                    SplitResult {
                        condition: Some(condition),
                        resultant: None,
                        low_confidence: false,
                        multi_clause: false,
                    },
                ),
                n => {
                    let label = if n == 2 {
                        Label::Action
                    } else {
                        Label::Consequence
                    };
                    let resultant = ClauseSpan::new(cut + 1, len, label);
                    (
                        text,
                        SplitResult {
                            condition: Some(condition),
                            resultant: Some(resultant),
                            low_confidence: rng.random_bool(0.2),
                            multi_clause: rng.random_bool(0.2),
                        },
                    )
                }
            }
        })
        .collect()
}
