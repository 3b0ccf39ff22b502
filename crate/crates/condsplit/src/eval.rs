//! Span-level Exact Match evaluation: a predicted clause counts only if
//! its label and both boundaries match a gold clause, after trimming
//! trailing punctuation and whitespace from both sides so the
//! span-vs-token edge convention can never flip a score. Reports
//! per-label precision/recall/F1 plus a micro-averaged pool.

use crate::model::{char_slice, AnnotatedSentence, ClauseSpan, Label};
use std::collections::BTreeMap;
use thiserror::Error;

/// Labels scored by default: the three main clause categories.
pub const DEFAULT_EVAL_LABELS: [Label; 3] = [Label::Condition, Label::Action, Label::Consequence];

/// How to treat sentences present on only one side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IdAlignment {
    /// Abort when gold and prediction ids do not line up.
    #[default]
    Strict,
    /// Score the id intersection and report the leftovers.
    Lenient,
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error(
        "sentence ids do not align: {gold_only:?} only in gold, {pred_only:?} only in predictions"
    )]
    IdMismatch {
        gold_only: Vec<i64>,
        pred_only: Vec<i64>,
    },
    #[error("duplicate sentence id {0}")]
    DuplicateId(i64),
}

/// Scores for one label (or the pooled micro row). Percentages are in
/// [0, 100].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LabelScore {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    /// Number of gold spans with this label.
    pub support: usize,
    pub true_positives: usize,
    pub false_positives: usize,
    pub false_negatives: usize,
}

impl LabelScore {
    fn from_counts(tp: usize, fp: usize, fn_count: usize) -> Self {
        let ratio = |num: usize, den: usize| {
            if den == 0 {
                0.0
            } else {
                100.0 * num as f64 / den as f64
            }
        };
        let precision = ratio(tp, tp + fp);
        let recall = ratio(tp, tp + fn_count);
        let f1 = if precision + recall > 0.0 {
            2.0 * precision * recall / (precision + recall)
        } else {
            0.0
        };
        LabelScore {
            precision,
            recall,
            f1,
            support: tp + fn_count,
            true_positives: tp,
            false_positives: fp,
            false_negatives: fn_count,
        }
    }
}

/// Exact-match report: one row per requested label, in request order,
/// plus the micro average over the pooled counts.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub per_label: Vec<(Label, LabelScore)>,
    pub micro: LabelScore,
}

impl EvalReport {
    pub fn score_for(&self, label: Label) -> Option<&LabelScore> {
        self.per_label
            .iter()
            .find(|(l, _)| *l == label)
            .map(|(_, s)| s)
    }
}

/// Report plus the sentence ids that could not be aligned (lenient
/// mode only; strict mode errors instead).
#[derive(Debug, Clone, PartialEq)]
pub struct ScoredReport {
    pub report: EvalReport,
    pub gold_only: Vec<i64>,
    pub pred_only: Vec<i64>,
}

/// A span key after normalization: trailing characters that are not
/// alphanumeric (punctuation, whitespace) are trimmed from the end.
fn normalized_key(text: &str, span: &ClauseSpan) -> (usize, usize, Label) {
    let mut end = span.end;
    let chars: Vec<char> = char_slice(text, span.start, span.end).chars().collect();
    let mut len = chars.len();
    while len > 0 && !chars[len - 1].is_alphanumeric() {
        len -= 1;
        end -= 1;
    }
    (span.start, end, span.label)
}

fn index_by_id(
    sentences: &[AnnotatedSentence],
) -> Result<BTreeMap<i64, &AnnotatedSentence>, EvalError> {
    let mut map = BTreeMap::new();
    for s in sentences {
        if map.insert(s.id, s).is_some() {
            return Err(EvalError::DuplicateId(s.id));
        }
    }
    Ok(map)
}

/// Score predictions against gold annotations.
pub fn exact_match_score(
    gold: &[AnnotatedSentence],
    pred: &[AnnotatedSentence],
    labels: &[Label],
    alignment: IdAlignment,
) -> Result<ScoredReport, EvalError> {
    let gold_map = index_by_id(gold)?;
    let pred_map = index_by_id(pred)?;
    let gold_only: Vec<i64> = gold_map
        .keys()
        .filter(|id| !pred_map.contains_key(id))
        .copied()
        .collect();
    let pred_only: Vec<i64> = pred_map
        .keys()
        .filter(|id| !gold_map.contains_key(id))
        .copied()
        .collect();
    if alignment == IdAlignment::Strict && (!gold_only.is_empty() || !pred_only.is_empty()) {
        return Err(EvalError::IdMismatch {
            gold_only,
            pred_only,
        });
    }

    let mut tally: BTreeMap<Label, (usize, usize, usize)> = BTreeMap::new(); // (tp, fp, fn)
    for label in labels {
        tally.insert(*label, (0, 0, 0));
    }
    for (id, gold_sentence) in &gold_map {
        let Some(pred_sentence) = pred_map.get(id) else {
            continue;
        };
        let mut gold_keys: Vec<(usize, usize, Label)> = gold_sentence
            .spans
            .iter()
            .filter(|s| labels.contains(&s.label))
            .map(|s| normalized_key(&gold_sentence.text, s))
            .collect();
        for pred_span in pred_sentence
            .spans
            .iter()
            .filter(|s| labels.contains(&s.label))
        {
            let key = normalized_key(&pred_sentence.text, pred_span);
            let entry = tally.get_mut(&pred_span.label).expect("label tallied");
            if let Some(pos) = gold_keys.iter().position(|k| *k == key) {
                gold_keys.swap_remove(pos);
                entry.0 += 1;
            } else {
                entry.1 += 1;
            }
        }
        for (_, _, label) in gold_keys {
            tally.get_mut(&label).expect("label tallied").2 += 1;
        }
    }

    let per_label: Vec<(Label, LabelScore)> = labels
        .iter()
        .map(|label| {
            let (tp, fp, fn_count) = tally[label];
            (*label, LabelScore::from_counts(tp, fp, fn_count))
        })
        .collect();
    let pooled = tally
        .values()
        .fold((0, 0, 0), |acc, t| (acc.0 + t.0, acc.1 + t.1, acc.2 + t.2));
    let micro = LabelScore::from_counts(pooled.0, pooled.1, pooled.2);
    Ok(ScoredReport {
        report: EvalReport { per_label, micro },
        gold_only,
        pred_only,
    })
}

/// Kinds of disagreement between a gold and a predicted annotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MismatchKind {
    /// Gold span with no prediction anywhere near it.
    MissingSpan,
    /// Predicted span with no gold counterpart.
    SpuriousSpan,
    /// Same label, overlapping but unequal boundaries.
    BoundaryError,
    /// Same boundaries, different label (e.g. Action vs Consequence,
    /// or Action vs Unconditional-Action).
    LabelConfusion { gold: Label, pred: Label },
}

/// One scoring disagreement, tied to its sentence.
#[derive(Debug, Clone, PartialEq)]
pub struct Mismatch {
    pub sentence_id: i64,
    pub kind: MismatchKind,
    pub gold_span: Option<ClauseSpan>,
    pub pred_span: Option<ClauseSpan>,
}

/// Classify every disagreement over the clause-level labels. Exact
/// matches are consumed first; each remaining gold span is explained by
/// the best unused prediction (same boundaries → label confusion, same
/// label with overlap → boundary error, otherwise missing), and
/// leftover predictions are spurious.
pub fn error_breakdown(gold: &[AnnotatedSentence], pred: &[AnnotatedSentence]) -> Vec<Mismatch> {
    let clause_labels: Vec<Label> = Label::ALL
        .into_iter()
        .filter(|l| l.is_clause_level())
        .collect();
    let gold_map = index_by_id(gold).unwrap_or_default();
    let pred_map = index_by_id(pred).unwrap_or_default();
    let mut mismatches = Vec::new();
    for (id, gold_sentence) in &gold_map {
        let empty = AnnotatedSentence::with_sentence_label(*id, " ", Label::NoCondition);
        let pred_sentence = pred_map.get(id).copied().unwrap_or(&empty);
        let mut gold_spans: Vec<&ClauseSpan> = gold_sentence
            .spans
            .iter()
            .filter(|s| clause_labels.contains(&s.label))
            .collect();
        let mut pred_spans: Vec<&ClauseSpan> = pred_sentence
            .spans
            .iter()
            .filter(|s| clause_labels.contains(&s.label))
            .collect();

        // Pass 1: drop exact matches.
        pred_spans.retain(|p| {
            let key = normalized_key(&pred_sentence.text, p);
            match gold_spans
                .iter()
                .position(|g| normalized_key(&gold_sentence.text, g) == key)
            {
                Some(pos) => {
                    gold_spans.remove(pos);
                    false
                }
                None => true,
            }
        });

        // Pass 2: explain each unmatched gold span.
        for g in gold_spans {
            let g_key = normalized_key(&gold_sentence.text, g);
            let confusion = pred_spans.iter().position(|p| {
                let p_key = normalized_key(&pred_sentence.text, p);
                (p_key.0, p_key.1) == (g_key.0, g_key.1) && p.label != g.label
            });
            if let Some(pos) = confusion {
                let p = pred_spans.remove(pos);
                mismatches.push(Mismatch {
                    sentence_id: *id,
                    kind: MismatchKind::LabelConfusion {
                        gold: g.label,
                        pred: p.label,
                    },
                    gold_span: Some(*g),
                    pred_span: Some(*p),
                });
                continue;
            }
            let boundary = pred_spans
                .iter()
                .position(|p| p.label == g.label && p.start < g.end && g.start < p.end);
            if let Some(pos) = boundary {
                let p = pred_spans.remove(pos);
                mismatches.push(Mismatch {
                    sentence_id: *id,
                    kind: MismatchKind::BoundaryError,
                    gold_span: Some(*g),
                    pred_span: Some(*p),
                });
                continue;
            }
            mismatches.push(Mismatch {
                sentence_id: *id,
                kind: MismatchKind::MissingSpan,
                gold_span: Some(*g),
                pred_span: None,
            });
        }

        // Pass 3: whatever predictions remain have no gold counterpart.
        for p in pred_spans {
            mismatches.push(Mismatch {
                sentence_id: *id,
                kind: MismatchKind::SpuriousSpan,
                gold_span: None,
                pred_span: Some(*p),
            });
        }
    }
    mismatches
}

fn round2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

/// Aligned text table in the conventional score layout: one row per
/// label plus an "Average (micro)" row, percentages to two decimals.
pub fn render_report_table(report: &EvalReport) -> String {
    let name_width = report
        .per_label
        .iter()
        .map(|(l, _)| l.to_string().len())
        .chain(["Average (micro)".len()])
        .max()
        .unwrap_or(10);
    let mut out = String::new();
    out.push_str(&format!(
        "{:<name_width$}  {:>8}  {:>8}  {:>8}  {:>8}\n",
        "", "P", "R", "F1", "support"
    ));
    let mut rows: Vec<(String, &LabelScore)> = report
        .per_label
        .iter()
        .map(|(l, s)| (l.to_string(), s))
        .collect();
    rows.push(("Average (micro)".to_string(), &report.micro));
    for (name, score) in rows {
        out.push_str(&format!(
            "{name:<name_width$}  {:>8.2}  {:>8.2}  {:>8.2}  {:>8}\n",
            score.precision, score.recall, score.f1, score.support
        ));
    }
    out
}

/// Machine-readable report with percentages rounded to two decimals
/// and the raw counts alongside.
pub fn render_report_json(report: &EvalReport) -> serde_json::Value {
    let score_json = |s: &LabelScore| {
        serde_json::json!({
            "precision": round2(s.precision),
            "recall": round2(s.recall),
            "f1": round2(s.f1),
            "support": s.support,
            "tp": s.true_positives,
            "fp": s.false_positives,
            "fn": s.false_negatives,
        })
    };
    let mut per_label = serde_json::Map::new();
    for (label, score) in &report.per_label {
        per_label.insert(label.to_string(), score_json(score));
    }
    serde_json::json!({ "per_label": per_label, "micro": score_json(&report.micro) })
}
