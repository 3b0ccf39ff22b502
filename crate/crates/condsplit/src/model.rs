//! Shared annotation model: the six-way label set, character-offset
//! clause spans, annotated sentences, and the splitter output record.
//!
//! Offsets throughout are Unicode scalar value (char) offsets into the
//! original sentence text, end-exclusive. Spans are never normalized on
//! storage; trailing-punctuation handling happens at the IOB and
//! evaluation layers.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Annotation category. CD, AC, CS and UA label clauses inside a
/// sentence; OC and NC label a whole sentence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    /// Clause describing a condition (CD).
    Condition,
    /// Clause describing an actionable result tied to a condition (AC).
    Action,
    /// Clause describing a non-actionable result (CS).
    Consequence,
    /// Sentence that is only a condition, with no resultant (OC).
    OnlyCondition,
    /// Sentence with no conditional logic (NC).
    NoCondition,
    /// Action clause with no associated condition in the sentence (UA).
    UnconditionalAction,
}

impl Label {
    /// All six labels in canonical order.
    pub const ALL: [Label; 6] = [
        Label::Condition,
        Label::Action,
        Label::Consequence,
        Label::OnlyCondition,
        Label::NoCondition,
        Label::UnconditionalAction,
    ];

    /// Two-letter code used in table headers.
    pub fn code(self) -> &'static str {
        match self {
            Label::Condition => "CD",
            Label::Action => "AC",
            Label::Consequence => "CS",
            Label::OnlyCondition => "OC",
            Label::NoCondition => "NC",
            Label::UnconditionalAction => "UA",
        }
    }

    /// True for labels that apply to a clause within a sentence
    /// (CD, AC, CS, UA); false for sentence-level labels (OC, NC).
    pub fn is_clause_level(self) -> bool {
        matches!(
            self,
            Label::Condition | Label::Action | Label::Consequence | Label::UnconditionalAction
        )
    }

    /// Complement of [`Label::is_clause_level`].
    pub fn is_sentence_level(self) -> bool {
        !self.is_clause_level()
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // These are the exact strings the annotation files use.
        let name = match self {
            Label::Condition => "Condition",
            Label::Action => "Action",
            Label::Consequence => "Consequence",
            Label::OnlyCondition => "Only-Condition",
            Label::NoCondition => "No Condition",
            Label::UnconditionalAction => "Unconditional-Action",
        };
        f.write_str(name)
    }
}

/// Error for unrecognized label strings.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown label: {0:?}")]
pub struct ParseLabelError(pub String);

impl FromStr for Label {
    type Err = ParseLabelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Condition" | "CD" => Ok(Label::Condition),
            "Action" | "AC" => Ok(Label::Action),
            "Consequence" | "CS" => Ok(Label::Consequence),
            "Only-Condition" | "OC" => Ok(Label::OnlyCondition),
            "No Condition" | "NC" => Ok(Label::NoCondition),
            "Unconditional-Action" | "UA" => Ok(Label::UnconditionalAction),
            other => Err(ParseLabelError(other.to_string())),
        }
    }
}

/// A labelled clause as character offsets over the owning sentence.
/// `start` is inclusive, `end` exclusive, both counted in Unicode
/// scalar values. Fields are public so that invalid spans can be built
/// and then reported by [`validate_sentence`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClauseSpan {
    pub start: usize,
    pub end: usize,
    pub label: Label,
}

impl ClauseSpan {
    pub fn new(start: usize, end: usize, label: Label) -> Self {
        ClauseSpan { start, end, label }
    }

    /// The text this span covers.
    pub fn slice(&self, text: &str) -> String {
        char_slice(text, self.start, self.end)
    }
}

/// Slice `text` by char offsets. Out-of-range offsets clamp to the end.
pub fn char_slice(text: &str, start: usize, end: usize) -> String {
    text.chars()
        .skip(start)
        .take(end.saturating_sub(start))
        .collect()
}

/// Number of Unicode scalar values in `text`.
pub fn char_len(text: &str) -> usize {
    text.chars().count()
}

/// One sentence with its annotations: either a list of clause spans or
/// a sentence-level label, never both.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotatedSentence {
    pub id: i64,
    pub text: String,
    pub spans: Vec<ClauseSpan>,
    pub sentence_label: Option<Label>,
}

impl AnnotatedSentence {
    pub fn new(id: i64, text: impl Into<String>, spans: Vec<ClauseSpan>) -> Self {
        AnnotatedSentence {
            id,
            text: text.into(),
            spans,
            sentence_label: None,
        }
    }

    pub fn with_sentence_label(id: i64, text: impl Into<String>, label: Label) -> Self {
        AnnotatedSentence {
            id,
            text: text.into(),
            spans: Vec::new(),
            sentence_label: Some(label),
        }
    }
}

/// A single invariant violation found by [`validate_sentence`].
/// Violations are data, not errors: a sentence with problems still
/// exists as a value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Span start/end outside `0..=char_len(text)` or start >= end.
    SpanOutOfBounds {
        index: usize,
        start: usize,
        end: usize,
    },
    /// Span carries a sentence-level label (OC or NC).
    SentenceLevelSpanLabel { index: usize, label: Label },
    /// Two spans overlap.
    Overlap { first: usize, second: usize },
    /// Spans are not sorted by start offset.
    Unsorted { first: usize, second: usize },
    /// No spans and no sentence-level label.
    MissingSentenceLabel,
    /// Both spans and a sentence-level label present.
    SentenceLabelWithSpans,
    /// The sentence-level slot holds a clause-level label.
    ClauseLevelSentenceLabel { label: Label },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SpanOutOfBounds { index, start, end } => write!(
                f,
                "span {index} [{start},{end}) is out of bounds for the sentence text"
            ),
            Violation::SentenceLevelSpanLabel { index, label } => write!(
                f,
                "span {index} carries sentence-level label {label}, expected a clause-level label"
            ),
            Violation::Overlap { first, second } => {
                write!(f, "spans {first} and {second} overlap")
            }
            Violation::Unsorted { first, second } => {
                write!(
                    f,
                    "spans {first} and {second} are not sorted by start offset"
                )
            }
            Violation::MissingSentenceLabel => {
                write!(f, "sentence has no spans and no sentence-level label")
            }
            Violation::SentenceLabelWithSpans => {
                write!(
                    f,
                    "sentence-level label set although clause spans are present"
                )
            }
            Violation::ClauseLevelSentenceLabel { label } => {
                write!(f, "sentence-level slot holds clause-level label {label}")
            }
        }
    }
}

/// Check every [`AnnotatedSentence`] invariant. Returns an empty list
/// iff the sentence is valid; each entry names the broken invariant and
/// the offending span indices.
pub fn validate_sentence(s: &AnnotatedSentence) -> Vec<Violation> {
    let mut violations = Vec::new();
    let len = char_len(&s.text);

    for (i, span) in s.spans.iter().enumerate() {
        if span.start >= span.end || span.end > len {
            violations.push(Violation::SpanOutOfBounds {
                index: i,
                start: span.start,
                end: span.end,
            });
        }
        if !span.label.is_clause_level() {
            violations.push(Violation::SentenceLevelSpanLabel {
                index: i,
                label: span.label,
            });
        }
    }

    for window in s.spans.windows(2).enumerate() {
        let (i, pair) = window;
        let (a, b) = (&pair[0], &pair[1]);
        if b.start < a.start {
            violations.push(Violation::Unsorted {
                first: i,
                second: i + 1,
            });
        } else if b.start < a.end {
            violations.push(Violation::Overlap {
                first: i,
                second: i + 1,
            });
        }
    }

    match (&s.sentence_label, s.spans.is_empty()) {
        (None, true) => violations.push(Violation::MissingSentenceLabel),
        (Some(_), false) => violations.push(Violation::SentenceLabelWithSpans),
        (Some(label), true) if label.is_clause_level() => {
            violations.push(Violation::ClauseLevelSentenceLabel { label: *label })
        }
        _ => {}
    }

    violations
}

/// The four sentence categories derived from a split: they are fully
/// determined by which clauses were found, so they are computed, not
/// stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SentenceClass {
    /// No conditional logic found.
    NoCondition,
    /// Condition with an Action resultant.
    ConditionAction,
    /// Condition with a Consequence resultant.
    ConditionConsequence,
    /// Condition with no resultant.
    OnlyCondition,
}

impl SentenceClass {
    pub fn code(self) -> &'static str {
        match self {
            SentenceClass::NoCondition => "NC",
            SentenceClass::ConditionAction => "CA",
            SentenceClass::ConditionConsequence => "CC",
            SentenceClass::OnlyCondition => "OC",
        }
    }
}

impl fmt::Display for SentenceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// End-to-end output of the rule splitter for one sentence: the
/// condition clause, the resultant clause with its category, and flags
/// for low-confidence labelling and multi-clause structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitResult {
    /// Condition clause (label CD) if one was found.
    pub condition: Option<ClauseSpan>,
    /// Resultant clause (label AC or CS) if one was linked.
    pub resultant: Option<ClauseSpan>,
    /// Resultant category was decided on weak cues only.
    pub low_confidence: bool,
    /// More than one condition or resultant candidate was detected;
    /// only the primary pair is extracted.
    pub multi_clause: bool,
}

impl SplitResult {
    /// A result carrying no clauses at all.
    pub fn no_condition() -> Self {
        SplitResult {
            condition: None,
            resultant: None,
            low_confidence: false,
            multi_clause: false,
        }
    }

    /// Derive the sentence category from the extracted clauses.
    pub fn sentence_class(&self) -> SentenceClass {
        match (&self.condition, &self.resultant) {
            (None, None) => SentenceClass::NoCondition,
            (Some(_), None) => SentenceClass::OnlyCondition,
            (_, Some(r)) if r.label == Label::Action => SentenceClass::ConditionAction,
            (_, Some(_)) => SentenceClass::ConditionConsequence,
        }
    }

    /// Render the result as an annotated sentence: clause spans sorted by
    /// position, or a sentence-level No-Condition label when no clauses
    /// were extracted.
    pub fn to_annotated(&self, id: i64, text: &str) -> AnnotatedSentence {
        let mut spans: Vec<ClauseSpan> = self
            .condition
            .iter()
            .chain(self.resultant.iter())
            .cloned()
            .collect();
        spans.sort_by_key(|s| (s.start, s.end));
        if spans.is_empty() {
            AnnotatedSentence::with_sentence_label(id, text, Label::NoCondition)
        } else {
            AnnotatedSentence::new(id, text, spans)
        }
    }
}
