//! Rule-based conditional sentence splitting as a five-stage pipeline:
//!
//! 1. scope — locate the condition clause from an indicator word,
//! 2. predicate form — make sure the clause has real content,
//! 3. candidates — segment the rest of the sentence into clauses,
//! 4. resultant selection — link the clause the condition governs,
//! 5. resultant labeling — categorize it as Action or Consequence.
//!
//! Every fired rule leaves a [`RuleTrace`] so a decision can be audited
//! after the fact.

mod extended;

use crate::linguistics::{
    detect_imperative, detect_obligation, extract_features, tokenize, IndicatorKind, Lexicons,
    Token, TokenFeatures, TokenKind, TokenizeError,
};
use crate::model::{char_slice, ClauseSpan, Label, SplitResult};
use std::fmt;
use std::ops::Range;

/// Pipeline stage a rule belongs to. Ordered: traces must never move
/// backwards through the pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum RuleStage {
    Scope,
    PredicateForm,
    Candidates,
    ResultantSelection,
    ResultantLabeling,
}

impl RuleStage {
    pub fn name(self) -> &'static str {
        match self {
            RuleStage::Scope => "scope",
            RuleStage::PredicateForm => "predicate_form",
            RuleStage::Candidates => "candidates",
            RuleStage::ResultantSelection => "resultant_selection",
            RuleStage::ResultantLabeling => "resultant_labeling",
        }
    }
}

impl fmt::Display for RuleStage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Record of one fired rule: which stage, which rule, which tokens it
/// looked at, and a human-readable note (usually the clause text).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleTrace {
    pub stage: RuleStage,
    pub rule_id: String,
    pub token_range: Range<usize>,
    pub note: String,
}

impl RuleTrace {
    fn new(
        stage: RuleStage,
        rule_id: &str,
        token_range: Range<usize>,
        note: impl Into<String>,
    ) -> Self {
        RuleTrace {
            stage,
            rule_id: rule_id.to_string(),
            token_range,
            note: note.into(),
        }
    }
}

/// What to do when the resultant carries only weak action cues ("can",
/// "might", ...): keep it a Consequence (precise, the default) or
/// promote it to an Action (recall-oriented). Either way the result is
/// flagged low-confidence.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum WeakCuePolicy {
    #[default]
    Consequence,
    Action,
}

/// Tunable behavior of the splitter.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SplitterOptions {
    /// Enable pattern rules for non-standard conditionals (imperative
    /// plus "and", question plus answer, "For ..." phrases). Off by
    /// default: these trade precision for coverage.
    pub extended_patterns: bool,
    pub weak_cue_policy: WeakCuePolicy,
}

/// The rule-based splitter. Immutable after construction and safe to
/// share across threads.
#[derive(Debug, Clone)]
pub struct Splitter {
    lexicons: Lexicons,
    options: SplitterOptions,
}

impl Default for Splitter {
    fn default() -> Self {
        Splitter::new(SplitterOptions::default())
    }
}

/// Words trimmed from candidate clause edges alongside punctuation.
const EDGE_CONJUNCTIONS: [&str; 3] = ["and", "or", "but"];

impl Splitter {
    /// Splitter with the embedded lexicons.
    pub fn new(options: SplitterOptions) -> Self {
        Splitter {
            lexicons: Lexicons::default(),
            options,
        }
    }

    /// Splitter with caller-supplied lexicons (e.g. loaded from a
    /// lexicon directory).
    pub fn with_lexicons(options: SplitterOptions, lexicons: Lexicons) -> Self {
        Splitter { lexicons, options }
    }

    pub fn lexicons(&self) -> &Lexicons {
        &self.lexicons
    }

    pub fn options(&self) -> &SplitterOptions {
        &self.options
    }

    /// Is the sentence in conditional form? Equivalent to running the
    /// full pipeline and checking for a non-NC class, which keeps the
    /// two views consistent by construction.
    pub fn classify_conditional(&self, sentence: &str) -> Result<bool, TokenizeError> {
        let (result, _) = self.split(sentence)?;
        Ok(result.condition.is_some())
    }

    /// Run the five-stage pipeline on one sentence.
    pub fn split(&self, sentence: &str) -> Result<(SplitResult, Vec<RuleTrace>), TokenizeError> {
        let tokens = tokenize(sentence)?;
        let features = extract_features(&tokens, &self.lexicons);
        let mut traces = Vec::new();

        // Stage 1: condition scope.
        let mut scope_rule = "scope.indicator";
        let mut scope = find_condition_scope(&tokens, &features);
        if scope.is_none() && self.options.extended_patterns {
            if let Some((range, rule)) =
                extended::extended_condition_scope(&tokens, &features, &self.lexicons)
            {
                scope = Some(range);
                scope_rule = rule;
            }
        }
        let Some(condition) = scope else {
            return Ok((SplitResult::no_condition(), traces));
        };
        traces.push(RuleTrace::new(
            RuleStage::Scope,
            scope_rule,
            condition.clone(),
            clause_text(sentence, &tokens, &condition),
        ));

        // Back-referencing markers ("otherwise") point at a condition in
        // an earlier sentence: keep the marker as the condition clause
        // and stop — there is nothing to link within this sentence.
        let indicator_kind = features[condition.start].indicator_kind;
        if indicator_kind == Some(IndicatorKind::DiscourseMarker) {
            let marker = condition.start..condition.start + features[condition.start].indicator_len;
            traces.push(RuleTrace::new(
                RuleStage::PredicateForm,
                "predicate_form.discourse_marker",
                marker.clone(),
                "back-reference to a prior sentence; only-condition",
            ));
            let result = SplitResult {
                condition: Some(token_span(&tokens, &marker, Label::Condition)),
                resultant: None,
                low_confidence: false,
                multi_clause: false,
            };
            return Ok((result, traces));
        }

        // Stage 2: predicate form.
        if !self.check_predicate_form(&tokens, &condition) {
            traces.push(RuleTrace::new(
                RuleStage::PredicateForm,
                "predicate_form.reject",
                condition.clone(),
                "bare fragment or excluded fixed phrase; not conditional",
            ));
            return Ok((SplitResult::no_condition(), traces));
        }
        traces.push(RuleTrace::new(
            RuleStage::PredicateForm,
            "predicate_form.accept",
            condition.clone(),
            "condition clause has a predicate",
        ));

        // Stage 3: resultant candidates.
        let (candidates, extra_conditions) = candidates_with_extras(&tokens, &features, &condition);
        for candidate in &candidates {
            traces.push(RuleTrace::new(
                RuleStage::Candidates,
                "candidates.segment",
                candidate.clone(),
                clause_text(sentence, &tokens, candidate),
            ));
        }

        // Stage 4: resultant selection.
        let (selected, mut multi_clause) = select_resultant(&candidates, &condition);
        multi_clause = multi_clause || extra_conditions > 0;
        let Some(resultant) = selected else {
            traces.push(RuleTrace::new(
                RuleStage::ResultantSelection,
                "resultant_selection.none",
                condition.clone(),
                "no candidate clause; only-condition",
            ));
            let result = SplitResult {
                condition: Some(token_span(&tokens, &condition, Label::Condition)),
                resultant: None,
                low_confidence: false,
                multi_clause,
            };
            return Ok((result, traces));
        };
        let direction = if resultant.start >= condition.end {
            "resultant_selection.following"
        } else {
            "resultant_selection.preceding"
        };
        traces.push(RuleTrace::new(
            RuleStage::ResultantSelection,
            direction,
            resultant.clone(),
            clause_text(sentence, &tokens, &resultant),
        ));
        // A clause before the condition that lost out to a following
        // resultant is likely an unconditional action; it is left
        // unlinked rather than guessed at.
        if resultant.start >= condition.end {
            if let Some(preceding) = candidates.iter().find(|c| c.end <= condition.start) {
                traces.push(RuleTrace::new(
                    RuleStage::ResultantSelection,
                    "resultant_selection.unlinked_preceding",
                    preceding.clone(),
                    "clause before the condition left unlinked (possible unconditional action)",
                ));
            }
        }

        // Stage 5: resultant labeling.
        let (label, low_confidence, label_rule) = self.label_with_rule(&tokens, &resultant);
        traces.push(RuleTrace::new(
            RuleStage::ResultantLabeling,
            label_rule,
            resultant.clone(),
            format!("{label}"),
        ));

        let result = SplitResult {
            condition: Some(token_span(&tokens, &condition, Label::Condition)),
            resultant: Some(token_span(&tokens, &resultant, label)),
            low_confidence,
            multi_clause,
        };
        Ok((result, traces))
    }

    /// Stage 2: does the condition clause have a predicate? Rejects
    /// indicator-only fragments ("if.") and clauses that are exactly an
    /// excluded fixed phrase ("if possible").
    pub fn check_predicate_form(&self, tokens: &[Token], condition: &Range<usize>) -> bool {
        let lowered: Vec<String> = tokens.iter().map(Token::lower).collect();
        let indicator_len = self
            .lexicons
            .subordinators
            .match_at(&lowered, condition.start)
            .or_else(|| {
                self.lexicons
                    .negative_subordinators
                    .match_at(&lowered, condition.start)
            })
            .unwrap_or(1);
        let body_start = (condition.start + indicator_len).min(condition.end);
        let has_word = tokens[body_start..condition.end]
            .iter()
            .any(|t| t.kind != TokenKind::Punctuation);
        if !has_word {
            return false;
        }
        // Exclusion phrases normally never reach this stage; the one way
        // in is a clause cut to exactly the phrase by a "then" boundary
        // ("if possible then restart"), caught here.
        let clause_words: Vec<String> = tokens[condition.clone()]
            .iter()
            .filter(|t| t.kind != TokenKind::Punctuation)
            .map(Token::lower)
            .collect();
        let phrase = clause_words.join(" ");
        !self.lexicons.exclusions.entries().contains(&phrase)
    }

    /// Stage 5: Action when the clause is imperative or carries an
    /// obligation modal; otherwise Consequence, flagged low-confidence
    /// when only weak cues ("can", "might", "will") are present.
    pub fn label_resultant(&self, tokens: &[Token], resultant: &Range<usize>) -> (Label, bool) {
        let (label, low_confidence, _) = self.label_with_rule(tokens, resultant);
        (label, low_confidence)
    }

    fn label_with_rule(
        &self,
        tokens: &[Token],
        resultant: &Range<usize>,
    ) -> (Label, bool, &'static str) {
        if detect_imperative(tokens, resultant.start, &self.lexicons) {
            return (Label::Action, false, "resultant_labeling.imperative");
        }
        if detect_obligation(tokens, resultant.clone(), &self.lexicons) {
            return (Label::Action, false, "resultant_labeling.obligation");
        }
        if self.has_weak_cue(tokens, resultant) {
            let label = match self.options.weak_cue_policy {
                WeakCuePolicy::Consequence => Label::Consequence,
                WeakCuePolicy::Action => Label::Action,
            };
            return (label, true, "resultant_labeling.weak_cue");
        }
        (Label::Consequence, false, "resultant_labeling.default")
    }

    fn has_weak_cue(&self, tokens: &[Token], range: &Range<usize>) -> bool {
        tokens[range.clone()].iter().any(|t| {
            if t.kind != TokenKind::Word {
                return false;
            }
            let word = t.lower().replace('\u{2019}', "'");
            if self.lexicons.weak_cues.contains_word(&word) {
                return true;
            }
            // Contracted modals: "I'll", "they'd".
            match word.rsplit_once('\'') {
                Some((_, "ll")) => self.lexicons.weak_cues.contains_word("will"),
                Some((_, "d")) => self.lexicons.weak_cues.contains_word("would"),
                _ => false,
            }
        })
    }
}

/// Stage 1: token range of the condition clause. Starts at the first
/// condition indicator; ends at the first clause separator, "then"
/// marker, or sentence end; trailing punctuation is excluded.
pub fn find_condition_scope(tokens: &[Token], features: &[TokenFeatures]) -> Option<Range<usize>> {
    let start = features.iter().position(|f| f.is_condition_indicator)?;
    let indicator_len = features[start].indicator_len.max(1);
    let scope_start = (start + indicator_len).min(features.len());
    let mut end = features[scope_start..]
        .iter()
        .position(|f| f.is_clause_separator || f.is_then_marker)
        .map(|offset| scope_start + offset)
        .unwrap_or(tokens.len());
    while end > start && tokens[end - 1].kind == TokenKind::Punctuation {
        end -= 1;
    }
    (end > start).then_some(start..end)
}

/// Stage 3: maximal non-condition clause segments in textual order.
pub fn find_resultant_candidates(
    tokens: &[Token],
    features: &[TokenFeatures],
    condition: &Range<usize>,
) -> Vec<Range<usize>> {
    candidates_with_extras(tokens, features, condition).0
}

/// Stage 4: the nearest candidate after the condition, or the nearest
/// one before it for sentence-final conditionals. The flag reports
/// whether more than one candidate competed.
pub fn select_resultant(
    candidates: &[Range<usize>],
    condition: &Range<usize>,
) -> (Option<Range<usize>>, bool) {
    let following = candidates
        .iter()
        .filter(|c| c.start >= condition.end)
        .min_by_key(|c| c.start);
    let preceding = candidates
        .iter()
        .filter(|c| c.end <= condition.start)
        .max_by_key(|c| c.end);
    (following.or(preceding).cloned(), candidates.len() > 1)
}

/// Candidate segmentation plus a count of extra condition clauses
/// (a second "if ..." or an "otherwise ..." tail). Extra condition
/// clauses are skipped, not offered as resultants.
fn candidates_with_extras(
    tokens: &[Token],
    features: &[TokenFeatures],
    condition: &Range<usize>,
) -> (Vec<Range<usize>>, usize) {
    let mut candidates = Vec::new();
    let mut extra_conditions = 0;
    let mut seg_start: Option<usize> = None;
    let mut i = 0;
    while i < tokens.len() {
        if condition.contains(&i) {
            flush_segment(tokens, &mut seg_start, i, &mut candidates);
            i = condition.end;
            continue;
        }
        let f = &features[i];
        if f.is_condition_indicator {
            // An additional condition clause: close the current segment
            // and skip through the extra clause.
            flush_segment(tokens, &mut seg_start, i, &mut candidates);
            extra_conditions += 1;
            i += f.indicator_len.max(1);
            while i < tokens.len()
                && !condition.contains(&i)
                && !features[i].is_clause_separator
                && !features[i].is_then_marker
            {
                i += 1;
            }
            continue;
        }
        if f.is_clause_separator {
            flush_segment(tokens, &mut seg_start, i, &mut candidates);
            i += 1;
            continue;
        }
        if f.is_then_marker && segment_has_word(tokens, seg_start, i) {
            // "do A and then do B": the marker separates two clauses.
            // A marker at the start of a segment instead belongs to it
            // ("then click on the PayPal tab").
            flush_segment(tokens, &mut seg_start, i, &mut candidates);
            i += 1;
            continue;
        }
        seg_start.get_or_insert(i);
        i += 1;
    }
    flush_segment(tokens, &mut seg_start, tokens.len(), &mut candidates);
    (candidates, extra_conditions)
}

fn segment_has_word(tokens: &[Token], seg_start: Option<usize>, end: usize) -> bool {
    seg_start.is_some_and(|s| {
        tokens[s..end]
            .iter()
            .any(|t| t.kind != TokenKind::Punctuation)
    })
}

fn flush_segment(
    tokens: &[Token],
    seg_start: &mut Option<usize>,
    end: usize,
    out: &mut Vec<Range<usize>>,
) {
    if let Some(start) = seg_start.take() {
        if let Some(trimmed) = trim_segment(tokens, start..end) {
            out.push(trimmed);
        }
    }
}

/// Strip edge punctuation and coordinating conjunctions; drop segments
/// left without a word.
fn trim_segment(tokens: &[Token], range: Range<usize>) -> Option<Range<usize>> {
    let trimmable = |i: usize| {
        tokens[i].kind == TokenKind::Punctuation
            || EDGE_CONJUNCTIONS.contains(&tokens[i].lower().as_str())
    };
    let mut start = range.start;
    let mut end = range.end;
    while start < end && trimmable(start) {
        start += 1;
    }
    while end > start && trimmable(end - 1) {
        end -= 1;
    }
    tokens[start..end]
        .iter()
        .any(|t| t.kind != TokenKind::Punctuation)
        .then_some(start..end)
}

fn token_span(tokens: &[Token], range: &Range<usize>, label: Label) -> ClauseSpan {
    ClauseSpan::new(tokens[range.start].start, tokens[range.end - 1].end, label)
}

fn clause_text(sentence: &str, tokens: &[Token], range: &Range<usize>) -> String {
    char_slice(
        sentence,
        tokens[range.start].start,
        tokens[range.end - 1].end,
    )
    .to_string()
}
