//! Label frequency statistics per data split, rendered in the
//! conventional layout: one row per split plus a Total row, columns
//! CD, CS, AC, OC, NC, UA.

use crate::model::{AnnotatedSentence, Label};

/// Column order for rendered tables.
pub const TABLE_ORDER: [Label; 6] = [
    Label::Condition,
    Label::Consequence,
    Label::Action,
    Label::OnlyCondition,
    Label::NoCondition,
    Label::UnconditionalAction,
];

/// Occurrence counts for every label.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LabelCounts {
    counts: [usize; Label::ALL.len()],
}

impl LabelCounts {
    pub fn add(&mut self, label: Label) {
        self.counts[Self::index(label)] += 1;
    }

    pub fn get(&self, label: Label) -> usize {
        self.counts[Self::index(label)]
    }

    pub fn merge(&mut self, other: &LabelCounts) {
        for (mine, theirs) in self.counts.iter_mut().zip(other.counts) {
            *mine += theirs;
        }
    }

    fn index(label: Label) -> usize {
        Label::ALL
            .iter()
            .position(|l| *l == label)
            .expect("label in ALL")
    }
}

/// Per-split counts plus the grand total.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CorpusStats {
    pub splits: Vec<(String, LabelCounts)>,
    pub total: LabelCounts,
}

/// Count labels per split: clause labels once per span, sentence-level
/// labels once per sentence.
pub fn corpus_stats(splits: &[(String, Vec<AnnotatedSentence>)]) -> CorpusStats {
    let mut stats = CorpusStats::default();
    for (name, sentences) in splits {
        let mut counts = LabelCounts::default();
        for sentence in sentences {
            for span in &sentence.spans {
                counts.add(span.label);
            }
            if let Some(label) = sentence.sentence_label {
                counts.add(label);
            }
        }
        stats.total.merge(&counts);
        stats.splits.push((name.clone(), counts));
    }
    stats
}

/// Aligned text table, one split per row and a Total row.
pub fn render_stats_table(stats: &CorpusStats) -> String {
    let name_width = stats
        .splits
        .iter()
        .map(|(n, _)| n.len())
        .chain(["Data".len(), "Total".len()])
        .max()
        .unwrap_or(5);
    let mut out = String::new();
    out.push_str(&format!("{:<name_width$}", "Data"));
    for label in TABLE_ORDER {
        out.push_str(&format!("  {:>6}", label.code()));
    }
    out.push('\n');
    let mut rows: Vec<(&str, &LabelCounts)> =
        stats.splits.iter().map(|(n, c)| (n.as_str(), c)).collect();
    rows.push(("Total", &stats.total));
    for (name, counts) in rows {
        out.push_str(&format!("{name:<name_width$}"));
        for label in TABLE_ORDER {
            out.push_str(&format!("  {:>6}", counts.get(label)));
        }
        out.push('\n');
    }
    out
}

/// Machine-readable variant: `{"splits": {name: {code: n}}, "total": {code: n}}`.
pub fn render_stats_json(stats: &CorpusStats) -> serde_json::Value {
    let counts_json = |c: &LabelCounts| {
        let mut map = serde_json::Map::new();
        for label in TABLE_ORDER {
            map.insert(label.code().to_string(), c.get(label).into());
        }
        serde_json::Value::Object(map)
    };
    let mut splits = serde_json::Map::new();
    for (name, counts) in &stats.splits {
        splits.insert(name.clone(), counts_json(counts));
    }
    serde_json::json!({ "splits": splits, "total": counts_json(&stats.total) })
}
