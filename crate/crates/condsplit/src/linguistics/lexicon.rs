//! Plain-text lexicons: one entry per line, `#` comments, case-insensitive
//! matching. Multi-word entries match as token sequences. Defaults are
//! embedded in the binary; a directory of override files can replace any
//! of them.

use std::fs;
use std::io;
use std::path::Path;

/// A single lexicon loaded once and immutable thereafter.
#[derive(Debug, Clone)]
pub struct Lexicon {
    name: &'static str,
    entries: Vec<String>,
    phrases: Vec<Vec<String>>,
}

impl Lexicon {
    /// Parse lexicon file content. Blank lines and `#` comments are
    /// skipped; entries are lowercased.
    pub fn parse(name: &'static str, content: &str) -> Self {
        let mut entries = Vec::new();
        let mut phrases = Vec::new();
        for line in content.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let entry = line.to_lowercase();
            phrases.push(entry.split_whitespace().map(str::to_string).collect());
            entries.push(entry);
        }
        Lexicon {
            name,
            entries,
            phrases,
        }
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    /// Every entry, in file order. There are no entries beyond these.
    pub fn entries(&self) -> &[String] {
        &self.entries
    }

    /// True if `word` (already lowercased) is a single-word entry.
    pub fn contains_word(&self, word: &str) -> bool {
        self.phrases.iter().any(|p| p.len() == 1 && p[0] == word)
    }

    /// Longest entry matching the token sequence starting at `at`.
    /// `lowered` holds the lowercased token texts. Returns the match
    /// length in tokens.
    pub fn match_at(&self, lowered: &[String], at: usize) -> Option<usize> {
        self.match_lengths_at(lowered, at).into_iter().max()
    }

    /// Lengths of every entry matching at `at`.
    pub fn match_lengths_at(&self, lowered: &[String], at: usize) -> Vec<usize> {
        let mut lengths = Vec::new();
        for phrase in &self.phrases {
            if at + phrase.len() <= lowered.len()
                && phrase.iter().zip(&lowered[at..]).all(|(p, t)| p == t)
            {
                lengths.push(phrase.len());
            }
        }
        lengths
    }
}

macro_rules! embedded {
    ($file:literal) => {
        include_str!(concat!("../../lexicons/", $file))
    };
}

/// The full lexicon bundle used by feature extraction and the rule
/// splitter.
#[derive(Debug, Clone)]
pub struct Lexicons {
    pub subordinators: Lexicon,
    pub negative_subordinators: Lexicon,
    pub discourse_markers: Lexicon,
    pub exclusions: Lexicon,
    pub obligation_modals: Lexicon,
    pub weak_cues: Lexicon,
    pub imperative_verbs: Lexicon,
    pub imperative_preambles: Lexicon,
}

/// (field loader, file name) pairs for the override directory.
const LEXICON_FILES: [&str; 8] = [
    "subordinators.txt",
    "negative_subordinators.txt",
    "discourse_markers.txt",
    "exclusions.txt",
    "obligation_modals.txt",
    "weak_cues.txt",
    "imperative_verbs.txt",
    "imperative_preambles.txt",
];

impl Default for Lexicons {
    fn default() -> Self {
        Lexicons {
            subordinators: Lexicon::parse("subordinators", embedded!("subordinators.txt")),
            negative_subordinators: Lexicon::parse(
                "negative_subordinators",
                embedded!("negative_subordinators.txt"),
            ),
            discourse_markers: Lexicon::parse(
                "discourse_markers",
                embedded!("discourse_markers.txt"),
            ),
            exclusions: Lexicon::parse("exclusions", embedded!("exclusions.txt")),
            obligation_modals: Lexicon::parse(
                "obligation_modals",
                embedded!("obligation_modals.txt"),
            ),
            weak_cues: Lexicon::parse("weak_cues", embedded!("weak_cues.txt")),
            imperative_verbs: Lexicon::parse("imperative_verbs", embedded!("imperative_verbs.txt")),
            imperative_preambles: Lexicon::parse(
                "imperative_preambles",
                embedded!("imperative_preambles.txt"),
            ),
        }
    }
}

impl Lexicons {
    /// Load lexicons from `dir`, falling back to the embedded default
    /// for any file that does not exist there.
    pub fn from_dir(dir: &Path) -> io::Result<Self> {
        let mut lex = Lexicons::default();
        for file in LEXICON_FILES {
            let path = dir.join(file);
            match fs::read_to_string(&path) {
                Ok(content) => {
                    let slot = lex.slot_mut(file);
                    *slot = Lexicon::parse(slot.name, &content);
                }
                Err(e) if e.kind() == io::ErrorKind::NotFound => {}
                Err(e) => return Err(e),
            }
        }
        Ok(lex)
    }

    /// File names recognized in a lexicon directory.
    pub fn file_names() -> &'static [&'static str] {
        &LEXICON_FILES
    }

    fn slot_mut(&mut self, file: &str) -> &mut Lexicon {
        match file {
            "subordinators.txt" => &mut self.subordinators,
            "negative_subordinators.txt" => &mut self.negative_subordinators,
            "discourse_markers.txt" => &mut self.discourse_markers,
            "exclusions.txt" => &mut self.exclusions,
            "obligation_modals.txt" => &mut self.obligation_modals,
            "weak_cues.txt" => &mut self.weak_cues,
            "imperative_verbs.txt" => &mut self.imperative_verbs,
            "imperative_preambles.txt" => &mut self.imperative_preambles,
            other => unreachable!("unknown lexicon file {other}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_skips_comments_and_blank_lines() {
        let lex = Lexicon::parse("test", "# header\n\nif\nIn Case\n  # trailing\n");
        assert_eq!(lex.entries(), &["if".to_string(), "in case".to_string()]);
    }

    #[test]
    fn multiword_match_is_longest_first() {
        let lex = Lexicon::parse("test", "in\nin case");
        let toks: Vec<String> = ["in", "case", "of"].iter().map(|s| s.to_string()).collect();
        assert_eq!(lex.match_at(&toks, 0), Some(2));
        assert_eq!(lex.match_at(&toks, 1), None);
    }

    #[test]
    fn default_lexicons_are_enumerable_and_contain_the_documented_entries() {
        let lex = Lexicons::default();
        for (lexicon, expect) in [
            (&lex.subordinators, "if"),
            (&lex.subordinators, "provided that"),
            (&lex.negative_subordinators, "unless"),
            (&lex.discourse_markers, "otherwise"),
            (&lex.exclusions, "if possible"),
            (&lex.exclusions, "if any"),
            (&lex.obligation_modals, "must"),
            (&lex.obligation_modals, "have got to"),
            (&lex.obligation_modals, "should"),
            (&lex.weak_cues, "might"),
            (&lex.imperative_verbs, "click"),
            (&lex.imperative_verbs, "refer"),
            (&lex.imperative_preambles, "then"),
        ] {
            assert!(
                lexicon.entries().iter().any(|e| e == expect),
                "{} should list {expect:?}",
                lexicon.name()
            );
        }
    }

    #[test]
    fn from_dir_overrides_only_present_files() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(
            dir.path().join("discourse_markers.txt"),
            "otherwise\nalternatively\n",
        )
        .unwrap();
        let lex = Lexicons::from_dir(dir.path()).unwrap();
        assert_eq!(lex.discourse_markers.entries().len(), 2);
        // Untouched lexicons keep their embedded defaults.
        assert!(lex.subordinators.contains_word("if"));
    }
}
