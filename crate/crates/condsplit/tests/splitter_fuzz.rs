//! Robustness fuzzing for the splitter: arbitrary token soups, with
//! condition indicators injected at random positions, must never
//! panic, must produce valid annotations, and must be deterministic.

mod common;

use condsplit::model::validate_sentence;
use condsplit::splitter::{Splitter, SplitterOptions};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

const SENTENCES: usize = 10_000;
const SEED: u64 = 0x5eed_0003;

const FILLER: &[&str] = &[
    "the",
    "report",
    "system",
    "team",
    "update",
    "invoice",
    "vendor",
    "then",
    "and",
    "or",
    "must",
    "can",
    "review",
    "click",
    "pay",
    "verify",
    ",",
    ".",
    ";",
    "(",
    ")",
    "?",
    "-",
    "needs",
    "to",
    "possible",
    "otherwise",
    "42",
    "KR-number",
    "it\u{2019}s",
];
const INDICATORS: &[&str] = &["if", "unless", "when", "in", "case", "provided", "that"];

fn random_sentence(rng: &mut ChaCha8Rng) -> String {
    let count = rng.random_range(1..=24);
    let words: Vec<&str> = (0..count)
        .map(|_| {
            if rng.random_bool(0.25) {
                INDICATORS[rng.random_range(0..INDICATORS.len())]
            } else {
                FILLER[rng.random_range(0..FILLER.len())]
            }
        })
        .collect();
    words.join(" ")
}

#[test]
fn splitter_is_total_valid_and_deterministic_on_fuzz_input() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let default_splitter = Splitter::new(SplitterOptions::default());
    let extended_splitter = Splitter::new(SplitterOptions {
        extended_patterns: true,
        ..SplitterOptions::default()
    });
    for index in 0..SENTENCES {
        let text = random_sentence(&mut rng);
        for splitter in [&default_splitter, &extended_splitter] {
            let (first, traces) = splitter
                .split(&text)
                .unwrap_or_else(|e| panic!("sentence {index} {text:?}: {e}"));
            let (second, _) = splitter.split(&text).unwrap();
            assert_eq!(first, second, "nondeterministic on {text:?}");

            let annotated = first.to_annotated(index as i64, &text);
            let violations = validate_sentence(&annotated);
            assert!(
                violations.is_empty(),
                "invalid annotation on {text:?}: {violations:?}"
            );
            assert_eq!(
                splitter.classify_conditional(&text).unwrap(),
                first.condition.is_some(),
                "classification disagrees with split on {text:?}"
            );
            // A resultant without a condition cannot happen.
            if first.resultant.is_some() {
                assert!(first.condition.is_some(), "dangling resultant on {text:?}");
            }
            // Traces arrive in pipeline-stage order.
            for pair in traces.windows(2) {
                assert!(pair[0].stage <= pair[1].stage, "trace order on {text:?}");
            }
        }
    }
}
