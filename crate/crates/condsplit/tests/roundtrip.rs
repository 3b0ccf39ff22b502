//! Conversion round-trip properties over the reference corpus and
//! seeded fuzz corpora: Doccano→IOB→Doccano reaches a fixed point
//! after one pass, and each writer/reader pair is byte-stable.

mod common;

use common::{fixture_path, fuzz_sentence};
use condsplit::corpus::{
    from_iob, read_doccano, read_iob, to_iob, write_doccano, write_iob, ParseMode,
};
use condsplit::model::AnnotatedSentence;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::io::BufReader;

const FUZZ_SENTENCES: usize = 1000;
const FUZZ_SEED: u64 = 0x5eed_0001;

fn doccano_bytes(sentences: &[AnnotatedSentence]) -> Vec<u8> {
    let mut buffer = Vec::new();
    write_doccano(sentences, &mut buffer).unwrap();
    buffer
}

fn parse_doccano(bytes: &[u8]) -> Vec<AnnotatedSentence> {
    read_doccano(BufReader::new(bytes), ParseMode::Strict)
        .unwrap()
        .sentences
}

/// One full Doccano→IOB→Doccano conversion, the way the CLI does it:
/// texts come back space-joined, ids are preserved by position.
fn through_iob(sentences: &[AnnotatedSentence]) -> Vec<AnnotatedSentence> {
    let sequences: Vec<_> = sentences
        .iter()
        .map(|s| to_iob(s).unwrap_or_else(|e| panic!("sentence {}: {e}", s.id)))
        .collect();
    let mut bytes = Vec::new();
    write_iob(&sequences, &mut bytes).unwrap();
    let back = read_iob(BufReader::new(bytes.as_slice())).unwrap();
    assert_eq!(back.len(), sentences.len());
    back.iter()
        .zip(sentences)
        .map(|(seq, original)| {
            let text = seq.joined_text();
            let mut sentence = from_iob(seq, &text).unwrap();
            sentence.id = original.id;
            sentence
        })
        .collect()
}

fn golden_sentences() -> Vec<AnnotatedSentence> {
    let raw = std::fs::read_to_string(fixture_path()).unwrap();
    parse_doccano(raw.as_bytes())
}

fn fuzz_corpus() -> Vec<AnnotatedSentence> {
    let mut rng = ChaCha8Rng::seed_from_u64(FUZZ_SEED);
    (0..FUZZ_SENTENCES)
        .map(|i| fuzz_sentence(&mut rng, i as i64 + 1))
        .collect()
}

#[test]
fn doccano_iob_doccano_is_a_fixed_point_on_golden() {
    let golden = golden_sentences();
    let once = through_iob(&golden);
    let twice = through_iob(&once);
    assert_eq!(doccano_bytes(&once), doccano_bytes(&twice));
}

#[test]
fn doccano_iob_doccano_is_a_fixed_point_on_fuzzed_sentences() {
    let corpus = fuzz_corpus();
    let once = through_iob(&corpus);
    let twice = through_iob(&once);
    assert_eq!(doccano_bytes(&once), doccano_bytes(&twice));
    // The generator space-joins its tokens and keeps spans off
    // trailing punctuation, so one conversion already preserves all
    // span-carrying sentences exactly.
    for (original, converted) in corpus.iter().zip(&once) {
        if !original.spans.is_empty() {
            assert_eq!(original.text, converted.text);
            assert_eq!(original.spans, converted.spans);
        }
    }
}

#[test]
fn doccano_writer_and_reader_are_byte_stable() {
    let golden_raw = std::fs::read_to_string(fixture_path()).unwrap();
    // The first write normalizes formatting (and drops the fixture's
    // subset field); after that, read∘write is the identity on bytes.
    let normalized = doccano_bytes(&parse_doccano(golden_raw.as_bytes()));
    assert_eq!(doccano_bytes(&parse_doccano(&normalized)), normalized);

    let fuzz_bytes = doccano_bytes(&fuzz_corpus());
    assert_eq!(doccano_bytes(&parse_doccano(&fuzz_bytes)), fuzz_bytes);
}

#[test]
fn iob_writer_and_reader_are_byte_stable() {
    let mut sequences = Vec::new();
    for sentence in golden_sentences().iter().chain(fuzz_corpus().iter()) {
        sequences.push(to_iob(sentence).unwrap());
    }
    let mut bytes = Vec::new();
    write_iob(&sequences, &mut bytes).unwrap();
    let reread = read_iob(BufReader::new(bytes.as_slice())).unwrap();
    let mut rewritten = Vec::new();
    write_iob(&reread, &mut rewritten).unwrap();
    assert_eq!(bytes, rewritten);
}
