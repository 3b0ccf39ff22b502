//! Lightweight linguistic analysis: tokenization with character offsets,
//! lexicon loading, and per-token feature extraction. These stand in for
//! a full syntactic parser; everything downstream works from token
//! features plus position heuristics.

pub mod features;
pub mod lexicon;
pub mod tokenizer;

pub use features::{
    detect_imperative, detect_obligation, extract_features, IndicatorKind, TokenFeatures,
};
pub use lexicon::{Lexicon, Lexicons};
pub use tokenizer::{tokenize, Token, TokenKind, TokenizeError};
