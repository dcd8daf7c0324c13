//! Front end: expression parsing, the assertion corpus and its reports.

pub mod corpus;
pub mod parse;

pub use corpus::{
    load_corpus, parse_corpus, run, run_corpus, Assertion, AssertionVerdict, Corpus, CorpusEntry, Report,
    CORPUS_VERSION, REPORT_VERSION,
};
pub use parse::{chebyshev, parse_constant, parse_field, parse_field_spec, parse_ratfun};
