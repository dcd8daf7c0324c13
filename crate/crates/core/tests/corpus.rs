use std::path::PathBuf;

use luroth_core::workbench::{parse_corpus, run, run_corpus, AssertionVerdict};

fn corpus_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus/corpus.toml")
}

#[test]
fn shipped_corpus_passes() {
    let report = run_corpus(&corpus_path()).unwrap();
    for e in &report.entries {
        if e.elapsed_ms > 1000.0 {
            eprintln!("slow entry {}: {:.0} ms", e.id, e.elapsed_ms);
        }
        for a in &e.assertions {
            if !matches!(a.verdict, AssertionVerdict::Pass) {
                eprintln!("{} {} {:?}: {:?}", e.id, a.op, a.args, a.verdict);
            }
        }
    }
    assert!(report.all_pass(), "{:?}", report.summary);
    assert_eq!(report.summary.undecided, 0);
}

#[test]
fn report_is_deterministic() {
    let c = parse_corpus(&std::fs::read_to_string(corpus_path()).unwrap()).unwrap();
    let a = run(&c).without_timing().to_json();
    let b = run(&c).without_timing().to_json();
    assert_eq!(a, b);
    assert!(a.contains("\"version\": 1"));
}

#[test]
fn corrupted_expectation_fails_with_diff() {
    let text = r#"
version = 1
[[entry]]
id = "bad"
field = "Q"
[[entry.assert]]
op = "chebyshev"
args = ["2"]
expected = "2*z^2+1"
provenance = "trivial"
"#;
    let r = run(&parse_corpus(text).unwrap());
    assert!(!r.all_pass());
    let v = &r.entries[0].assertions[0].verdict;
    assert_eq!(*v, AssertionVerdict::Fail { expected: "2*z^2+1".into(), computed: "2*z^2 - 1".into() });
}

#[test]
fn schema_errors() {
    assert!(parse_corpus("version = 2").is_err());
    assert!(parse_corpus("version = 1\n[[entry]]\nid = \"a\"\nfield = \"Q\"\n[[entry]]\nid = \"a\"\nfield = \"Q\"")
        .is_err());
    assert!(parse_corpus("version = 1\n[[entry]]\nid = \"a\"\nfield = \"Q\"\nextra = 1").is_err());
    let bad_prov = "version = 1\n[[entry]]\nid = \"a\"\nfield = \"Q\"\n[[entry.assert]]\nop = \"degree\"\nargs = [\"z\"]\nexpected = \"1\"\nprovenance = \"folklore\"";
    assert!(parse_corpus(bad_prov).is_err());
}
