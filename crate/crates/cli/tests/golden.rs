//! Byte-stable JSON output for the command corpus in `tests/golden/corpus.tsv`.
//!
//! Set `BLESS=1` to rewrite the stored outputs.

mod common;

#[test]
fn corpus_has_twenty_commands() {
    assert_eq!(common::corpus().len(), 20);
}

#[test]
fn json_output_is_byte_stable() {
    let failures = common::check_corpus(std::env::var_os("BLESS").is_some());
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn json_keys_are_sorted() {
    for (name, args) in common::corpus() {
        let (out, _) = common::run_json(&args);
        let v: serde_json::Value = serde_json::from_slice(&out).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted, "{name}");
        assert!(v.get("status").is_some() && v.get("warnings").is_some(), "{name}");
    }
}
