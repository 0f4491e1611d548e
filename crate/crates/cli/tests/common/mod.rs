use std::path::PathBuf;
use std::process::Command;
use std::sync::OnceLock;

// Shared with crates/verify, hence the sibling-relative path.
pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../cli/tests/golden")
}

/// The `plugtwist` binary. Outside the cli package it is looked up next to
/// the test executable and built on demand.
pub fn binary() -> &'static PathBuf {
    static BIN: OnceLock<PathBuf> = OnceLock::new();
    BIN.get_or_init(|| {
        if let Some(p) = option_env!("CARGO_BIN_EXE_plugtwist") {
            return PathBuf::from(p);
        }
        let exe = std::env::current_exe().expect("test executable path");
        let dir = exe.parent().and_then(|d| d.parent()).expect("target directory");
        let bin = dir.join(format!("plugtwist{}", std::env::consts::EXE_SUFFIX));
        if !bin.exists() {
            let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
            let status = Command::new(cargo)
                .args(["build", "-p", "plugtwist-cli", "--bin", "plugtwist"])
                .status()
                .expect("cargo runs");
            assert!(status.success(), "building plugtwist failed");
        }
        bin
    })
}

/// `(name, args)` pairs from `corpus.tsv`.
pub fn corpus() -> Vec<(String, Vec<String>)> {
    let text = std::fs::read_to_string(golden_dir().join("corpus.tsv")).expect("corpus file");
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let mut parts = l.split('\t').map(str::to_string);
            let name = parts.next().unwrap();
            (name, parts.collect())
        })
        .collect()
}

/// Stdout and exit code of the binary with `--format json`.
pub fn run_json(args: &[String]) -> (Vec<u8>, i32) {
    let out = Command::new(binary())
        .args(args)
        .args(["--format", "json"])
        .output()
        .expect("binary runs");
    (out.stdout, out.status.code().unwrap_or(-1))
}

/// Compares two runs of every corpus command with each other and with the
/// stored files; `bless` rewrites the files instead.
pub fn check_corpus(bless: bool) -> Vec<String> {
    let mut failures = Vec::new();
    for (name, args) in corpus() {
        let (first, code1) = run_json(&args);
        let (second, code2) = run_json(&args);
        if first != second || code1 != code2 {
            failures.push(format!("{name}: two runs differ"));
            continue;
        }
        let path = golden_dir().join(format!("{name}.json"));
        if bless {
            std::fs::write(&path, &first).expect("write golden file");
            continue;
        }
        match std::fs::read(&path) {
            Ok(expected) if expected == first => {}
            Ok(_) => failures.push(format!("{name}: differs from {}", path.display())),
            Err(e) => failures.push(format!("{name}: cannot read {}: {e}", path.display())),
        }
    }
    failures
}
