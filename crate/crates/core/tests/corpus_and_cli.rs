use std::path::{Path, PathBuf};
use std::process::Command;

use sequent_trainer::corpus::{corpus_files, mistakes};
use sequent_trainer::feedback::Catalogs;
use sequent_trainer::proof::{load, verify};
use sequent_trainer::service::cli::{self, verify_file};
use sequent_trainer::service::view::report_view;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_seqtrainer")).args(args).env_remove("SEQTRAIN_LOCALE").output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn shipped_corpus_matches_the_generator() {
    for (name, bytes) in corpus_files() {
        let on_disk = std::fs::read(corpus_dir().join(&name)).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(on_disk == bytes, "{name} is stale; run `cargo run --example build_corpus`");
    }
    let shipped = std::fs::read_dir(corpus_dir().join("mistakes")).unwrap().count();
    assert_eq!(shipped, mistakes().len());
}

#[test]
fn cli_and_api_verify_agree() {
    let cs = Catalogs::shipped();
    for (name, bytes) in corpus_files().into_iter().filter(|(n, _)| n.ends_with(".json")) {
        let p = corpus_dir().join(&name);
        let cli = verify_file(&p, cs, "en");
        let api = report_view(verify(&load(&bytes).unwrap()), cs, "en");
        assert_eq!(cli.code == cli::EXIT_OK, api.ok, "{name}");
        for f in &api.failures {
            let line = format!("{}: {} [{}] {}", f.location, f.category, f.detail, f.message);
            assert!(cli.stdout.contains(&line), "{name}: missing `{line}` in\n{}", cli.stdout);
        }
    }
}

#[test]
fn binary_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let g1 = corpus_dir().join("group1.proof.json");
    assert_eq!(run(&["verify", path(&g1)]).0, 0);

    let (code, out, _) = run(&["--locale", "de", "verify", path(&corpus_dir().join("mistakes/group3_precedence.json"))]);
    assert_eq!(code, 1);
    assert!(out.contains("keine Formel der obersten Ebene"), "{out}");

    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, r#"{"version": 2, "root": {"sequent": "P ==> P"}}"#).unwrap();
    let (code, _, err) = run(&["verify", path(&broken)]);
    assert_eq!(code, 3);
    assert!(err.contains("version"), "{err}");
    assert_eq!(run(&["verify", path(&dir.path().join("missing.json"))]).0, 2);

    let (code, out, _) = run(&["check", path(&corpus_dir().join("sequents.txt"))]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("5 sequent(s) parsed, 0 error(s)"));

    let svg = dir.path().join("g1.svg");
    assert_eq!(run(&["export", path(&g1), "--format", "svg", "--out", path(&svg)]).0, 0);
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
    let (code, text, _) = run(&["export", path(&g1)]);
    assert_eq!(code, 0);
    assert!(text.lines().last().unwrap().contains("==>"));
    assert_eq!(run(&["export", path(&g1), "--format", "png"]).0, 2, "usage error");
}

#[test]
fn locale_comes_from_the_environment() {
    let m = corpus_dir().join("mistakes/group1_non_ground_instantiation.json");
    let out = Command::new(env!("CARGO_BIN_EXE_seqtrainer"))
        .args(["verify", path(&m)])
        .env("SEQTRAIN_LOCALE", "de")
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&out.stdout).contains("kein Grundterm"));
}
