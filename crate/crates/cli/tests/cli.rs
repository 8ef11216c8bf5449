use std::fs;
use std::process::{Command, Output};

use foxtwist::json::{
    from_json, pairing_from_doc, pairing_to_doc, series_from_doc, series_to_doc, to_pretty_json, twist_from_doc,
    twist_to_doc, PairingDoc, SeriesDoc, TwistDoc,
};
use foxtwist::report::Report;
use foxtwist::scalar::int;
use foxtwist::{GroupWord, Series};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_foxtwist")).args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

#[test]
fn pairing_prints_the_homological_form() {
    let out = run(&["pairing", "--surface", "genus:1", "--degree", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "[0, -1]\n[1, 0]\n");
}

#[test]
fn pairing_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pairing.json");
    let out = run(&["pairing", "--surface", "genus:2", "--degree", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&path).unwrap();
    let doc: PairingDoc = from_json(&text).unwrap();
    assert_eq!(doc.rank, 4);
    assert_eq!(doc.matrix.len(), 4);
    let pairing = pairing_from_doc(&doc).unwrap();
    assert_eq!(to_pretty_json(&pairing_to_doc(&pairing)), text);

    let again = run(&["pairing", "--pairing", path.to_str().unwrap(), "--degree", "4"]);
    assert_eq!(again.status.code(), Some(0));
    assert_eq!(stdout(&again), "[0, -1, 0, 0]\n[1, 0, 0, 0]\n[0, 0, 0, -1]\n[0, 0, 1, 0]\n");
}

#[test]
fn degenerate_nabla_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("punctured-disk.json");
    let (x1, x2) = (GroupWord::generator(2, 1), GroupWord::generator(2, 2));
    let nabla = &Series::embed_word(&x2.mul(&x1), 6) - &Series::one(2, 6);
    fs::write(&path, to_pretty_json(&series_to_doc(&nabla))).unwrap();
    let out = run(&["pairing", "--nabla", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("degenerate"));
}

#[test]
fn boundary_nabla_gives_the_surface_pairing() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nabla.json");
    let commutator = GroupWord::from_letters(2, &[1, 2, -1, -2]).unwrap();
    let nabla = &Series::embed_word(&commutator, 7) - &Series::one(2, 7);
    fs::write(&path, to_pretty_json(&series_to_doc(&nabla))).unwrap();
    let from_nabla =
        run(&["twist", "--nabla", path.to_str().unwrap(), "--curve", "x1", "--k", "1/2", "--format", "json"]);
    let from_surface = run(&["twist", "--surface", "genus:1", "--curve", "a", "--k", "1/2", "--format", "json"]);
    assert_eq!(from_nabla.status.code(), Some(0));
    assert_eq!(from_nabla.stdout, from_surface.stdout);
}

#[test]
fn twist_apply_gives_the_classical_image() {
    let out = run(&[
        "twist",
        "--surface",
        "genus:1",
        "--curve",
        "a",
        "--k",
        "1/2",
        "--degree",
        "5",
        "--apply",
        "b",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: SeriesDoc = from_json(&stdout(&out)).unwrap();
    let image = series_from_doc(&doc, Some(2)).unwrap();
    let expected = Series::embed_word(&GroupWord::from_letters(2, &[2, -1]).unwrap(), 5);
    assert_eq!(image, expected);
}

#[test]
fn twist_parameter_laws_on_the_command_line() {
    let square =
        run(&["twist", "--surface", "genus:1", "--curve", "a a", "--k", "1", "--degree", "4", "--format", "json"]);
    let scaled =
        run(&["twist", "--surface", "genus:1", "--curve", "a", "--k", "4", "--degree", "4", "--format", "json"]);
    assert_eq!(square.status.code(), Some(0));
    assert_eq!(square.stdout, scaled.stdout);

    let zero =
        run(&["twist", "--surface", "genus:2", "--curve", "a1 b2", "--k", "0", "--degree", "3", "--format", "json"]);
    let doc: TwistDoc = from_json(&stdout(&zero)).unwrap();
    let t = twist_from_doc(&doc).unwrap();
    for (i, image) in t.images().iter().enumerate() {
        assert_eq!(image, &Series::embed_word(&GroupWord::generator(4, i + 1), 3));
    }
    assert_eq!(to_pretty_json(&twist_to_doc(&t)), stdout(&zero));
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first.json");
    let second = dir.path().join("second.json");
    for path in [&first, &second] {
        let out = run(&[
            "twist",
            "--surface",
            "genus:2",
            "--curve",
            "a1 b1 a1^-1 b1^-1",
            "--k",
            "-2/3",
            "--degree",
            "4",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(fs::read(&first).unwrap(), fs::read(&second).unwrap());
}

#[test]
fn input_errors_exit_with_two() {
    for args in [
        vec!["twist", "--surface", "genus:1", "--curve", "c", "--k", "1"],
        vec!["twist", "--surface", "genus:1", "--curve", "a", "--k", "0.5"],
        vec!["twist", "--surface", "genus:1", "--curve", "a", "--k", "1/0"],
        vec!["twist", "--surface", "torus", "--curve", "a", "--k", "1"],
        vec!["pairing", "--surface", "genus:0"],
        vec!["pairing", "--surface", "genus:1", "--degree", "9"],
        vec!["pairing"],
        vec!["pairing", "--pairing", "/nonexistent/pairing.json"],
        vec!["verify", "--suite", "bogus"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn non_isotropic_curve_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("squares.json");
    let squares = &Series::monomial(2, 6, &[1, 1], int(1)) + &Series::monomial(2, 6, &[2, 2], int(1));
    fs::write(&path, to_pretty_json(&series_to_doc(&squares))).unwrap();
    let out = run(&["twist", "--nabla", path.to_str().unwrap(), "--curve", "x1", "--k", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_reports_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["verify", "--suite", "dehn-compare", "--degree", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("dehn-compare: 10 of 10 checks passed"));
    let text = fs::read_to_string(&path).unwrap();
    let report: Report = from_json(&text).unwrap();
    assert_eq!(report.suite, "dehn-compare");
    assert!(report.passed());
    assert_eq!(to_pretty_json(&report), text);

    let out = run(&["verify", "--suite", "figure-eight", "--degree", "5", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: Report = from_json(&stdout(&out)).unwrap();
    assert!(report.passed());
}
