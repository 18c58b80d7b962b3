use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use sha2::{Digest, Sha256};

fn case(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("cases").join(name)
}

fn llc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_llc-verify"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn find<'a>(r: &'a Value, id: &str) -> &'a Value {
    r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["id"] == id)
        .unwrap_or_else(|| panic!("no check {id}"))
}

#[test]
fn norm_one_passes_every_command() {
    let input = case("norm_one.json");
    let input = input.to_str().unwrap();
    for cmd in ["cohomology", "pairing", "projirr", "tori-verify"] {
        let out = llc(&[cmd, "--input", input]);
        assert_eq!(out.status.code(), Some(0), "{cmd}: {}", String::from_utf8_lossy(&out.stdout));
        let r = report(&out);
        assert_eq!(r["command"], cmd);
        assert_eq!(r["summary"]["status"], "pass");
        assert!(r["summary"]["total"].as_u64().unwrap() > 0);
    }
}

#[test]
fn character_checks_report_all_three_sides() {
    let out = llc(&["tori-verify", "--input", case("norm_one.json").to_str().unwrap()]);
    let r = report(&out);
    let c = find(&r, "tori.character.0");
    assert_eq!(c["status"], "pass");
    let w = &c["witness"];
    assert_eq!(w["representation"], w["closed_form"]);
    assert_eq!(w["representation"], w["endoscopic"]);
    assert_eq!(w["representation"], "2");
    let inputs = fs::read(case("norm_one.json")).unwrap();
    assert_eq!(r["input_digest"], format!("{:x}", Sha256::digest(&inputs)));
}

#[test]
fn corrupted_cocycle_is_an_input_error() {
    let out = llc(&["tori-verify", "--input", case("corrupted_cocycle.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("cocycle identity"), "{err}");
    assert!(err.contains("z:"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn malformed_json_names_the_position() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    fs::write(&p, "{\n  \"schema\": 1,\n  \"rank\": \n}").unwrap();
    let out = llc(&["tori-verify", "--input", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 4"), "{err}");
}

#[test]
fn empty_suite_passes_with_no_checks() {
    let out = llc(&["random-suite", "--input", case("empty_suite.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["summary"]["total"], 0);
    assert_eq!(r["summary"]["status"], "pass");
}

#[test]
fn wrong_expected_sign_fails_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let mut v: Value = serde_json::from_slice(&fs::read(case("a1_inner_form.json")).unwrap()).unwrap();
    v["sign"]["expected"] = Value::from(1);
    let p = dir.path().join("a1_plus.json");
    fs::write(&p, serde_json::to_vec(&v).unwrap()).unwrap();
    let out = llc(&["sign", "--input", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(find(&r, "sign.expected.0")["status"], "fail");
    assert_eq!(find(&r, "sign.value.0")["status"], "pass");
}

#[test]
fn signs_of_the_bundled_cases() {
    let out = llc(&["sign", "--input", case("a1_inner_form.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(find(&report(&out), "sign.value.0")["witness"]["sign"], -1);
    let out = llc(&["sign", "--input", case("e6_flip.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    for c in r["checks"].as_array().unwrap() {
        if c["id"].as_str().unwrap().starts_with("sign.value.") {
            assert_eq!(c["witness"]["sign"], 1);
        }
    }
}

#[test]
fn reports_are_deterministic() {
    let input = case("klein_glued.json");
    let args = ["random-suite", "--seed", "11", "--suite-size", "8"];
    let a = llc(&args);
    let b = llc(&args);
    assert_eq!(a.stdout, b.stdout);
    let args = ["tori-verify", "--input", input.to_str().unwrap(), "--seed", "4"];
    assert_eq!(llc(&args).stdout, llc(&args).stdout);
    let other = llc(&["random-suite", "--seed", "12", "--suite-size", "8"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn cache_does_not_change_reports() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("tables");
    let input = case("s3_root_lattice.json");
    let input = input.to_str().unwrap();
    let plain = llc(&["projirr", "--input", input]);
    let cold = llc(&["projirr", "--input", input, "--cache-dir", cache.to_str().unwrap()]);
    let warm = llc(&["projirr", "--input", input, "--cache-dir", cache.to_str().unwrap()]);
    assert_eq!(plain.stdout, cold.stdout);
    assert_eq!(plain.stdout, warm.stdout);
    assert!(cache.join("manifest.json").exists());

    // overwrite every stored table with garbage: reports stay the same
    let mut corrupted = 0;
    for e in fs::read_dir(&cache).unwrap() {
        let p = e.unwrap().path();
        if p.file_name().unwrap() != "manifest.json" {
            fs::write(&p, b"{\"order\": 1, \"exponent\": 1, \"values\": []}").unwrap();
            corrupted += 1;
        }
    }
    assert!(corrupted > 0);
    let again = llc(&["projirr", "--input", input, "--cache-dir", cache.to_str().unwrap()]);
    assert_eq!(plain.stdout, again.stdout);
}

#[test]
fn check_filter_selects_ids() {
    let input = case("cyclic_four.json");
    let out = llc(&["tori-verify", "--input", input.to_str().unwrap(), "--check-filter", "tori.character.*"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let checks = r["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["id"].as_str().unwrap().starts_with("tori.character.")));
    let bad = llc(&["tori-verify", "--input", input.to_str().unwrap(), "--check-filter", "[", "--format", "text"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn text_format_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let dest = dir.path().join("report.txt");
    let input = case("cyclic_four.json");
    let out = llc(&[
        "pairing",
        "--input",
        input.to_str().unwrap(),
        "--format",
        "text",
        "--output",
        dest.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&dest).unwrap();
    assert!(text.starts_with("command: pairing\n"));
    assert!(text.lines().any(|l| l.starts_with("PASS pairing.")));
    assert!(text.trim_end().ends_with("passed"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn library_and_binary_agree() {
    let bytes = fs::read(case("norm_one.json")).unwrap();
    let r = cli::run(cli::Command::Pairing, Some(&bytes), &cli::Options::default(), &cli::DiskCache::in_memory()).unwrap();
    let out = llc(&["pairing", "--input", case("norm_one.json").to_str().unwrap()]);
    assert_eq!(r.to_json().as_bytes(), out.stdout.as_slice());
}
