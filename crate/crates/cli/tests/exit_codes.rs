use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use detscheme::Report;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_detscheme")).args(args).output().expect("binary runs")
}

fn mutation(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/mutations").join(name).display().to_string()
}

fn report(out: &Output) -> Report {
    serde_json::from_slice(&out.stdout).expect("json report on stdout")
}

#[test]
fn success_exits_zero() {
    let out = bin(&["--json", "classify", "point_square"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert!(r.ok && r.failed_invariant.is_none());
    assert_eq!(r.command, "classify");
}

#[test]
fn human_output_is_text() {
    let out = bin(&["cm-type", "hilbert_burch"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("CM type 2"), "{text}");
}

#[test]
fn input_errors_exit_two() {
    for name in [
        "inhomogeneous.toml",
        "ragged.toml",
        "bad_twists.toml",
        "unknown_key.toml",
        "unknown_variable.toml",
        "composite_modulus.toml",
        "future_schema.toml",
        "missing_field.toml",
        "bad_d_max.toml",
    ] {
        let out = bin(&["--json", "classify", &mutation(name)]);
        assert_eq!(out.status.code(), Some(2), "{name}");
        assert!(out.stdout.is_empty(), "{name}");
        assert!(!out.stderr.is_empty(), "{name}");
    }
    assert_eq!(bin(&["classify", "no_such_fixture"]).status.code(), Some(2));
    assert_eq!(bin(&["minors", "--size", "5", "point_square"]).status.code(), Some(2));
    assert_eq!(bin(&["section", "--row", "9", "hilbert_burch"]).status.code(), Some(2));
    assert_eq!(bin(&["complex", "--kind", "xx", "point_square"]).status.code(), Some(2));
    assert_eq!(bin(&["classify"]).status.code(), Some(2));
}

#[test]
fn verification_failures_exit_one_and_name_the_invariant() {
    let cases: [(&[&str], &str); 5] = [
        (&["annihilator", "HD"], "precondition"),
        (&["flag", "point_square"], "precondition"),
        (&["canonical", "point_square"], "precondition"),
        (&["section", "--witness", "point_square"], "precondition"),
        (&["betti", "UE"], "minimality"),
    ];
    let hd = mutation("height_deficient.toml");
    let ue = mutation("unit_entry.toml");
    for (args, invariant) in cases {
        let mut argv: Vec<&str> = vec!["--json"];
        argv.extend(args.iter().map(|a| match *a {
            "HD" => hd.as_str(),
            "UE" => ue.as_str(),
            other => other,
        }));
        let out = bin(&argv);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        let r = report(&out);
        assert!(!r.ok);
        assert!(r.failed_invariant.as_deref().is_some_and(|f| f.starts_with(invariant)), "{args:?}: {:?}", r.failed_invariant);
    }
}

#[test]
fn deficient_matrix_classifies_without_failing() {
    let out = bin(&["--json", "classify", &mutation("height_deficient.toml")]);
    assert_eq!(out.status.code(), Some(0));
    match report(&out).result {
        detscheme::Body::Classify(c) => assert!(!c.is_standard && !c.is_good),
        other => panic!("{other:?}"),
    }
}

#[test]
fn seed_flag_overrides_the_file() {
    let r = report(&bin(&["--json", "--seed", "99", "classify", "coordinate_axes"]));
    assert_eq!(r.seed, 99);
    let r = report(&bin(&["--json", "classify", "coordinate_axes"]));
    assert_eq!(r.seed, 7);
}

#[test]
fn examples_pass_and_tampering_is_caught() {
    let out = bin(&["examples"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));

    let dir: PathBuf = std::env::temp_dir().join(format!("detscheme-golden-{}", std::process::id()));
    let dir_s = dir.display().to_string();
    assert_eq!(bin(&["examples", "--bless", "--golden-dir", &dir_s]).status.code(), Some(0));
    assert_eq!(bin(&["examples", "--golden-dir", &dir_s]).status.code(), Some(0));
    let path = dir.join("hilbert_burch.json");
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::write(&path, text.replacen("\"cm_type\": 2", "\"cm_type\": 3", 1)).unwrap();
    let out = bin(&["--json", "examples", "--golden-dir", &dir_s]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert!(r.failed_invariant.unwrap().contains("hilbert_burch cm-type: mismatch"));
    std::fs::remove_dir_all(&dir).unwrap();
}
