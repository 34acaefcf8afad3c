use cli_io::corpus::BUNDLED;
use cli_io::{run_with_corpus, Corpus, Output, EXIT_INVALID, EXIT_OK, EXIT_USAGE};
use proptest::prelude::*;
use serde_json::Value;
use std::process::Command;

fn run(args: &[&str]) -> Output {
    let argv = std::iter::once("orbidim").chain(args.iter().copied());
    run_with_corpus(argv, &Corpus::Bundled)
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all);
    let value = serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", out.stdout));
    (out.code, value)
}

fn scratch_dir(tag: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("orbidim-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn validate_exit_codes() {
    assert_eq!(run(&["validate", "ex-3-9-order3.osd"]).code, EXIT_OK);
    assert_eq!(run(&["validate", "ex-exam2-cover2"]).code, EXIT_INVALID);
    assert_eq!(run(&["validate", "no-such-file"]).code, EXIT_USAGE);
    assert_eq!(run(&["validate"]).code, EXIT_USAGE);
    assert_eq!(run(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(run(&["winding", "--order", "two", "ex-perm-8"]).code, EXIT_USAGE);
}

#[test]
fn help_and_version_succeed() {
    for args in [&["--help"][..], &["--version"], &["verify-main", "--help"]] {
        let out = run(args);
        assert_eq!(out.code, EXIT_OK);
        assert!(!out.stdout.is_empty());
    }
}

#[test]
fn validation_reports_the_failing_condition() {
    let (code, v) = json(&["validate", "ex-exam2-cover2"]);
    assert_eq!(code, EXIT_INVALID);
    assert_eq!(v["valid"], false);
    assert_eq!(v["conditions"]["4"], false);
    for c in ["1", "2", "3", "5"] {
        assert_eq!(v["conditions"][c], true);
    }
}

#[test]
fn every_corpus_file_validates_except_the_bigon_cover() {
    for (name, _) in BUNDLED {
        let (code, v) = json(&["validate", name]);
        let expected = *name != "ex-exam2-cover2.osd";
        assert_eq!(v["valid"], expected, "{name}");
        assert_eq!(code, if expected { EXIT_OK } else { EXIT_INVALID }, "{name}");
    }
}

#[test]
fn winding_of_the_order_five_example() {
    let (code, v) = json(&["winding", "ex-4-10-order5"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["order"], 5);
    assert_eq!(v["max"], 4);
    assert_eq!(v["orbifold"], true);
    let (code, v) = json(&["winding", "--order", "4", "ex-4-10-order5"]);
    assert_eq!(code, EXIT_INVALID);
    assert_eq!(v["orbifold"], false);
}

#[test]
fn cover_output_is_a_valid_diagram() {
    let out = run(&["cover", "--d", "3", "ex-exam2-order3"]);
    assert_eq!(out.code, EXIT_OK);
    let dir = scratch_dir("cover");
    let path = dir.join("c.osd");
    std::fs::write(&path, &out.stdout).unwrap();
    assert_eq!(run(&["validate", path.to_str().unwrap()]).code, EXIT_OK);
    let back = run(&["quotient", "--order", "3", path.to_str().unwrap()]);
    assert_eq!(back.code, EXIT_OK);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn labels_agree_between_methods() {
    for name in ["ex-exam2-order3", "ex-4-10-order5", "ex-3-9-order3"] {
        let (code, v) = json(&["labels", name]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(v["agreement"], true, "{name}");
        assert_eq!(v["disagreeing"].as_array().unwrap().len(), 0);
    }
}

#[test]
fn module_report_matches_the_skew_end() {
    let (code, v) = json(&["modules", "--N", "12", "ex-3-9-order3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["end_T"], 1764);
    assert_eq!(v["R2"], v["end_T"]);
    for m in v["modules"].as_array().unwrap() {
        assert_eq!(m["induced_isomorphic"], true);
    }
}

#[test]
fn flipped_relation_fails_verification() {
    assert_eq!(run(&["verify-main", "ex-4-10-order5"]).code, EXIT_OK);
    assert_eq!(run(&["verify-main", "--flip", "0", "ex-4-10-order5"]).code, EXIT_INVALID);
}

#[test]
fn reports_are_deterministic() {
    for args in [&["labels", "ex-exam2-order3"][..], &["qp", "ex-3-9-order3"], &["render", "ex-perm-8"]] {
        assert_eq!(run(args), run(args));
    }
}

#[test]
fn svg_renders_are_well_formed() {
    for (name, _) in BUNDLED {
        for extra in [&[][..], &["--quiver"]] {
            let mut args = vec!["render", "--format", "svg"];
            args.extend_from_slice(extra);
            args.push(name);
            let out = run(&args);
            if *name == "ex-exam2-cover2.osd" && !extra.is_empty() {
                assert_eq!(out.code, EXIT_INVALID);
                continue;
            }
            assert_eq!(out.code, EXIT_OK, "{name}: {}", out.stderr);
            let doc = roxmltree::Document::parse(&out.stdout).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(doc.root_element().tag_name().name(), "svg");
            assert!(doc.descendants().any(|n| n.has_tag_name("path") || n.has_tag_name("line")));
        }
    }
}

#[test]
fn tikz_renders_are_balanced() {
    for (name, _) in BUNDLED {
        let out = run(&["render", "--format", "tikz", name]);
        assert_eq!(out.code, EXIT_OK);
        assert!(out.stdout.contains("\\begin{tikzpicture}"));
        assert!(out.stdout.trim_end().ends_with("\\end{tikzpicture}"));
    }
}

#[test]
fn directory_corpus_replaces_the_bundled_one() {
    let dir = scratch_dir("dir");
    std::fs::write(dir.join("only.osd"), BUNDLED[1].1).unwrap();
    let corpus = Corpus::Dir(dir.clone());
    assert_eq!(corpus.list().unwrap(), vec!["only.osd"]);
    let out = run_with_corpus(["orbidim", "validate", "only"], &corpus);
    assert_eq!(out.code, EXIT_OK);
    let out = run_with_corpus(["orbidim", "validate", "ex-perm-8"], &corpus);
    assert_eq!(out.code, EXIT_USAGE);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn binary_honours_the_corpus_environment_variable() {
    let bin = env!("CARGO_BIN_EXE_orbidim");
    let dir = scratch_dir("env");
    std::fs::write(dir.join("mine.osd"), BUNDLED[3].1).unwrap();
    let listed = Command::new(bin).args(["corpus", "list"]).env("ORBIDIM_CORPUS_DIR", &dir).output().unwrap();
    assert_eq!(listed.status.code(), Some(EXIT_OK));
    let text = String::from_utf8(listed.stdout).unwrap();
    let names: Vec<_> = text.lines().skip(1).filter_map(|l| l.split_whitespace().next()).collect();
    assert_eq!(names, ["mine.osd"]);
    let missing = Command::new(bin)
        .args(["validate", "mine"])
        .env("ORBIDIM_CORPUS_DIR", dir.join("nowhere"))
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(EXIT_USAGE));
    let bundled = Command::new(bin).args(["validate", "ex-perm-8"]).env_remove("ORBIDIM_CORPUS_DIR").output().unwrap();
    assert_eq!(bundled.status.code(), Some(EXIT_OK));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn malformed_files_are_validation_failures() {
    let dir = scratch_dir("bad");
    std::fs::write(dir.join("bad.osd"), "this is not a diagram\n").unwrap();
    let out = run_with_corpus(["orbidim", "validate", "bad.osd"], &Corpus::Dir(dir.clone()));
    assert_eq!(out.code, EXIT_INVALID);
    assert!(out.stderr.starts_with("orbidim: "));
    std::fs::remove_dir_all(dir).unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn arbitrary_arguments_never_panic(args in prop::collection::vec("[a-z0-9.-]{0,12}", 0..4)) {
        let out = run(&args.iter().map(String::as_str).collect::<Vec<_>>());
        prop_assert!([EXIT_OK, EXIT_INVALID, EXIT_USAGE].contains(&out.code));
    }
}
