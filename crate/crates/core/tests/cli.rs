use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

use pdiscrete::cli::{run, Bounds, Outcome};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data").join(name).display().to_string()
}

fn pdiscrete(args: &[&str]) -> Outcome {
    run(std::iter::once("pdiscrete").chain(args.iter().copied()), |_| None)
}

fn json(out: &Outcome) -> Value {
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn error(out: &Outcome) -> Value {
    let last = out.stderr.lines().last().unwrap();
    serde_json::from_str(last).unwrap()
}

#[test]
fn snf_of_the_two_by_two_example() {
    let v = json(&pdiscrete(&["snf", "--matrix", "2,4;6,8"]));
    assert_eq!(v["smith"]["diagonal"], serde_json::json!([2, 4]));
    let from_file = json(&pdiscrete(&["snf", "--input", &data("snf.json")]));
    assert_eq!(from_file, v);
}

#[test]
fn root_gives_two_artin_schreier_expansions() {
    let v = json(&pdiscrete(&["root", "--input", &data("as_f2.json"), "--order", &data("lex1.json"), "--cutoff", "2", "--max-steps", "20"]));
    let e = &v["expansion"];
    assert_eq!(e["complete"], true);
    assert_eq!(e["roots"].as_array().unwrap().len(), 2);
    for r in e["roots"].as_array().unwrap() {
        assert_eq!(r["branchLog"][0]["method"], "artin_schreier");
    }
}

#[test]
fn bertini_scan_csv_and_json_agree() {
    let args = ["bertini-scan", "--input", &data("bertini_f3.json"), "--cone", &data("orthant2.json"), "--bound", "3", "--absolute"];
    let j = json(&pdiscrete(&args));
    let mut csv_args = args.to_vec();
    csv_args.extend(["--format", "csv"]);
    let csv = pdiscrete(&csv_args);
    assert_eq!(csv.code, 0);
    let lines: Vec<&str> = csv.stdout.lines().collect();
    assert_eq!(lines[0], "n1,n2,irreducible,factor_degrees,extension_degree");
    assert_eq!(lines.len() - 1, j["directions"].as_array().unwrap().len());
    // y² − t₁ restricted to n is reducible exactly for even n₁
    for d in j["directions"].as_array().unwrap() {
        assert_eq!(d["irreducible"], d["n"][0].as_i64().unwrap() % 2 == 1);
    }
}

#[test]
fn series_expression_matches_the_library() {
    let v = json(&pdiscrete(&["series", "--input", &format!("a={}", data("geom_a.json")), "--input", &format!("b={}", data("geom_b.json")), "--expr", "(a + b)^2 - a*a - b*b"]));
    // in characteristic 2 the cross terms vanish
    assert_eq!(v["result"]["terms"], serde_json::json!([]));
    let w = json(&pdiscrete(&["series", "--input", &format!("a={}", data("geom_a.json")), "--expr", "frob(pth_root(a)) - a"]));
    assert_eq!(w["result"]["terms"], serde_json::json!([]));
    assert!(w["valuation"].is_null() || w["valuation"] == "inf");
}

#[test]
fn subst_and_witness() {
    let v = json(&pdiscrete(&["subst", "--input", &data("subst_in.json"), "--n", "3,1", "--theta", "1,1", "--witness"]));
    let exps: Vec<i64> = v["phi"]["image"]["terms"].as_array().unwrap().iter().map(|t| t["exp"]["num"][0].as_i64().unwrap()).collect();
    assert_eq!(exps, vec![1, 3, 9]);
    assert_eq!(v["witness"]["result"], "IsPossiblyPolynomial");
}

#[test]
fn pdiscrete_check_reports_certificates_and_violations() {
    let v = json(&pdiscrete(&["pdiscrete-check", "--input", &data("support_as.json")]));
    assert_eq!(v["pdiscrete"], true);
    let dir = tempdir();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"p": 2, "d": 1, "families": [{"limit": [0], "seed": [1]}]}"#).unwrap();
    let v = json(&pdiscrete(&["pdiscrete-check", "--input", bad.to_str().unwrap()]));
    assert_eq!(v["pdiscrete"], false);
    assert_eq!(v["condition"], "(a)");
}

#[test]
fn trop_line_section_and_connectivity() {
    let v = json(&pdiscrete(&["trop", "--input", &data("trop_line.json"), "--hyperplane", "1,0;1", "--connectivity", "1"]));
    assert_eq!(v["complex"]["top"].as_array().unwrap().len(), 3);
    assert_eq!(v["intersection"]["transverse"], true);
    assert_eq!(v["intersection"]["complex"]["cells"].as_array().unwrap().len(), 1);
    assert_eq!(v["connectivity"]["connected"], true);
    let plane = json(&pdiscrete(&["trop", "--input", &data("trop_plane.json"), "--connectivity", "2"]));
    assert_eq!(plane["connectivity"]["connected"], true);
}

#[test]
fn pb_falsify_finds_the_square() {
    let v = json(&pdiscrete(&["pb-falsify", "--input", &data("bertini_f3.json"), "--bound", "2"]));
    assert_eq!(v["witness"]["factorization"]["factors"].as_array().unwrap().len(), 2);
}

#[test]
fn exit_codes() {
    let out = pdiscrete(&["bogus"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("Usage"));
    assert_eq!(error(&out)["error"]["kind"], "UsageError");

    let out = pdiscrete(&["snf", "--input", "/nonexistent/m.json"]);
    assert_eq!(out.code, 3);

    let dir = tempdir();
    let broken = dir.join("broken.json");
    std::fs::write(&broken, r#"{"field": {"p": 3, "k": 1}, "d": "two", "poly": "y - t"}"#).unwrap();
    let out = pdiscrete(&["bertini-scan", "--input", broken.to_str().unwrap()]);
    assert_eq!(out.code, 3);
    let e = error(&out);
    assert_eq!(e["error"]["kind"], "ParseError");
    assert_eq!(e["error"]["pointer"], "/d");

    let out = pdiscrete(&["bertini-scan", "--input", &data("bertini_f3.json"), "--bound", "9"]);
    assert_eq!(out.code, 1);
    assert_eq!(error(&out)["error"]["kind"], "Refused");

    let nine = |k: &str| (k == "PDISCRETE_MAX_BOX").then(|| "9".to_string());
    let out = run(["pdiscrete", "bertini-scan", "--input", &data("bertini_f3.json"), "--bound", "9"], nine);
    assert_eq!(out.code, 0);

    let out = pdiscrete(&["trop", "--input", &data("trop_plane.json"), "--connectivity", "4"]);
    assert_eq!(out.code, 1);
}

#[test]
fn env_bounds() {
    assert_eq!(Bounds::from_env(|_| None).unwrap(), Bounds::default());
    let b = Bounds::from_env(|k| (k == "PDISCRETE_MAX_DEPTH").then(|| "12".into())).unwrap();
    assert_eq!(b.max_depth, 12);
    assert!(Bounds::from_env(|_| Some("lots".into())).is_err());
}

#[test]
fn output_is_deterministic_and_written_to_out() {
    let dir = tempdir();
    let out = dir.join("scan.json");
    let args = ["bertini-scan", "--input", &data("bertini_f3.json"), "--theta", "random", "--seed", "42", "--bound", "3"];
    let a = pdiscrete(&args);
    let b = pdiscrete(&args);
    assert_eq!(a, b);
    let mut with_out = args.to_vec();
    with_out.extend(["--out", out.to_str().unwrap()]);
    let c = pdiscrete(&with_out);
    assert_eq!(c.code, 0);
    assert!(c.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&out).unwrap(), a.stdout);
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_pdiscrete");
    let ok = Command::new(bin).args(["snf", "--matrix", "2,4;6,8"]).output().unwrap();
    assert!(ok.status.success());
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["smith"]["diagonal"], serde_json::json!([2, 4]));
    let bad = Command::new(bin).arg("frobnicate").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

fn tempdir() -> PathBuf {
    use std::sync::atomic::{AtomicUsize, Ordering};
    static N: AtomicUsize = AtomicUsize::new(0);
    let d = std::env::temp_dir().join(format!("pdiscrete-cli-{}-{}", std::process::id(), N.fetch_add(1, Ordering::SeqCst)));
    std::fs::create_dir_all(&d).unwrap();
    d
}
