use minorforge::cli::run;
use minorforge::resolve::BettiTable;
use std::path::PathBuf;

fn mf(args: &[&str]) -> minorforge::cli::Outcome {
    run(std::iter::once("minorforge").chain(args.iter().copied()))
}

fn golden(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn betti_text_matches_golden_files() {
    let cases: [(&str, &[&str]); 5] = [
        (
            "twisted_cubic_quotient.betti",
            &["betti", "--vars", "a,b,c,d", "--gens", "b^2-a*c,b*c-a*d,c^2-b*d", "--quotient"],
        ),
        ("ex1.betti", &["betti", "--vars", "a,b,c,d", "--gens", "a^2*b,a^2*c,a*b*d,b^2*d"]),
        ("veronese.betti", &["betti", "--family", "symmetric:3", "--j", "2"]),
        ("m3x5_maximal.betti", &["betti", "--family", "paper:m3x5"]),
        ("scroll_2_2.betti", &["betti", "--family", "scroll:2,2", "--j", "2"]),
    ];
    for (file, args) in cases {
        let out = mf(args);
        assert_eq!(out.code, 0, "{file}: {}", out.stderr);
        let want = golden(file);
        assert_eq!(out.stdout, want, "{file}");
        let parsed = BettiTable::parse(&want).unwrap();
        assert_eq!(parsed.to_text(), want);
    }
}

#[test]
fn heights_of_the_four_by_five_matrix() {
    let out = mf(&["heights", "--family", "paper:m4x5"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("I4: 2\nI3: 2\n"), "{}", out.stdout);
}

#[test]
fn linear_powers_of_a_scroll() {
    let out = mf(&["linear-powers", "--family", "scroll:2,2", "--kmax", "3"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("verdict: linear for k <= 3"), "{}", out.stdout);
    let json = mf(&["linear-powers", "--family", "scroll:2,2", "--kmax", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
    assert_eq!(v["powers"][1]["reg"], 4);
    assert_eq!(v["powers"][1]["betti"]["ranks"], serde_json::json!([20, 40, 28, 8, 1]));
}

#[test]
fn rees_report_schema() {
    let out = mf(&["rees", "--vars", "a,b,c,d", "--gens", "a^2*b,a^2*c,a*b*d,b^2*d", "--format", "json"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    for k in ["mu", "P_gens", "bidegrees", "linear_type", "fiber_type", "quadratic_gb", "reg10"] {
        assert!(keys.contains(&k), "missing {k}");
    }
    assert_eq!(v["reg10"], 0);
    assert_eq!(v["fiber_type"], false);
    let skipped = mf(&["rees", "--vars", "a,b,c,d", "--gens", "a^2*b,a^2*c,a*b*d,b^2*d", "--format", "json", "--budget", "4"]);
    let v: serde_json::Value = serde_json::from_str(&skipped.stdout).unwrap();
    assert_eq!(v["reg10"], "skipped");
}

#[test]
fn example_bundles_pass() {
    for id in ["ex1", "abw-projdim", "m4x5"] {
        let out = mf(&["paper-examples", id]);
        assert_eq!(out.code, 0, "{id}: {}", out.stdout);
        assert!(!out.stdout.contains("[FAIL]"));
    }
}

#[test]
fn exit_codes() {
    assert_eq!(mf(&["paper-examples", "ex9"]).code, 2);
    assert_eq!(mf(&["gb", "--vars", "x,y", "--gens", "x^^2"]).code, 2);
    assert_eq!(mf(&["gb", "--vars", "x,y", "--gens", "x+y^2"]).code, 2);
    assert_eq!(mf(&["betti", "--family", "bogus:1"]).code, 2);
    assert_eq!(mf(&["frobnicate"]).code, 2);
    assert_eq!(mf(&["gb", "--vars", "x,y", "--gens", "x^2,y^2", "--max-pairs", "0"]).code, 3);
    assert_eq!(mf(&["--help"]).code, 0);
}

#[test]
fn json_reports_are_deterministic() {
    let args = ["rees", "--family", "scroll:2,2", "--j", "2", "--format", "json", "--jobs", "2"];
    let a = mf(&args);
    let b = mf(&args);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    let args = ["perturb", "--family", "paper:m3x5", "--seed", "11", "--format", "json"];
    assert_eq!(mf(&args).stdout, mf(&args).stdout);
}

#[test]
fn gb_under_lex() {
    let out = mf(&["gb", "--vars", "x,y", "--gens", "x^2-y,x*y-1", "--order", "lex"]);
    assert_eq!(out.code, 2, "inhomogeneous input is rejected");
    let out = mf(&["gb", "--vars", "x,y,z", "--gens", "x^2-y*z,x*y-z^2", "--order", "lex"]);
    assert_eq!(out.code, 0);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert!(lines.len() >= 2);
}

#[test]
fn hypotheses_and_minors() {
    let out = mf(&["check-hypotheses", "--family", "generic:2x4", "--hyp", "ABWEH", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["verdict"], true);
    assert_eq!(v["N"], 8);
    let out = mf(&["minors", "--family", "scroll:3"]);
    assert_eq!(out.stdout.lines().count(), 3);
}
