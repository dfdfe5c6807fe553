use std::process::Command;

use cubicfold_cli::run_command;
use serde_json::Value;

fn run(args: &str) -> cubicfold_cli::Outcome {
    run_command(std::iter::once("cubicfold").chain(args.split_whitespace()))
}

fn json(args: &str) -> (i32, Value) {
    let out = run(&format!("{args} --format json"));
    assert!(out.stderr.is_empty(), "{}", out.stderr);
    (out.code, serde_json::from_str(&out.stdout).expect("report is json"))
}

fn record<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["records"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["name"] == name)
        .unwrap_or_else(|| panic!("no record {name}"))
}

/// Exit 0 iff every record verified, 2 if any is refuted, 3 otherwise.
fn expected_code(report: &Value) -> i32 {
    let statuses: Vec<&str> = report["records"].as_array().unwrap().iter().map(|r| r["status"].as_str().unwrap()).collect();
    if statuses.contains(&"refuted") {
        2
    } else if statuses.contains(&"inconclusive") {
        3
    } else {
        0
    }
}

#[test]
fn lemmas_exact_n4() {
    let (code, r) = json("verify lemmas --n 4 --mode exact");
    assert_eq!(code, 0);
    assert_eq!(expected_code(&r), 0);
    let lemma5: Vec<&Value> = r["records"].as_array().unwrap().iter().filter(|x| x["anchor"] == "Lemma 5").collect();
    assert!(!lemma5.is_empty());
    assert!(lemma5.iter().all(|x| x["status"] == "verified" && x["mode"] == "exact"));
    let names: Vec<&str> = r["records"].as_array().unwrap().iter().map(|x| x["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["config"]["prime_range"], serde_json::json!([10000, 1000000]));
}

#[test]
fn lemmas_modular_n5_with_mutations() {
    let (code, r) = json("verify lemmas --n 5 --mode modular");
    assert_eq!(code, 0);
    let m = record(&r, "mutation/five");
    assert_eq!(m["status"], "verified");
    assert!(m["detail"]["refuted"].as_u64().unwrap() >= 19);
    assert_eq!(r["config"]["samples"], 20);
    let five = record(&r, "five/cubic_s3_s4");
    assert_eq!(five["witnesses"].as_array().unwrap().len(), 20);
}

#[test]
fn same_seed_same_bytes() {
    for args in ["verify lemmas --n 5 --mode modular", "geiser check --trials 50", "unirational --paper-surface --specialize 103"] {
        let a = run(&format!("{args} --seed 7 --format json"));
        let b = run(&format!("--seed 7 {args} --format json"));
        assert_eq!(a, b, "{args}");
        let c = run(&format!("{args} --seed 8 --format json"));
        assert_ne!(a.stdout, c.stdout, "{args}");
    }
}

#[test]
fn paper_surface_is_not_rational() {
    let (code, r) = json("cubic rationality --paper-surface");
    assert_eq!(code, 0);
    assert_eq!(record(&r, "cubic/rationality/verdict")["detail"]["verdict"], "not_rational");
    for p in ["{1,2}{3,4}", "{1,3}{2,4}", "{1,4}{2,3}"] {
        assert_eq!(record(&r, &format!("cubic/rationality/pairing{p}"))["detail"]["test"], "not_cube");
    }
    assert_eq!(record(&r, "cubic/unit_points")["status"], "verified");
}

#[test]
fn inline_and_file_coefficients_agree() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("coeffs.txt");
    std::fs::write(&path, "# Fermat\na1 = 1\na2 = 1\n\na3 = 1\na4 = 2^3/8  # still one\n").unwrap();
    let from_file = run(&format!("cubic lines --coeffs {}", path.display()));
    let inline = run("cubic lines --coeffs 1,1,1,1");
    assert_eq!(from_file.code, 0, "{}", from_file.stderr);
    assert_eq!(from_file.stdout, inline.stdout);

    std::fs::write(&path, "a1 = 1\na2 = 1\na4 = 1\n").unwrap();
    let missing = run(&format!("cubic lines --coeffs {}", path.display()));
    assert_eq!(missing.code, 1);
    assert!(missing.stderr.contains("missing a3"), "{}", missing.stderr);

    std::fs::write(&path, "a1 = 1\na2 = s3 +\na3 = 1\na4 = 1\n").unwrap();
    let bad = run(&format!("cubic lines --coeffs {}", path.display()));
    assert_eq!(bad.code, 1);
    assert!(bad.stderr.contains("coeffs.txt:2:"), "{}", bad.stderr);
}

#[test]
fn usage_and_parse_errors_exit_one() {
    for args in [
        "verify lemmas --n 6",
        "cubic lines --coeffs 1,2,3",
        "cubic lines --coeffs 1,2,x,4",
        "cubic lines --coeffs 1,2,3,4 --paper-surface",
        "cubic lines --coeffs 1,0,3,4",
        "cubic eckardt --coeffs 1,2,3,4 --prime 10007",
        "unirational --coeffs 1,1,1,-3",
        "unirational --paper-surface",
        "frobnicate",
    ] {
        let out = run(args);
        assert_eq!(out.code, 1, "{args}: {out:?}");
        assert!(out.stdout.is_empty() && !out.stderr.is_empty(), "{args}");
    }
    let out = run("cubic lines --coeffs 1,2,+");
    assert!(out.stderr.contains("1:5"), "{}", out.stderr);
    assert_eq!(run("--help").code, 0);
}

#[test]
fn exit_codes_follow_statuses() {
    // a1 a3 / (a2 a4) = 1 is a cube, but no rational point is known
    let (code, r) = json("cubic rationality --coeffs 1,1,2,2");
    assert_eq!(code, 3);
    assert_eq!(expected_code(&r), 3);
    let (code, r) = json("cubic rationality --coeffs 1,1,2,2 --point 1,-1,0,0");
    assert_eq!(code, 0);
    assert_eq!(record(&r, "cubic/rationality/verdict")["detail"]["verdict"], "rational");
    for args in ["cubic eckardt --coeffs 1,2,3,4 --prime 103", "cubic lines --paper-surface", "geiser check --trials 40"] {
        let (code, r) = json(args);
        assert_eq!(code, expected_code(&r), "{args}");
    }
}

#[test]
fn unirational_over_q_omega() {
    // the fibre at s3 = 2, s4 = 5
    let (code, r) = json("unirational --coeffs 30,-2,20,-48 --point 1,1,1,1");
    assert_eq!(code, 0);
    assert_eq!(record(&r, "unirational/construction")["detail"]["claimed_degree"], 6);
    assert_eq!(record(&r, "unirational/image_on_surface")["status"], "verified");
    let (code, r) = json("unirational --paper-surface --specialize 103");
    assert_eq!(code, 0);
    assert_eq!(record(&r, "unirational/tangency_fiber")["status"], "verified");
}

#[test]
fn timing_is_opt_in() {
    let (_, r) = json("geiser check --trials 20");
    assert!(r["records"].as_array().unwrap().iter().all(|x| x["timing_ms"].is_null()));
    let (_, r) = json("geiser check --trials 20 --timing");
    assert!(r["records"].as_array().unwrap().iter().all(|x| x["timing_ms"].is_u64()));
}

#[test]
fn binary_reads_seed_from_environment() {
    let bin = env!("CARGO_BIN_EXE_cubicfold");
    let go = |env: Option<&str>, extra: &[&str]| {
        let mut c = Command::new(bin);
        c.args(["geiser", "check", "--trials", "20", "--format", "json"]).args(extra);
        match env {
            Some(v) => c.env("CUBICFOLD_SEED", v),
            None => c.env_remove("CUBICFOLD_SEED"),
        };
        let out = c.output().unwrap();
        (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
    };
    let (code, from_env) = go(Some("99"), &[]);
    assert_eq!(code, 0);
    assert!(from_env.contains("\"seed\": 99"));
    assert_eq!(go(None, &["--seed", "99"]).1, from_env);
    assert!(go(Some("5"), &["--seed", "99"]).1 == from_env);
    assert_eq!(go(Some("not-a-number"), &[]).0, 1);
}

#[test]
fn paper_coefficients_match_the_fibre_surface() {
    use cubicfold::cubicsurf::paper_surface;
    use cubicfold::expr::lower_ratfunc;
    use cubicfold::fields::CycloField;
    let s = paper_surface(CycloField);
    for (e, a) in cubicfold_cli::paper_coeffs().iter().zip(s.coeffs()) {
        assert_eq!(&lower_ratfunc(e, s.field()).unwrap(), a);
    }
}
