use std::process::Command as Process;

use branchlab_cli::{parse_rat_list, parse_zeta, run, BranchMethod, Command, Format, JobSpec, Report};

fn job(command: Command, realform: &str) -> JobSpec {
    JobSpec {
        command,
        algebra: None,
        realform: realform.to_string(),
        weight: None,
        bound: None,
        zeta: None,
        nu: None,
        method: BranchMethod::Kostant,
        output: None,
        format: Format::Structured,
    }
}

fn binary(args: &[&str]) -> (i32, String, String) {
    let out = Process::new(env!("CARGO_BIN_EXE_branchlab")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn branch_sl3r_11_has_two_so3_types() {
    let mut j = job(Command::Branch, "sl3R");
    j.weight = Some(vec![1, 1]);
    let report = run(&j).unwrap();
    let entries = report.results["entries"].as_array().unwrap();
    let dims: Vec<(i64, i64)> =
        entries.iter().map(|e| (e["dim"].as_i64().unwrap(), e["multiplicity"].as_i64().unwrap())).collect();
    assert_eq!(dims, vec![(3, 1), (5, 1)]);
    assert_eq!(report.results["checksum"].as_i64(), Some(8));
    assert!(report.all_passed());
}

#[test]
fn branch_oracle_agrees_in_table_form() {
    let (code, out, _) = binary(&["branch", "--realform", "sl3R", "--weight", "1,1", "--method", "oracle"]);
    assert_eq!(code, 0);
    assert!(out.contains("checksum 8"));
}

#[test]
fn spherical_sl2r_4_is_true() {
    let (code, out, _) = binary(&["spherical", "--realform", "sl2R", "--weight", "4"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "true");
}

#[test]
fn minimal_su21_nu_minus_two() {
    let mut j = job(Command::Minimal, "su21");
    j.zeta = Some(parse_zeta("").unwrap());
    j.nu = Some(parse_rat_list("-2").unwrap());
    let report = run(&j).unwrap();
    assert_eq!(report.results["minimal"], serde_json::json!([0, 2]));
    let (code, out, _) = binary(&["minimal", "--realform", "su21", "--zeta", "", "--nu", "-2"]);
    assert_eq!(code, 0);
    assert!(out.contains("(0, 2)"), "{out}");
}

#[test]
fn structured_output_is_deterministic() {
    let args = ["ps-params", "--realform", "su21", "--weight", "2,1", "--format", "structured"];
    let (c1, a, _) = binary(&args);
    let (c2, b, _) = binary(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
}

#[test]
fn structured_report_round_trips() {
    for (command, weight) in
        [(Command::Branch, Some(vec![2, 1])), (Command::Classify, None), (Command::Mstructure, None), (Command::PsParams, Some(vec![1, 2]))]
    {
        let mut j = job(command, "sp4R");
        j.weight = weight;
        let report = run(&j).unwrap();
        let text = report.to_structured();
        assert_eq!(Report::from_structured(&text).unwrap(), report);
        let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
        for field in ["schema_version", "job", "realform_summary", "results", "identity_checks"] {
            assert!(doc.get(field).is_some(), "missing {field}");
        }
    }
}

#[test]
fn exact_values_are_strings() {
    let mut j = job(Command::PsParams, "su21");
    j.weight = Some(vec![1, 0]);
    let report = run(&j).unwrap();
    assert!(report.results["xi"].as_array().unwrap().iter().all(|x| x.is_string()));
}

#[test]
fn verify_passes_on_small_weight() {
    let (code, out, err) = binary(&["verify", "--realform", "su21", "--weight", "1,1"]);
    assert_eq!(code, 0, "{out}{err}");
    assert!(!out.contains("FAIL"));
}

#[test]
fn fiber_lists_translates() {
    let (code, out, _) = binary(&["fiber", "--realform", "sl2R", "--zeta", "-1", "--nu", "", "--bound", "6"]);
    assert_eq!(code, 0);
    for m in ["(1)", "(3)", "(5)"] {
        assert!(out.contains(m), "{out}");
    }
    assert!(!out.contains("(2)"));
}

#[test]
fn exit_codes() {
    assert_eq!(binary(&["branch", "--realform", "sl3R", "--weight", "1,x"]).0, 2);
    assert_eq!(binary(&["branch", "--realform", "sl3R", "--weight", "1,-1"]).0, 2);
    assert_eq!(binary(&["branch", "--realform", "nosuch", "--weight", "1"]).0, 2);
    assert_eq!(binary(&["classify", "--realform", "sl3R", "--algebra", "B2"]).0, 2);
    let out = Process::new(env!("CARGO_BIN_EXE_branchlab"))
        .args(["branch", "--realform", "sl3R", "--weight", "5,5"])
        .env("BRANCHLAB_DIM_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn classify_and_mstructure_tables() {
    let (code, out, _) = binary(&["classify", "--realform", "su21", "--algebra", "A2"]);
    assert_eq!(code, 0);
    assert!(out.contains("real form"));
    let (code, out, _) = binary(&["mstructure", "--realform", "sl3R"]);
    assert_eq!(code, 0);
    assert!(out.contains("Z_2^2"), "{out}");
}

#[test]
fn realform_from_file() {
    let dir = std::env::temp_dir().join(format!("branchlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("theta.json");
    std::fs::write(&path, "{\"preset\": \"sl2R\"}").unwrap();
    let (code, out, _) = binary(&["spherical", "--realform", path.to_str().unwrap(), "--weight", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "false");
}
