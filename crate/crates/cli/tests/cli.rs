use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run_with_env(args: &[&str], tol_env: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_apollonius"));
    cmd.args(args).env_remove("APOLLONIUS_TOL");
    if let Some(t) = tol_env {
        cmd.env("APOLLONIUS_TOL", t);
    }
    cmd.output().expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    run_with_env(args, None)
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

#[test]
fn first_level_on_the_incenter_input() {
    let input = fixture("incenter.json");
    let out = run(&[
        "verify",
        "--theorem",
        "first-level",
        "--input",
        &input,
        "--tol",
        "1e-8",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["pass"], true);
    assert_eq!(report["theorem"], "first_level");
    let p = report["point"].as_array().unwrap();
    assert!((p[0].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert!((p[1].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert_eq!(report["tolerances"]["check"], 1e-8);
}

#[test]
fn solve_the_descartes_input() {
    let out = run(&["solve", "--input", &fixture("three_circles.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let radii: Vec<f64> = v["solutions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["cycle"]["radius"].as_f64().unwrap())
        .collect();
    assert_eq!(radii.len(), 2);
    assert!((radii[0] + 0.154700).abs() < 1e-6, "{radii:?}");
    assert!((radii[1] - 2.154701).abs() < 1e-6, "{radii:?}");
}

#[test]
fn inscribed_on_a_degenerate_input() {
    let out = run(&[
        "verify",
        "--theorem",
        "inscribed",
        "--input",
        &fixture("notgeneric.json"),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let v = stdout_json(&out);
    assert_eq!(v["error"]["code"], "DEGENERATE_CONFIGURATION");
    assert!(!out.stderr.is_empty());
}

#[test]
fn other_theorems_on_the_incenter_input() {
    let input = fixture("incenter.json");
    for theorem in ["two-step", "inscribed"] {
        let out = run(&[
            "verify",
            "--theorem",
            theorem,
            "--input",
            &input,
            "--seed",
            "3",
        ]);
        assert_eq!(out.status.code(), Some(0), "{theorem}");
        assert_eq!(stdout_json(&out)["pass"], true);
    }
}

#[test]
fn tolerance_precedence_is_flag_then_env_then_default() {
    let input = fixture("incenter.json");
    let args = ["verify", "--theorem", "first-level", "--input", &input];
    // an impossible env tolerance fails the check
    let out = run_with_env(&args, Some("1e-30"));
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["pass"], false);
    // the flag wins over the env
    let mut with_flag = args.to_vec();
    with_flag.extend(["--tol", "1e-8"]);
    assert_eq!(
        run_with_env(&with_flag, Some("1e-30")).status.code(),
        Some(0)
    );
    // JSON env form
    let out = run_with_env(&args, Some(r#"{"verify": 1e-6}"#));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["tolerances"]["check"], 1e-6);
    // malformed env
    assert_eq!(run_with_env(&args, Some("{nope")).status.code(), Some(2));
}

#[test]
fn scenarios_run_from_the_command_line() {
    for name in ["incenter", "circumcenter", "gasket", "morita3d"] {
        let out = run(&["scenario", "--name", name]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        let v = stdout_json(&out);
        assert_eq!(v["scenario"], name);
        assert!(v["configuration"]["cycles"].is_array());
    }
    let out = run(&["scenario", "--name", "olympiad", "--seed", "21"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["seed"], 21);

    let out = run(&["scenario", "--name", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scenario_params_file() {
    let dir = tempfile::tempdir().unwrap();
    let params = dir.path().join("params.json");
    std::fs::write(
        &params,
        r#"{"triangle": [[0, 0], [6, 0], [1, 4]], "circle_center": [2, 1], "circle_radius": 0.25}"#,
    )
    .unwrap();
    let out = run(&[
        "scenario",
        "--name",
        "incenter",
        "--params",
        params.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));

    std::fs::write(&params, r#"{"unknown": 1}"#).unwrap();
    let out = run(&[
        "scenario",
        "--name",
        "incenter",
        "--params",
        params.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout_json(&out)["error"]["code"], "PARSE_ERROR");
}

#[test]
fn random_output_is_a_valid_configuration() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["random", "--dim", "3", "--seed", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("rejected"));
    let path = dir.path().join("random.json");
    std::fs::write(&path, &out.stdout).unwrap();
    let check = run(&[
        "verify",
        "--theorem",
        "first-level",
        "--input",
        path.to_str().unwrap(),
    ]);
    assert_eq!(check.status.code(), Some(0));
    assert_eq!(
        run(&["random", "--dim", "3", "--seed", "5"]).stdout,
        out.stdout
    );
}

#[test]
fn identical_invocations_give_identical_bytes() {
    let input = fixture("incenter.json");
    let args = [
        "verify",
        "--theorem",
        "inscribed",
        "--input",
        &input,
        "--seed",
        "9",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["scenario", "--name", "soddy_line", "--seed", "4"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn render_writes_a_well_formed_svg() {
    let dir = tempfile::tempdir().unwrap();
    let svg_path = dir.path().join("incenter.svg");
    let out = run(&[
        "render",
        "--input",
        &fixture("incenter.json"),
        "--output",
        svg_path.to_str().unwrap(),
        "--overlay",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let svg = std::fs::read_to_string(&svg_path).unwrap();
    let doc = roxmltree::Document::parse(&svg).unwrap();
    for node in doc.descendants().filter(|n| n.is_element()) {
        assert!(["svg", "g", "circle", "line", "text"].contains(&node.tag_name().name()));
    }
    let count = |class: &str| {
        doc.descendants()
            .filter(|n| n.attribute("class") == Some(class))
            .count()
    };
    assert_eq!(count("inscribed"), 1);
    assert_eq!(count("theorem-line"), 3);
    assert_eq!(count("point-px"), 1);

    let again = dir.path().join("again.svg");
    run(&[
        "render",
        "--input",
        &fixture("incenter.json"),
        "--output",
        again.to_str().unwrap(),
        "--overlay",
    ]);
    assert_eq!(std::fs::read(&again).unwrap(), svg.as_bytes());
}

#[test]
fn invalid_documents_report_a_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"dimension": 2, "cycles": [{"type": "sphere", "center": [0, 0], "radius": 0}]}"#,
    )
    .unwrap();
    let out = run(&["solve", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let v = stdout_json(&out);
    assert_eq!(v["error"]["code"], "VALIDATION_ERROR");
    assert_eq!(v["error"]["path"], "cycles[0].radius");

    std::fs::write(&path, "{\"dimension\": 2,\n \"cycles\": [}").unwrap();
    let out = run(&["solve", "--input", path.to_str().unwrap()]);
    let v = stdout_json(&out);
    assert_eq!(v["error"]["code"], "PARSE_ERROR");
    assert_eq!(v["error"]["line"], 2);
}

#[test]
fn rendering_three_dimensions_fails() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = run(&["random", "--dim", "3", "--seed", "1"]);
    let input = dir.path().join("r3.json");
    std::fs::write(&input, &cfg.stdout).unwrap();
    let out = run(&[
        "render",
        "--input",
        input.to_str().unwrap(),
        "--output",
        dir.path().join("x.svg").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout_json(&out)["error"]["code"], "UNSUPPORTED_DIMENSION");
}
