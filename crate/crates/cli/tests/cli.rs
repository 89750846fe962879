//! End-to-end tests of the binary: flag grammar, JSON shapes, exit codes,
//! and byte-for-byte determinism.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minoralg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn canonical_at_matches_reference_output() {
    let out = run(&[
        "canonical",
        "--m",
        "4",
        "--n",
        "4",
        "--t",
        "2",
        "--ring",
        "at",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), r#"{"q_mult":0,"gorenstein":true}"#);
}

#[test]
fn canonical_rees_reports_basis_and_coeffs() {
    let out = run(&[
        "canonical",
        "--m",
        "3",
        "--n",
        "3",
        "--t",
        "2",
        "--ring",
        "rees",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["coeffs"], serde_json::json!([-6, -2]));
}

#[test]
fn canonical_at_rejects_excluded_configuration() {
    let out = run(&[
        "canonical",
        "--m",
        "3",
        "--n",
        "3",
        "--t",
        "2",
        "--ring",
        "at",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gamma_of_shape() {
    let out = run(&["gamma", "--t", "2", "--shape", "3,1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "2");
}

#[test]
fn gamma_of_polynomial_file() {
    let dir = std::env::temp_dir().join("minoralg-cli-test-gamma");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("f.json");
    // x12 * x21 on the 2x2 grid.
    std::fs::write(
        &path,
        r#"{"terms":[{"coeff":"1","exps":{"1,2":1,"2,1":1},"T":0}]}"#,
    )
    .unwrap();
    let out = run(&["gamma", "--t", "2", "--poly", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["values"], serde_json::json!([2, 0]));

    let out = run(&[
        "gamma",
        "--t",
        "2",
        "--poly",
        path.to_str().unwrap(),
        "--i",
        "2",
    ]);
    assert_eq!(stdout(&out).trim(), "0");
}

#[test]
fn rho_of_diagonal_monomial() {
    let out = run(&[
        "rho",
        "--m",
        "2",
        "--n",
        "2",
        "--t",
        "2",
        "--i",
        "2",
        "--monomial",
        "1,1;2,2",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1");
}

#[test]
fn rho_with_t_power() {
    let out = run(&[
        "rho",
        "--m",
        "3",
        "--n",
        "3",
        "--t",
        "2",
        "--i",
        "2",
        "--monomial",
        "1,1;1,2;1,3;2,1;2,2;2,3;3,1;3,2;3,3",
        "--tpow",
        "1",
    ]);
    assert_eq!(stdout(&out).trim(), "3");
}

#[test]
fn straighten_swap_product() {
    let out = run(&[
        "straighten",
        "--m",
        "2",
        "--n",
        "2",
        "--product",
        "[1|2]*[2|1]",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 2);
}

#[test]
fn member_rejects_bad_json_with_exit_2() {
    let dir = std::env::temp_dir().join("minoralg-cli-test-badjson");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, "badjson").unwrap();
    let out = run(&[
        "member",
        "--kind",
        "at",
        "--m",
        "3",
        "--n",
        "4",
        "--t",
        "2",
        "--poly",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn member_symbolic_power_verdict() {
    let dir = std::env::temp_dir().join("minoralg-cli-test-member");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("det2.json");
    std::fs::write(
        &path,
        r#"{"terms":[{"coeff":"1","exps":{"1,1":1,"2,2":1},"T":0},{"coeff":"-1","exps":{"1,2":1,"2,1":1},"T":0}]}"#,
    )
    .unwrap();
    let out = run(&[
        "member",
        "--kind",
        "sympow",
        "--m",
        "2",
        "--n",
        "2",
        "--t",
        "2",
        "--k",
        "1",
        "--poly",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], serde_json::json!(true));

    let out = run(&[
        "member",
        "--kind",
        "sympow",
        "--m",
        "2",
        "--n",
        "2",
        "--t",
        "2",
        "--k",
        "2",
        "--poly",
        path.to_str().unwrap(),
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], serde_json::json!(false));
}

#[test]
fn resource_bound_exits_3() {
    let out = run(&[
        "straighten",
        "--m",
        "3",
        "--n",
        "3",
        "--product",
        "[1,2,3|1,2,3]",
        "--max-straighten-degree",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn config_file_sets_caps_and_flags_override() {
    let dir = std::env::temp_dir().join("minoralg-cli-test-config");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("caps.json");
    std::fs::write(&path, r#"{"max_straighten_degree": 2}"#).unwrap();
    let out = run(&[
        "straighten",
        "--m",
        "3",
        "--n",
        "3",
        "--product",
        "[1,2,3|1,2,3]",
        "--config",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    // The flag wins over the file.
    let out = run(&[
        "straighten",
        "--m",
        "3",
        "--n",
        "3",
        "--product",
        "[1,2,3|1,2,3]",
        "--config",
        path.to_str().unwrap(),
        "--max-straighten-degree",
        "8",
    ]);
    assert!(out.status.success());
}

#[test]
fn facets_written_to_file() {
    let dir = std::env::temp_dir().join("minoralg-cli-test-facets");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("facets.json");
    let out = run(&[
        "facets",
        "--m",
        "2",
        "--n",
        "2",
        "--i",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["facets"].as_array().unwrap().len(), 2);
}

#[test]
fn hilbert_record_and_table() {
    let out = run(&["hilbert", "--m", "3", "--n", "3", "--t", "2", "--k", "2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["dim_enum"], serde_json::json!(45));
    assert_eq!(v["agree"], serde_json::json!(true));

    let out = run(&[
        "hilbert", "--m", "3", "--n", "3", "--t", "2", "--table", "2",
    ]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.trim().lines().collect();
    assert_eq!(lines[0], "m,n,t,k,dim_enum,dim_hook,agree");
    assert_eq!(lines[3], "3,3,2,2,45,45,true");
}

#[test]
fn hankel_subcommands() {
    let out = run(&["hankel", "canonical", "--n", "7", "--t", "2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["coeffs"], serde_json::json!([-4, -3]));

    let out = run(&["hankel", "classify", "--n", "9", "--t", "3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["case"], serde_json::json!("generic"));
    assert_eq!(v["gorenstein"], serde_json::json!(true));

    let out = run(&["hankel", "classify", "--n", "7", "--t", "3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["case"], serde_json::json!("grassmann"));
}

#[test]
fn verify_smoke_tier() {
    let out = run(&["verify", "--suite", "shape-implication", "--max-size", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v[0]["pass"], serde_json::json!(true));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["verify", "--suite", "canonical", "--max-size", "4"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    // Reports carry wall-clock fields; compare with them stripped.
    let strip = |s: &str| -> serde_json::Value {
        let mut v: serde_json::Value = serde_json::from_str(s).unwrap();
        fn scrub(v: &mut serde_json::Value) {
            match v {
                serde_json::Value::Object(map) => {
                    map.remove("millis");
                    for (_, val) in map.iter_mut() {
                        scrub(val);
                    }
                }
                serde_json::Value::Array(items) => items.iter_mut().for_each(scrub),
                _ => {}
            }
        }
        scrub(&mut v);
        v
    };
    assert_eq!(strip(&stdout(&a)), strip(&stdout(&b)));

    // Commands without timing data must match byte for byte.
    let a = run(&[
        "canonical",
        "--m",
        "5",
        "--n",
        "7",
        "--t",
        "3",
        "--ring",
        "rees",
    ]);
    let b = run(&[
        "canonical",
        "--m",
        "5",
        "--n",
        "7",
        "--t",
        "3",
        "--ring",
        "rees",
    ]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn unknown_suite_is_invalid_input() {
    let out = run(&["verify", "--suite", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn facet_cache_directory_is_populated() {
    let dir = std::env::temp_dir().join("minoralg-cli-test-facet-cache");
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_minoralg"))
        .args([
            "rho",
            "--m",
            "3",
            "--n",
            "3",
            "--t",
            "2",
            "--i",
            "2",
            "--monomial",
            "1,1;2,2",
        ])
        .env("MINORALG_FACET_CACHE_DIR", &dir)
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    let cached = dir.join("facets_3x3_i2.json");
    assert!(cached.exists(), "facets mirrored to the cache directory");
    // A second run reads the cache and agrees.
    let again = Command::new(env!("CARGO_BIN_EXE_minoralg"))
        .args([
            "rho",
            "--m",
            "3",
            "--n",
            "3",
            "--t",
            "2",
            "--i",
            "2",
            "--monomial",
            "1,1;2,2",
        ])
        .env("MINORALG_FACET_CACHE_DIR", &dir)
        .output()
        .expect("binary runs");
    assert_eq!(out.stdout, again.stdout);
}
