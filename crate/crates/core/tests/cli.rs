use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn supertree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_supertree"))
        .args(args)
        .env_remove("SUPERTREE_ENUM_LIMIT")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn gen(dir: &TempDir, name: &str, args: &[&str]) -> String {
    let path = dir.path().join(name);
    let path = path.to_str().unwrap().to_string();
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", &path]);
    let out = supertree(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn json(path: &str) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(Path::new(path)).unwrap()).unwrap()
}

#[test]
fn gen_families() {
    let dir = TempDir::new().unwrap();
    let hs = gen(&dir, "hs.json", &["hyperstar", "--k", "3", "--m", "4"]);
    let v = json(&hs);
    assert_eq!(v["n"], 9);
    assert_eq!(v["edges"].as_array().unwrap().len(), 4);

    let out = supertree(&["gen", "broom", "--k", "3", "--t", "1,1,2", "--out", &dir.path().join("b.json").to_string_lossy()]);
    assert!(stdout(&out).contains("m=5"));
    assert!(stdout(&out).contains("N2=3"));

    let p = gen(&dir, "p.json", &["tree-power", "--k", "4", "--tree", "path:5"]);
    assert_eq!(json(&p)["n"], 13);

    for (family, extra) in [
        ("double-star-power", ["--t", "2,3"]),
        ("f-tree-power", ["--m", "6"]),
        ("path-power", ["--m", "6"]),
    ] {
        let f = gen(&dir, "x.json", &[family, "--k", "3", extra[0], extra[1]]);
        assert_eq!(json(&f)["k"], 3);
    }
}

#[test]
fn gen_rejects_bad_parameters() {
    for args in [
        &["gen", "broom", "--k", "3", "--t", "2,1,1"][..],
        &["gen", "broom", "--k", "2", "--t", "1,1,1"],
        &["gen", "hyperstar", "--k", "3"],
        &["gen", "tree-power", "--k", "3", "--tree", "cycle:5"],
    ] {
        let out = supertree(args);
        assert!(!out.status.success(), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn rho_reports() {
    let dir = TempDir::new().unwrap();
    let hs = gen(&dir, "hs.json", &["hyperstar", "--k", "3", "--m", "4"]);
    let out = supertree(&["rho", &hs, "--output", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rho = v["results"][0]["rho"].as_f64().unwrap();
    assert!((rho - 4f64.powf(1.0 / 3.0)).abs() < 1e-8);
    assert_eq!(stdout(&supertree(&["rho", &hs, "--output", "json"])), stdout(&out));

    let b = gen(&dir, "b.json", &["broom", "--k", "3", "--t", "1,1,2"]);
    let out = supertree(&["rho", &b, "--method", "auto", "--output", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"].as_array().unwrap().len(), 2);
    assert!(v["gap"].as_f64().unwrap() < 1e-8);
    assert!(!supertree(&["rho", &b, "--method", "formula"]).status.success());

    let e = dir.path().join("e.json");
    std::fs::write(&e, r#"{"k":3,"n":3,"edges":[[0,1,2]]}"#).unwrap();
    let out = supertree(&["rho", e.to_str().unwrap(), "--output", "csv"]);
    assert_eq!(stdout(&out), "method,rho,residual,iterations\npower,1.0,0.0,1\n");

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"k":3,"n":4,"edges":[[0,1,2],[0,1,2]]}"#).unwrap();
    assert!(!supertree(&["rho", bad.to_str().unwrap()]).status.success());
}

#[test]
fn certify_t11m3_both_sides() {
    let dir = TempDir::new().unwrap();
    let b = gen(&dir, "b.json", &["broom", "--k", "3", "--t", "1,1,2"]);
    let out = supertree(&["certify", &b, "--construct", "t11m3", "--alpha", "0.25"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("class: strictly-subnormal"));
    assert!(text.contains("rho < 1.58740105"));

    let out = supertree(&["certify", &b, "--construct", "t11m3", "--alpha", "0.267949", "--output", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["class"], "strictly-supernormal");
    assert_eq!(v["relation"], ">");
    assert_eq!(v["consistent"], true);

    assert!(!supertree(&["certify", &b, "--construct", "t11m3", "--alpha", "0.6"]).status.success());
    let hs = gen(&dir, "hs.json", &["hyperstar", "--k", "3", "--m", "5"]);
    assert!(!supertree(&["certify", &hs, "--construct", "t11m3", "--alpha", "0.25"]).status.success());
}

#[test]
fn certify_from_file() {
    let dir = TempDir::new().unwrap();
    let e = dir.path().join("e.json");
    std::fs::write(&e, r#"{"k":3,"n":3,"edges":[[0,1,2]]}"#).unwrap();
    let cert = dir.path().join("c.json");
    std::fs::write(
        &cert,
        r#"{"k":3,"n":3,"edges":[[2,1,0]],"alpha":1.0,"B":[{"v":0,"e":0,"w":1.0},{"v":1,"e":0,"w":1.0},{"v":2,"e":0,"w":1.0}]}"#,
    )
    .unwrap();
    let out = supertree(&["certify", e.to_str().unwrap(), "--cert", cert.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("class: normal"));

    std::fs::write(&cert, r#"{"k":3,"n":3,"edges":[[0,1,2]],"alpha":1.0,"B":[{"v":0,"e":0,"w":1.0}]}"#).unwrap();
    assert!(!supertree(&["certify", e.to_str().unwrap(), "--cert", cert.to_str().unwrap()]).status.success());
}

#[test]
fn verify_exit_codes() {
    let out = supertree(&["verify", "main1", "--k", "3", "--m", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("classes=8"));
    assert!(text.contains("PASS"));
    assert!(text.contains("S^3(2,2)                     1.58740105"));

    let out = supertree(&["verify", "main2", "--k", "3", "--m", "6"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("T(1,1,3)"));

    let out = supertree(&["verify", "sandwich", "--k", "3", "--m", "5"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("1.55113352"));

    // main2 at k = 2 expects F as rank 4; at k = 3 m = 4 only the collapsed order applies
    assert!(supertree(&["verify", "main2", "--k", "3", "--m", "4"]).status.success());
    assert!(!supertree(&["verify", "main1", "--k", "3", "--m", "9"]).status.success());
    assert!(!supertree(&["verify", "partition", "--k", "2", "--m", "5"]).status.success());
    assert!(supertree(&["verify", "moving-edges", "--trials", "5", "--seed", "9"]).status.success());
}

#[test]
fn enumerate_outputs_are_stable() {
    let out = supertree(&["enumerate", "--k", "2", "--m", "4", "--output", "csv"]);
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 3);
    for (i, row) in rows.iter().enumerate() {
        assert!(row.starts_with(&format!("{},", i + 1)));
    }
    assert_eq!(stdout(&supertree(&["enumerate", "--k", "2", "--m", "4", "--output", "csv"])), text);

    let a = stdout(&supertree(&["enumerate", "--k", "3", "--m", "4", "--output", "json"]));
    let b = stdout(&supertree(&["enumerate", "--k", "3", "--m", "4", "--output", "json"]));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 4);
    let rhos: Vec<f64> = entries.iter().map(|e| e["rho"].as_f64().unwrap()).collect();
    assert!(rhos.windows(2).all(|w| w[0] >= w[1]));

    assert!(!supertree(&["enumerate", "--k", "3", "--m", "8"]).status.success());
    let out = Command::new(env!("CARGO_BIN_EXE_supertree"))
        .args(["enumerate", "--k", "2", "--m", "8", "--output", "csv"])
        .env("SUPERTREE_ENUM_LIMIT", "8")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 48);
}

#[test]
fn gen_then_rho_is_bit_identical() {
    let dir = TempDir::new().unwrap();
    let p = gen(&dir, "p.json", &["path-power", "--k", "3", "--m", "6"]);
    let a = stdout(&supertree(&["rho", &p, "--output", "csv"]));
    let p2 = gen(&dir, "p2.json", &["path-power", "--k", "3", "--m", "6"]);
    let b = stdout(&supertree(&["rho", &p2, "--output", "csv"]));
    assert_eq!(a, b);
}
