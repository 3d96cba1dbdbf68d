//! End-to-end tests of the command-line binary: dispatch, exit codes, and
//! the JSON round trip (a reported configuration re-ingested as input
//! reproduces identical results).

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_multiplane"))
}

#[test]
fn catalog_lists_builtins() {
    let out = bin().arg("catalog").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["ceva6", "hesse-dual", "hesse-pencil", "two-tangent-conics", "ishida"] {
        assert!(text.contains(name), "{name} missing from catalog");
    }
}

#[test]
fn irregularity_ceva() {
    let out = bin()
        .args(["irregularity", "--arrangement", "ceva6", "--n", "5", "--method", "all"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("q = 30"), "unexpected output: {text}");
}

#[test]
fn faces_tangent_conics() {
    let out = bin()
        .args(["faces", "--arrangement", "two-tangent-conics", "--n", "5"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("3 face(s)"), "{text}");
    assert!(text.contains("height 3"), "{text}");
    assert!(text.contains("height 4"), "{text}");
    assert!(text.contains("dim 0"), "{text}");
}

#[test]
fn json_round_trip() {
    let out = bin()
        .args(["irregularity", "--arrangement", "ishida", "--n", "5", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["q"], 10);
    let config = serde_json::to_string(&v["config"]).unwrap();
    let dir = std::env::temp_dir().join("multiplane-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("roundtrip.json");
    std::fs::write(&path, config).unwrap();
    let again = bin()
        .args(["irregularity", "--config", path.to_str().unwrap(), "--json"])
        .output()
        .unwrap();
    assert!(again.status.success(), "{}", String::from_utf8_lossy(&again.stderr));
    let w: serde_json::Value = serde_json::from_slice(&again.stdout).unwrap();
    assert_eq!(v["q"], w["q"]);
    assert_eq!(v["faces"], w["faces"]);
}

#[test]
fn jumping_from_config() {
    // A cuspidal cubic: one singular point with the (2,3) cusp cluster.
    let config = r#"{
        "curves": [{"name": "C", "degree": 3}],
        "singular_points": [
            {"id": "P", "coords": [0, 0, 1], "cluster": {"positions": [
                {"id": 1, "parent": null, "multiplicities": {"C": 2}},
                {"id": 2, "parent": 1, "multiplicities": {"C": 1}},
                {"id": 3, "parent": 2, "extra_proximity": 1, "multiplicities": {"C": 1}}
            ]}}
        ],
        "covering": {"orders": [6], "matrix": [[1]],
                     "infinity": {"mode": "transverse"}}
    }"#;
    let dir = std::env::temp_dir().join("multiplane-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cusp.json");
    std::fs::write(&path, config).unwrap();
    let out = bin()
        .args(["jumping", "--config", path.to_str().unwrap(), "--max", "2"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("5/6, 7/6, 4/3, 3/2, 5/3, 11/6, 2"), "{text}");
}

#[test]
fn unknown_arrangement_is_an_input_error() {
    let out = bin()
        .args(["irregularity", "--arrangement", "nonesuch"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unbranched_infinity_is_unsupported() {
    // Cyclic order 4 with the line at infinity through the tangency
    // points: the degree defect vanishes, so the covering is unbranched
    // along it and the non-transverse mode must be rejected.
    let out = bin()
        .args(["irregularity", "--arrangement", "two-tangent-conics", "--n", "4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
    // The transverse run of the same order succeeds.
    let ok = bin()
        .args([
            "irregularity",
            "--arrangement",
            "two-tangent-conics",
            "--n",
            "4",
            "--infinity",
            "transverse",
            "--matrix",
            "1,0",
        ])
        .output()
        .unwrap();
    assert!(ok.status.success(), "{}", String::from_utf8_lossy(&ok.stderr));
}

#[test]
fn ehrhart_fit_over_the_catalog() {
    let out = bin()
        .args([
            "ehrhart",
            "--arrangement",
            "ceva6",
            "--n-min",
            "2",
            "--n-max",
            "8",
            "--period",
            "1",
            "--degree",
            "2",
            "--method",
            "triple",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("5/2 n^2"), "{text}");
}

#[test]
fn matrix_from_file() {
    let dir = std::env::temp_dir().join("multiplane-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("matrix.json");
    std::fs::write(&path, "[[1, 0]]").unwrap();
    let out = bin()
        .args([
            "irregularity",
            "--arrangement",
            "two-tangent-conics",
            "--n",
            "5",
            "--matrix",
            path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("q = 2"), "{text}");
}
