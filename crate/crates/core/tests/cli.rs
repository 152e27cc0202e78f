use std::process::{Command, Output};

use serde_json::Value;

fn gw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_galois-width"))
        .args(args)
        .env_remove("GW_JSON")
        .env_remove("GW_ORACLE_BOUND")
        .env_remove("GW_CROSS_CHECK")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = gw(&full);
    let v = serde_json::from_str(&stdout(&o)).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)));
    (o.status.code().unwrap(), v)
}

/// The width printed on the `width:` line of a text report.
fn text_width(o: &Output) -> u64 {
    let s = stdout(o);
    let line = s.lines().find(|l| l.starts_with("width: ")).expect("width line");
    line["width: ".len()..].split_whitespace().next().unwrap().parse().unwrap()
}

#[test]
fn width_group_examples() {
    let o = gw(&["width-group", "S(4)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(text_width(&o), 3);
    assert!(stdout(&o).contains("C(2) · C(3) · C(2) · C(2)"));

    let (code, v) = json(&["width-group", "wr(S(2),S(10)) & alt"]);
    assert_eq!(code, 0);
    assert_eq!(v["width"], 10);
    assert_eq!(v["order"], "1857945600");
    let factors = v["factors"].as_array().unwrap();
    assert_eq!(factors.len(), 11);
    assert_eq!(factors.iter().filter(|f| f["label"] == "C(2)").count(), 10);

    let (code, v) = json(&["width-group", "C(1)"]);
    assert_eq!(code, 0);
    assert_eq!(v["width"], 1);
}

#[test]
fn width_poly_examples() {
    let (code, v) = json(&["width-poly", "x^2-2"]);
    assert_eq!(code, 0);
    assert_eq!(v["width"], 2);
    assert_eq!(v["group_claim"], "S(2)");

    let (code, v) = json(&["width-poly", "[5670, 170397, 434717, -2105058, -2310180, 4127767, 1126944]"]);
    assert_eq!(code, 0);
    assert_eq!(v["width"], 6);
    assert_eq!(v["confidence"], "proved");
    assert!(!v["evidence"].as_array().unwrap().is_empty());

    let o = gw(&["width-poly", "x^4-1"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("reducible"), "{err}");
    assert!(err.contains("x - 1") && err.contains("x + 1") && err.contains("x^2 + 1"), "{err}");
}

#[test]
fn undetermined_poly_exits_bounded() {
    let (code, v) = json(&["--prime-budget", "50", "width-poly", "x^4+x^3+x^2+x+1"]);
    assert_eq!(code, 2);
    assert_eq!(v["group_claim"], "undetermined");
    assert_eq!(v["confidence"], "heuristic-lower-bound");
}

#[test]
fn monodromy_examples() {
    for (family, order, width) in [("y^3 - p", "3", 3), ("y^2 - p", "2", 2), ("y^3 + p*y + p", "6", 3)] {
        let (code, v) = json(&["monodromy", family]);
        assert_eq!(code, 2, "{family}");
        assert_eq!(v["group_order"], order, "{family}");
        assert_eq!(v["width"], width, "{family}");
        assert_eq!(v["transitive"], true);
        let bps = v["branch_points"].as_array().unwrap();
        assert_eq!(bps.len(), v["permutations"].as_array().unwrap().len());
        for b in bps {
            assert!(b["residual"].as_f64().unwrap() < 1e-8);
        }
    }
}

#[test]
fn monodromy_is_deterministic() {
    let a = stdout(&gw(&["--json", "monodromy", "y^4 - p*y - 1"]));
    let b = stdout(&gw(&["--json", "monodromy", "y^4 - p*y - 1"]));
    assert_eq!(a, b);
}

#[test]
fn text_and_json_agree() {
    let cases: [&[&str]; 6] = [
        &["width-group", "S(5)"],
        &["width-group", "D(6)"],
        &["width-group", "onsets(S(5),2)"],
        &["width-poly", "x^3-2"],
        &["monodromy", "y^3 - p"],
        &["oracle", "wr(S(2),S(3))"],
    ];
    for args in cases {
        let text = gw(args);
        let (code, v) = json(args);
        assert_eq!(text.status.code().unwrap(), code, "{args:?}");
        assert_eq!(text_width(&text), v["width"].as_u64().unwrap(), "{args:?}");
    }
}

#[test]
fn json_round_trips() {
    let (_, v) = json(&["oracle", "S(4)"]);
    let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, again);
    for key in ["width", "confidence", "factors", "chain", "input", "order"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    let chain = v["chain"].as_array().unwrap();
    assert!(!chain.is_empty());
}

#[test]
fn errors_are_exit_one_with_positions() {
    let o = gw(&["width-group", "S(4) x Q(3)"]);
    assert_eq!(o.status.code(), Some(1));
    let (code, v) = json(&["width-group", "S(4) x Q(3)"]);
    assert_eq!(code, 1);
    assert!(v["error"].is_string());
    assert!(v["offset"].is_u64(), "{v}");

    let o = gw(&["--mu-bound", "0", "width-group", "S(3)"]);
    assert_eq!(o.status.code(), Some(1));
    let o = gw(&["width-poly", "x^2 - 2*x + 1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn environment_fallbacks_and_flag_precedence() {
    let o =
        Command::new(env!("CARGO_BIN_EXE_galois-width")).args(["oracle", "S(4)"]).env("GW_ORACLE_BOUND", "10").output().unwrap();
    assert_eq!(o.status.code(), Some(1));
    let o = Command::new(env!("CARGO_BIN_EXE_galois-width"))
        .args(["--oracle-bound", "100", "oracle", "S(4)"])
        .env("GW_ORACLE_BOUND", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let o = Command::new(env!("CARGO_BIN_EXE_galois-width")).args(["width-group", "C(6)"]).env("GW_JSON", "1").output().unwrap();
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["width"], 3);
}
