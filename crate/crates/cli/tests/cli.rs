use serde_json::Value;
use std::process::{Command, Output};

fn iwk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_iwk")).args(args).env_remove("IWK_PRECISION").output().expect("run iwk")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn mcoeff_table_rows() {
    let o = iwk(&["mcoeff", "--m", "2"]);
    assert!(o.status.success());
    let rows: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    let values: Vec<i64> = rows.iter().map(|r| r.split(' ').nth(3).unwrap().parse().unwrap()).collect();
    assert_eq!(values, [2, 2, 2, 4, 0, -4, 4, -8, 4]);
    assert_eq!(rows[5], "2 1 2 -4");
}

#[test]
fn mcoeff_single_entry() {
    let o = iwk(&["mcoeff", "--m", "5", "--k", "0", "--i", "3"]);
    assert!(stdout(&o).contains("value=120"));
}

#[test]
fn adams_example() {
    let o = iwk(&["adams", "--poly", "x2-5x+6", "--f", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "X^2 - 13X + 36\n");
    let o = iwk(&["adams", "--poly", "x3-1", "--f", "3"]);
    assert_eq!(stdout(&o), "X^3 - 3X^2 + 3X - 1\n");
}

#[test]
fn adams_from_file_matches_literal() {
    let path = std::env::temp_dir().join("iwk_cli_adams.poly");
    std::fs::write(&path, "2\n6\n-5\n1\n").unwrap();
    let o = iwk(&["adams", "--poly-file", path.to_str().unwrap(), "--f", "2"]);
    assert_eq!(stdout(&o), "X^2 - 13X + 36\n");
}

#[test]
fn symtransfer_example() {
    let o = iwk(&["symtransfer", "--alpha", "2", "--beta", "3", "--n", "3", "--norm", "5"]);
    assert!(stdout(&o).starts_with("T=19,114/5,216/125\n"));
}

#[test]
fn frobpoly_single_factor() {
    let o = iwk(&["frobpoly", "--u", "7", "--lambda", "2", "--norm", "5", "--varpi", "3"]);
    assert!(stdout(&o).starts_with("poly=X - 63\n"));
    let o = iwk(&["frobpoly", "--u", "0", "--lambda", "1", "--norm", "5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("ZeroEigenvalue"));
}

#[test]
fn weierstrass_examples() {
    let o = iwk(&["--p", "3", "weierstrass", "--series", "S^2-9"]);
    let s = stdout(&o);
    assert!(s.contains("mu=0\nlambda=2\nP=S^2 - 9\nU=1\n"), "{s}");
    let o = iwk(&["--p", "5", "weierstrass", "--series", "5+5S"]);
    assert!(stdout(&o).contains("mu=1\nlambda=0\nP=1\nU=S + 1\n"));
    let o = iwk(&["weierstrass", "--series", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("AllCoefficientsNonUnit"));
}

#[test]
fn fitting_and_char_ideal_files() {
    let o = iwk(&["fitting", "--file", &data("diag.pres")]);
    assert!(stdout(&o).contains("F0=(S^2 - 9)\nF1=(S + 3, S - 3)\nF2=(1)\n"));
    let o = iwk(&["charideal", "--file", &data("diag.pres"), "--mod-s"]);
    assert_eq!(stdout(&o), "char=(S^2 - 9)\nchar_mod_S=true\n");
    let o = iwk(&["charideal", "--file", &data("dvr.pres")]);
    assert_eq!(stdout(&o), "char=(3^3)\n");
}

#[test]
fn not_torsion_exits_one_with_name() {
    for f in ["zero.pres", "s_only.pres"] {
        let args = ["charideal", "--file", &data(f), "--mod-s"];
        let o = iwk(&args);
        assert_eq!(o.status.code(), Some(1));
        assert!(String::from_utf8_lossy(&o.stderr).contains("NotTorsion"));
    }
}

#[test]
fn congruence_roots() {
    let o = iwk(&["--p", "3", "congruence", "--roots", "1,4,10"]);
    let s = stdout(&o);
    assert!(s.contains("c_phi=(3^3)\n"));
    assert!(s.contains("tate=true\n"));
    assert!(s.contains("decomposition=true\n"));
    let o = iwk(&["--p", "5", "congruence", "--poly", "x2-5x", "--root", "5"]);
    assert!(stdout(&o).contains("c_phi=(5)\n"));
    let o = iwk(&["--p", "5", "congruence", "--poly", "x2-3x-10", "--root", "5"]);
    assert!(stdout(&o).contains("c_phi=(1)\n"));
}

#[test]
fn linv_and_compare() {
    let o = iwk(&["linv", "--file", &data("j1.jac")]);
    let s = stdout(&o);
    assert!(s.contains("det_L=5\n") && s.contains("greenberg=5\n"), "{s}");
    let o = iwk(&["linv", "--file", &data("j1.jac"), "--direction", "1,1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("DegenerateDirection"));
    let o = iwk(&["compare", "--file", &data("d.vec")]);
    assert!(stdout(&o).contains("holds=true\nintermediate_holds=true\n"));
    let o = iwk(&["compare", "--d", "1,1,1"]);
    assert!(stdout(&o).contains("det_L=1\n"));
}

#[test]
fn ikideal_layer_zero_is_det() {
    let o = iwk(&["ikideal", "--file", &data("l2.mat"), "--k", "0"]);
    let s = stdout(&o);
    assert!(s.contains("routes_agree=true\n") && s.contains("det_L=-2\n"), "{s}");
    let o = iwk(&["ikideal", "--file", &data("l2.mat"), "--k", "1"]);
    assert!(stdout(&o).contains("routes_agree=true\n"));
}

#[test]
fn decomp_reports_relations() {
    let o = iwk(&["decomp", "--n", "3", "--samples", "5"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("characters=true\n") && s.contains("det_relation=true\n"));
}

#[test]
fn json_mirrors_text_fields() {
    let args = ["weierstrass", "--series", "S+3"];
    let text = stdout(&iwk(&args));
    let mut jargs = args.to_vec();
    jargs.push("--json");
    let v: Value = serde_json::from_str(&stdout(&iwk(&jargs))).unwrap();
    let obj = v.as_object().unwrap();
    let keys: Vec<&str> = text.lines().map(|l| l.split_once('=').unwrap().0).collect();
    assert_eq!(obj.keys().map(String::as_str).collect::<Vec<_>>(), keys);
    assert_eq!(obj["P"], "S + 3");
    assert_eq!(obj["mu"], 0);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["mcoeff"],
        vec!["nosuch"],
        vec!["--p", "4", "weierstrass", "--series", "S"],
        vec!["adams", "--poly", "x2+", "--f", "2"],
        vec!["fitting", "--file", "/nonexistent/file"],
    ] {
        let o = iwk(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8_lossy(&o.stderr);
        assert!(!err.is_empty());
    }
}

#[test]
fn math_errors_exit_one() {
    let o = iwk(&["adams", "--poly", "2x2+1", "--f", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(String::from_utf8_lossy(&o.stderr).lines().count(), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("NotMonic"));
}

#[test]
fn precision_from_environment_and_flag() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_iwk"));
        c.env_remove("IWK_PRECISION");
        if let Some(e) = env {
            c.env("IWK_PRECISION", e);
        }
        c.args(["weierstrass", "--series", "S+625"]);
        if let Some(f) = flag {
            c.args(["--precision", f]);
        }
        String::from_utf8(c.output().unwrap().stdout).unwrap()
    };
    // 625 = 58 mod 3^4 but 625 = 625 mod 3^32
    assert!(run(Some("4"), None).contains("U=S - 23\n"));
    assert!(run(None, None).contains("U=S + 625\n"));
    assert!(run(Some("4"), Some("32")).contains("U=S + 625\n"));
}

#[test]
fn outputs_are_repeatable() {
    let args = ["congruence", "--roots", "2,11,29", "--json"];
    assert_eq!(iwk(&args).stdout, iwk(&args).stdout);
}
