use std::path::Path;
use std::process::{Command, Output};

fn altskew(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_altskew"))
        .args(args)
        .env_remove("ALTSKEW_FORMAT")
        .env_remove("ALTSKEW_MAX_AMBIENT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn prints_f2() {
    let o = altskew(&["fm", "--m", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "(x1*x2) - (x2*x1)");
}

#[test]
fn skew_of_a_square() {
    let o = altskew(&["skew", "--word", "(x1*x1)"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "(x1*x2) - (x2*x1)");
}

#[test]
fn associative_dimension() {
    let o = altskew(&["dim", "--variety", "assoc", "--multideg", "1,1,1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "6");
}

#[test]
fn custom_identities_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("leftalt.txt");
    std::fs::write(&path, "# left alternative\n((x1*x1)*x2) - (x1*(x1*x2))\n").unwrap();
    let o = altskew(&["dim", "--identities", path.to_str().unwrap(), "--multideg", "2,1"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let n: usize = stdout(&o).trim().parse().unwrap();
    assert!(n < 6);
}

#[test]
fn verify_exit_codes() {
    let o = altskew(&["verify", "lemma1", "--m", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("pass"));

    let o = altskew(&["verify", "skew_dim", "--d", "6"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("resource_limit"));

    let o = altskew(&["verify", "lemma1", "--k", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());

    let o = altskew(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn text_and_json_agree() {
    let text = altskew(&["verify", "fm_nonzero", "--m", "3"]);
    let json = altskew(&["--format", "json", "verify", "fm_nonzero", "--m", "3"]);
    assert_eq!(text.status.code(), json.status.code());
    let v: serde_json::Value = serde_json::from_str(stdout(&json).trim()).unwrap();
    assert_eq!(v["verdict"], "pass");
    assert!(stdout(&text).contains(": pass"));
}

#[test]
fn env_overrides_config() {
    let o = Command::new(env!("CARGO_BIN_EXE_altskew"))
        .args(["verify", "fm_nonzero", "--m", "4"])
        .env("ALTSKEW_MAX_AMBIENT", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn member_certify_and_check() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("p.txt");
    std::fs::write(&input, "((x1*x1)*x2) - (x2*(x1*x1)) - (x1*(x1*x2)) + (x1*(x2*x1)) - ((x1*x2)*x1) + ((x2*x1)*x1)\n").unwrap();
    let cert = dir.path().join("cert.json");
    let o = altskew(&[
        "member",
        "--variety",
        "flex",
        "--input",
        input.to_str().unwrap(),
        "--certify",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(Path::new(&cert).exists());
    let o = altskew(&["check-cert", "--cert", cert.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "valid");

    std::fs::write(&input, "(x1*x2) - (x2*x1)\n").unwrap();
    let o = altskew(&["member", "--variety", "assoc", "--input", input.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("not a member"));
}

#[test]
fn basis_count() {
    let o = altskew(&["--format", "json", "basis-count", "--degree", "4"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["count"], 3);
}
