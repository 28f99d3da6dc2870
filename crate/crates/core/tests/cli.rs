use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixture(name: &str) -> String {
    root().join("fixtures").join(name).to_string_lossy().into_owned()
}

fn tforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tforge")).args(args).output().unwrap()
}

fn piped(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tforge"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_exit_codes() {
    assert_eq!(code(&tforge(&["verify", &fixture("fig3_gbtd_3_9.json")])), 0);
    assert_eq!(code(&tforge(&["verify", &fixture("fig3_mutated.json")])), 1);
    assert_eq!(code(&tforge(&["verify", "missing.json"])), 2);
    assert_eq!(code(&tforge(&["verify", &fixture("fig2_rbibd_15.json"), "--colors", "3", "--pi"])), 0);
    assert_eq!(code(&tforge(&["verify", "--kind", "nonsense", &fixture("fig1.json")])), 2);
    assert_eq!(code(&tforge(&["frobnicate"])), 2);
}

#[test]
fn construct_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let g13 = dir.path().join("g13.json");
    let g = g13.to_str().unwrap();
    assert_eq!(code(&tforge(&["construct", "fq-gbtd", "--q", "13", "-o", g])), 0);
    assert_eq!(code(&tforge(&["verify", g])), 0);
    let d27 = dir.path().join("d27.json");
    assert_eq!(code(&tforge(&["construct", "drtd", "--k", "3", "--q", "27", "-o", d27.to_str().unwrap()])), 0);
    assert_eq!(code(&tforge(&["verify", "--kind", "drtd", d27.to_str().unwrap()])), 0);
    let bad = tforge(&["construct", "fq-gbtd", "--q", "11"]);
    assert_eq!(code(&bad), 2);
    assert!(!String::from_utf8_lossy(&bad.stderr).is_empty());
}

#[test]
fn outputs_are_canonical() {
    let a = tforge(&["construct", "frgbtd-6-8"]);
    let b = tforge(&["construct", "frgbtd-6-8"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let f = fixture("fig3_gbtd_3_9.json");
    let once = tforge(&["fmt", &f]);
    let twice = piped(&["fmt", "-"], &once.stdout);
    assert_eq!(once.stdout, twice.stdout);
}

#[test]
fn code_pipeline() {
    let c = tforge(&["code", "to-code", &fixture("fig1.json")]);
    assert_eq!(code(&c), 0);
    let s = piped(&["code", "stats", "-"], &c.stdout);
    assert_eq!(code(&s), 0);
    assert_eq!(stdout(&s).lines().next().unwrap(), "n=4 q=3 M=6 d=3 equitable c=2");
    let b = tforge(&["code", "bound", "--n", "10", "--d", "9", "--q", "7", "--M", "21"]);
    assert_eq!(code(&b), 0);
    assert!(stdout(&b).contains("equality"));
    let b = tforge(&["code", "bound", "--n", "29", "--d", "28", "--q", "16", "--M", "34"]);
    assert_eq!(code(&b), 1);
    assert!(stdout(&b).contains("15708") && stdout(&b).contains("15689"));
    assert_eq!(code(&tforge(&["code", "cert", "--m", "16"])), 0);
    assert_eq!(code(&tforge(&["code", "cert", "--m", "5"])), 2);
}

#[test]
fn derive_shipped_recipes() {
    for (name, out) in [("gbtd_3_27.json", "gbtd_3_27"), ("gbtd_3_49.json", "gbtd_3_49"), ("gbtp_33.json", "gbtp_33")] {
        let dir = tempfile::tempdir().unwrap();
        let recipe = root().join("recipes").join(name);
        let o = tforge(&["derive", "run", recipe.to_str().unwrap(), "--out-dir", dir.path().to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{name}: {}", String::from_utf8_lossy(&o.stderr));
        let g = dir.path().join(format!("{out}.json"));
        assert!(dir.path().join("summary.json").exists());
        assert_eq!(code(&tforge(&["verify", g.to_str().unwrap()])), 0, "{name}");
    }
}

#[test]
fn derive_failures() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::copy(fixture("fig3_mutated.json"), dir.path().join("m.json")).unwrap();
    std::fs::write(&bad, r#"{"steps":[{"op":"load","in":["m.json"],"out":"x"}]}"#).unwrap();
    let out = dir.path().join("out");
    let args = ["derive", "run", bad.to_str().unwrap(), "--out-dir", out.to_str().unwrap()];
    assert_eq!(code(&tforge(&args)), 1);
    std::fs::write(&bad, r#"{"steps":[{"op":"load","in":["absent.json"],"out":"x"}]}"#).unwrap();
    assert_eq!(code(&tforge(&args)), 2);
}

#[test]
fn searches() {
    let o = tforge(&["search", "eswc", "--n", "5", "--d", "4", "--q", "4"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("\"exact\": true"));
    let dir = tempfile::tempdir().unwrap();
    let st = dir.path().join("s.json");
    let o = tforge(&["search", "starter", "--kind", "igbtp_z4", "--m", "5", "-o", st.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&tforge(&["verify", st.to_str().unwrap()])), 0);
    let g = tforge(&["construct", "develop", st.to_str().unwrap()]);
    assert_eq!(code(&g), 0);
    assert_eq!(code(&piped(&["verify", "-"], &g.stdout)), 0);
    let o = tforge(&["search", "starter", "--kind", "gbtd", "--m", "5"]);
    assert_eq!(code(&o), 1);
    let spec = dir.path().join("spec.json");
    std::fs::write(&spec, r#"{"kind":"GBTD","v":9,"m":3,"n":4,"lambda":1,"k_set":[3]}"#).unwrap();
    assert_eq!(code(&tforge(&["search", "design", "--spec", spec.to_str().unwrap()])), 1);
}

#[test]
fn budget_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_tforge"))
        .args(["search", "starter", "--kind", "gbtd", "--m", "13"])
        .env("TFORGE_BUDGET", "1000")
        .output()
        .unwrap();
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("1000"));
}

#[test]
fn coloring_search() {
    let mut plain = tforge::designs::fixtures::load(tforge::designs::fixtures::FIG3);
    plain.strip_colors();
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("plain.json");
    std::fs::write(&p, tforge::designs::to_json(&plain)).unwrap();
    let o = tforge(&["search", "coloring", "--in", p.to_str().unwrap(), "--colors", "2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&piped(&["verify", "-", "--colors", "2"], &o.stdout)), 0);
}
