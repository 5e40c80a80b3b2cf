use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_streamdraw")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("streamdraw-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn gen_then_run_each_mode() {
    for mode in ["tree", "treemap", "outerplanar"] {
        let path = scratch(&format!("{mode}.txt"));
        let g = bin(&["gen", mode, "--n", "60", "--seed", "3", "--out", path.to_str().unwrap()]);
        assert!(g.status.success());
        let r = json(&bin(&["run", path.to_str().unwrap(), "--strategy", "sqrt", "--audit"]));
        assert_eq!(r["schema"], 1);
        assert_eq!(r["n"], 60);
        assert_eq!(r["audit"]["passed"], true);
        assert!(r.get("elapsed").is_none());
    }
}

#[test]
fn run_is_byte_identical_across_invocations() {
    let path = scratch("det.txt");
    assert!(bin(&["gen", "treemap", "--n", "80", "--out", path.to_str().unwrap()]).status.success());
    let (a, b) = (bin(&["run", path.to_str().unwrap()]), bin(&["run", path.to_str().unwrap()]));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn draw_writes_svg() {
    let stream = scratch("draw.txt");
    fs::write(&stream, "mode tree\nedge r a 0 0\nedge r b 1 0\nedge a c 0 0\n").unwrap();
    let svg = scratch("draw.svg");
    let out = bin(&["draw", stream.to_str().unwrap(), "--out", svg.to_str().unwrap()]);
    assert!(out.status.success());
    let text = fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<?xml"));
    assert_eq!(text.matches("<circle ").count(), 4);
}

#[test]
fn bench_reports_each_doubling() {
    let r = json(&bin(&["bench", "--strategy", "bulkpacked", "--lo", "6", "--hi", "9"]));
    assert_eq!(r["points"].as_array().unwrap().len(), 4);
    assert_eq!(r["strategy"], "bulkpacked");
}

#[test]
fn adversary_reports_the_spiral() {
    let r = json(&bin(&["adversary", "--rounds", "8"]));
    assert_eq!(r["valid"], true);
    assert!(r["phase2_rounds"].as_u64().unwrap() > 0);
}

#[test]
fn bad_input_fails_cleanly() {
    let path = scratch("bad.txt");
    fs::write(&path, "mode tree\nedge a b 0\n").unwrap();
    let out = bin(&["run", path.to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let out = bin(&["run", path.to_str().unwrap(), "--strategy", "nonsense"]);
    assert!(!out.status.success());
    let op = scratch("op.txt");
    assert!(bin(&["gen", "outerplanar", "--n", "20", "--out", op.to_str().unwrap()]).status.success());
    let out = bin(&["run", op.to_str().unwrap(), "--strategy", "tag"]);
    assert!(!out.status.success());
}
