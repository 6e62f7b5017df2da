use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ruledsheaves"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn divisibility_marker() {
    let o = run(&["ruled", "--genus", "0", "--e", "1", "--rank", "2", "--c1", "1,0", "--order", "6"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("empty (r does not divide f·c1)"));
}

#[test]
fn gerbe_row_is_hilb_one() {
    let o = run(&["ruled", "--genus", "0", "--e", "0", "--rank", "1", "--c1", "0,0", "--tf", "--gerbe", "--order", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("c2=1: s^0..s^4: 1 0 2 0 1  (q^2+2*q+1)"), "{}", stdout(&o));
}

#[test]
fn order_zero_constant() {
    let o = run(&["ruled", "--genus", "0", "--e", "0", "--rank", "2", "--c1", "0,1", "--order", "0"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("1/(q^4-2*q^3+2*q-1)"));
}

#[test]
fn csv_and_json_formats() {
    let o = run(&["ruled", "--rank", "2", "--c1", "0,1", "--order", "1", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("exponent,c2,coefficient"));
    assert_eq!(lines.count(), 2);

    let o = run(&["ruled", "--rank", "2", "--c1", "0,1", "--order", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rank"], 2);
    assert_eq!(v["normalization"], "pfa");
}

#[test]
fn hall_product() {
    let o = run(&["hall", "mul", "O(2)", "O(0)"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "q^3*[O(0)+O(2)] + (q^3-q)*[2O(1)]");
}

#[test]
fn blowup_rank_one() {
    let o = run(&["blowup", "--rank", "1", "--m", "0", "--order", "3", "--tf"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("1 + t + 2*t^2 + 3*t^3"));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&run(&["verify", "quot"])), 0);
    assert_eq!(code(&run(&["verify", "phi"])), 0);
    assert_eq!(code(&run(&["verify", "unknown"])), 2);
    assert_eq!(code(&run(&["hall", "mul", "O(2", "O(0)"])), 2);
    assert_eq!(code(&run(&["ruled", "--rank", "0"])), 2);
    assert_eq!(code(&run(&["ruled", "--order", "-1"])), 2);
    assert_eq!(code(&run(&["ruled", "--polarization", "1,1"])), 2);
    assert_eq!(code(&run(&["ruled", "--weil", "1,2"])), 2);
    assert_eq!(code(&run(&["ruled", "--tf", "--lf"])), 2);
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("job.conf");
    fs::write(&cfg, "# job\ne = 1\nrank = 2\nc1 = 1,0\norder = 3\n").unwrap();
    let c = cfg.to_str().unwrap();
    let o = run(&["ruled", "--config", c]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("empty"));
    let o = run(&["ruled", "--config", c, "--c1", "0,1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("c1=[0,1]"));
    assert!(!stdout(&o).contains("empty"));

    fs::write(&cfg, "colour = blue\n").unwrap();
    assert_eq!(code(&run(&["ruled", "--config", c])), 2);
}

fn wall(dir: &Path, args: &[&str]) -> Output {
    let base = ["--e", "1", "--rank", "2", "--c1", "0,1", "--h", "2,3", "--h-prime", "0,1", "--order", "4", "--tf"];
    let mut all: Vec<&str> = args.to_vec();
    all.extend(base);
    let o = Command::new(env!("CARGO_BIN_EXE_ruledsheaves"))
        .current_dir(dir)
        .args(&all)
        .output()
        .unwrap();
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    o
}

#[test]
fn wallcross_round_trip_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    wall(d, &["wallcross", "seed", "--margin", "1", "-o", "seeds.json"]);
    wall(d, &["wallcross", "apply", "--input", "seeds.json", "--direction", "plus", "--self-check", "-o", "wall.json"]);
    wall(d, &["wallcross", "apply", "--input", "wall.json", "--direction", "minus", "--inverse", "-o", "minus.json"]);
    wall(d, &["wallcross", "apply", "--input", "minus.json", "--direction", "minus", "-o", "wall2.json"]);
    wall(d, &["wallcross", "apply", "--input", "wall2.json", "--direction", "plus", "--inverse", "-o", "back.json"]);
    let seeds = fs::read_to_string(d.join("seeds.json")).unwrap();
    let back = fs::read_to_string(d.join("back.json")).unwrap();
    let plain = wall(d, &["wallcross", "seed", "-o", "plain.json"]);
    assert!(plain.status.success());
    let plain = fs::read_to_string(d.join("plain.json")).unwrap();
    assert_eq!(back, plain);
    assert_ne!(seeds, fs::read_to_string(d.join("minus.json")).unwrap());
    assert_eq!(
        fs::read_to_string(d.join("wall.json")).unwrap(),
        fs::read_to_string(d.join("wall2.json")).unwrap()
    );
}

#[test]
fn json_series_round_trip_through_wallcross_input() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    wall(d, &["wallcross", "seed", "-o", "a.json"]);
    wall(d, &["wallcross", "apply", "--input", "a.json", "--direction", "plus", "-o", "b.json"]);
    let text = fs::read_to_string(d.join("a.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(v.as_array().is_some_and(|a| !a.is_empty()));
    fs::write(d.join("bad.json"), "[{\"rank\": 1}]").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_ruledsheaves"))
        .current_dir(d)
        .args(["wallcross", "apply", "--input", "bad.json", "--e", "1", "--rank", "2", "--c1", "0,1", "--h", "2,3"])
        .args(["--h-prime", "0,1", "--order", "4"])
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}
