use std::process::{Command, Output};

fn boolconv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_boolconv"))
        .args(args)
        .env_remove("BOOLCONV_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_text_and_json() {
    let o = boolconv(&["eval", "--atoms", "2", "--seq", "[]|[1,2]", "--conv", "ls"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "ls([]|[1,2]) = {3}");
    let o = boolconv(&["eval", "--atoms", "2", "--seq", "[3]|[2]", "--conv", "l4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], serde_json::json!([2]));
    assert_eq!(v["forcing"]["ax"], 2);
    assert_eq!(v["forcing"]["b"], serde_json::json!([2, 2, 2, 2, 2]));
}

#[test]
fn topology_exports_and_lim_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ls.json");
    let p = path.to_str().unwrap();
    let o = boolconv(&["topology", "--atoms", "2", "--conv", "ls", "--out", p]);
    assert!(o.status.success());
    let t: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(t["closed_sets"].as_array().unwrap().len(), 6);
    let conv = format!("lim:{p}");
    let o = boolconv(&["eval", "--atoms", "2", "--seq", "[]|[1,2]", "--conv", &conv]);
    assert!(stdout(&o).ends_with("= {3}\n"));

    let o = boolconv(&["topology", "--atoms", "2", "--conv", "s"]);
    let t: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(t["closed_sets"].as_array().unwrap().len(), 16);

    let o = boolconv(&["topology", "--atoms", "2", "--conv", "ls", "--format", "dot"]);
    let dot = stdout(&o);
    assert_eq!(dot.matches("[label=").count(), 4);
    assert_eq!(dot.matches(" -> ").count(), 5);
}

#[test]
fn exit_codes() {
    assert_eq!(boolconv(&["topology", "--atoms", "5", "--conv", "ls"]).status.code(), Some(3));
    assert_eq!(boolconv(&["eval", "--atoms", "7", "--seq", "[]|[0]", "--conv", "s"]).status.code(), Some(3));
    assert_eq!(boolconv(&["eval", "--atoms", "2", "--seq", "[]|[9]", "--conv", "s"]).status.code(), Some(2));
    assert_eq!(boolconv(&["eval", "--atoms", "2", "--seq", "[]|[0]", "--conv", "nope"]).status.code(), Some(2));
    assert_eq!(boolconv(&["verify", "--atoms", "5"]).status.code(), Some(2));
    assert_eq!(boolconv(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(boolconv(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_is_reproducible() {
    let args = ["verify", "--atoms", "2", "--suite", "closed-sets", "--suite", "maximality", "--format", "json"];
    let a = boolconv(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&boolconv(&args)));
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["failed"], 0);
    let max = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "maximality/maximal/ls/n=2")
        .unwrap();
    assert_eq!(max["details"]["topologies_examined"], 355);
}

#[test]
fn corpus_seed_from_env() {
    let args = ["corpus", "--atoms", "4", "--prefix-bound", "2", "--cycle-bound", "4", "--samples", "20"];
    let base = stdout(&boolconv(&args));
    let run = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_boolconv"))
            .args(args)
            .env("BOOLCONV_SEED", seed)
            .output()
            .unwrap()
    };
    assert_eq!(stdout(&run("7")), stdout(&run("7")));
    assert_ne!(stdout(&run("7")), base);
    let small = stdout(&boolconv(&["corpus", "--atoms", "2", "--cycle-bound", "1", "--prefix-bound", "0"]));
    assert_eq!(small.lines().count(), 4);
}

#[test]
fn suites_are_listed() {
    let o = boolconv(&["suites"]);
    assert!(stdout(&o).lines().any(|l| l.starts_with("maximality\t")));
}
