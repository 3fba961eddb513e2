use std::process::{Command, Output};

fn wordmap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wordmap"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn count_known_values() {
    let o = wordmap(&["count", "--group", "dihedral:8", "--word", "[x1,x2]"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "N = 40\nP = 5/8\n");
    let o = wordmap(&["count", "--group", "heisenberg:p=3,k=1", "--word", "x1^3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["count"], "27");
    assert_eq!(v["probability"], "1");
    let o = wordmap(&["count", "--group", "abelian:2,6", "--word", "x1^2*x2^3", "--method", "abelian"]);
    assert_eq!(stdout(&o), "N = 12\nP = 1/12\n");
}

#[test]
fn distribution_formats() {
    let o = wordmap(&["dist", "--group", "cyclic:4", "--word", "x1^2", "--format", "csv"]);
    assert_eq!(stdout(&o), "element,count\n0,2\n1,0\n2,2\n3,0\n");
    let o = wordmap(&["dist", "--group", "dihedral:8", "--word", "x1^2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["probability_identity"], "3/4");
    assert_eq!(v["group"], "dihedral:8");
    assert_eq!(v["counts"].as_object().unwrap().values().map(|c| c.as_u64().unwrap()).sum::<u64>(), 8);
}

#[test]
fn rewriting_commands() {
    let o = wordmap(&["collect", "--word", "x2*x1"]);
    assert_eq!(stdout(&o), "x1*x2*[x1,x2]^-1\n");
    let o = wordmap(&["canon", "--word", "[x1,x2]", "--p", "3", "--m", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["canonical"], "[x1,x2]");
    let o = wordmap(&["canon", "--word", "x1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = wordmap(&["eval", "--group", "cyclic:5", "--word", "x1^2*x2", "--tuple", "1,3"]);
    assert_eq!(stdout(&o), "0\n");
}

#[test]
fn checks_set_exit_codes() {
    let o = wordmap(&["equiv", "--group", "heisenberg:p=3,k=1", "--word", "x1", "--word", "x1^4"]);
    assert_eq!(o.status.code(), Some(0));
    let o = wordmap(&["equiv", "--group", "heisenberg:p=3,k=1", "--word", "[x1,x2]", "--word", "x1^3"]);
    assert_eq!(o.status.code(), Some(1));
    let o = wordmap(&["verify", "--group", "dihedral:8", "--word", "x1^3*x2*[x1,x2]"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("PASS\n"));
    // class 3 is outside the variety
    let o = wordmap(&["verify", "--group", "dihedral:16", "--word", "x1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = wordmap(&["count", "--group", "cyclic:x", "--word", "x1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = wordmap(&["count", "--group", "dihedral:8", "--word", "x1*x2*x3", "--budget", "10"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn census_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("census.csv");
    let args = [
        "census", "--group", "dihedral:8", "--group", "dihedral:16", "--group",
        "product:(quaternion:8)x(cyclic:3)", "--length", "2", "--max-exp", "2",
        "--format", "csv", "--jobs", "2", "--out", out.to_str().unwrap(),
    ];
    let o = wordmap(&args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let first = std::fs::read_to_string(&out).unwrap();
    assert!(first.starts_with("group,word,rank,order,count,total,probability,bound,pass,canonical,sylow,error\n"));
    assert_eq!(first.lines().count(), 1 + 3 * 41);
    assert_eq!(wordmap(&args).status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), first);

    let o = wordmap(&["census", "--group", "cyclic:6", "--random", "5", "--seed", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["summary"]["rows"], 5);
    assert_eq!(v["summary"]["violations"], 0);
}

#[test]
fn cayley_and_semidirect_files() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("z3.json");
    std::fs::write(&table, r#"{"order":3,"table":[[0,1,2],[1,2,0],[2,0,1]],"labels":["e","a","b"]}"#).unwrap();
    let spec = format!("cayley:file={}", table.display());
    let o = wordmap(&["eval", "--group", &spec, "--word", "x1^2", "--tuple", "a"]);
    assert_eq!(stdout(&o), "b\n");

    let action = dir.path().join("s3.json");
    std::fs::write(&action, r#"{"normal":"cyclic:3","acting":"cyclic:2","action":[[0,1,2],[0,2,1]]}"#).unwrap();
    let spec = format!("semidirect:file={}", action.display());
    let o = wordmap(&["count", "--group", &spec, "--word", "[x1,x2]", "--method", "semidirect", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["count"], "18");
    let o = wordmap(&["count", "--group", &spec, "--word", "[x1,x2]"]);
    assert_eq!(stdout(&o), "N = 18\nP = 1/2\n");
}
