use std::process::{Command, Output};

fn conway(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conway")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn expand_prints_canonical_form() {
    let o = conway(&["expand", "row2(a1,1) M mat2(0,a2;a2,1) M col2(a3,1)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "a1*a2 + a1*a3 + a2*a3 (3 terms)\n");
    let o = conway(&["expand", "row2(1,0) M col2(0,1)"]);
    assert_eq!(stdout(&o), "1 (1 terms)\n");
}

#[test]
fn expand_exit_codes() {
    let o = conway(&["expand", "M M"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("scalar"));
    let o = conway(&["expand", "row2(a1 1)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("offset 8"));
    let o = conway(&["expand", "row2(a1, 1) M col2(a2, 1) = a1 + a2 + 1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn eval_at_points() {
    let trefoil = "a1 a2 + a2 a3 + a3 a1";
    assert_eq!(stdout(&conway(&["eval", trefoil, "--ones"])), "3\n");
    assert_eq!(stdout(&conway(&["eval", "1 + a1 a2", "--ones"])), "2\n");
    assert_eq!(
        stdout(&conway(&["eval", trefoil, "--assign", "a1=2,a2=3,a3=5"])),
        "31\n"
    );
    let o = conway(&["eval", trefoil, "--assign", "a1=2,a3=5"]);
    assert_eq!(o.status.code(), Some(5));
    assert!(stderr(&o).contains("a2"));
    let o = conway(&["eval", "a1 - a1", "--assign", "a2=1"]);
    assert_eq!(o.status.code(), Some(5));
    let o = conway(&["eval", trefoil, "--assign", "b=1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_all_passes() {
    let o = conway(&["verify", "--all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o), "65/65 OK\n");
}

#[test]
fn verify_as_printed_lists_misprints() {
    let o = conway(&["verify", "--all", "--as-printed"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    for id in ["c5-whitehead-2", "c5-whitehead-3", "c6-61-2"] {
        assert!(out.contains(&format!("{id} (")), "{out}");
    }
    assert!(out.ends_with("62/65 OK\n"));
}

#[test]
fn verify_one_family() {
    let o = conway(&["verify", "--id", "c6-62-1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("seed count: 11 (matches paper)"), "{}", stdout(&o));
    let o = conway(&["verify", "--id", "c9-nothing-1"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn verify_json_mirrors_report_fields() {
    let o = conway(&["verify", "--id", "c3-trefoil-1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let r = &v[0];
    assert_eq!(r["id"], "c3-trefoil-1");
    assert_eq!(r["canonical"], "a1*a2 + a1*a3 + a2*a3");
    assert_eq!(r["seed_count"], 3);
    assert_eq!(r["branches_agree"], true);
    assert_eq!(r["multilinear_unit"], true);
    assert_eq!(r["expected_match"], true);
    assert_eq!(r["mismatches"], serde_json::json!([]));
    assert_eq!(r["oracle"]["point_agrees"], true);
}

#[test]
fn table_is_stable() {
    let first = conway(&["table", "--format", "csv"]);
    let second = conway(&["table", "--format", "csv"]);
    assert_eq!(first.stdout, second.stdout);
    let text = stdout(&first);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "id,seed_label,conway_count,conway_number,factorizations");
    assert_eq!(lines.len(), 66);
    assert!(lines.contains(&"c3-trefoil-1,3_1,3,3,1"));
    assert!(lines.contains(&"c6-borromean-1,C_2^3,6,16,1"));

    let md = stdout(&conway(&["table"]));
    let rows = md.lines().filter(|l| l.starts_with("| c")).count();
    assert_eq!(rows, 65);
}

#[test]
fn identities_hold() {
    let o = conway(&["identities"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 9);
    assert!(out.lines().all(|l| l.starts_with("PASS")));
    assert!(out.contains("random 100/100"));
}

#[test]
fn alternative_registry_file() {
    let dir = std::env::temp_dir().join(format!("conway-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("one.toml");
    std::fs::write(
        &good,
        r#"
[[family]]
id = "t"
seed_label = "3_1"
conway_count = 3
expressions = ["row2(a1, 1) M mat2(0, a2; a2, 1) M col2(a3, 1)"]
as_printed = ["row2(a1, 1) M mat2(0, a2; a2, 1) M col2(a3, 1)"]
"#,
    )
    .unwrap();
    let o = conway(&["verify", "--all", "--registry", good.to_str().unwrap()]);
    assert_eq!(stdout(&o), "1/1 OK\n");
    let bad = dir.join("bad.toml");
    std::fs::write(&bad, "").unwrap();
    let o = conway(&["table", "--registry", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("schema"));
    std::fs::remove_dir_all(&dir).unwrap();
}
