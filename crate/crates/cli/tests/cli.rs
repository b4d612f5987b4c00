use std::fs;
use std::process::{Command, Output};

fn sl2ext(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sl2ext"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn ext_and_coh_examples() {
    for (args, want) in [
        (&["ext", "-p", "2", "-q", "6", "--weyl", "0", "--simple", "24"][..], "3"),
        (&["coh", "-p", "2", "-m", "6", "--simple", "24"][..], "3"),
        (&["ext", "-p", "3", "-q", "1", "--weyl", "0", "--simple", "4"][..], "1"),
        (&["coh", "-p", "2", "-m", "31", "--simple", "2147483648"][..], "10506175"),
    ] {
        let o = sl2ext(args);
        assert!(o.status.success(), "{args:?}");
        assert_eq!(stdout(&o).trim(), want, "{args:?}");
    }
}

#[test]
fn trace_lists_nontrivial_paths() {
    let o = sl2ext(&["ext", "-p", "2", "-q", "6", "--weyl", "0", "--simple", "24", "--trace"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("3"));
    assert!(text.contains("a-string (4,0,2) nontrivial leaf Ext^0(Δ(3),L(3))"));
    assert_eq!(text.matches(" nontrivial").count(), 3);

    let o = sl2ext(&["ext", "-p", "2", "-q", "6", "--weyl", "0", "--simple", "24", "--trace", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let trace = v["results"][0]["trace"].as_array().unwrap();
    assert!(trace
        .iter()
        .any(|t| t["a_string"] == serde_json::json!([4, 0, 2]) && t["status"] == "nontrivial"));
}

#[test]
fn trace_rejects_odd_characteristic() {
    let o = sl2ext(&["ext", "-p", "3", "-q", "2", "--weyl", "0", "--simple", "8", "--trace"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn self_twist_table_csv() {
    let o = sl2ext(&["table", "self-twist", "--max-m", "31", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "m,weight,dim");
    assert_eq!(lines.len(), 32);
    assert_eq!(lines[31], "31,2147483648,10506175");
}

#[test]
fn r3_table_ends_on_known_row() {
    let o = sl2ext(&["table", "r-twist", "-r", "3", "--max-m", "32", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 31);
    assert_eq!(text.lines().last(), Some("32,3221225472,13344508"));
}

#[test]
fn strings_counts() {
    assert_eq!(stdout(&sl2ext(&["strings", "partitions", "-m", "5"])).trim(), "3");
    assert_eq!(stdout(&sl2ext(&["strings", "c", "-k", "3"])).trim(), "2");
    let b = stdout(&sl2ext(&["strings", "b", "-m", "4", "-n", "4"]));
    let lines: Vec<&str> = b.lines().collect();
    assert_eq!(lines[0], "2");
    assert_eq!(&lines[1..], ["b (0,2,1,0) a (0,4)", "b (1,1,1,0) a (2,1,1)"]);
}

#[test]
fn h2_and_tower() {
    let o = sl2ext(&["h2", "-p", "5", "--simple", "38", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["results"][0]["dim"], "1");
    assert_eq!(v["results"][0]["witness"]["reason"], "2p^2-2p-2");
    assert_eq!(stdout(&sl2ext(&["h2", "-p", "7", "--tower", "3"])).trim(), "3");
    assert_eq!(sl2ext(&["h2", "-p", "3", "--simple", "6"]).status.code(), Some(2));
}

#[test]
fn wall_reduction() {
    let o = sl2ext(&["wall-reduce", "-p", "2", "-q", "6", "--weyl", "6,0", "--simple", "0,12"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "3");
    let o = sl2ext(&["wall-reduce", "-p", "2", "-q", "6", "--weyl", "0,0", "--simple", "12,0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_tables_passes() {
    let o = sl2ext(&["verify", "tables"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("58 of 58 checks passed"));
}

#[test]
fn verify_input_round_trips_and_catches_off_by_one() {
    let dir = tempfile::tempdir().unwrap();
    for format in ["csv", "json"] {
        let table = sl2ext(&["table", "self-twist", "--max-m", "20", "--format", format]);
        let good = dir.path().join(format!("good.{format}"));
        fs::write(&good, &table.stdout).unwrap();
        let o = sl2ext(&["verify", "tables", "--input", good.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{format}: {}", stdout(&o));
    }

    let csv = stdout(&sl2ext(&["table", "self-twist", "--max-m", "20", "--format", "csv"]));
    let seeded = csv.replace("17,131072,2938\n", "17,131072,2939\n");
    assert_ne!(seeded, csv, "seed row present");
    let bad = dir.path().join("bad.csv");
    fs::write(&bad, seeded).unwrap();
    let o = sl2ext(&["verify", "tables", "--input", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("mismatch"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(sl2ext(&["ext", "-p", "4", "-q", "1", "--weyl", "0", "--simple", "2"]).status.code(), Some(2));
    assert_eq!(sl2ext(&["ext", "-p", "2", "-q", "1", "--weyl", "x", "--simple", "2"]).status.code(), Some(2));
    assert_eq!(sl2ext(&["table", "r-twist", "-r", "4", "--max-m", "5"]).status.code(), Some(2));
    assert_eq!(sl2ext(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn cap_exceeded_exits_three() {
    let o = sl2ext(&["--cap", "2", "strings", "b", "-m", "6", "-n", "6"]);
    assert_eq!(o.status.code(), Some(3));
    let o = sl2ext(&["--cap", "5", "strings", "a", "-m", "6", "--simple", "24"]);
    assert_eq!(o.status.code(), Some(3));
}
