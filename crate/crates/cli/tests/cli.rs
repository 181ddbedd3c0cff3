use std::process::{Command, Output};

fn quadprinc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadprinc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> Option<i32> {
    quadprinc(args).status.code()
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["classify", "11"]), Some(0));
    assert_eq!(code(&["check", "conductor", "7"]), Some(0));
    assert_eq!(code(&["check", "prop4.5", "11"]), Some(1));
    assert_eq!(code(&["classify", "12"]), Some(2));
    assert_eq!(code(&["check", "lem4.1", "7"]), Some(2));
    assert_eq!(code(&["check", "no-such-check", "3"]), Some(2));
    assert_eq!(code(&["sweep"]), Some(2));
    assert_eq!(code(&["classify", "3", "--json", "--human"]), Some(2));
}

#[test]
fn classify_emits_verifiable_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    let p = path.to_str().unwrap();
    assert_eq!(code(&["classify", "43", "--out", p]), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["verdict"]["status"], "NotPrinc");
    assert_eq!(v["verdict"]["witness"]["rational_prime"], 11);
    assert_eq!(code(&["verify", p]), Some(0));

    let tampered = text.replacen("\"self_check\": true", "\"self_check\": false", 1);
    std::fs::write(&path, tampered).unwrap();
    assert_eq!(code(&["verify", p]), Some(3));
}

#[test]
fn human_output_is_unquoted() {
    let out = quadprinc(&["classify", "5", "--human"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("NotPrinc"), "{text}");
    assert!(!text.contains('"'), "{text}");
}

#[test]
fn json_output_is_stable_across_thread_counts() {
    let one = quadprinc(&["sweep", "3,7,11,163", "--threads", "1"]).stdout;
    let many = quadprinc(&["sweep", "3,7,11,163", "--threads", "3"]).stdout;
    assert!(!one.is_empty());
    assert_eq!(one, many);
}
