use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_invfourier")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn vec_brute_table_at_q3() {
    let o = run(&["compute", "--family", "vec", "--q", "3", "--n", "1", "--method", "brute", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "label,0,1\n0,1,2\n1,1,-1\n");
}

#[test]
fn sym_all_methods_agree() {
    let o = run(&["compute", "--family", "sym", "--q", "3", "--n", "2", "--method", "all"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("brute force equals closed form: PASS"));
}

#[test]
fn rectangular_needs_n_at_most_m() {
    let o = run(&["compute", "--family", "mat", "--q", "3", "--n", "2", "--m", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_field_order_is_input_error() {
    let o = run(&["compute", "--family", "vec", "--q", "6", "--n", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["compute", "--family", "alt", "--q", "4", "--n", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn export_vec_csv_grid() {
    let o = run(&["export", "--family", "vec", "--q", "3", "--n", "2", "--method", "recursion", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines[0], "label,0,1,2");
    assert_eq!(lines.len(), 4);
    assert!(lines[1..].iter().all(|l| l.split(',').count() == 4));
    assert!(!s.contains('\r'));
}

#[test]
fn export_sym_json_has_gamma_objects() {
    let o = run(&["export", "--family", "sym", "--q", "3", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["blocks"]["psi4"]["entries"][0][0], serde_json::json!({"a": 0, "b": 3}));
    assert_eq!(v["blocks"]["psi3"]["entries"][1][1], serde_json::json!({"a": -3, "b": 0}));
    assert_eq!(v["epsilon"], -1);
}

#[test]
fn sym_csv_with_gamma_is_rejected() {
    let o = run(&["export", "--family", "sym", "--q", "3", "--n", "1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("json"));
}

#[test]
fn duplicate_format_flag_is_rejected() {
    let o = run(&["export", "--family", "vec", "--q", "3", "--n", "2", "--format", "csv", "--format", "json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn symbolic_export() {
    let o = run(&["export", "--family", "vec", "--q", "3", "--n", "1", "--symbolic"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["entries"][0][1], serde_json::json!({"coeffs": [-1, 1]}));
}

#[test]
fn output_is_deterministic() {
    let dir = std::env::temp_dir().join(format!("invfourier-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (a, b) = (dir.join("a.json"), dir.join("b.json"));
    for (p, jobs) in [(&a, "1"), (&b, "2")] {
        let o = run(&["export", "--family", "alt", "--q", "5", "--n", "4", "--jobs", jobs, "--out", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_gauss_sums() {
    let o = run(&["verify", "gauss", "--q", "3,5,7,9,11"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(s.matches("squares to eps q").count(), 5);
    assert!(!s.contains("FAIL"));
}

#[test]
fn verify_limits_vec() {
    let o = run(&["verify", "limits", "--family", "vec", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS vec(3) limit at q=1 is signed Pascal matrix"));
}

#[test]
fn verify_small_grid_and_unknown_suite() {
    let o = run(&["verify", "all", "--family", "alt", "--n", "2,3", "--q", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = run(&["verify", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn limit_table() {
    let o = run(&["limit", "--family", "vec", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<Vec<i64>> =
        stdout(&o).lines().skip(1).map(|l| l.split_whitespace().skip(1).map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows, vec![vec![1, 0, 0], vec![1, -1, 0], vec![1, -2, 1]]);
}
