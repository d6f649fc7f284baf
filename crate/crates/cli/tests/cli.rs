use std::process::{Command, Output};

fn satotate(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_satotate"))
        .args(args)
        .env_remove(satotate_cli::THREADS_ENV)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn verify_es_small_range_passes() {
    let out = satotate(&["verify-es", "--kmax", "12", "--qmax", "13"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,q,es_total,mf_total,match"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 5 * 4);
    assert!(rows.iter().all(|r| r.ends_with(",true")));
    assert!(rows.contains(&"12,5,4830,4830,true"));
}

#[test]
fn count_whole_range_at_five() {
    let out = satotate(&["count", "--p", "5", "--r", "1", "--interval", "0", "3.14159265358979"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "q,alpha,beta,N_I\n5,0,3.14159265359,20\n");
}

#[test]
fn classnum_two_is_empty() {
    let out = satotate(&["classnum", "--n", "2"]);
    assert_eq!(stdout(&out), "N,twelve_H,form_count\n2,0,0\n");
    let out = satotate(&["classnum", "--n", "3", "--to", "4"]);
    assert_eq!(stdout(&out), "N,twelve_H,form_count\n3,4,1\n4,6,1\n");
}

#[test]
fn verify_deuring_passes_on_prime_and_square_fields() {
    for q in ["5", "7", "25", "49"] {
        let out = satotate(&["verify-deuring", "--q", q]);
        assert_eq!(code(&out), 0, "q={q}");
        let text = stdout(&out);
        assert!(!text.contains("mismatch"), "q={q}");
    }
    let text = stdout(&satotate(&["verify-deuring", "--q", "25"]));
    assert!(text.contains("25,5,"));
    assert!(text.lines().any(|l| l.starts_with("25,5,") && l.ends_with(",unasserted")));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["bogus"],
        vec!["count", "--p", "5", "--r", "2", "--q", "26", "--interval", "0", "1"],
        vec!["count", "--p", "3", "--interval", "0", "1"],
        vec!["count", "--q", "5", "--interval", "2", "1"],
        vec!["histogram"],
        vec!["histogram", "--q", "12"],
        vec!["classnum", "--n", "x"],
        vec!["trace-es", "--k", "5", "--q", "7"],
    ] {
        let out = satotate(&args);
        assert_eq!(code(&out), 2, "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn thread_count_does_not_change_output() {
    for args in [
        vec!["histogram", "--q", "343", "--mode", "brute"],
        vec!["histogram", "--q", "211"],
        vec!["discrepancy", "--qs", "101,49,25"],
        vec!["verify-es", "--kmax", "16", "--qmax", "25"],
    ] {
        let one: Vec<&str> = [&["--threads", "1"][..], &args].concat();
        let many: Vec<&str> = [&["--threads", "4"][..], &args].concat();
        assert_eq!(satotate(&one).stdout, satotate(&many).stdout, "{args:?}");
    }
}

#[test]
fn repeated_runs_write_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = satotate(&[
            "discrepancy",
            "--qs",
            "49,101",
            "--format",
            "json",
            "--output",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0);
        assert!(out.stdout.is_empty());
    }
    let first = std::fs::read(&a).unwrap();
    assert_eq!(first, std::fs::read(&b).unwrap());
    let value: serde_json::Value = serde_json::from_slice(&first).unwrap();
    let rows = value.as_array().unwrap();
    assert_eq!(rows.len(), 32);
    for row in rows {
        let keys: Vec<&String> = row.as_object().unwrap().keys().collect();
        assert_eq!(keys.len(), 7);
    }
}

#[test]
fn empty_output_is_header_or_empty_array() {
    let out = satotate(&["verify-es", "--kmax", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "k,q,es_total,mf_total,match\n");
    let out = satotate(&["verify-es", "--kmax", "2", "--format", "json"]);
    assert_eq!(stdout(&out), "[]\n");
}

#[test]
fn fit_over_one_field_is_nan() {
    let out = satotate(&["discrepancy", "--qs", "101", "--fit", "--interval", "1", "2"]);
    assert_eq!(stdout(&out), "alpha,beta,slope,points\n1,2,nan,1\n");
}

#[test]
fn json_uses_strings_for_exact_values() {
    let out = satotate(&["trace-es", "--k", "12", "--q", "25", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let row = &value[0];
    assert_eq!(row["k"], 12);
    assert_eq!(row["total"], "-25499225");
    assert_eq!(row["square_term"], "107421875/12");
}

#[test]
fn sandwich_encloses_count() {
    let out = satotate(&["sandwich", "--q", "101", "--interval", "0", "1.0471975511966"]);
    let text = stdout(&out);
    let row: Vec<f64> = text.lines().nth(1).unwrap().split(',').map(|f| f.parse().unwrap()).collect();
    let (lower, n, upper) = (row[4], row[5], row[6]);
    assert!(lower <= n && n <= upper);
}

#[test]
fn help_documents_emitted_headers() {
    let cases: [(&[&str], &str); 11] = [
        (&["count", "--q", "5", "--interval", "0", "1"], "count"),
        (&["histogram", "--q", "5"], "histogram"),
        (&["classnum", "--n", "3"], "classnum"),
        (&["trace-es", "--k", "12", "--q", "5"], "trace-es"),
        (&["trace-mf", "--k", "12", "--n", "2"], "trace-mf"),
        (&["verify-es", "--kmax", "4", "--qmax", "5"], "verify-es"),
        (&["verify-deuring", "--q", "5"], "verify-deuring"),
        (&["bs-coeffs", "--alpha", "0.1", "--beta", "0.2", "--M", "2", "--sign", "minus"], "bs-coeffs"),
        (&["discrepancy", "--qs", "5", "--cells", "2"], "discrepancy"),
        (&["sandwich", "--q", "5", "--interval", "0", "1"], "sandwich"),
        (&["moments", "--q", "5", "--R", "1"], "moments"),
    ];
    for (args, name) in cases {
        let out = satotate(args);
        assert_eq!(code(&out), 0, "{name}");
        let header = stdout(&out).lines().next().unwrap().to_string();
        let help = stdout(&satotate(&[name, "--help"])).replace('\n', " ");
        assert!(help.contains(&format!("`{header}`")), "{name}: {header} missing from help");
    }
}
