use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn tests_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests")
}

fn frobscan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frobscan"))
        .args(args)
        .current_dir(tests_dir())
        .env_remove("FROBSCAN_JOBS")
        .output()
        .expect("spawn frobscan")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Data rows of a CSV table, skipping the `#` line and the header.
fn rows(text: &str) -> Vec<Vec<String>> {
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# frobscan "));
    let rest: String = lines.map(|l| format!("{l}\n")).collect();
    let mut rdr = csv::Reader::from_reader(rest.as_bytes());
    rdr.records()
        .map(|r| r.unwrap().iter().map(String::from).collect())
        .collect()
}

#[test]
fn golden_files() {
    let cases: &[(&[&str], &str)] = &[
        (
            &["classnum", "--from", "-20", "--to", "-3"],
            "classnum_range.csv",
        ),
        (
            &["ntrace", "-p", "5", "-k", "1", "--all-t"],
            "ntrace_f5.csv",
        ),
        (
            &["ntrace", "-p", "5", "-k", "2", "--all-t"],
            "ntrace_f25.csv",
        ),
        (&["census", "-p", "5", "-k", "1"], "census_f5.csv"),
        (
            &["census", "-p", "5", "--level", "igusa:1"],
            "census_f5_igusa.csv",
        ),
        (
            &["census", "-p", "7", "--level", "gamma:3"],
            "census_f7_gamma3.csv",
        ),
        (
            &[
                "scan",
                "--builtin",
                "legendre",
                "-p",
                "5",
                "-B",
                "2",
                "-t",
                "-2",
            ],
            "scan_legendre_t.csv",
        ),
        (
            &[
                "scan",
                "--builtin",
                "legendre",
                "-p",
                "5",
                "-B",
                "4",
                "--hist",
                "16",
            ],
            "scan_legendre_hist16.csv",
        ),
        (
            &[
                "scan",
                "-f",
                "data/small.fam",
                "-B",
                "1",
                "--angles",
                "0",
                "3.14159",
            ],
            "scan_small_angles.csv",
        ),
        (
            &[
                "scan",
                "--builtin",
                "legendre",
                "-p",
                "5",
                "-B",
                "2",
                "--format",
                "json",
            ],
            "scan_legendre_b2.json",
        ),
    ];
    for (args, golden) in cases {
        let out = frobscan(args);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let expected = std::fs::read_to_string(tests_dir().join("golden").join(golden)).unwrap();
        assert_eq!(stdout(&out), expected, "{args:?} vs {golden}");
    }
}

#[test]
fn classnum_rows() {
    let out = frobscan(&["classnum", "-d", "-3"]);
    assert_eq!(rows(&stdout(&out)), vec![vec!["-3", "1", "1", ""]]);
    let out = frobscan(&["classnum", "-d", "-16"]);
    assert_eq!(rows(&stdout(&out)), vec![vec!["-16", "1", "2", ""]]);
    let out = frobscan(&["classnum", "-d", "-5"]);
    assert_eq!(out.status.code(), Some(0));
    let r = rows(&stdout(&out));
    assert_eq!(r[0][..3], ["-5", "", ""]);
    assert!(r[0][3].contains("0 or 1 mod 4"));
    let r = rows(&stdout(&frobscan(&[
        "classnum", "--from", "-8", "--to", "4",
    ])));
    assert_eq!(r.len(), 13);
    assert!(r
        .iter()
        .filter(|row| row[0].parse::<i64>().unwrap() >= 0)
        .all(|row| !row[3].is_empty()));
}

#[test]
fn ntrace_rows() {
    let r = rows(&stdout(&frobscan(&[
        "ntrace", "-p", "5", "-k", "2", "-t", "10",
    ])));
    assert_eq!(r, vec![vec!["10", "1", "t²=4qᵏ square"]]);
    let r = rows(&stdout(&frobscan(&["ntrace", "-p", "5", "-t", "7"])));
    assert_eq!(r, vec![vec!["7", "0", "otherwise"]]);
    let r = rows(&stdout(&frobscan(&["ntrace", "-p", "5", "--all-t"])));
    assert_eq!(r.len(), 10);
    let ts: Vec<&str> = r.iter().map(|row| row[0].as_str()).collect();
    assert_eq!(ts, ["-4", "-3", "-2", "-1", "0", "1", "2", "3", "4", "sum"]);
    let r = rows(&stdout(&frobscan(&[
        "ntrace", "-p", "7", "-e", "1", "-k", "1", "--from", "-6", "--to", "6",
    ])));
    let total: u64 = r.iter().map(|row| row[1].parse::<u64>().unwrap()).sum();
    // 2q + 4 isomorphism classes over F_7, since 7 = 7 mod 12.
    assert_eq!(total, 18);
}

#[test]
fn census_rows_match() {
    let r = rows(&stdout(&frobscan(&["census", "-p", "5"])));
    assert!(r.iter().all(|row| row[3] == "MATCH"));
    let r = rows(&stdout(&frobscan(&["census", "-p", "5", "-k", "2"])));
    assert_eq!(r.len(), 21);
    assert!(r.iter().all(|row| row[3] == "MATCH"));
    let out = frobscan(&["level-census", "-p", "7", "--level", "gamma:3"]);
    let r = rows(&stdout(&out));
    let row = r.iter().find(|row| row[0] == "-1").unwrap();
    assert_eq!(row[1..6], ["true", "4", "4", "12", "MATCH"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| frobscan(args).status.code();
    assert_eq!(code(&["--help"]), Some(0));
    assert_eq!(code(&["--version"]), Some(0));
    assert_eq!(code(&[]), Some(1));
    assert_eq!(code(&["ntrace", "-p", "5"]), Some(1));
    assert_eq!(code(&["ntrace", "-p", "4", "-t", "1"]), Some(1));
    assert_eq!(code(&["census", "-p", "5", "--level", "gamma1:4"]), Some(1));
    assert_eq!(code(&["census", "-p", "5", "--level", "bogus"]), Some(1));
    assert_eq!(code(&["census", "-p", "1009", "-k", "2"]), Some(1));
    assert_eq!(code(&["scan", "-B", "1"]), Some(1));
    assert_eq!(code(&["scan", "--builtin", "legendre", "-B", "1"]), Some(1));
    assert_eq!(
        code(&[
            "scan",
            "--builtin",
            "legendre",
            "-p",
            "5",
            "-B",
            "1",
            "--angles",
            "pi",
            "0"
        ]),
        Some(1)
    );
    assert_eq!(
        code(&[
            "scan",
            "--builtin",
            "legendre",
            "-p",
            "5",
            "-B",
            "1",
            "--angles",
            "0",
            "4"
        ]),
        Some(1)
    );
    assert_eq!(
        code(&["scan", "-f", "data/missing.fam", "-B", "1"]),
        Some(1)
    );
    assert_eq!(
        code(&["scan", "--builtin", "legendre", "-p", "5", "-B", "9"]),
        Some(1)
    );
    assert_eq!(code(&["--jobs", "0", "classnum", "-d", "-3"]), Some(1));
    assert_eq!(
        code(&["classnum", "-d", "-3", "-o", "/nonexistent/dir/out.csv"]),
        Some(2)
    );
    let out = frobscan(&["level-census", "-p", "11", "--level", "gamma1:5"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("MISMATCH"));
}

#[test]
fn json_mirrors_csv() {
    let csv_text = stdout(&frobscan(&["census", "-p", "7", "--level", "igusa:1"]));
    let json_text = stdout(&frobscan(&[
        "census", "-p", "7", "--level", "igusa:1", "--format", "json",
    ]));
    let json: Value = serde_json::from_str(&json_text).unwrap();
    let arr = json.as_array().unwrap();
    let csv_rows = rows(&csv_text);
    assert_eq!(arr.len(), csv_rows.len());
    let header: Vec<&str> = csv_text.lines().nth(1).unwrap().split(',').collect();
    for (obj, row) in arr.iter().zip(&csv_rows) {
        let keys: Vec<&str> = obj
            .as_object()
            .unwrap()
            .keys()
            .map(String::as_str)
            .collect();
        assert_eq!(keys, header);
        for (key, cell) in header.iter().zip(row) {
            let v = &obj[*key];
            let text = match v {
                Value::Null => String::new(),
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            assert_eq!(&text, cell);
        }
    }
}

#[test]
fn output_file_and_jobs_are_deterministic() {
    let dir = std::env::temp_dir().join(format!("frobscan-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("scan.csv");
    let args = [
        "scan",
        "--builtin",
        "legendre",
        "-p",
        "7",
        "-B",
        "3",
        "--bounds",
    ];
    let mut with_file = args.to_vec();
    let p = path.to_str().unwrap();
    with_file.extend(["-o", p, "--jobs", "3"]);
    let out = frobscan(&with_file);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let from_file = std::fs::read_to_string(&path).unwrap();
    let single = Command::new(env!("CARGO_BIN_EXE_frobscan"))
        .args(args)
        .env("FROBSCAN_JOBS", "1")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(single.stdout).unwrap(), from_file);
    assert_eq!(stdout(&frobscan(&args)), from_file);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn scan_modes_agree() {
    let full = rows(&stdout(&frobscan(&[
        "scan",
        "--builtin",
        "legendre",
        "-p",
        "5",
        "-B",
        "2",
        "--angles",
        "0",
        "pi",
    ])));
    let fibers = rows(&stdout(&frobscan(&[
        "scan",
        "--builtin",
        "legendre",
        "-p",
        "5",
        "-B",
        "2",
        "--fibers",
    ])));
    assert_eq!(fibers[0][1..], ["3", "0", "2", "3", "6", "6"]);
    // Degree-2 closed points: (23 good F_25-points - 3 rational) / 2 = 10.
    assert_eq!(fibers[1][4], "23");
    assert_eq!(full[0][3], "13");
    let half = rows(&stdout(&frobscan(&[
        "scan",
        "--builtin",
        "legendre",
        "-p",
        "5",
        "-B",
        "2",
        "--angles",
        "pi/2",
        "pi/2",
    ])));
    let left = rows(&stdout(&frobscan(&[
        "scan",
        "--builtin",
        "legendre",
        "-p",
        "5",
        "-B",
        "2",
        "--angles",
        "0",
        "pi/2",
    ])));
    let right = rows(&stdout(&frobscan(&[
        "scan",
        "--builtin",
        "legendre",
        "-p",
        "5",
        "-B",
        "2",
        "--angles",
        "pi/2",
        "pi",
    ])));
    let n = |r: &Vec<Vec<String>>| r[0][3].parse::<u64>().unwrap();
    assert_eq!(n(&left) + n(&right), n(&full) + n(&half));
    let hist = rows(&stdout(&frobscan(&[
        "scan",
        "--builtin",
        "legendre",
        "-p",
        "5",
        "-B",
        "2",
        "--hist",
        "5",
    ])));
    let mass: u64 = hist.iter().map(|row| row[3].parse::<u64>().unwrap()).sum();
    assert_eq!(mass, n(&full));
    let spectrum = rows(&stdout(&frobscan(&[
        "scan",
        "--builtin",
        "legendre",
        "-p",
        "5",
        "-B",
        "2",
    ])));
    assert!(spectrum.iter().all(|row| row[5] == "BOUND-OK"));
    let k2: u64 = spectrum
        .iter()
        .filter(|row| row[0] == "2")
        .map(|row| row[2].parse::<u64>().unwrap())
        .sum();
    assert_eq!(k2, 23);
}
