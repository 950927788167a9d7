use std::process::{Command, Output};

fn glmn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_glmn"))
        .args(args)
        .env_remove("GLMN_FORMAT")
        .env_remove("GLMN_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn typicality_examples() {
    for (args, text) in [
        (vec!["typicality", "--m", "1", "--n", "1"], "(λ1 + λ2)\n"),
        (
            vec!["typicality", "--m", "2", "--n", "1"],
            "(λ1 + λ3 + 1)(λ2 + λ3)\n",
        ),
        (
            vec!["typicality", "--m", "1", "--n", "1", "--lambda", "1,2"],
            "3\n",
        ),
        (
            vec!["typicality", "--m", "1", "--n", "2", "--lambda", "1/2,-3,0"],
            "5/4\n",
        ),
    ] {
        let o = glmn(&args);
        assert_eq!(code(&o), 0, "{args:?}");
        assert_eq!(stdout(&o), text, "{args:?}");
    }
    let o = glmn(&["typicality", "--m", "1", "--n", "1", "--lambda", "1,x"]);
    assert_eq!(code(&o), 3);
    let o = glmn(&["typicality", "--m", "1", "--n", "1", "--lambda", "1,2,3"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn verify_theorem_matches_and_respects_the_cap() {
    for (m, n) in [("1", "1"), ("2", "2")] {
        let o = glmn(&["verify-theorem", "--m", m, "--n", n]);
        assert_eq!(code(&o), 0);
        assert!(stdout(&o).ends_with("match\n"));
    }
    assert_eq!(code(&glmn(&["verify-theorem", "--m", "3", "--n", "3"])), 2);
    assert_eq!(
        code(&glmn(&[
            "--cap-terms",
            "1",
            "verify-theorem",
            "--m",
            "2",
            "--n",
            "1"
        ])),
        2
    );
}

#[test]
fn lemma_and_straighten() {
    let o = glmn(&["lemma41", "--m", "2", "--n", "1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "i = 1: vanishes\ni = 2: vanishes\n");
    let o = glmn(&[
        "straighten",
        "--m",
        "1",
        "--n",
        "1",
        "--expr",
        "e 1 2 * f 1 2",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "-f12·e12 + e11 + e22\n");
    let o = glmn(&[
        "straighten",
        "--m",
        "1",
        "--n",
        "1",
        "--expr",
        "f 1 2 * f 1 2",
    ]);
    assert_eq!(stdout(&o), "0\n");
    assert_eq!(
        code(&glmn(&[
            "straighten",
            "--m",
            "1",
            "--n",
            "1",
            "--expr",
            "e 1 9"
        ])),
        3
    );
}

#[test]
fn scan_examples() {
    for (m, n, p, rows) in [("1", "1", "3", 9), ("1", "1", "5", 25), ("2", "1", "3", 27)] {
        let o = glmn(&["--format", "csv", "scan", "--m", m, "--n", n, "--p", p]);
        assert_eq!(code(&o), 0);
        let text = stdout(&o);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), rows + 1);
        assert!(lines[1..].iter().all(|l| l.ends_with(",true")));
    }
    let o = glmn(&[
        "--format", "json", "scan", "--m", "1", "--n", "1", "--p", "3",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["simple_count"], 6);
    assert_eq!(v["disagreements"], 0);
}

#[test]
fn morita_check_examples() {
    let o = glmn(&[
        "--format",
        "json",
        "morita-check",
        "--m",
        "1",
        "--n",
        "1",
        "--p",
        "3",
        "--chi",
        "1,0",
    ]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    assert!(rows
        .iter()
        .all(|r| r["kac_simple"] == true && r["invariants_dim"] == 1));
    for chi in ["0,0", "1,2"] {
        let o = glmn(&[
            "morita-check",
            "--m",
            "1",
            "--n",
            "1",
            "--p",
            "3",
            "--chi",
            chi,
        ]);
        assert_eq!(code(&o), 3, "χ = {chi}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("χ(h_α) = 0"));
    }
    assert_eq!(
        code(&glmn(&[
            "--kmax",
            "2",
            "morita-check",
            "--m",
            "1",
            "--n",
            "1",
            "--p",
            "3",
            "--chi",
            "1,0"
        ])),
        3
    );
}

#[test]
fn usage_errors_exit_three() {
    assert_eq!(code(&glmn(&["scan", "--m", "1"])), 3);
    assert_eq!(
        code(&glmn(&[
            "--format", "csv", "lemma41", "--m", "1", "--n", "1"
        ])),
        3
    );
    assert_eq!(
        code(&glmn(&[
            "--threads",
            "0",
            "lemma41",
            "--m",
            "1",
            "--n",
            "1"
        ])),
        3
    );
    assert_eq!(
        code(&glmn(&["scan", "--m", "1", "--n", "1", "--p", "4"])),
        3
    );
    assert_eq!(code(&glmn(&["--help"])), 0);
}

#[test]
fn line_cap_is_a_resource_error() {
    assert_eq!(
        code(&glmn(&[
            "--cap-lines",
            "1",
            "scan",
            "--m",
            "2",
            "--n",
            "1",
            "--p",
            "3"
        ])),
        2
    );
}

#[test]
fn environment_mirrors_flags() {
    let o = Command::new(env!("CARGO_BIN_EXE_glmn"))
        .args(["scan", "--m", "1", "--n", "1", "--p", "3"])
        .env("GLMN_FORMAT", "csv")
        .output()
        .unwrap();
    assert!(stdout(&o).starts_with("lambda_1,lambda_2,"));
}

#[test]
fn report_files_are_identical_across_runs_and_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let runs: [(&[&str], &str); 3] = [
        (
            &[
                "--format", "csv", "scan", "--m", "2", "--n", "1", "--p", "3",
            ],
            "scan",
        ),
        (
            &[
                "--format",
                "json",
                "morita-check",
                "--m",
                "2",
                "--n",
                "1",
                "--p",
                "3",
                "--chi",
                "0,0,1",
            ],
            "morita",
        ),
        (
            &[
                "--format",
                "json",
                "--seed",
                "7",
                "cross-check",
                "--m",
                "2",
                "--n",
                "1",
                "--p",
                "3",
                "--words",
                "20",
            ],
            "cross",
        ),
    ];
    for (args, name) in runs {
        let mut bodies = Vec::new();
        for threads in ["1", "4", "4"] {
            let path = dir
                .path()
                .join(format!("{name}-{threads}-{}.out", bodies.len()));
            let mut full = vec!["--threads", threads, "--out", path.to_str().unwrap()];
            full.extend_from_slice(args);
            let o = glmn(&full);
            assert_eq!(code(&o), 0, "{full:?}");
            assert!(o.stdout.is_empty());
            bodies.push(std::fs::read(&path).unwrap());
        }
        assert!(bodies.iter().all(|b| b == &bodies[0]), "{name}");
    }
}
