use std::path::PathBuf;
use std::process::Command;

fn divalg(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_divalg"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn config_file(name: &str, text: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn spec_examples() {
    assert_eq!(
        divalg(&["minpoly", "--element", "1+i+j+k"]),
        (0, "t^2 - 2*t + 4\n".into(), String::new())
    );
    assert_eq!(
        divalg(&["gd-check", "--element", "i", "--degree", "2"]).0,
        0
    );
    let (code, out, _) = divalg(&["word-decompose", "--word", "x1 x2 x1", "--degree", "2"]);
    assert_eq!(
        (code, out.as_str()),
        (0, "shirshov: v1 = ε, u1 = x1, u2 = x2 x1, v2 = ε\n")
    );
    let (code, out, _) = divalg(&[
        "rewrite",
        "--word",
        "x1 x2 x1 x2",
        "--degree",
        "2",
        "--cap",
        "2",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("evaluation check: ok"), "{out}");
}

#[test]
fn exit_code_matrix() {
    let m3 = config_file(
        "m3f2.toml",
        "[field]\nkind = prime\nmodulus = 2\n[algebra]\nkind = matrix\nn = 3\n",
    );
    let m3 = m3.to_str().unwrap();
    let bad = config_file("bad.toml", "[field]\nkind = prime\nmodulus = 4\n");
    let bad = bad.to_str().unwrap();
    let cases: &[(&[&str], i32)] = &[
        (&["minpoly", "--element", "i"], 0),
        (&["minpoly", "--element", "i +"], 2),
        (&["minpoly"], 2),
        (&["minpoly", "--config", bad, "--element", "1"], 2),
        (
            &[
                "minpoly",
                "--config",
                "/nonexistent/divalg.conf",
                "--element",
                "1",
            ],
            2,
        ),
        (&["gd-check", "--element", "i", "--degree", "1"], 1),
        (
            &[
                "gd-check",
                "--config",
                m3,
                "--element",
                "e12 + e23",
                "--degree",
                "2",
            ],
            1,
        ),
        (
            &[
                "gd-check",
                "--config",
                m3,
                "--element",
                "e12 + e23",
                "--degree",
                "3",
            ],
            0,
        ),
        (&["commutator-search", "--element", "i", "--seed", "0"], 0),
        (&["commutator-search", "--element", "i", "--json"], 2),
        (&["commutator-search", "--element", "2"], 2),
        (
            &[
                "commutator-search",
                "--config",
                m3,
                "--element",
                "1 + e12",
                "--seed",
                "0",
                "--budget",
                "0",
            ],
            1,
        ),
        (
            &[
                "commutator-search",
                "--config",
                m3,
                "--element",
                "e11",
                "--seed",
                "0",
            ],
            2,
        ),
        (&["leftminpoly", "--config", m3, "--element", "e11"], 2),
        (&["regrep", "--element", "j"], 0),
        (&["word-decompose", "--word", "x1 x2"], 0),
        (&["word-decompose", "--word", "x2 x1"], 1),
        (&["word-decompose", "--word", "x1 y2"], 2),
        (&["rewrite", "--word", "x1 x3"], 2),
        (
            &[
                "rewrite",
                "--word",
                "x2 x1 x2 x1 x2",
                "--budget",
                "0",
                "--cap",
                "2",
            ],
            2,
        ),
        (&["verify", "--seed", "0", "--budget", "40"], 0),
        (&["hilbert"], 0),
        (&["hilbert", "--config", m3], 2),
    ];
    for (args, code) in cases {
        let (got, out, err) = divalg(args);
        assert_eq!(got, *code, "{args:?}\nstdout: {out}\nstderr: {err}");
        if got == 2 {
            assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
        }
    }
}

#[test]
fn json_is_byte_stable() {
    for args in [
        &[
            "commutator-search",
            "--element",
            "1 + i",
            "--seed",
            "7",
            "--json",
        ][..],
        &["verify", "--seed", "3", "--budget", "30", "--json"][..],
        &["rewrite", "--word", "x1 x1 x2 x1 x2 x2", "--json"][..],
        &["hilbert", "--json"][..],
    ] {
        let first = divalg(args);
        assert_eq!(first.0, 0, "{args:?}: {}", first.2);
        assert_eq!(first, divalg(args));
        let v: serde_json::Value = serde_json::from_str(&first.1).unwrap();
        assert!(v.is_object());
    }
    let (_, out, _) = divalg(&["verify", "--seed", "3", "--budget", "30", "--json"]);
    let report = &out[out.find(r#"{"mode""#).unwrap()..];
    let at: Vec<usize> = ["mode", "d", "n", "witness", "certificate"]
        .iter()
        .map(|k| report.find(&format!("\"{k}\":")).unwrap())
        .collect();
    assert!(at.windows(2).all(|w| w[0] < w[1]), "{report}");
}

#[test]
fn configured_algebras() {
    let text = "# (2, 7 / Q), split, with generator j\n[algebra]\nkind = quaternion\na = 2\nb = 7\n[subfield]\ngenerator = j\ngens = i, j\n";
    let path = config_file("q23.conf", text);
    let p = path.to_str().unwrap();
    let (code, out, _) = divalg(&["hilbert", "--config", p]);
    assert_eq!(code, 1, "{out}");
    assert!(out.ends_with("division: false\n"));
    let (code, out, _) = divalg(&["leftminpoly", "--config", p, "--element", "j"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("t - j\n"), "{out}");
    let (code, out, err) = divalg(&[
        "rewrite",
        "--config",
        p,
        "--word",
        "x1 x2 x1 x2 x1",
        "--json",
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains(r#""check":true"#));
}
