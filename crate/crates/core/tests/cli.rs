use std::path::Path;
use std::process::{Command, Output};

use ibalg::search::Certificate;
use ibalg::Family;
use serde_json::Value;

fn ibalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ibalg")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn error_kind(out: &Output) -> String {
    let v: Value = serde_json::from_slice(&out.stderr).expect("stderr is a JSON error record");
    assert!(v["message"].is_string());
    v["error"].as_str().unwrap().to_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn gen_homog(dir: &Path, name: &str, seed: &str, n: &str) -> String {
    let f = dir.join(name);
    let out = ibalg(&[
        "gen",
        "homog",
        "--seed",
        seed,
        "--order-sizes",
        "30,26",
        "--k",
        "3,3",
        "--n",
        n,
        "--out",
        path(&f),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    path(&f).to_owned()
}

#[test]
fn canon_example() {
    let out = ibalg(&["canon", "--order", "5", "--points", "0,1,4"]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), r#"["-inf",2,4,"+inf"]"#);
    let out = ibalg(&["canon", "--order", "4"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "[]");
}

#[test]
fn lemma16_small_sweep_is_clean() {
    let out = ibalg(&["lemma16", "verify", "--max-order", "6", "--max-k", "4"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["counterexamples"], Value::Array(vec![]));
    assert_eq!(v["triples"], 193);
}

#[test]
fn generated_family_yields_verifying_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let fam = gen_homog(dir.path(), "f.json", "7", "24");
    for (mode, name) in [("sextuple", "c1.json"), ("sextuple-sym", "c2.json"), ("quadruple", "c3.json")] {
        let cert_path = dir.path().join(name);
        let out = ibalg(&["search", mode, "--family", &fam, "--out", path(&cert_path)]);
        assert_eq!(code(&out), 0, "{mode}: {}", String::from_utf8_lossy(&out.stdout));
        let found = stdout_json(&out);
        assert_eq!(found["found"], true);
        let cert = Certificate::from_json(&std::fs::read_to_string(&cert_path).unwrap()).unwrap();
        let family = Family::from_json(&std::fs::read_to_string(&fam).unwrap()).unwrap();
        assert!(cert.verify(&family).unwrap());
        assert_eq!(found["indices"], serde_json::to_value(&cert.indices).unwrap());
        assert_eq!(cert.provenance.family_seed, Some(7));
    }
}

#[test]
fn outputs_are_byte_identical_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    let a = gen_homog(dir.path(), "a.json", "11", "20");
    let b = gen_homog(dir.path(), "b.json", "11", "20");
    let c = gen_homog(dir.path(), "c.json", "12", "20");
    let read = |p: &str| std::fs::read(p).unwrap();
    assert_eq!(read(&a), read(&b));
    assert_ne!(read(&a), read(&c));

    let r1 = dir.path().join("r1.json");
    let r2 = dir.path().join("r2.json");
    for r in [&r1, &r2] {
        let out = ibalg(&[
            "gen",
            "random",
            "--seed",
            "1",
            "--kappa",
            "2",
            "--order-sizes",
            "8,8",
            "--n",
            "6",
            "--max-intervals",
            "2",
            "--out",
            path(r),
        ]);
        assert_eq!(code(&out), 0);
    }
    assert_eq!(std::fs::read(&r1).unwrap(), std::fs::read(&r2).unwrap());
    assert!(Family::from_json(&std::fs::read_to_string(&r1).unwrap()).is_ok());

    let c1 = dir.path().join("c1.json");
    let c2 = dir.path().join("c2.json");
    for (fam, cert) in [(&a, &c1), (&b, &c2)] {
        assert_eq!(code(&ibalg(&["search", "sextuple", "--family", fam, "--out", path(cert)])), 0);
    }
    assert_eq!(std::fs::read(&c1).unwrap(), std::fs::read(&c2).unwrap());

    let q1 = ibalg(&["ramsey", "quad", "--colors", "3", "--n", "40", "--seed", "5"]);
    let q2 = ibalg(&["ramsey", "quad", "--colors", "3", "--n", "40", "--seed", "5"]);
    assert_eq!(q1.stdout, q2.stdout);
    assert_eq!(stdout_json(&q1)["seed"], 5);
}

#[test]
fn empty_random_family_is_valid() {
    let out = ibalg(&[
        "gen",
        "random",
        "--seed",
        "3",
        "--kappa",
        "1",
        "--order-sizes",
        "8",
        "--n",
        "0",
        "--max-intervals",
        "2",
    ]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["elements"], Value::Array(vec![]));
    assert_eq!(v["seed"], 3);
}

#[test]
fn exit_code_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let fam = gen_homog(dir.path(), "f.json", "3", "12");
    let small = gen_homog(dir.path(), "s.json", "3", "3");
    let missing = path(&dir.path().join("missing.json")).to_owned();
    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{\"kappa\": 1, \"order_sizes\": [4], \"elements\": [[[\"+inf\"]]]}").unwrap();
    let garbage = path(&garbage).to_owned();
    let cert = path(&dir.path().join("c.json")).to_owned();

    let cases: Vec<(Vec<&str>, i32, Option<&str>)> = vec![
        (vec!["canon", "--order", "5", "--points", "1"], 0, None),
        (vec!["canon", "--order", "3", "--points", "5"], 2, None),
        (vec!["canon", "-o", "3"], 2, Some("usage")),
        (vec!["frobnicate"], 2, Some("usage")),
        (vec!["eval", "--term", "x0*-x1", "--family", &fam, "--assign", "0,1"], 0, None),
        (vec!["eval", "--term", "x0*(", "--family", &fam, "--assign", "0"], 2, None),
        (vec!["eval", "--term", "x0*x1", "--family", &fam, "--assign", "0"], 2, None),
        (vec!["eval", "--term", "x0", "--family", &fam, "--assign", "99"], 2, None),
        (vec!["independent", "--family", &fam, "--indices", "0,1,2"], 0, None),
        (vec!["independent", "--family", &missing, "--indices", "0"], 2, None),
        (vec!["homog", "check", "--family", &fam], 0, None),
        (vec!["homog", "check", "--family", &garbage], 2, None),
        (vec!["homog", "extract", "--family", &fam], 0, None),
        (vec!["lemma16", "verify", "--max-order", "4", "--max-k", "4"], 0, None),
        (vec!["lemma16", "verify", "--max-order", "99", "--max-k", "4"], 2, None),
        (vec!["search", "sextuple", "--family", &fam, "--out", &cert], 0, None),
        (vec!["search", "sextuple", "--family", &small, "--out", &cert], 1, None),
        (vec!["search", "sextuple-sym", "--family", &small, "--out", &cert], 1, None),
        (vec!["search", "quadruple", "--family", &small, "--out", &cert], 1, None),
        (vec!["search", "quadruple", "--family", &missing, "--out", &cert], 2, None),
        (vec!["ramsey", "quad", "--colors", "2", "--n", "16", "--seed", "1"], 0, None),
        (vec!["ramsey", "quad", "--colors", "2", "--n", "3", "--seed", "1"], 1, None),
        (vec!["ramsey", "quad", "--colors", "0", "--n", "8", "--seed", "1"], 2, None),
        (vec!["ramsey", "quad", "--colors", "2", "--n", "100000", "--seed", "1"], 2, Some("capacity")),
        (
            vec![
                "gen",
                "random",
                "--seed",
                "1",
                "--kappa",
                "1",
                "--order-sizes",
                "5",
                "--n",
                "2",
                "--max-intervals",
                "2",
            ],
            2,
            Some("capacity"),
        ),
        (vec!["gen", "homog", "--seed", "1", "--order-sizes", "8", "--k", "3,3", "--n", "2"], 2, None),
    ];
    for (args, want, kind) in cases {
        let out = ibalg(&args);
        assert_eq!(code(&out), want, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        if want == 2 {
            let got = error_kind(&out);
            if let Some(kind) = kind {
                assert_eq!(got, kind, "{args:?}");
            }
        }
    }
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(code(&ibalg(&["--help"])), 0);
    assert_eq!(code(&ibalg(&["--version"])), 0);
}
