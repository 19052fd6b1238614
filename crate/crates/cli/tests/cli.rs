use std::path::{Path, PathBuf};
use std::process::Command;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn golden(name: &str) -> String {
    let p = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

fn derdim(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_derdim")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_matches_golden() {
    for i in 0..5 {
        let (code, out, _) = derdim(&["check", s(&fixture(&format!("lambda{i}.alg")))]);
        assert_eq!(code, 0);
        assert_eq!(out, golden(&format!("check_lambda{i}.txt")), "lambda{i}");
    }
    let (_, out, _) = derdim(&["check", s(&fixture("lambda1.alg"))]);
    assert!(out.starts_with("dimension 2, vertices 1, projectives: P(1) dim 2\n"));
    let (_, out, _) = derdim(&["check", s(&fixture("lambda0.alg"))]);
    assert!(out.starts_with("dimension 1,"));
}

#[test]
fn unknown_arrow_reports_its_line() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.alg");
    std::fs::write(&p, "modulus 2\nvertex 1\narrow a 1 1\n\n# comment\nrelation 1 a b\ncap 2\n").unwrap();
    let (code, out, err) = derdim(&["check", s(&p)]);
    assert_eq!(code, 3);
    assert!(out.is_empty());
    assert!(err.contains("line 6: unknown arrow `b`"), "{err}");
}

#[test]
fn failed_nilpotency_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("loop.alg");
    std::fs::write(&p, "modulus 2\nvertex 1\narrow a 1 1\ncap 3\n").unwrap();
    let (code, _, err) = derdim(&["check", s(&p)]);
    assert_eq!(code, 3, "{err}");
}

#[test]
fn xdim_matches_golden() {
    let (alg, obj) = (fixture("lambda2.alg"), fixture("lambda2.objects"));
    let args = ["xdim", s(&alg), s(&obj), "--module", "@simple:1"];
    let (code, out, _) = derdim(&args);
    assert_eq!(code, 0);
    assert_eq!(out, golden("xdim_lambda2_s1.txt"));
    let mut json_args = args.to_vec();
    json_args.push("--json");
    let (_, out, _) = derdim(&json_args);
    assert_eq!(out, golden("xdim_lambda2_s1.json"));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["value"], 1);
    assert_eq!(v["trace"].as_array().unwrap().len(), 2);
}

#[test]
fn xdim_in_add_is_zero_and_cap_is_distinct() {
    let alg = fixture("lambda1.alg");
    let obj = fixture("lambda1.objects");
    let (code, out, _) = derdim(&["xdim", s(&alg), s(&obj), "--module", "S", "--generator", "all"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("xdim = 0\n"));
    let (code, out, _) = derdim(&["xdim", s(&alg), s(&obj), "--module", "S"]);
    assert_eq!(code, 1);
    assert!(out.starts_with("xdim: exceeds cap 32\n"));
    let (code, out, _) = derdim(&["xdim", s(&alg), s(&obj), "--module", "S", "--cap", "3"]);
    assert_eq!(code, 1);
    assert!(out.starts_with("xdim: exceeds cap 3\n"));
    assert_eq!(out.lines().count(), 5);
}

#[test]
fn syzygy_matches_golden() {
    let (code, out, _) = derdim(&[
        "syzygy",
        s(&fixture("lambda3.alg")),
        s(&fixture("lambda3.objects")),
        "--module",
        "@simple:1",
        "--n",
        "2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out, golden("syzygy_lambda3_s1_2.txt"));
}

#[test]
fn witness_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("s1.cert");
    let (code, out, err) = derdim(&[
        "witness",
        s(&fixture("lambda3.alg")),
        s(&fixture("lambda3.objects")),
        "--complex",
        "s1",
        "--mode",
        "main",
        "--d",
        "2",
        "--out",
        s(&cert),
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("level 3"));
    assert_eq!(std::fs::read_to_string(&cert).unwrap(), golden("lambda3_s1_main.cert"));
    let (code, out, _) = derdim(&["verify", s(&cert)]);
    assert_eq!(code, 0);
    assert_eq!(out, "accept: level 3\n");
}

#[test]
fn han_certificate_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("x.cert");
    let (code, _, err) = derdim(&[
        "witness",
        s(&fixture("lambda1.alg")),
        s(&fixture("lambda1.objects")),
        "--complex",
        "xchain",
        "--generator",
        "all",
        "--out",
        s(&cert),
    ]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(std::fs::read_to_string(&cert).unwrap(), golden("lambda1_xchain_han.cert"));
}

#[test]
fn main_mode_with_small_d_is_a_usage_error() {
    let (code, _, err) = derdim(&[
        "witness",
        s(&fixture("lambda3.alg")),
        s(&fixture("lambda3.objects")),
        "--complex",
        "s1",
        "--mode",
        "main",
        "--d",
        "1",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("d >= 2"));
}

#[test]
fn tampered_certificate_is_rejected_with_a_path() {
    let text = golden("lambda3_s1_main.cert");
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("t.cert");

    std::fs::write(&p, text.replacen("internal 3", "internal 2", 1)).unwrap();
    let (code, out, _) = derdim(&["verify", s(&p)]);
    assert_eq!(code, 1);
    assert!(out.starts_with("reject at root:"), "{out}");

    // Corrupt the first nonempty matrix row inside the first leaf presentation.
    let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
    let start = lines.iter().position(|l| l == "presentation").unwrap();
    let k = (start..lines.len())
        .find(|&k| lines[k].starts_with("matrix") && !lines[k].ends_with(" 0") && !lines[k].starts_with("matrix 0"))
        .unwrap()
        + 1;
    let row: Vec<String> = lines[k].split(' ').map(|x| if x == "0" { "1".into() } else { "0".into() }).collect();
    lines[k] = row.join(" ");
    std::fs::write(&p, lines.join("\n")).unwrap();
    let (code, out, _) = derdim(&["verify", s(&p)]);
    assert_eq!(code, 1);
    assert!(out.starts_with("reject at root/"), "{out}");

    std::fs::write(&p, "not a certificate\n").unwrap();
    let (code, _, _) = derdim(&["verify", s(&p)]);
    assert_eq!(code, 3);
}

#[test]
fn bound_renders_every_line() {
    let (code, out, _) = derdim(&["bound", "--d", "0", "--mode", "gorenstein"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "gorenstein corollary: 0-Gorenstein of finite CM-type => dim D^b <= 2\n\
         main theorem (i): X-dim = 0 <= 1 => dim D^b <= 1\n"
    );
    let (_, out, _) = derdim(&["bound", "--d", "inf"]);
    assert_eq!(out, "relative dimension bound: X-dim infinite => no bound\n");
    let (code, _, _) = derdim(&["bound", "--d", "two"]);
    assert_eq!(code, 2);
}

#[test]
fn semires_check_finds_no_counterexample_for_every_indecomposable() {
    let (code, out, _) = derdim(&[
        "semires-check",
        s(&fixture("lambda3.alg")),
        s(&fixture("lambda3.objects")),
        "--generator",
        "all",
        "--samples",
        "20",
    ]);
    assert_eq!(code, 0);
    assert!(out.ends_with("20 samples: 20 pass, 0 fail, 0 inconclusive; no counterexample\n"), "{out}");
}

#[test]
fn semires_check_refutes_a_bad_generator() {
    // S1 lies in add(Λ ⊕ S1) but its cover kernel S2 does not.
    let dir = tempfile::tempdir().unwrap();
    let obj = dir.path().join("g.objects");
    std::fs::write(
        &obj,
        "generator bad\nsummand @regular\nsummand @simple 1\nsemi_resolving no\nend\n",
    )
    .unwrap();
    let (code, out, _) = derdim(&[
        "semires-check",
        s(&fixture("lambda3.alg")),
        s(&obj),
        "--generator",
        "bad",
        "--samples",
        "40",
    ]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("counterexample"));
    assert!(out.contains("refuted"));
}

#[test]
fn seed_is_accepted_everywhere() {
    let args = |seed: &str| {
        derdim(&[
            "semires-check",
            s(&fixture("lambda2.alg")),
            s(&fixture("lambda2.objects")),
            "--generator",
            "proj",
            "--samples",
            "5",
            "--seed",
            seed,
            "--json",
        ])
        .1
    };
    assert_eq!(args("9"), args("9"));
}
