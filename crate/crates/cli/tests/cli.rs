use std::path::{Path, PathBuf};
use std::process::Command;

use eqloc::files::{self, HilbertFile, SpaceFile};
use eqloc_core::catalog;
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_eqloc"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn emit_to(dir: &Path, name: &str, key: &str, params: &[&str]) -> PathBuf {
    let mut args = vec!["catalog", "emit", key];
    args.extend_from_slice(params);
    let (code, out, err) = run(&args);
    assert_eq!(code, 0, "{err}");
    write(dir, name, &out)
}

const S2: &str = "name = \"S2\"\nn = 1\n\n[[fixed_points]]\nid = \"N\"\nweights = [1]\n\n[[fixed_points]]\nid = \"S\"\nweights = [-1]\n";

const SQUARE: &str = "name = \"square\"\nn = 2\nindex = 2\n\n[[fixed_points]]\nid = \"a\"\nweights = [1, 2]\n\n[[fixed_points]]\nid = \"b\"\nweights = [-1, 2]\n\n[[fixed_points]]\nid = \"c\"\nweights = [-1, -2]\n\n[[fixed_points]]\nid = \"d\"\nweights = [1, -2]\n";

/// Two fixed points with N = (1, 1, 0).
const NIN: &str = "name = \"two points\"\nn = 2\n\n[[fixed_points]]\nid = \"a\"\nweights = [1, 1]\n\n[[fixed_points]]\nid = \"b\"\nweights = [-1, 1]\n";

#[test]
fn catalog_round_trip_is_byte_identical() {
    for e in catalog::list() {
        let text = eqloc::emit_entry(e.key, &[]).unwrap();
        let again = if e.kind == "space" {
            let f: SpaceFile = files::parse(&text, e.key).unwrap();
            files::emit(&SpaceFile::from_space(&f.to_space().unwrap()))
        } else {
            let f: HilbertFile = files::parse(&text, e.key).unwrap();
            files::emit(&HilbertFile::from_hilbert(&f.name, &f.to_hilbert().unwrap()))
        };
        assert_eq!(text, again, "{}", e.key);
    }
}

#[test]
fn validate_exit_codes() {
    let d = tempfile::tempdir().unwrap();
    let s2 = write(d.path(), "s2.toml", S2);
    assert_eq!(run(&["validate", s2.to_str().unwrap()]).0, 0);
    let zero = write(d.path(), "zero.toml", &S2.replace("[-1]", "[0]"));
    let (code, _, err) = run(&["validate", zero.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("zero weight"));
    let nin = write(d.path(), "nin.toml", NIN);
    let (code, out, _) = run(&["validate", nin.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("[FAIL] N_j symmetry N_j = N_{n-j}"), "{out}");
    let extra = write(d.path(), "extra.toml", &format!("color = 1\n{S2}"));
    assert_eq!(run(&["validate", extra.to_str().unwrap()]).0, 2);
    assert_eq!(run(&["validate", "/nonexistent/space.toml"]).0, 2);
    let garbled = write(d.path(), "garbled.toml", "name = \n");
    assert_eq!(run(&["validate", garbled.to_str().unwrap()]).0, 2);
}

#[test]
fn chern_numbers_of_cp2() {
    let d = tempfile::tempdir().unwrap();
    let cp2 = emit_to(d.path(), "cp2.toml", "CPn", &["2"]);
    let p = cp2.to_str().unwrap();
    assert_eq!(run(&["chern", p, "--partition", "1,1"]).1, "c1^2 = 9\n");
    assert_eq!(run(&["chern", p, "--partition", "2"]).1, "c2 = 3\n");
    assert_eq!(run(&["chern", p, "--partition", "3"]).0, 2);
}

#[test]
fn index_examples() {
    let d = tempfile::tempdir().unwrap();
    let cp3 = emit_to(d.path(), "cp3.toml", "CP3", &["1", "2", "3"]);
    assert_eq!(run(&["index", cp3.to_str().unwrap(), "--eta-multiple", "-1"]).1, "0\n");
    let cp2 = emit_to(d.path(), "cp2.toml", "CPn", &["2"]);
    let p = cp2.to_str().unwrap();
    assert_eq!(run(&["index", p, "--eta-multiple", "0"]).1, "1\n");
    assert_eq!(run(&["index", p, "--eta-multiple", "-1"]).1, "0\n");
    let bundle = write(d.path(), "b.toml", "[restriction]\np0 = 0\np1 = 0\np2 = 0\n");
    assert_eq!(run(&["index", p, "--bundle", bundle.to_str().unwrap()]).1, "1\n");
    let short = write(d.path(), "short.toml", "[restriction]\np0 = 0\n");
    assert_eq!(run(&["index", p, "--bundle", short.to_str().unwrap()]).0, 2);
    assert_eq!(run(&["index", p]).0, 2);
}

#[test]
fn hilbert_examples() {
    let d = tempfile::tempdir().unwrap();
    let cp2 = emit_to(d.path(), "cp2.toml", "CPn", &["2"]);
    let (code, out, _) = run(&["hilbert", cp2.to_str().unwrap(), "--k0", "3"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("H(z) = (1/2)z^2 + (3/2)z + 1"));
    assert!(out.contains("U(t) = 1\n"));
    let sq = write(d.path(), "square.toml", SQUARE);
    for method in ["index", "chern", "both"] {
        let (code, out, _) = run(&["hilbert", sq.to_str().unwrap(), "--k0", "2", "--method", method]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("factored: (z+1)^2"), "{out}");
        assert!(out.contains("U(t) = 1 + t\n"), "{out}");
    }
    let (code, _, err) = run(&["hilbert", cp2.to_str().unwrap(), "--k0", "2"]);
    assert_eq!(code, 1);
    assert!(err.contains("no consistent residue"));
    let s2 = write(d.path(), "s2.toml", S2);
    assert_eq!(run(&["hilbert", s2.to_str().unwrap()]).0, 2);
}

#[test]
fn rigidity_on_edited_polynomial() {
    let d = tempfile::tempdir().unwrap();
    let v5 = emit_to(d.path(), "v5.toml", "V5", &[]);
    assert_eq!(run(&["rigidity", v5.to_str().unwrap()]).0, 0);
    let bad = write(
        d.path(),
        "bad.toml",
        "name = \"edited\"\nn = 2\nk0 = 2\nn0 = 1\ncoefficients = [\"1\", \"2\", \"1/2\"]\n",
    );
    let (code, out, _) = run(&["rigidity", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("[FAIL] rigidity: vanishing H(-1) = 0"));
    let junk = write(d.path(), "junk.toml", "name = \"x\"\nn = 2\nk0 = 2\nn0 = 1\ncoefficients = [\"1/0\"]\n");
    assert_eq!(run(&["rigidity", junk.to_str().unwrap()]).0, 2);
}

#[test]
fn classify_examples() {
    let (code, out, _) = run(&["classify", "--n", "3", "--k0", "4", "--c1n", "64", "--c1n2c2", "24"]);
    assert_eq!((code, out.lines().next().unwrap()), (0, "Hamiltonian"));
    let (code, out, _) = run(&["classify", "--n", "3", "--k0", "4", "--c1n", "0", "--c1n2c2", "0"]);
    assert_eq!((code, out.lines().next().unwrap()), (0, "NonHamiltonian"));
    let (code, out, _) = run(&["classify", "--n", "3", "--k0", "4", "--c1n", "10"]);
    assert_eq!((code, out.lines().next().unwrap()), (1, "Inconsistent"));
    assert_eq!(run(&["classify", "--n", "3", "--k0", "4", "--c1n", "x"]).0, 2);
}

#[test]
fn ehrhart_examples() {
    let d = tempfile::tempdir().unwrap();
    let tri = write(d.path(), "tri.toml", "dim = 2\nvertices = [[0, 0], [1, 0], [0, 1]]\n");
    let t = tri.to_str().unwrap();
    let (code, out, _) = run(&["ehrhart", t]);
    assert_eq!(code, 0);
    assert!(out.contains("factored: (1/2)(z+1)(z+2)"));
    assert!(out.contains("reflexive dilate: k = 3"));
    let (code, out, _) = run(&["ehrhart", t, "--xi", "1,2", "--compare-hilbert"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("[pass] Hilbert polynomial equals Ehrhart polynomial"));
    assert_eq!(run(&["ehrhart", t, "--xi", "1,1"]).0, 2);
    assert_eq!(run(&["ehrhart", t, "--compare-hilbert"]).0, 2);
    let notvert = write(d.path(), "nv.toml", "dim = 2\nvertices = [[0, 0], [2, 0], [0, 2], [1, 0]]\n");
    assert_eq!(run(&["ehrhart", notvert.to_str().unwrap()]).0, 2);
    let wrong = write(
        d.path(),
        "wrong.toml",
        "dim = 2\nvertices = [[0, 0], [1, 0], [0, 1]]\n\n[[facets]]\nnormal = [1, 0]\noffset = 0\n",
    );
    assert_eq!(run(&["ehrhart", wrong.to_str().unwrap()]).0, 2);
}

#[test]
fn catalog_verbs() {
    let (code, out, _) = run(&["catalog", "list"]);
    assert_eq!(code, 0);
    assert!(out.lines().count() >= 8);
    let (code, out, _) = run(&["catalog", "emit", "CP3", "1", "2", "3"]);
    assert_eq!(code, 0);
    for w in ["[1, 3, 6]", "[-1, 2, 5]", "[-2, -3, 3]", "[-3, -5, -6]"] {
        assert!(out.contains(&format!("weights = {w}")), "{out}");
    }
    assert_eq!(run(&["catalog", "emit", "CP3", "2", "4", "1"]).0, 2);
    assert_eq!(run(&["catalog", "emit", "Nope"]).0, 2);
    let (code, out, _) = run(&["catalog", "selftest"]);
    assert_eq!(code, 0, "{out}");
}

fn has_float(v: &Value) -> bool {
    match v {
        Value::Number(n) => n.is_f64(),
        Value::Array(a) => a.iter().any(has_float),
        Value::Object(m) => m.values().any(has_float),
        _ => false,
    }
}

#[test]
fn json_output_is_exact() {
    let d = tempfile::tempdir().unwrap();
    let v22 = emit_to(d.path(), "v22.toml", "V22", &[]);
    let cp2 = emit_to(d.path(), "cp2.toml", "CPn", &["2"]);
    let tri = write(d.path(), "tri.toml", "dim = 2\nvertices = [[0, 0], [1, 0], [0, 1]]\n");
    let runs: Vec<Vec<&str>> = vec![
        vec!["--json", "rigidity", v22.to_str().unwrap()],
        vec!["--json", "hilbert", cp2.to_str().unwrap()],
        vec!["--json", "validate", cp2.to_str().unwrap()],
        vec!["--json", "chern", cp2.to_str().unwrap(), "--partition", "1,1"],
        vec!["--json", "ehrhart", tri.to_str().unwrap(), "--xi", "1,2", "--compare-hilbert"],
        vec!["--json", "classify", "--n", "3", "--k0", "2", "--c1n", "48", "--c1n2c2", "24"],
        vec!["--json", "catalog", "list"],
    ];
    for args in runs {
        let (code, out, _) = run(&args);
        assert_eq!(code, 0, "{args:?}: {out}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert!(!has_float(&v), "{args:?}: {out}");
    }
    let (_, out, _) = run(&["--json", "rigidity", v22.to_str().unwrap()]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["b"], "10");
    assert_eq!(v["c1n"], "22");
}

#[test]
fn thread_cap_is_accepted() {
    let d = tempfile::tempdir().unwrap();
    let cp3 = emit_to(d.path(), "cp3.toml", "CP3", &[]);
    let out = bin()
        .args(["hilbert", cp3.to_str().unwrap()])
        .env("EQLOC_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}
