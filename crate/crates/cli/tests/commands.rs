use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    root.to_string_lossy().into_owned()
}

fn rough(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rough")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = rough(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn counts_match_the_worked_example() {
    let ctx = fixture("counting.ctx");
    let hpc = stdout(&["--context", &ctx, "count", "--scheme", "hpc", "--relation", "Q", "--sequence", "s"]);
    assert_eq!(hpc.trim(), "1_1 2_1 3_1 1_2 2_2 1_3 2_3 3_3 1_4 1_5 2_5 1_6");
    let hppc = stdout(&["--context", &ctx, "count", "--scheme", "hppc", "--relation", "R", "--sequence", "s"]);
    assert_eq!(hppc.trim(), "1 2 * * 3 * 4 5 * * * *");
}

#[test]
fn measure_reports_dependency_degree() {
    let ctx = fixture("counting.ctx");
    let out = stdout(&["--context", &ctx, "measure", "--R", "R", "--Q", "Q"]);
    assert!(out.lines().any(|l| l == "delta = 7/12"), "{out}");
}

#[test]
fn json_output_is_stable() {
    let ctx = fixture("cover9.ctx");
    let args = ["--json", "--context", &ctx, "approx", "--cover", "K", "--op", "u1", "--set", "{i}"];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["result"], serde_json::json!(["i"]));
}

#[test]
fn minimal_descriptions_of_the_nine_block_cover() {
    let ctx = fixture("cover9.ctx");
    let out = stdout(&["--context", &ctx, "granules", "--cover", "K", "--family", "md"]);
    assert!(out.contains("a: K1 K2 K9\n"));
    assert!(out.contains("f: K3 K8\n"));
}

#[test]
fn fuzzy_round_trip_through_the_cli() {
    let ctx = fixture("cover9.ctx");
    let out = stdout(&["--context", &ctx, "fuzzy", "from-partition", "--granules", "P", "--points", "0,1/3,2/3,1"]);
    assert_eq!(out.lines().last().unwrap(), "1/1 : {h, i, j}");
}

#[test]
fn roughnat_eval_and_orders() {
    assert_eq!(stdout(&["roughnat", "eval", "2+3"]).trim(), "1_1 2_1 3_1 4_1 5_1");
    assert_eq!(stdout(&["roughnat", "eval", "(1+1).3"]).trim(), stdout(&["roughnat", "eval", "6"]).trim());
    assert_eq!(stdout(&["roughnat", "order", "len", "2", "ID"]).trim(), "true");
}

#[test]
fn axioms_on_a_tiny_partition() {
    let dir = std::env::temp_dir().join(format!("rough-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("p.ctx");
    std::fs::write(&path, "universe a b c\nrelation R closure: refl sym trans\n  pair a b\nend\n").unwrap();
    let p = path.to_string_lossy().into_owned();
    let out = stdout(&["--context", &p, "axioms", "--theory", "classical", "--relation", "R", "--axiom", "RA", "--axiom", "ACG"]);
    assert_eq!(out, "RA holds\nACG holds\n");
    let cipca = stdout(&["--context", &p, "cipca", "--relation", "R"]);
    assert!(cipca.contains("certificate = passed"), "{cipca}");
}

#[test]
fn exit_codes_separate_io_from_domain_errors() {
    let missing = rough(&["--context", "/nonexistent/ctx", "roughnat", "eval", "1"]);
    assert_eq!(missing.status.code(), Some(1));
    let undefined = rough(&["roughnat", "eval", "1-3"]);
    assert_eq!(undefined.status.code(), Some(2));
    let ctx = fixture("cover9.ctx");
    let bad_set = rough(&["--context", &ctx, "approx", "--cover", "K", "--op", "l1", "--set", "{zz}"]);
    assert_eq!(bad_set.status.code(), Some(2));
}
