use std::fs;
use std::path::Path;

use proptest::prelude::*;
use recblock::cli::run;

fn recblock(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("recblock").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = path(dir, name);
    fs::write(&p, text).unwrap();
    p
}

#[test]
fn gen_is_reproducible_and_records_its_seed() {
    let (code, a, _) = recblock(&["gen", "--ring", "gf:7", "--size", "8", "--seed", "3"]);
    assert_eq!(code, 0);
    let (_, b, _) = recblock(&["gen", "--ring", "gf:7", "--size", "8", "--seed", "3"]);
    assert_eq!(a, b);
    assert!(a.starts_with("ring gf:7\nsize 8\n"));
    assert!(a.ends_with("# generator chacha8 seed 3\n"));
}

#[test]
fn gen_rejects_unsatisfiable_flags() {
    assert_eq!(recblock(&["gen", "--ring", "q", "--size", "6", "--all-blocks-singular"]).0, 2);
    assert_eq!(recblock(&["gen", "--ring", "quat", "--size", "4", "--all-blocks-singular"]).0, 2);
    assert_eq!(recblock(&["gen", "--ring", "q", "--size", "257"]).0, 2);
    assert_eq!(recblock(&["gen", "--ring", "zz", "--size", "2"]).0, 2);
}

#[test]
fn inversion_examples() {
    let dir = tempfile::tempdir().unwrap();
    let swap = write(dir.path(), "swap", "ring q\nsize 2\n0 1\n1 0\n");
    let (code, out, _) = recblock(&["invert", &swap, "--method", "gram"]);
    assert_eq!(code, 0);
    assert!(out.contains("0 1\n1 0\n"), "{out}");
    assert_eq!(recblock(&["invert", &swap, "--method", "schur"]).0, 4);

    let g = write(dir.path(), "g", "ring gf:2\nsize 2\n1 1\n1 0\n");
    let (code, out, _) = recblock(&["invert", &g, "--method", "gv"]);
    assert_eq!(code, 0);
    assert!(out.contains("0 1\n1 1\n"), "{out}");

    let zero = write(dir.path(), "z", "ring q\nsize 2\n0 0\n0 0\n");
    assert_eq!(recblock(&["invert", &zero]).0, 3);
    let bad = write(dir.path(), "bad", "ring q\nsize 2\n0 0\n0\n");
    assert_eq!(recblock(&["invert", &bad]).0, 2);
    let quat = write(dir.path(), "h", "ring quat\nsize 2\ni j\n1 k\n");
    assert_eq!(recblock(&["invert", &quat, "--method", "gv"]).0, 2);
}

#[test]
fn lu_on_a_two_by_two() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m", "ring q\nsize 2\n1 2\n3 4\n");
    let prefix = path(dir.path(), "f");
    let (code, out, _) = recblock(&["lu", &m, "--prefix", &prefix]);
    assert_eq!(code, 0);
    assert!(out.starts_with("randomized: no"));
    assert_eq!(fs::read_to_string(format!("{prefix}.U")).unwrap(), "ring q\nsize 2\n1 2\n0 -2\n");
    assert_eq!(fs::read_to_string(format!("{prefix}.perm")).unwrap(), "perm-rows 1 2\nperm-cols 1 2\n");
    let zero = write(dir.path(), "z", "ring q\nsize 2\n0 0\n0 0\n");
    assert_eq!(recblock(&["lu", &zero, "--prefix", &prefix]).0, 3);
}

#[test]
fn all_singular_blocks_go_through_the_randomized_path() {
    let dir = tempfile::tempdir().unwrap();
    let m = path(dir.path(), "m");
    assert_eq!(recblock(&["gen", "--ring", "q", "--size", "4", "--all-blocks-singular", "-o", &m]).0, 0);
    let prefix = path(dir.path(), "f");
    let (code, out, _) = recblock(&["lu", &m, "--prefix", &prefix]);
    assert_eq!(code, 0);
    assert!(out.starts_with("randomized: yes"), "{out}");
    let (l, u, p) = (format!("{prefix}.L"), format!("{prefix}.U"), format!("{prefix}.perm"));
    assert_eq!(recblock(&["check", "--kind", "pluq", &m, &l, &u, &p]).0, 0);
}

#[test]
fn check_reports_the_first_bad_entry() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m", "ring q\nsize 2\n1 2\n3 4\n");
    let good = write(dir.path(), "good", "ring q\nsize 2\n-2 1\n3/2 -1/2\n");
    let bad = write(dir.path(), "bad", "ring q\nsize 2\n-2 1\n3/2 -1/3\n");
    assert_eq!(recblock(&["check", "--kind", "inverse", &m, &good]).0, 0);
    let (code, out, _) = recblock(&["check", "--kind", "inverse", &m, &bad]);
    assert_eq!(code, 1);
    assert!(out.contains("row 1, column 2: expected 0, found 1/3"), "{out}");
    assert_eq!(recblock(&["check", "--kind", "inverse", &m]).0, 2);
}

#[test]
fn ldu_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let m = path(dir.path(), "m");
    recblock(&["gen", "--ring", "qi", "--size", "4", "--seed", "5", "--invertible", "-o", &m]);
    let prefix = path(dir.path(), "f");
    let (code, _, err) = recblock(&["ldu", &m, "--prefix", &prefix]);
    assert_eq!(code, 0, "{err}");
    let files: Vec<String> = ["Lb", "Db", "Ub"].iter().map(|e| format!("{prefix}.{e}")).collect();
    assert_eq!(recblock(&["check", "--kind", "ldu", &m, &files[0], &files[1], &files[2]]).0, 0);
}

#[test]
fn verify_counts_reports() {
    let (code, out, _) = recblock(&["verify-counts", "--op", "tri_mul", "--sizes", "2,4,8,16", "--format", "lines"]);
    assert_eq!(code, 0);
    let measured: Vec<&str> = out.lines().map(|l| l.split_whitespace().nth(2).unwrap()).collect();
    assert_eq!(measured, ["6", "40", "288", "2176"]);

    let (code, out, _) = recblock(&["verify-counts", "--op", "tri_inv", "--sizes", "2,4", "--format", "lines"]);
    assert_eq!(code, 0);
    assert!(out.contains("tri_inv 2 4 4 3 mismatch"), "{out}");
    assert!(out.contains("tri_inv 4 20 20 10 mismatch"), "{out}");

    let (code, out, _) = recblock(&["verify-counts", "--op", "gram_inv", "--sizes", "2,4,8"]);
    assert_eq!(code, 0);
    assert!(out.contains("1688"));
    assert_eq!(recblock(&["verify-counts", "--op", "nope"]).0, 2);
    assert_eq!(recblock(&["verify-counts", "--op", "mul", "--sizes", "3"]).0, 2);
}

#[test]
fn help_and_usage() {
    let (code, out, _) = recblock(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify-counts"));
    assert_eq!(recblock(&["frobnicate"]).0, 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn pipelines_verify(ring in prop::sample::select(vec!["q", "gf:2", "gf:7", "qi"]), size in 1usize..12, seed in any::<u64>()) {
        let dir = tempfile::tempdir().unwrap();
        let m = path(dir.path(), "m");
        let seed = seed.to_string();
        let size = size.to_string();
        prop_assert_eq!(recblock(&["gen", "--ring", ring, "--size", &size, "--seed", &seed, "--invertible", "-o", &m]).0, 0);

        let inv = path(dir.path(), "inv");
        prop_assert_eq!(recblock(&["invert", &m, "--method", "auto", "-o", &inv]).0, 0);
        prop_assert_eq!(recblock(&["check", "--kind", "inverse", &m, &inv]).0, 0);

        let prefix = path(dir.path(), "f");
        let (code, _, err) = recblock(&["lu", &m, "--prefix", &prefix, "--max-retries", "64"]);
        prop_assert_eq!(code, 0, "{}", err);
        let (l, u, p) = (format!("{prefix}.L"), format!("{prefix}.U"), format!("{prefix}.perm"));
        let (code, out, _) = recblock(&["check", "--kind", "pluq", &m, &l, &u, &p]);
        prop_assert_eq!(code, 0, "{}", out);
    }
}
