//! Golden regression: freshly computed full reports must match the
//! committed reference files byte for byte. Catches silent drift in any
//! convention — field modulus, tile ordering, shift rule, group data.

use trik0::pipeline::{build_system, report_to_json, RunConfig};

fn golden_path(q: u64) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("golden")
        .join(format!("q{q}.json"))
}

fn check(q: u64) {
    let sys = build_system(RunConfig::for_q(q).unwrap()).unwrap();
    let fresh = report_to_json(&sys.report(true));
    let golden = std::fs::read_to_string(golden_path(q)).expect("golden file present");
    if fresh != golden {
        let diff = fresh
            .lines()
            .zip(golden.lines())
            .enumerate()
            .find(|(_, (f, g))| f != g);
        panic!(
            "q={q}: report differs from golden at {:?}",
            diff.map(|(i, (f, g))| format!("line {}: fresh {f:?} vs golden {g:?}", i + 1))
        );
    }
}

#[test]
fn golden_q2() {
    check(2);
}

#[test]
fn golden_q3() {
    check(3);
}

#[test]
fn golden_q4() {
    check(4);
}

#[test]
fn golden_q5() {
    check(5);
}
