//! Acceptance gate: runs the full verification suite and prints one
//! pass/fail line per criterion.

use std::time::Instant;

use hecke_ip::cli::{diagram_to_json, parse_diagram_spec};
use hecke_ip::heckealg::dimension;
use hecke_ip::selftest::run_all;

const GUARD: u128 = 60000;

#[test]
fn all_criteria_pass() {
    let start = Instant::now();
    let outcomes = run_all(GUARD);
    let mut failed = 0;
    for o in &outcomes {
        println!(
            "{} {} ({:.2}s): {}",
            if o.ok { "PASS" } else { "FAIL" },
            o.name,
            o.seconds,
            o.detail
        );
        if !o.ok {
            failed += 1;
        }
    }
    let total = start.elapsed().as_secs_f64();
    println!("total: {total:.2}s");
    assert_eq!(failed, 0, "{failed} criteria failed");
    assert!(total < 600.0, "suite took {total:.2}s, budget is 600s");
}

#[test]
fn branched_diagram_json_round_trips() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/mixed_d4_e7_a2.json");
    let (d, collapsed) = parse_diagram_spec(path, false).unwrap();
    assert!(collapsed.is_empty());
    assert_eq!(dimension(&d).unwrap(), 4_668_480);
    // serialize, parse again, compare
    let text = diagram_to_json(&d).to_string();
    let (back, _) = parse_diagram_spec(&text, false).unwrap();
    assert_eq!(back, d);
    // canonical serialization is stable
    let again = diagram_to_json(&back).to_string();
    assert_eq!(text, again);
}
