mod common;

use common::cases::{case_names, run};

#[test]
fn every_fixture_value_and_flag_matches_the_oracle() {
    let mut failed = Vec::new();
    for name in case_names() {
        let outcome = run(&name);
        for line in &outcome.lines {
            println!("{name}: {line}");
        }
        if !outcome.ok {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "oracle disagrees on {failed:?}");
}
