//! The acceptance gate: one test per criterion, each delegating to the
//! shared verification checks so `diaglab verify` and `cargo test` agree.
//! Exact arithmetic everywhere; the tolerance for every comparison is zero.

use diaglab::checks::all_checks;

fn run(id: &str) {
    let check = all_checks()
        .into_iter()
        .find(|c| c.id == id)
        .unwrap_or_else(|| panic!("no check named {id}"));
    match (check.run)() {
        Ok(()) => println!("pass {id}: {}", check.description),
        Err(detail) => {
            println!("FAIL {id}: {detail}");
            panic!("{id}: {detail}");
        }
    }
}

#[test]
fn acceptance_01_l1_prefixes_and_position_law() {
    run("table1");
}

#[test]
fn acceptance_02_inversion_list_rendering() {
    run("table2");
}

#[test]
fn acceptance_03_shuffled_list_positions_and_limit() {
    run("table4");
}

#[test]
fn acceptance_04_one_ending_list_and_limit() {
    run("table5");
}

#[test]
fn acceptance_05_base10_variants() {
    run("table6");
}

#[test]
fn acceptance_06_constants_and_reordering() {
    run("table7");
}

#[test]
fn acceptance_07_selector_codec() {
    run("table8");
}

#[test]
fn acceptance_08_applicative_ordering() {
    run("table9");
}

#[test]
fn acceptance_09_valuation_laws() {
    run("valuation");
}

#[test]
fn acceptance_10_inversion_laws() {
    run("inversion");
}
