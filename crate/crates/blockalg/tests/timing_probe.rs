// Temporary timing probe; run with --ignored.

use std::time::Instant;

use blockalg::suites::{
    default_jacobi_qs, default_module_grid, jacobi_suite, module_axiom_suite,
};
use blockalg::Sector;

#[test]
#[ignore]
fn time_jacobi_full() {
    let start = Instant::now();
    let outcome = jacobi_suite(
        &default_jacobi_qs(),
        &[Sector::RB, Sector::NSB],
        8,
        3,
        None,
    )
    .unwrap();
    println!("jacobi full: {:?}, passed = {}", start.elapsed(), outcome.passed());
    assert!(outcome.passed());
}

#[test]
#[ignore]
fn time_module_full() {
    let start = Instant::now();
    let outcome = module_axiom_suite(&default_module_grid(), 6, 2, 6).unwrap();
    println!("module full: {:?}, passed = {}", start.elapsed(), outcome.passed());
    assert!(outcome.passed());
}
