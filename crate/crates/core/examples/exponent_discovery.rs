// Recovers the exponents of c+ and c- by a log-linear fit over random
// realizations, then re-verifies the rounded monomials exactly.

use motive_periods::hodge::{HodgeData, Sign};
use motive_periods::oracle::{self, OracleConfig};

pub fn run_example() -> motive_periods::Result<()> {
    let m = HodgeData::even(1, &[0, 1])?;
    let m2 = HodgeData::odd(2, &[0, 1, 2], Sign::Plus)?;
    let d = oracle::discover_exponents(&m, &m2, &OracleConfig::default())?;
    println!("c+ = {}", d.c_plus);
    println!("c- = {}", d.c_minus);
    let l = &d.ledger;
    println!(
        "(alpha, alpha+, alpha-, beta) = ({}, {}, {}, {})",
        l.alpha, l.alpha_plus, l.alpha_minus, l.beta
    );
    println!("(beta+, beta-) = ({}, {})", l.beta_plus, l.beta_minus);
    for f in &d.diagnostics {
        println!(
            "fit: {} samples, max rounding error {:.2e}",
            f.samples, f.max_rounding_error
        );
    }
    println!("confirmed exactly: {}  matching variants: {:?}", d.confirmed, d.matches);
    Ok(())
}

#[allow(dead_code)]
fn main() -> motive_periods::Result<()> {
    run_example()
}
