// Exact randomized verification of the period monomials on Kronecker-product
// period matrices, for each parity case.

use motive_periods::hodge::{HodgeData, Sign};
use motive_periods::oracle::{self, OracleConfig};
use motive_periods::rational;

pub fn run_example() -> motive_periods::Result<()> {
    let cfg = OracleConfig::default();
    let pairs = [
        (HodgeData::even(1, &[0, 1])?, HodgeData::odd(2, &[0, 1, 2], Sign::Plus)?),
        (HodgeData::even(1, &[0, 1])?, HodgeData::even(2, &[0, 2])?),
        (
            HodgeData::even(3, &[0, 1, 2, 3])?,
            HodgeData::odd(2, &[0, 1, 2], Sign::Plus)?,
        ),
        (
            HodgeData::odd(2, &[0, 1, 2], Sign::Plus)?,
            HodgeData::odd(4, &[0, 2, 4], Sign::Plus)?,
        ),
    ];
    for (h, h2) in &pairs {
        let adj = oracle::adjudicate(h, h2, &cfg)?;
        let exact: Vec<String> = adj.exact.iter().map(|v| v.to_string()).collect();
        println!("{h}  x  {h2}: exact variants [{}]", exact.join(", "));
        for r in &adj.reports {
            for c in &r.checks {
                let ratios: Vec<String> = c.ratios.iter().map(rational::to_string).collect();
                println!("  {:?} {}: {}", r.variant, c.quantity, ratios.join(" "));
            }
        }
        let ratio = oracle::verify_ratio_relation(h, h2, &cfg)?;
        println!("  ratio relation constant: {}", ratio.constant);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> motive_periods::Result<()> {
    run_example()
}
