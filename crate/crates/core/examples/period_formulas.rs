// Predicted period monomials, their exponent ledger, and the type check.

use motive_periods::combinatorics::{self, Variant};
use motive_periods::hodge::{HodgeData, Sign};

pub fn run_example() -> motive_periods::Result<()> {
    let pairs = [
        (HodgeData::even(1, &[0, 1])?, HodgeData::odd(2, &[0, 1, 2], Sign::Plus)?),
        (
            HodgeData::odd(2, &[0, 1, 2], Sign::Plus)?,
            HodgeData::odd(4, &[0, 2, 4], Sign::Plus)?,
        ),
        (HodgeData::even(1, &[0, 1])?, HodgeData::even(2, &[0, 2])?),
        (
            HodgeData::even(3, &[0, 1, 2, 3])?,
            HodgeData::odd(2, &[0, 1, 2], Sign::Minus)?,
        ),
    ];
    for (h, h2) in &pairs {
        println!("{h}  x  {h2}");
        for v in Variant::ALL {
            let f = combinatorics::period_formula(h, h2, v)?;
            let check = combinatorics::type_check(h, h2, &f)?;
            println!("  [{v}] c+ = {}", f.c_plus);
            println!("  [{v}] c- = {}", f.c_minus);
            println!("  [{v}] types consistent: {}", check.consistent);
        }
        println!("  c+/c- = {}", combinatorics::ratio_relation(h, h2)?);
    }

    let ledger = combinatorics::exponent_ledger(&pairs[0].0, &pairs[0].1)?;
    println!("ledger {ledger:?}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> motive_periods::Result<()> {
    run_example()
}
