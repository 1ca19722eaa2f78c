// Randomized check that a matrix function transforms with a given type, and a
// deliberate mismatch that yields a counterexample.

use motive_periods::hodge::{BettiSplit, Sign};
use motive_periods::invariant::{self, CornerMinor, Determinant};
use motive_periods::matrix::Side;
use motive_periods::sampling::DEFAULT_BOUND;

pub fn run_example() -> motive_periods::Result<()> {
    let split = BettiSplit { d_plus: 2, d_minus: 1 };
    let partition = [1, 1, 1];
    let det = invariant::type_of_det(&partition, split)?;
    let r = invariant::check_equivariance(&Determinant, &det, 100, 0, DEFAULT_BOUND)?;
    println!("det as {det}: passed={} over {} samples", r.passed, r.samples);

    let plus = invariant::type_of_corner(&partition, split, Sign::Plus)?;
    let corner = CornerMinor {
        size: 2,
        side: Side::Left,
    };
    let r = invariant::check_equivariance(&corner, &plus, 100, 0, DEFAULT_BOUND)?;
    println!("c+ as {plus}: passed={}", r.passed);

    let minus = invariant::type_of_corner(&partition, split, Sign::Minus)?;
    let r = invariant::check_equivariance(&corner, &minus, 100, 0, DEFAULT_BOUND)?;
    println!("c+ as {minus}: passed={}", r.passed);
    if let Some(c) = r.counterexample {
        println!("  lhs {}  rhs {}", c.lhs, c.rhs);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> motive_periods::Result<()> {
    run_example()
}
