// Builds the finer invariant c_1 for a rank-4 motive from its
// admissibility type alone.

use motive_periods::hodge::BettiSplit;
use motive_periods::invariant;

pub fn run_example() -> motive_periods::Result<()> {
    let split = BettiSplit { d_plus: 2, d_minus: 2 };
    let ty = invariant::type_of_cp(split, 1)?;
    let c = invariant::construct_invariant_detailed(&ty)?;
    println!(
        "type {ty}: {} candidate monomials, solution space of dimension {}",
        c.monomials, c.kernel_dim
    );
    for (e, coeff) in &c.polynomial.terms {
        println!("  {coeff:>3}  {e:?}");
    }

    let det = invariant::type_of_det(&[1, 1, 1, 1], split)?;
    let product = invariant::multiply_types(&ty, &det)?;
    println!("c_1 * det has type {product}");

    let unbalanced = invariant::type_of_corner(&[2, 2], split, motive_periods::hodge::Sign::Plus)?.scaled(2);
    println!(
        "corner squared: {:?}",
        invariant::construct_invariant(&unbalanced).map(|p| p.terms.len())
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> motive_periods::Result<()> {
    run_example()
}
