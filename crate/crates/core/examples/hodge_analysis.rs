// Betti splits, filtration profiles and criticality of a tensor product.

use motive_periods::combinatorics::{self, ParityCase};
use motive_periods::hodge::{self, HodgeData, Sign, TensorData};

pub fn run_example() -> motive_periods::Result<()> {
    let m = HodgeData::even(1, &[0, 1])?;
    let m2 = HodgeData::odd(2, &[0, 1, 2], Sign::Plus)?;
    for h in [&m, &m2] {
        let split = h.betti_split()?;
        let c = hodge::criticality(&h.filtration_profile()?, &split)?;
        println!("{h}: d+={} d-={} critical={}", split.d_plus, split.d_minus, c.critical);
    }

    let t = TensorData::new(&m, &m2)?;
    println!("tensor jumps {:?} mults {:?}", t.profile.jumps, t.profile.mults);
    println!(
        "case {}  k+={:?} k-={:?}",
        ParityCase::of(&m, &m2),
        t.criticality.k_plus,
        t.criticality.k_minus
    );
    let counts = combinatorics::counts_for_sign(&m, &m2, Sign::Plus)?;
    println!("a={:?} a*={:?}", counts.a, counts.a_star);

    let (p, q) = (
        HodgeData::odd(2, &[0, 1, 2], Sign::Plus)?,
        HodgeData::odd(4, &[0, 2, 4], Sign::Plus)?,
    );
    let (plus, minus) = combinatorics::signed_counts(&p, &q)?;
    println!(
        "odd tensor: a+={:?} a-={:?} a*+={:?} a*-={:?}",
        plus.a, minus.a, plus.a_star, minus.a_star
    );

    let flat = TensorData::new(&m, &m)?;
    println!("(0,1) x (0,1) critical: {}", flat.criticality.critical);
    Ok(())
}

#[allow(dead_code)]
fn main() -> motive_periods::Result<()> {
    run_example()
}
