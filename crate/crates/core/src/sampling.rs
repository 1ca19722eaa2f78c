//! Counter-keyed random sources and random exact matrices.
//!
//! Every draw is keyed by `(seed, stream...)` so trials can run in any order,
//! on any thread, and still reproduce bit for bit.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hodge::BettiSplit;
use crate::matrix::RationalMatrix;
use crate::rational::int;

/// Default half-width of the integer range matrix entries are drawn from.
pub const DEFAULT_BOUND: i64 = 10;

/// Cap on resampling when a draw is singular or hits a zero invariant.
pub const RETRY_CAP: usize = 100;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Generator for the stream addressed by `seed` and a path of counters.
pub fn rng_for(seed: u64, stream: &[u64]) -> ChaCha8Rng {
    let key = stream
        .iter()
        .fold(splitmix(seed), |acc, &s| splitmix(acc ^ splitmix(s)));
    ChaCha8Rng::seed_from_u64(key)
}

/// Entries uniform in `-bound..=bound`.
pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> RationalMatrix {
    let rows = (0..rows)
        .map(|_| (0..cols).map(|_| int(rng.random_range(-bound..=bound))).collect())
        .collect();
    RationalMatrix::from_rows(rows).expect("rectangular")
}

pub fn random_invertible<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Result<RationalMatrix> {
    for _ in 0..RETRY_CAP {
        let m = random_matrix(rng, n, n, bound);
        if !m.det()?.is_zero() {
            return Ok(m);
        }
    }
    Err(Error::RetryCapExhausted(RETRY_CAP))
}

/// Lays square blocks along the diagonal and fills entries below the diagonal
/// blocks when `lower` is set.
fn block_matrix<R: Rng>(
    rng: &mut R,
    sizes: &[usize],
    bound: i64,
    lower: bool,
) -> Result<(RationalMatrix, Vec<RationalMatrix>)> {
    let d: usize = sizes.iter().sum();
    let mut out = RationalMatrix::zeros(d, d);
    let mut blocks = Vec::with_capacity(sizes.len());
    let mut offset = 0;
    for &s in sizes {
        let b = random_invertible(rng, s, bound)?;
        for i in 0..s {
            for j in 0..s {
                out.set(offset + i, offset + j, b.get(i, j).clone());
            }
            if lower {
                for j in 0..offset {
                    out.set(offset + i, j, int(rng.random_range(-bound..=bound)));
                }
            }
        }
        blocks.push(b);
        offset += s;
    }
    Ok((out, blocks))
}

/// Random invertible element of the lower parabolic for `partition`, with its
/// diagonal blocks.
pub fn random_block_lower<R: Rng>(
    rng: &mut R,
    partition: &[usize],
    bound: i64,
) -> Result<(RationalMatrix, Vec<RationalMatrix>)> {
    block_matrix(rng, partition, bound, true)
}

/// Random invertible `diag(a, b)` with `a` of size `d_plus`, `b` of size `d_minus`.
pub fn random_block_diag<R: Rng>(
    rng: &mut R,
    split: &BettiSplit,
    bound: i64,
) -> Result<(RationalMatrix, RationalMatrix, RationalMatrix)> {
    let (g, mut blocks) = block_matrix(rng, &[split.d_plus, split.d_minus], bound, false)?;
    let b = blocks.pop().expect("two blocks");
    let a = blocks.pop().expect("two blocks");
    Ok((g, a, b))
}
