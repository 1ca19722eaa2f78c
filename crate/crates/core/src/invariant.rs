//! Admissibility types and equivariant polynomials in the entries of a square
//! matrix.
//!
//! A polynomial `f` has type `((a_1..a_m), (k_plus, k_minus))` when
//! `f(p x g) = prod det(p_ii)^a_i * f(x) * det(g_plus)^k_plus * det(g_minus)^k_minus`
//! for `p` in the block lower parabolic attached to the partition and `g`
//! block diagonal for the Betti split.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::Mul;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hodge::{BettiSplit, Sign};
use crate::kernel::SparseSystem;
use crate::matrix::{RationalMatrix, Side};
use crate::rational::{self, Rational};
use crate::sampling::{self, rng_for};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AdmissibilityType {
    pub block_weights: Vec<i64>,
    pub partition: Vec<usize>,
    pub right_weights: (i64, i64),
    pub split: BettiSplit,
}

impl AdmissibilityType {
    pub fn dim(&self) -> usize {
        self.partition.iter().sum()
    }

    /// Total degree as forced by the left torus.
    pub fn left_degree(&self) -> i64 {
        self.block_weights
            .iter()
            .zip(&self.partition)
            .map(|(a, &s)| a * s as i64)
            .sum()
    }

    /// Total degree as forced by the right torus.
    pub fn right_degree(&self) -> i64 {
        self.right_weights.0 * self.split.d_plus as i64 + self.right_weights.1 * self.split.d_minus as i64
    }

    pub fn is_balanced(&self) -> bool {
        self.left_degree() == self.right_degree()
    }

    /// Weight of each row, block weights repeated over their block.
    pub fn row_weights(&self) -> Vec<i64> {
        self.block_weights
            .iter()
            .zip(&self.partition)
            .flat_map(|(&a, &s)| std::iter::repeat_n(a, s))
            .collect()
    }

    pub fn column_weights(&self) -> Vec<i64> {
        let (kp, km) = self.right_weights;
        std::iter::repeat_n(kp, self.split.d_plus)
            .chain(std::iter::repeat_n(km, self.split.d_minus))
            .collect()
    }

    /// The character of the left parabolic evaluated on its diagonal blocks.
    pub fn left_character(&self, blocks: &[RationalMatrix]) -> Result<Rational> {
        let mut acc = Rational::one();
        for (b, &a) in blocks.iter().zip(&self.block_weights) {
            acc *= rational::pow(&b.det()?, a)?;
        }
        Ok(acc)
    }

    pub fn right_character(&self, plus: &RationalMatrix, minus: &RationalMatrix) -> Result<Rational> {
        Ok(rational::pow(&plus.det()?, self.right_weights.0)? * rational::pow(&minus.det()?, self.right_weights.1)?)
    }

    /// The type of `f^e`; negative `e` is allowed for formal quotients.
    pub fn scaled(&self, e: i64) -> Self {
        Self {
            block_weights: self.block_weights.iter().map(|a| a * e).collect(),
            right_weights: (self.right_weights.0 * e, self.right_weights.1 * e),
            ..self.clone()
        }
    }
}

impl fmt::Display for AdmissibilityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.block_weights.iter().map(i64::to_string).collect();
        write!(
            f,
            "(({}), ({}, {}))",
            a.join(","),
            self.right_weights.0,
            self.right_weights.1
        )
    }
}

fn check_shape(partition: &[usize], split: &BettiSplit) -> Result<()> {
    if partition.contains(&0) {
        return Err(Error::Precondition("partition parts must be positive".into()));
    }
    if partition.iter().sum::<usize>() != split.total() {
        return Err(Error::DimensionMismatch(format!(
            "partition sums to {}, split to {}",
            partition.iter().sum::<usize>(),
            split.total()
        )));
    }
    Ok(())
}

pub fn zero_type(partition: &[usize], split: BettiSplit) -> Result<AdmissibilityType> {
    check_shape(partition, &split)?;
    Ok(AdmissibilityType {
        block_weights: vec![0; partition.len()],
        partition: partition.to_vec(),
        right_weights: (0, 0),
        split,
    })
}

pub fn type_of_det(partition: &[usize], split: BettiSplit) -> Result<AdmissibilityType> {
    check_shape(partition, &split)?;
    Ok(AdmissibilityType {
        block_weights: vec![1; partition.len()],
        partition: partition.to_vec(),
        right_weights: (1, 1),
        split,
    })
}

/// Type of the upper-left `d_plus` (sign +) or upper-right `d_minus` (sign -)
/// minor; needs a prefix of the partition summing to that size.
pub fn type_of_corner(partition: &[usize], split: BettiSplit, sign: Sign) -> Result<AdmissibilityType> {
    check_shape(partition, &split)?;
    let size = split.get(sign);
    let mut acc = 0;
    let mut blocks = 0;
    while acc < size {
        acc += partition[blocks];
        blocks += 1;
    }
    if acc != size {
        return Err(Error::Precondition(format!(
            "no prefix of {partition:?} sums to {size}"
        )));
    }
    let mut block_weights = vec![0; partition.len()];
    block_weights[..blocks].fill(1);
    Ok(AdmissibilityType {
        block_weights,
        partition: partition.to_vec(),
        right_weights: if sign == Sign::Plus { (1, 0) } else { (0, 1) },
        split,
    })
}

/// Type of the finer invariant `c_p` of a rank-`n` motive with unit Hodge
/// numbers: weights 2 on the first `p` rows, 0 on the last `p`, 1 between.
pub fn type_of_cp(split: BettiSplit, p: usize) -> Result<AdmissibilityType> {
    let n = split.total();
    let max = split.d_plus.min(split.d_minus).saturating_sub(1);
    if p == 0 || p > max {
        return Err(Error::Precondition(format!("p = {p} outside 1..={max} for rank {n}")));
    }
    let mut block_weights = vec![1; n];
    block_weights[..p].fill(2);
    block_weights[n - p..].fill(0);
    Ok(AdmissibilityType {
        block_weights,
        partition: vec![1; n],
        right_weights: (1, 1),
        split,
    })
}

/// Type of a product: weights add componentwise.
pub fn multiply_types(t1: &AdmissibilityType, t2: &AdmissibilityType) -> Result<AdmissibilityType> {
    if t1.partition != t2.partition || t1.split != t2.split {
        return Err(Error::DimensionMismatch(
            "types live on different partitions or splits".into(),
        ));
    }
    Ok(AdmissibilityType {
        block_weights: t1
            .block_weights
            .iter()
            .zip(&t2.block_weights)
            .map(|(a, b)| a + b)
            .collect(),
        partition: t1.partition.clone(),
        right_weights: (
            t1.right_weights.0 + t2.right_weights.0,
            t1.right_weights.1 + t2.right_weights.1,
        ),
        split: t1.split,
    })
}

/// Anything that can be evaluated exactly on a square matrix.
pub trait MatrixFunction {
    fn eval(&self, x: &RationalMatrix) -> Result<Rational>;
}

pub struct Determinant;

impl MatrixFunction for Determinant {
    fn eval(&self, x: &RationalMatrix) -> Result<Rational> {
        x.det()
    }
}

pub struct CornerMinor {
    pub size: usize,
    pub side: Side,
}

impl MatrixFunction for CornerMinor {
    fn eval(&self, x: &RationalMatrix) -> Result<Rational> {
        x.corner_minor(self.size, self.side)
    }
}

impl<F: Fn(&RationalMatrix) -> Result<Rational>> MatrixFunction for F {
    fn eval(&self, x: &RationalMatrix) -> Result<Rational> {
        self(x)
    }
}

/// Exponent matrix of a monomial in the entries `x_ij`.
pub type Exponents = Vec<Vec<u32>>;

/// Polynomial in the entries of a `d x d` matrix together with the type it was
/// built for. Terms are keyed by exponent matrix in row-major lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantPolynomial {
    pub d: usize,
    pub ty: AdmissibilityType,
    pub terms: BTreeMap<Exponents, Rational>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exponent_matrix: Exponents,
    #[serde(with = "rational::serde_str")]
    coeff: Rational,
}

#[derive(Serialize, Deserialize)]
struct PolynomialJson {
    d: usize,
    #[serde(rename = "type")]
    ty: AdmissibilityType,
    terms: Vec<TermJson>,
}

impl Serialize for InvariantPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolynomialJson {
            d: self.d,
            ty: self.ty.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson {
                    exponent_matrix: e.clone(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for InvariantPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let p = PolynomialJson::deserialize(d)?;
        let terms = p.terms.into_iter().map(|t| (t.exponent_matrix, t.coeff)).collect();
        Ok(Self {
            d: p.d,
            ty: p.ty,
            terms,
        })
    }
}

impl InvariantPolynomial {
    pub fn evaluate(&self, x: &RationalMatrix) -> Result<Rational> {
        if x.rows() != self.d || x.cols() != self.d {
            return Err(Error::DimensionMismatch(format!(
                "polynomial in {0}x{0} entries evaluated on {1}x{2}",
                self.d,
                x.rows(),
                x.cols()
            )));
        }
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, row) in e.iter().enumerate() {
                for (j, &k) in row.iter().enumerate() {
                    for _ in 0..k {
                        term *= x.get(i, j);
                    }
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// The same polynomial rescaled so its lexicographically first coefficient is 1.
    pub fn normalized(&self) -> Self {
        let mut out = self.clone();
        if let Some(lead) = self.terms.values().next() {
            let inv = lead.recip();
            for c in out.terms.values_mut() {
                *c *= &inv;
            }
        }
        out
    }

    /// The polynomial `det(x)` as a sum over permutations.
    pub fn determinant(partition: &[usize], split: BettiSplit) -> Result<Self> {
        let ty = type_of_det(partition, split)?;
        let d = ty.dim();
        let terms = permutations(d)
            .into_iter()
            .map(|(perm, sign)| (permutation_exponents(d, &perm, d), rational::int(sign)))
            .collect();
        Ok(Self { d, ty, terms })
    }

    /// The corner minor polynomial with the type of [`type_of_corner`].
    pub fn corner(partition: &[usize], split: BettiSplit, sign: Sign) -> Result<Self> {
        let ty = type_of_corner(partition, split, sign)?;
        let d = ty.dim();
        let size = split.get(sign);
        let offset = if sign == Sign::Plus { 0 } else { d - size };
        let terms = permutations(size)
            .into_iter()
            .map(|(perm, s)| {
                let mut e = vec![vec![0u32; d]; d];
                for (i, &j) in perm.iter().enumerate() {
                    e[i][offset + j] = 1;
                }
                (e, rational::int(s))
            })
            .collect();
        Ok(Self { d, ty, terms })
    }
}

impl MatrixFunction for InvariantPolynomial {
    fn eval(&self, x: &RationalMatrix) -> Result<Rational> {
        self.evaluate(x)
    }
}

impl Mul for &InvariantPolynomial {
    type Output = Result<InvariantPolynomial>;

    fn mul(self, rhs: &InvariantPolynomial) -> Result<InvariantPolynomial> {
        let ty = multiply_types(&self.ty, &rhs.ty)?;
        let mut terms: BTreeMap<Exponents, Rational> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exponents = e1
                    .iter()
                    .zip(e2)
                    .map(|(r1, r2)| r1.iter().zip(r2).map(|(a, b)| a + b).collect())
                    .collect();
                *terms.entry(e).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(InvariantPolynomial { d: self.d, ty, terms })
    }
}

fn permutation_exponents(d: usize, perm: &[usize], cols: usize) -> Exponents {
    let mut e = vec![vec![0u32; cols]; d];
    for (i, &j) in perm.iter().enumerate() {
        e[i][j] = 1;
    }
    e
}

/// All permutations of `0..n` with their signs.
fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    if n == 0 {
        return vec![(vec![], 1)];
    }
    let mut out = Vec::new();
    for (p, s) in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            // inserting the largest element at `pos` adds n-1-pos inversions
            let sign = if (n - 1 - pos).is_multiple_of(2) { s } else { -s };
            out.push((q, sign));
        }
    }
    out
}

/// Nonnegative integer matrices with the given row and column sums, in
/// row-major lexicographic order.
pub fn contingency_tables(row_sums: &[u32], col_sums: &[u32]) -> Vec<Exponents> {
    fn go(i: usize, j: usize, rows: &mut Vec<u32>, cols: &mut Vec<u32>, cur: &mut Exponents, out: &mut Vec<Exponents>) {
        let (r, c) = (rows.len(), cols.len());
        if i == r {
            if cols.iter().all(|&v| v == 0) {
                out.push(cur.clone());
            }
            return;
        }
        if j == c {
            if rows[i] == 0 {
                go(i + 1, 0, rows, cols, cur, out);
            }
            return;
        }
        // the rest of this row must fit in the remaining column capacity
        let room: u32 = cols[j + 1..].iter().sum();
        let hi = rows[i].min(cols[j]);
        let lo = rows[i].saturating_sub(room);
        for v in lo..=hi {
            rows[i] -= v;
            cols[j] -= v;
            cur[i][j] = v;
            go(i, j + 1, rows, cols, cur, out);
            rows[i] += v;
            cols[j] += v;
        }
        cur[i][j] = 0;
    }
    if row_sums.iter().sum::<u32>() != col_sums.iter().sum::<u32>() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = vec![vec![0; col_sums.len()]; row_sums.len()];
    go(0, 0, &mut row_sums.to_vec(), &mut col_sums.to_vec(), &mut cur, &mut out);
    out
}

/// Outcome of the nullspace construction, kept for diagnostics.
#[derive(Clone, Debug)]
pub struct Construction {
    pub polynomial: InvariantPolynomial,
    pub monomials: usize,
    pub kernel_dim: usize,
}

/// Builds the unique (up to scalar) polynomial of type `t`.
///
/// Unknowns are the coefficients on every monomial with the torus-forced row and
/// column sums. For each elementary unipotent direction of the left parabolic
/// and of the right block group the induced derivation must kill the polynomial;
/// those conditions are linear in the coefficients and the solution space is
/// read off as an exact nullspace.
pub fn construct_invariant(t: &AdmissibilityType) -> Result<InvariantPolynomial> {
    construct_invariant_detailed(t).map(|c| c.polynomial)
}

pub fn construct_invariant_detailed(t: &AdmissibilityType) -> Result<Construction> {
    check_shape(&t.partition, &t.split)?;
    if t.block_weights.len() != t.partition.len() {
        return Err(Error::DimensionMismatch("one block weight per partition block".into()));
    }
    if !t.is_balanced() {
        return Err(Error::DegreeImbalance(format!(
            "left degree {} != right degree {}",
            t.left_degree(),
            t.right_degree()
        )));
    }
    let d = t.dim();
    let rows = t.row_weights();
    let cols = t.column_weights();
    if rows.iter().chain(&cols).any(|&w| w < 0) {
        return Err(Error::NoSuchInvariant);
    }
    let rows: Vec<u32> = rows.into_iter().map(|w| w as u32).collect();
    let cols: Vec<u32> = cols.into_iter().map(|w| w as u32).collect();
    let monomials = contingency_tables(&rows, &cols);
    if monomials.is_empty() {
        return Err(Error::NoSuchInvariant);
    }

    let block_of: Vec<usize> = t
        .partition
        .iter()
        .enumerate()
        .flat_map(|(b, &s)| std::iter::repeat_n(b, s))
        .collect();
    // (target row, source row): row `a` picks up a multiple of row `b`.
    let left: Vec<(usize, usize)> = (0..d)
        .flat_map(|a| (0..d).map(move |b| (a, b)))
        .filter(|&(a, b)| a != b && block_of[a] >= block_of[b])
        .collect();
    let side_of = |j: usize| j < t.split.d_plus;
    // (source column, target column): column `dst` picks up a multiple of column `src`.
    let right: Vec<(usize, usize)> = (0..d)
        .flat_map(|c| (0..d).map(move |e| (c, e)))
        .filter(|&(c, e)| c != e && side_of(c) == side_of(e))
        .collect();

    let mut system = SparseSystem::new(monomials.len());
    let mut flush = |eqs: HashMap<Exponents, Vec<(usize, Rational)>>| {
        let mut eqs: Vec<_> = eqs.into_iter().collect();
        eqs.sort_by(|x, y| x.0.cmp(&y.0));
        for (_, terms) in eqs {
            system.add_equation(terms);
        }
    };
    for &(a, b) in &left {
        let mut eqs: HashMap<Exponents, Vec<(usize, Rational)>> = HashMap::new();
        for (idx, e) in monomials.iter().enumerate() {
            for j in 0..d {
                if e[a][j] > 0 {
                    let mut target = e.clone();
                    target[a][j] -= 1;
                    target[b][j] += 1;
                    eqs.entry(target)
                        .or_default()
                        .push((idx, rational::int(e[a][j] as i64)));
                }
            }
        }
        flush(eqs);
    }
    for &(src, dst) in &right {
        let mut eqs: HashMap<Exponents, Vec<(usize, Rational)>> = HashMap::new();
        for (idx, e) in monomials.iter().enumerate() {
            for (i, row) in e.iter().enumerate() {
                if row[dst] > 0 {
                    let mut target = e.clone();
                    target[i][dst] -= 1;
                    target[i][src] += 1;
                    eqs.entry(target)
                        .or_default()
                        .push((idx, rational::int(row[dst] as i64)));
                }
            }
        }
        flush(eqs);
    }

    let kernel = system.kernel();
    match kernel.len() {
        0 => Err(Error::NoSuchInvariant),
        1 => {
            let terms = monomials
                .iter()
                .cloned()
                .zip(kernel.into_iter().next().expect("one vector"))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            let polynomial = InvariantPolynomial {
                d,
                ty: t.clone(),
                terms,
            }
            .normalized();
            Ok(Construction {
                polynomial,
                monomials: monomials.len(),
                kernel_dim: 1,
            })
        }
        k => Err(Error::NotUnique(k)),
    }
}

/// A sampled triple on which equivariance failed.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Counterexample {
    pub p: RationalMatrix,
    pub x: RationalMatrix,
    pub gamma: RationalMatrix,
    #[serde(with = "rational::serde_str")]
    pub lhs: Rational,
    #[serde(with = "rational::serde_str")]
    pub rhs: Rational,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EquivarianceReport {
    pub passed: bool,
    pub samples: usize,
    pub seed: u64,
    pub counterexample: Option<Counterexample>,
}

/// Checks `f(p x g) = chi_left(p) f(x) chi_right(g)` exactly on random triples.
pub fn check_equivariance(
    f: &dyn MatrixFunction,
    t: &AdmissibilityType,
    samples: usize,
    seed: u64,
    bound: i64,
) -> Result<EquivarianceReport> {
    check_shape(&t.partition, &t.split)?;
    let d = t.dim();
    for s in 0..samples {
        let mut rng = rng_for(seed, &[0xE9, s as u64]);
        let (p, p_blocks) = sampling::random_block_lower(&mut rng, &t.partition, bound)?;
        let (gamma, g_plus, g_minus) = sampling::random_block_diag(&mut rng, &t.split, bound)?;
        let x = sampling::random_matrix(&mut rng, d, d, bound);
        let lhs = f.eval(&(&(&p * &x) * &gamma))?;
        let rhs = t.left_character(&p_blocks)? * f.eval(&x)? * t.right_character(&g_plus, &g_minus)?;
        if lhs != rhs {
            return Ok(EquivarianceReport {
                passed: false,
                samples: s + 1,
                seed,
                counterexample: Some(Counterexample { p, x, gamma, lhs, rhs }),
            });
        }
    }
    Ok(EquivarianceReport {
        passed: true,
        samples,
        seed,
        counterexample: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn split(p: usize, m: usize) -> BettiSplit {
        BettiSplit { d_plus: p, d_minus: m }
    }

    #[test]
    fn det_type_examples() {
        let t = type_of_det(&[1, 1], split(1, 1)).unwrap();
        assert_eq!((t.block_weights.clone(), t.right_weights), (vec![1, 1], (1, 1)));
        let t = type_of_det(&[1, 1, 1, 1], split(2, 2)).unwrap();
        assert_eq!((t.block_weights.clone(), t.right_weights), (vec![1, 1, 1, 1], (1, 1)));
        assert!(t.is_balanced());
        assert_eq!(t.left_degree(), 4);
    }

    #[test]
    fn corner_type_examples() {
        let t = type_of_corner(&[1, 1], split(1, 1), Sign::Plus).unwrap();
        assert_eq!((t.block_weights, t.right_weights), (vec![1, 0], (1, 0)));
        let t = type_of_corner(&[1, 1], split(1, 1), Sign::Minus).unwrap();
        assert_eq!((t.block_weights, t.right_weights), (vec![1, 0], (0, 1)));
        assert!(type_of_corner(&[1, 2, 1], split(2, 2), Sign::Plus).is_err());
        let t = type_of_corner(&[2, 1, 1], split(2, 2), Sign::Plus).unwrap();
        assert_eq!((t.block_weights, t.right_weights), (vec![1, 0, 0], (1, 0)));
    }

    #[test]
    fn multiply_type_examples() {
        let p = type_of_corner(&[1, 1], split(1, 1), Sign::Plus).unwrap();
        let m = type_of_corner(&[1, 1], split(1, 1), Sign::Minus).unwrap();
        let t = multiply_types(&p, &m).unwrap();
        assert_eq!((t.block_weights.clone(), t.right_weights), (vec![2, 0], (1, 1)));
        let z = zero_type(&[1, 1], split(1, 1)).unwrap();
        assert_eq!(multiply_types(&t, &z).unwrap(), t);
        let det = type_of_det(&[1, 1, 1], split(2, 1)).unwrap();
        let dd = multiply_types(&det, &det).unwrap();
        assert_eq!((dd.block_weights, dd.right_weights), (vec![2, 2, 2], (2, 2)));
        let other = type_of_det(&[1, 1, 1], split(1, 2)).unwrap();
        assert!(multiply_types(&det, &other).is_err());
    }

    #[test]
    fn cp_type_examples() {
        let t = type_of_cp(split(2, 2), 1).unwrap();
        assert_eq!((t.block_weights.clone(), t.right_weights), (vec![2, 1, 1, 0], (1, 1)));
        assert!(t.is_balanced());
        assert!(type_of_cp(split(1, 1), 1).is_err());
        assert!(type_of_cp(split(3, 3), 0).is_err());
        assert!(type_of_cp(split(3, 3), 3).is_err());
    }

    #[test]
    fn contingency_enumeration() {
        let all = contingency_tables(&[1, 1], &[1, 1]);
        assert_eq!(all, vec![vec![vec![0, 1], vec![1, 0]], vec![vec![1, 0], vec![0, 1]]]);
        assert_eq!(contingency_tables(&[2, 1, 0], &[1, 1, 1]).len(), 3);
        assert!(contingency_tables(&[1], &[2]).is_empty());
        let tables = contingency_tables(&[2, 1, 1, 0], &[1, 1, 1, 1]);
        assert_eq!(tables.len(), 12);
        assert!(tables.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn constructs_determinant() {
        let t = type_of_det(&[1, 1], split(1, 1)).unwrap();
        let f = construct_invariant(&t).unwrap();
        // lex-smallest monomial is x12*x21, normalized to +1
        let expected = InvariantPolynomial::determinant(&[1, 1], split(1, 1))
            .unwrap()
            .normalized();
        assert_eq!(f.terms, expected.terms);
        assert_eq!(f.terms.get(&vec![vec![0, 1], vec![1, 0]]), Some(&int(1)));
        assert_eq!(f.terms.get(&vec![vec![1, 0], vec![0, 1]]), Some(&int(-1)));
    }

    #[test]
    fn constructs_corner_minor() {
        let t = type_of_corner(&[1, 1], split(1, 1), Sign::Plus).unwrap();
        let f = construct_invariant(&t).unwrap();
        assert_eq!(f.terms.len(), 1);
        assert_eq!(f.terms.get(&vec![vec![1, 0], vec![0, 0]]), Some(&int(1)));
        assert_eq!(f.evaluate(&RationalMatrix::identity(2)).unwrap(), int(1));
    }

    #[test]
    fn constructs_cp_for_rank_four() {
        let t = type_of_cp(split(2, 2), 1).unwrap();
        let c = construct_invariant_detailed(&t).unwrap();
        assert_eq!(c.monomials, 12);
        assert_eq!(c.kernel_dim, 1);
        assert_eq!(c.polynomial.terms.values().next(), Some(&int(1)));
        let report = check_equivariance(&c.polynomial, &t, 20, 5, 10).unwrap();
        assert!(report.passed);
    }

    #[test]
    fn construction_errors() {
        let mut t = type_of_det(&[1, 1], split(1, 1)).unwrap();
        t.right_weights = (2, 1);
        assert!(matches!(construct_invariant(&t), Err(Error::DegreeImbalance(_))));
        // balanced but impossible: all weight on the last row of a lower parabolic
        let t = AdmissibilityType {
            block_weights: vec![0, 2],
            partition: vec![1, 1],
            right_weights: (1, 1),
            split: split(1, 1),
        };
        assert!(matches!(construct_invariant(&t), Err(Error::NoSuchInvariant)));
    }

    #[test]
    fn larger_blocks_do_not_enlarge_the_space() {
        // det on a 2+1 partition: within-block generators keep uniqueness
        let t = type_of_det(&[2, 1], split(2, 1)).unwrap();
        let f = construct_invariant(&t).unwrap();
        assert_eq!(f.terms.len(), 6);
        assert!(check_equivariance(&f, &t, 10, 1, 10).unwrap().passed);
    }

    #[test]
    fn equivariance_examples() {
        let t = type_of_det(&[1, 1, 1], split(2, 1)).unwrap();
        assert!(check_equivariance(&Determinant, &t, 10, 0, 10).unwrap().passed);
        let corner = CornerMinor {
            size: 2,
            side: Side::Left,
        };
        let r = check_equivariance(&corner, &t, 10, 0, 10).unwrap();
        assert!(!r.passed);
        assert!(r.counterexample.is_some());
    }

    #[test]
    fn polynomial_json_round_trip() {
        let f = InvariantPolynomial::determinant(&[1, 1], split(1, 1)).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert!(s.contains(r#""exponent_matrix":[[0,1],[1,0]],"coeff":"-1/1""#));
        assert_eq!(serde_json::from_str::<InvariantPolynomial>(&s).unwrap(), f);
    }
}
