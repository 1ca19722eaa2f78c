//! Dense matrices of exact rationals.

use std::fmt;
use std::ops::Mul;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Which end of the column range a corner minor is taken from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| rational::int(v)).collect())
            .collect();
        Self::from_rows(rows).expect("rectangular integer rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Submatrix picking the listed rows and columns, in the order given.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        Self {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    /// Kronecker product: entry `((i, i'), (j, j'))` is `self[i][j] * other[i'][j']`,
    /// with pairs flattened lexicographically.
    pub fn kronecker(&self, other: &Self) -> Self {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut data = Vec::with_capacity(r * c);
        for i in 0..self.rows {
            for k in 0..other.rows {
                for j in 0..self.cols {
                    for l in 0..other.cols {
                        data.push(self.get(i, j) * other.get(k, l));
                    }
                }
            }
        }
        Self { rows: r, cols: c, data }
    }

    /// Exact determinant by Gaussian elimination. The 0x0 determinant is 1.
    pub fn det(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return Ok(Rational::zero());
            };
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                }
                det = -det;
            }
            let p = a[col * n + col].clone();
            det *= &p;
            for r in col + 1..n {
                if a[r * n + col].is_zero() {
                    continue;
                }
                let f = &a[r * n + col] / &p;
                for j in col..n {
                    let delta = &f * &a[col * n + j];
                    a[r * n + j] -= delta;
                }
            }
        }
        Ok(det)
    }

    /// Determinant of the first `size` rows against the first (`Left`) or last
    /// (`Right`) `size` columns.
    pub fn corner_minor(&self, size: usize, side: Side) -> Result<Rational> {
        if size > self.rows || size > self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{size}x{size} corner of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let rows: Vec<usize> = (0..size).collect();
        let cols: Vec<usize> = match side {
            Side::Left => (0..size).collect(),
            Side::Right => (self.cols - size..self.cols).collect(),
        };
        self.select(&rows, &cols).det()
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;

    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = RationalMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|q| q.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(rational::to_string).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| rational::parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        RationalMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use proptest::prelude::*;

    /// Leibniz expansion, used as an independent check on elimination.
    fn leibniz(m: &RationalMatrix) -> Rational {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let n = m.rows();
        let mut total = Rational::zero();
        for p in perms(n) {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let mut term = if inversions % 2 == 0 { int(1) } else { int(-1) };
            for (i, &j) in p.iter().enumerate() {
                term *= m.get(i, j);
            }
            total += term;
        }
        total
    }

    #[test]
    fn corner_minor_examples() {
        let id = RationalMatrix::identity(2);
        assert_eq!(id.corner_minor(1, Side::Left).unwrap(), int(1));
        assert_eq!(id.corner_minor(1, Side::Right).unwrap(), int(0));
        let m = RationalMatrix::from_ints(&[&[1, 2], &[3, 4]]);
        assert_eq!(m.corner_minor(2, Side::Left).unwrap(), int(-2));
        assert_eq!(m.corner_minor(0, Side::Right).unwrap(), int(1));
        assert!(m.corner_minor(3, Side::Left).is_err());
    }

    #[test]
    fn kronecker_layout() {
        let a = RationalMatrix::from_ints(&[&[1, 2], &[3, 4]]);
        let b = RationalMatrix::from_ints(&[&[0, 5], &[6, 7]]);
        let k = a.kronecker(&b);
        assert_eq!(k.rows(), 4);
        assert_eq!(k.get(0, 1), &int(5));
        assert_eq!(k.get(3, 2), &int(4 * 6));
        assert_eq!(k.get(2, 1), &int(3 * 5));
    }

    #[test]
    fn serde_round_trip() {
        let m = RationalMatrix::from_rows(vec![vec![Rational::new(1.into(), 3.into()), int(-2)]]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"[["1/3","-2/1"]]"#);
        assert_eq!(serde_json::from_str::<RationalMatrix>(&s).unwrap(), m);
    }

    proptest! {
        #[test]
        fn det_matches_leibniz(n in 1usize..5, seed in proptest::collection::vec(-6i64..7, 16)) {
            let rows: Vec<Vec<Rational>> =
                (0..n).map(|i| (0..n).map(|j| int(seed[i * 4 + j])).collect()).collect();
            let m = RationalMatrix::from_rows(rows).unwrap();
            prop_assert_eq!(m.det().unwrap(), leibniz(&m));
        }

        #[test]
        fn det_is_multiplicative(a in proptest::collection::vec(-5i64..6, 9), b in proptest::collection::vec(-5i64..6, 9)) {
            let mk = |v: &[i64]| RationalMatrix::from_rows(
                (0..3).map(|i| (0..3).map(|j| int(v[i * 3 + j])).collect()).collect()).unwrap();
            let (a, b) = (mk(&a), mk(&b));
            prop_assert_eq!((&a * &b).det().unwrap(), a.det().unwrap() * b.det().unwrap());
        }
    }
}
