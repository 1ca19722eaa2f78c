//! Exact nullspace of a sparse rational linear system.
//!
//! Equations are reduced one at a time against an echelon basis keyed by
//! pivot column. The kernel basis is read off by back substitution with one
//! basis vector per free column.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::rational::Rational;

type SparseRow = BTreeMap<usize, Rational>;

#[derive(Debug, Default)]
pub struct SparseSystem {
    unknowns: usize,
    /// Echelon rows keyed by pivot column; each row is scaled so the pivot is 1.
    pivots: BTreeMap<usize, SparseRow>,
}

impl SparseSystem {
    pub fn new(unknowns: usize) -> Self {
        Self {
            unknowns,
            pivots: BTreeMap::new(),
        }
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Adds the equation `sum coeff * x[col] = 0`. Duplicate columns are summed.
    pub fn add_equation<I>(&mut self, terms: I)
    where
        I: IntoIterator<Item = (usize, Rational)>,
    {
        let mut row = SparseRow::new();
        for (col, c) in terms {
            assert!(col < self.unknowns, "column {col} out of range");
            let e = row.entry(col).or_insert_with(Rational::zero);
            *e += c;
        }
        row.retain(|_, c| !c.is_zero());
        loop {
            let Some((&lead, lead_coeff)) = row.iter().next() else {
                return;
            };
            match self.pivots.get(&lead) {
                Some(prow) => {
                    let f = lead_coeff.clone();
                    for (col, c) in prow {
                        let e = row.entry(*col).or_insert_with(Rational::zero);
                        *e -= &f * c;
                        if e.is_zero() {
                            row.remove(col);
                        }
                    }
                }
                None => {
                    let inv = lead_coeff.recip();
                    for c in row.values_mut() {
                        *c *= &inv;
                    }
                    self.pivots.insert(lead, row);
                    return;
                }
            }
        }
    }

    /// Basis of the solution space, one dense vector per free column (ascending).
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let free: Vec<usize> = (0..self.unknowns).filter(|c| !self.pivots.contains_key(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Rational::zero(); self.unknowns];
                x[f] = Rational::one();
                // Pivot rows only reference columns >= their pivot, so solve from the right.
                for (&p, row) in self.pivots.iter().rev() {
                    let mut s = Rational::zero();
                    for (&col, c) in row.range(p + 1..) {
                        if !x[col].is_zero() {
                            s += c * &x[col];
                        }
                    }
                    x[p] = -s;
                }
                x
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn one_dimensional_kernel() {
        // x0 + x1 = 0, x1 - x2 = 0  ->  kernel spanned by (-1, 1, 1)
        let mut s = SparseSystem::new(3);
        s.add_equation([(0, int(1)), (1, int(1))]);
        s.add_equation([(1, int(1)), (2, int(-1))]);
        s.add_equation([(0, int(2)), (2, int(2))]);
        let k = s.kernel();
        assert_eq!(k, vec![vec![int(-1), int(1), int(1)]]);
        assert_eq!(s.rank(), 2);
    }

    #[test]
    fn full_rank_has_trivial_kernel() {
        let mut s = SparseSystem::new(2);
        s.add_equation([(0, int(1)), (1, int(1))]);
        s.add_equation([(0, int(1)), (1, int(-1))]);
        assert!(s.kernel().is_empty());
    }

    #[test]
    fn kernel_vectors_solve_every_equation() {
        let eqs: Vec<Vec<(usize, Rational)>> = vec![
            vec![(0, int(3)), (2, int(-1)), (4, int(2))],
            vec![(1, int(1)), (3, int(1))],
            vec![(0, int(1)), (1, int(1)), (2, int(1)), (3, int(1)), (4, int(1))],
        ];
        let mut s = SparseSystem::new(5);
        for e in &eqs {
            s.add_equation(e.clone());
        }
        let k = s.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            for e in &eqs {
                let total: Rational = e.iter().map(|(c, q)| q * &v[*c]).sum();
                assert!(total.is_zero());
            }
        }
    }
}
