//! Exact sparse linear algebra over the rationals.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::poly::Rational;

pub type SparseRow = BTreeMap<usize, Rational>;

/// Row-echelon accumulator: rows are reduced against existing pivots as they arrive.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    ncols: usize,
    /// pivot column -> (row with leading 1 at that column, rhs)
    pivots: BTreeMap<usize, (SparseRow, Rational)>,
    inconsistent: bool,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            ..Default::default()
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_consistent(&self) -> bool {
        !self.inconsistent
    }

    /// Add the equation `row · x = rhs`.
    pub fn push(&mut self, mut row: SparseRow, mut rhs: Rational) {
        row.retain(|_, v| !v.is_zero());
        loop {
            let Some((&lead, _)) = row.iter().find(|(c, _)| self.pivots.contains_key(c)) else {
                break;
            };
            let factor = row.remove(&lead).expect("lead present");
            let (prow, prhs) = &self.pivots[&lead];
            for (c, v) in prow.iter().filter(|(c, _)| **c != lead) {
                let e = row.entry(*c).or_insert_with(Rational::zero);
                *e -= &factor * v;
                if e.is_zero() {
                    row.remove(c);
                }
            }
            rhs -= &factor * prhs;
        }
        let Some((&lead, lv)) = row.iter().next() else {
            if !rhs.is_zero() {
                self.inconsistent = true;
            }
            return;
        };
        let inv = Rational::one() / lv;
        let row: SparseRow = row.into_iter().map(|(c, v)| (c, v * &inv)).collect();
        self.pivots.insert(lead, (row, rhs * inv));
    }

    /// Particular solution with free variables set to zero.
    pub fn solve(&self) -> Option<Vec<Rational>> {
        if self.inconsistent {
            return None;
        }
        Some(self.back_substitute(&BTreeMap::new(), true))
    }

    fn back_substitute(&self, free: &BTreeMap<usize, Rational>, with_rhs: bool) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.ncols];
        for (c, v) in free {
            x[*c] = v.clone();
        }
        for (&p, (row, rhs)) in self.pivots.iter().rev() {
            let mut acc = if with_rhs { rhs.clone() } else { Rational::zero() };
            for (c, v) in row.iter().filter(|(c, _)| **c != p) {
                if !x[*c].is_zero() {
                    acc -= v * &x[*c];
                }
            }
            x[p] = acc;
        }
        x
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| !self.pivots.contains_key(c)).collect()
    }

    /// Basis of the homogeneous solution space, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut free = BTreeMap::new();
                free.insert(f, Rational::one());
                self.back_substitute(&free, false)
            })
            .collect()
    }
}

/// Nullspace of a dense matrix given by rows.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut ech = Echelon::new(ncols);
    for r in rows {
        ech.push(dense_to_sparse(r), Rational::zero());
    }
    ech.nullspace()
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    let mut ech = Echelon::new(ncols);
    for r in rows {
        ech.push(dense_to_sparse(r), Rational::zero());
    }
    ech.rank()
}

pub fn dense_to_sparse(r: &[Rational]) -> SparseRow {
    r.iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(c, v)| (c, v.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn row(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn solves_small_system() {
        let mut e = Echelon::new(3);
        e.push(dense_to_sparse(&row(&[1, 1, 0])), int(3));
        e.push(dense_to_sparse(&row(&[0, 1, 1])), int(5));
        e.push(dense_to_sparse(&row(&[1, 0, -1])), int(-2));
        assert!(e.is_consistent());
        let x = e.solve().unwrap();
        assert_eq!(&x[0] + &x[1], int(3));
        assert_eq!(&x[1] + &x[2], int(5));
        assert_eq!(e.nullspace().len(), 1);
    }

    #[test]
    fn detects_inconsistency() {
        let mut e = Echelon::new(2);
        e.push(dense_to_sparse(&row(&[1, 2])), int(1));
        e.push(dense_to_sparse(&row(&[2, 4])), int(3));
        assert!(e.solve().is_none());
    }

    #[test]
    fn nullspace_vectors_are_annihilated() {
        let rows = vec![row(&[1, 2, 3, 4]), row(&[2, 4, 6, 8]), row(&[0, 1, 1, 0])];
        let ns = nullspace(&rows, 4);
        assert_eq!(ns.len(), 2);
        for v in ns {
            for r in &rows {
                let dot: Rational = r.iter().zip(&v).map(|(a, b)| a * b).sum();
                assert!(dot.is_zero());
            }
        }
        assert_eq!(rank(&rows, 4), 2);
    }
}
