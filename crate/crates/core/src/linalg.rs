//! Exact sparse linear algebra over the rationals.
//!
//! A `Subspace` stores a Gauss-Jordan reduced basis: every row leads with
//! coefficient 1 at its pivot and has zeros at all other pivots, so normal
//! forms are unique and membership tests are exact.

use std::collections::BTreeMap;

use num::{BigRational, One, Zero};

/// Sparse vector: (index, coefficient) pairs, strictly increasing indices,
/// no zero coefficients.
pub type SparseRow = Vec<(usize, BigRational)>;

/// a - c * b, merging sorted sparse rows.
pub fn row_sub_scaled(a: &SparseRow, b: &SparseRow, c: &BigRational) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some((ia, va)), Some((ib, vb))) if ia == ib => {
                let v = va - c * vb;
                if !v.is_zero() {
                    out.push((*ia, v));
                }
                i += 1;
                j += 1;
            }
            (Some((ia, va)), Some((ib, _))) if ia < ib => {
                out.push((*ia, va.clone()));
                i += 1;
            }
            (Some(_), Some((ib, vb))) => {
                out.push((*ib, -(c * vb)));
                j += 1;
            }
            (Some((ia, va)), None) => {
                out.push((*ia, va.clone()));
                i += 1;
            }
            (None, Some((ib, vb))) => {
                out.push((*ib, -(c * vb)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

#[derive(Debug, Clone, Default)]
pub struct Subspace {
    ambient: usize,
    rows: BTreeMap<usize, SparseRow>,
}

impl Subspace {
    pub fn new(ambient: usize) -> Self {
        Subspace { ambient, rows: BTreeMap::new() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    /// Pivot-indexed reduced rows, ascending pivot.
    pub fn rows(&self) -> impl Iterator<Item = (&usize, &SparseRow)> {
        self.rows.iter()
    }

    /// Unique normal form of `row` modulo the subspace.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let mut from = 0usize;
        loop {
            let hit = row
                .iter()
                .skip_while(|(i, _)| *i < from)
                .find(|(i, _)| self.rows.contains_key(i))
                .map(|(i, c)| (*i, c.clone()));
            match hit {
                Some((p, c)) => {
                    row = row_sub_scaled(&row, &self.rows[&p], &c);
                    // the pivot row leads at p, so indices below p are untouched
                    from = p;
                }
                None => return row,
            }
        }
    }

    pub fn contains(&self, row: &SparseRow) -> bool {
        self.reduce(row.clone()).is_empty()
    }

    /// Adds a vector to the span. Returns whether the rank grew.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let nf = self.reduce(row);
        let Some((pivot, lead)) = nf.first().cloned() else {
            return false;
        };
        debug_assert!(pivot < self.ambient, "row index outside the ambient space");
        let mut unit = nf;
        if !lead.is_one() {
            for (_, c) in unit.iter_mut() {
                *c /= &lead;
            }
        }
        // keep existing rows reduced against the new pivot
        let touched: Vec<usize> = self
            .rows
            .iter()
            .filter(|(_, r)| r.iter().any(|(i, _)| *i == pivot))
            .map(|(p, _)| *p)
            .collect();
        for p in touched {
            let r = &self.rows[&p];
            let c = r.iter().find(|(i, _)| *i == pivot).map(|(_, c)| c.clone()).unwrap();
            let updated = row_sub_scaled(r, &unit, &c);
            self.rows.insert(p, updated);
        }
        self.rows.insert(pivot, unit);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(entries: &[(usize, i64)]) -> SparseRow {
        entries.iter().map(|(i, v)| (*i, BigRational::from_integer((*v).into()))).collect()
    }

    #[test]
    fn dependent_rows_do_not_grow_rank() {
        let mut s = Subspace::new(4);
        assert!(s.insert(row(&[(0, 1), (1, 2)])));
        assert!(s.insert(row(&[(1, 1), (2, 1)])));
        assert!(!s.insert(row(&[(0, 2), (1, 6), (2, 2)])));
        assert_eq!(s.rank(), 2);
    }

    #[test]
    fn membership_is_exact() {
        let mut s = Subspace::new(3);
        s.insert(row(&[(0, 3), (2, 1)]));
        s.insert(row(&[(1, 5)]));
        assert!(s.contains(&row(&[(0, 6), (1, 5), (2, 2)])));
        assert!(!s.contains(&row(&[(0, 6), (1, 5), (2, 1)])));
        assert!(s.contains(&row(&[])));
    }

    #[test]
    fn rows_stay_fully_reduced() {
        let mut s = Subspace::new(3);
        s.insert(row(&[(0, 1), (1, 1), (2, 1)]));
        s.insert(row(&[(1, 1), (2, 4)]));
        s.insert(row(&[(2, 2)]));
        for (p, r) in s.rows() {
            assert_eq!(r.first().unwrap().0, *p);
            assert!(r.first().unwrap().1.is_one());
            // no other pivot appears in this row
            assert!(r.iter().skip(1).all(|(i, _)| !s.rows.contains_key(i)));
        }
        assert!(s.is_full());
    }

    #[test]
    fn normal_forms_are_canonical() {
        let mut s = Subspace::new(4);
        s.insert(row(&[(0, 1), (3, 7)]));
        s.insert(row(&[(1, 2), (3, 4)]));
        let a = s.reduce(row(&[(0, 1), (1, 2), (2, 1), (3, 11)]));
        let b = s.reduce(row(&[(2, 1)]));
        assert_eq!(a, b);
    }
}
