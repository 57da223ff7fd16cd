//! Exact linear algebra over a coefficient field: an incremental sparse
//! echelon form keyed by an ordered index type, and small dense routines.

use std::collections::BTreeMap;

use crate::field::Field;

/// Sparse vectors keyed by `K`; the largest key is the pivot position.
#[derive(Clone, Debug)]
pub struct SparseEchelon<F: Field, K: Ord + Clone> {
    field: F,
    rows: BTreeMap<K, BTreeMap<K, F::Elem>>,
}

impl<F: Field, K: Ord + Clone> SparseEchelon<F, K> {
    pub fn new(field: F) -> Self {
        Self {
            field,
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows; the result is zero iff `v` lies in their span.
    pub fn reduce(&self, v: impl IntoIterator<Item = (K, F::Elem)>) -> BTreeMap<K, F::Elem> {
        let field = &self.field;
        let mut acc: BTreeMap<K, F::Elem> = BTreeMap::new();
        for (k, c) in v {
            accumulate(field, &mut acc, k, c);
        }
        let mut done: BTreeMap<K, F::Elem> = BTreeMap::new();
        while let Some((k, c)) = acc.pop_last() {
            match self.rows.get(&k) {
                Some(row) => {
                    // rows are monic at their pivot
                    for (rk, rc) in row.range(..&k) {
                        accumulate(field, &mut acc, rk.clone(), field.neg(&field.mul(&c, rc)));
                    }
                }
                None => {
                    done.insert(k, c);
                }
            }
        }
        done
    }

    pub fn contains(&self, v: impl IntoIterator<Item = (K, F::Elem)>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span; returns `false` if it was already there.
    pub fn insert(&mut self, v: impl IntoIterator<Item = (K, F::Elem)>) -> bool {
        let reduced = self.reduce(v);
        let Some((pivot, lead)) = reduced.last_key_value() else {
            return false;
        };
        let pivot = pivot.clone();
        let inv = self.field.inv(lead).expect("nonzero");
        let row = reduced
            .into_iter()
            .map(|(k, c)| (k, self.field.mul(&c, &inv)))
            .collect();
        self.rows.insert(pivot, row);
        true
    }
}

fn accumulate<F: Field, K: Ord>(field: &F, acc: &mut BTreeMap<K, F::Elem>, k: K, c: F::Elem) {
    use std::collections::btree_map::Entry;
    match acc.entry(k) {
        Entry::Vacant(e) => {
            if !field.is_zero(&c) {
                e.insert(c);
            }
        }
        Entry::Occupied(mut e) => {
            let v = field.add(e.get(), &c);
            if field.is_zero(&v) {
                e.remove();
            } else {
                *e.get_mut() = v;
            }
        }
    }
}

/// Row-reduces a dense matrix in place; returns the pivot columns.
pub fn row_reduce<F: Field>(field: &F, m: &mut [Vec<F::Elem>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !field.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = field.inv(&m[r][c]).expect("nonzero");
        for x in m[r].iter_mut() {
            *x = field.mul(x, &inv);
        }
        for i in 0..rows {
            if i != r && !field.is_zero(&m[i][c]) {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let v = field.sub(&m[i][j], &field.mul(&f, &m[r][j]));
                    m[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(field: &F, m: &[Vec<F::Elem>]) -> usize {
    let mut m = m.to_vec();
    row_reduce(field, &mut m).len()
}

/// Inverse of a square matrix, or `None` if singular.
pub fn inverse<F: Field>(field: &F, m: &[Vec<F::Elem>]) -> Option<Vec<Vec<F::Elem>>> {
    let n = m.len();
    let mut aug: Vec<Vec<F::Elem>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            debug_assert_eq!(row.len(), n);
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
            r
        })
        .collect();
    let pivots = row_reduce(field, &mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Basis of `{x : m x = 0}`.
pub fn kernel<F: Field>(field: &F, m: &[Vec<F::Elem>], cols: usize) -> Vec<Vec<F::Elem>> {
    let mut m = m.to_vec();
    let pivots = row_reduce(field, &mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![field.zero(); cols];
            v[f] = field.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = field.neg(&m[r][f]);
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn echelon_membership() {
        let f = PrimeField::new(101).unwrap();
        let mut e: SparseEchelon<PrimeField, u32> = SparseEchelon::new(f);
        assert!(e.insert([(0, 1), (1, 1)]));
        assert!(e.insert([(1, 1), (2, 1)]));
        assert!(e.contains([(0, 1), (2, 100)]));
        assert!(!e.contains([(0, 1)]));
        assert!(!e.insert([(0, 2), (1, 4), (2, 2)]));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn dense_routines() {
        let q = Rationals;
        let m: Vec<Vec<_>> = [[1, 2], [3, 4]]
            .iter()
            .map(|r| r.iter().map(|&v| q.from_i64(v)).collect())
            .collect();
        let inv = inverse(&q, &m).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = q.zero();
                for k in 0..2 {
                    acc = q.add(&acc, &q.mul(&m[i][k], &inv[k][j]));
                }
                assert_eq!(acc, q.from_i64((i == j) as i64));
            }
        }
        let singular: Vec<Vec<_>> = [[1, 2, 3], [2, 4, 6]]
            .iter()
            .map(|r| r.iter().map(|&v| q.from_i64(v)).collect())
            .collect();
        assert_eq!(rank(&q, &singular), 1);
        let ker = kernel(&q, &singular, 3);
        assert_eq!(ker.len(), 2);
        for v in ker {
            let dot = (0..3).fold(q.zero(), |a, j| q.add(&a, &q.mul(&singular[0][j], &v[j])));
            assert!(q.is_zero(&dot));
        }
        assert!(inverse(
            &q,
            &singular[..1]
                .iter()
                .map(|r| r[..1].to_vec())
                .collect::<Vec<_>>()
        )
        .is_some());
    }
}
