#![allow(clippy::needless_range_loop)]

use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::{NumericError, Surd, SurdField};

pub type Matrix = Vec<Vec<Surd>>;

/// Rank by fraction-free (Bareiss) elimination; the only divisions are by the previous pivot.
pub fn rank(field: &SurdField, m: &Matrix) -> Result<usize, NumericError> {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = Surd::one();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..rows {
            let factor = a[i][c].clone();
            for j in 0..cols {
                let t = &(&a[r][c] * &a[i][j]) - &(&factor * &a[r][j]);
                a[i][j] = field.div(&t, &prev)?;
            }
        }
        prev = a[r][c].clone();
        r += 1;
        if r == rows {
            break;
        }
    }
    Ok(r)
}

/// A basis of `{x : m x = 0}` read off the reduced row echelon form.
pub fn nullspace(field: &SurdField, m: &Matrix, cols: usize) -> Result<Vec<Vec<Surd>>, NumericError> {
    let mut a = m.clone();
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = field.inv(&a[r][c])?;
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let factor = a[i][c].clone();
                for j in 0..cols {
                    let t = &factor * &a[r][j];
                    a[i][j] -= &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Surd::zero(); cols];
        v[free] = Surd::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -&a[row][free];
        }
        basis.push(v);
    }
    Ok(basis)
}

fn determinant(field: &SurdField, m: &Matrix) -> Result<Surd, NumericError> {
    let mut a = m.clone();
    let n = a.len();
    let mut det = Surd::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return Ok(Surd::zero()) };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det = &det * &a[c][c];
        let inv = field.inv(&a[c][c])?;
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let factor = &a[i][c] * &inv;
            for j in c..n {
                let t = &factor * &a[c][j];
                a[i][j] -= &t;
            }
        }
    }
    Ok(det)
}

/// Determinants of the leading `k × k` blocks, `k = 1..n`.
pub fn leading_minors(field: &SurdField, m: &Matrix) -> Result<Vec<Surd>, NumericError> {
    (1..=m.len())
        .map(|k| {
            let sub: Matrix = m[..k].iter().map(|row| row[..k].to_vec()).collect();
            determinant(field, &sub)
        })
        .collect()
}

/// Exact semidefiniteness test for a symmetric matrix via successive Schur complements.
pub fn is_positive_semidefinite(field: &SurdField, m: &Matrix) -> Result<bool, NumericError> {
    let mut a = m.clone();
    let n = a.len();
    for k in 0..n {
        match a[k][k].signum() {
            Ordering::Less => return Ok(false),
            Ordering::Equal => {
                if (k + 1..n).any(|j| !a[k][j].is_zero() || !a[j][k].is_zero()) {
                    return Ok(false);
                }
            }
            Ordering::Greater => {
                let inv = field.inv(&a[k][k])?;
                for i in k + 1..n {
                    if a[i][k].is_zero() {
                        continue;
                    }
                    let factor = &a[i][k] * &inv;
                    for j in k + 1..n {
                        let t = &factor * &a[k][j];
                        a[i][j] -= &t;
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Incremental row echelon basis of sparse vectors indexed by `usize` columns.
#[derive(Debug, Clone)]
pub struct SparseEchelon {
    field: SurdField,
    rows: BTreeMap<usize, BTreeMap<usize, Surd>>,
}

impl SparseEchelon {
    pub fn new(field: SurdField) -> Self {
        SparseEchelon { field, rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current basis; the remainder is zero iff `v` lies in the span.
    pub fn reduce(&self, v: &BTreeMap<usize, Surd>) -> BTreeMap<usize, Surd> {
        let mut v = v.clone();
        let mut cursor = 0usize;
        while let Some((&lead, coef)) = v.range(cursor..).next() {
            if let Some(row) = self.rows.get(&lead) {
                let coef = coef.clone();
                for (c, x) in row {
                    let entry = v.entry(*c).or_insert_with(Surd::zero);
                    *entry -= &(&coef * x);
                    if entry.is_zero() {
                        v.remove(c);
                    }
                }
            }
            cursor = lead + 1;
        }
        v
    }

    /// Adds `v` to the basis; returns whether it increased the rank.
    pub fn insert(&mut self, v: &BTreeMap<usize, Surd>) -> Result<bool, NumericError> {
        let rest = self.reduce(v);
        let Some((&lead, coef)) = rest.iter().next() else { return Ok(false) };
        let inv = self.field.inv(coef)?;
        let normalized: BTreeMap<usize, Surd> = rest.iter().map(|(c, x)| (*c, x * &inv)).collect();
        // Keep the basis reduced so later reductions stay single-pass.
        for row in self.rows.values_mut() {
            if let Some(x) = row.get(&lead).cloned() {
                for (c, y) in &normalized {
                    let entry = row.entry(*c).or_insert_with(Surd::zero);
                    *entry -= &(&x * y);
                    if entry.is_zero() {
                        row.remove(c);
                    }
                }
            }
        }
        self.rows.insert(lead, normalized);
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational;

    fn s(n: i64) -> Surd {
        Surd::from_int(n)
    }

    #[test]
    fn rank_and_kernel() {
        let f = SurdField::generated_by([2]);
        let m = vec![
            vec![s(1), Surd::sqrt(2), s(2)],
            vec![Surd::sqrt(2), s(2), Surd::scaled_sqrt(rational(2, 1), 2)],
            vec![s(0), s(1), s(1)],
        ];
        assert_eq!(rank(&f, &m).unwrap(), 2);
        let ker = nullspace(&f, &m, 3).unwrap();
        assert_eq!(ker.len(), 1);
        for row in &m {
            let dot = row.iter().zip(&ker[0]).fold(Surd::zero(), |acc, (a, b)| acc + a * b);
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn semidefinite() {
        let f = SurdField::generated_by([2]);
        let psd = vec![vec![s(2), Surd::sqrt(2)], vec![Surd::sqrt(2), s(1)]];
        assert!(is_positive_semidefinite(&f, &psd).unwrap());
        let minors = leading_minors(&f, &psd).unwrap();
        assert_eq!(minors, vec![s(2), s(0)]);
        let indefinite = vec![vec![s(1), s(2)], vec![s(2), s(1)]];
        assert!(!is_positive_semidefinite(&f, &indefinite).unwrap());
        let zero_pivot = vec![vec![s(0), s(1)], vec![s(1), s(1)]];
        assert!(!is_positive_semidefinite(&f, &zero_pivot).unwrap());
    }

    #[test]
    fn sparse_span_membership() {
        let mut e = SparseEchelon::new(SurdField::generated_by([2]));
        let v1: BTreeMap<usize, Surd> = [(0, s(1)), (3, Surd::sqrt(2))].into_iter().collect();
        let v2: BTreeMap<usize, Surd> = [(3, s(1)), (5, s(2))].into_iter().collect();
        assert!(e.insert(&v1).unwrap());
        assert!(e.insert(&v2).unwrap());
        let combo: BTreeMap<usize, Surd> =
            [(0, s(2)), (3, Surd::scaled_sqrt(rational(2, 1), 2) + s(1)), (5, s(2))].into_iter().collect();
        assert!(e.reduce(&combo).is_empty());
        assert!(!e.insert(&combo).unwrap());
        assert_eq!(e.rank(), 2);
    }
}
