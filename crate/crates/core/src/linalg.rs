//! Exact rank computations over `Q`.
//!
//! Rows are cleared of denominators and eliminated fraction-free over `Z`,
//! dividing each stored row by its content. [`Echelon`] is the sparse,
//! incremental workhorse; [`bareiss_rank`] is a dense Bareiss elimination
//! kept as an independent cross-check.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type SparseRow = Vec<(usize, BigInt)>;

/// Incrementally built row echelon form of a sparse integer matrix.
#[derive(Default, Debug, Clone)]
pub struct Echelon {
    pivots: HashMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Adds a row; returns whether it was independent of the rows so far.
    /// The row need not be sorted and may contain zeros or repeated columns.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let mut row = canonical(row);
        loop {
            let Some((col, c)) = row.first() else { return false };
            let Some(piv) = self.pivots.get(col) else {
                make_primitive(&mut row);
                let col = row[0].0;
                self.pivots.insert(col, row);
                return true;
            };
            let pc = &piv[0].1;
            let g = c.gcd(pc);
            let a = pc / &g;
            let b = c / &g;
            row = axpy(&row, &a, piv, &b);
            make_primitive(&mut row);
        }
    }

    pub fn insert_rational(&mut self, row: &[(usize, BigRational)]) -> bool {
        self.insert(clear_denominators(row))
    }
}

fn canonical(mut row: SparseRow) -> SparseRow {
    row.sort_by_key(|e| e.0);
    let mut out: SparseRow = Vec::with_capacity(row.len());
    for (c, v) in row {
        match out.last_mut() {
            Some(l) if l.0 == c => l.1 += v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

/// `a * x - b * y` for sorted sparse rows.
fn axpy(x: &SparseRow, a: &BigInt, y: &SparseRow, b: &BigInt) -> SparseRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() && j < y.len() {
        if x[i].0 < y[j].0 {
            out.push((x[i].0, &x[i].1 * a));
            i += 1;
        } else if x[i].0 > y[j].0 {
            out.push((y[j].0, -(&y[j].1 * b)));
            j += 1;
        } else {
            let v = &x[i].1 * a - &y[j].1 * b;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out.extend(x[i..].iter().map(|(c, v)| (*c, v * a)));
    out.extend(y[j..].iter().map(|(c, v)| (*c, -(v * b))));
    out
}

fn make_primitive(row: &mut SparseRow) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if !g.is_zero() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
}

pub fn clear_denominators(row: &[(usize, BigRational)]) -> SparseRow {
    let mut l = BigInt::one();
    for (_, v) in row {
        l = l.lcm(v.denom());
    }
    row.iter()
        .map(|(c, v)| (*c, v.numer() * (&l / v.denom())))
        .collect()
}

/// Rank of a sparse matrix given by rows.
pub fn sparse_rank(rows: impl IntoIterator<Item = SparseRow>) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Dense fraction-free (Bareiss) rank.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                m[r][c] = v / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dense(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    fn sparse(rows: &[Vec<i64>]) -> Vec<SparseRow> {
        rows.iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| **v != 0)
                    .map(|(c, v)| (c, BigInt::from(*v)))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn small_ranks() {
        let m = vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]];
        assert_eq!(bareiss_rank(dense(&m)), 2);
        assert_eq!(sparse_rank(sparse(&m)), 2);
        assert_eq!(sparse_rank(Vec::<SparseRow>::new()), 0);
        assert_eq!(bareiss_rank(dense(&[vec![0, 0], vec![0, 0]])), 0);
    }

    #[test]
    fn rational_rows() {
        let half = BigRational::new(1.into(), 2.into());
        let mut e = Echelon::new();
        assert!(e.insert_rational(&[(0, half.clone()), (1, BigRational::one())]));
        assert!(!e.insert_rational(&[(0, BigRational::one()), (1, BigRational::from_integer(2.into()))]));
        assert_eq!(e.rank(), 1);
    }

    proptest! {
        #[test]
        fn sparse_and_dense_ranks_agree(
            rows in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 6), 0..8)
        ) {
            // low-rank structure shows up often with entries this small
            prop_assert_eq!(sparse_rank(sparse(&rows)), bareiss_rank(dense(&rows)));
        }
    }
}
