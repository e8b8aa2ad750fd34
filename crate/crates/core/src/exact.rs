//! Exact reduced row-echelon form over the rationals.
//!
//! Elimination runs on integer rows without fractions (each update is a
//! gcd-scaled cross multiplication followed by removing the row content), and
//! only the final normalization divides by the pivots.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Canonical RREF of the row space of a set of vectors.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Rref {
    ncols: usize,
    rows: Vec<Vec<BigRational>>,
    pivots: Vec<usize>,
}

impl Rref {
    pub fn from_integer_rows(ncols: usize, rows: Vec<Vec<BigInt>>) -> Self {
        let mut m: Vec<Vec<BigInt>> = rows
            .into_iter()
            .inspect(|r| assert_eq!(r.len(), ncols, "row length mismatch"))
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..ncols {
            if rank == m.len() {
                break;
            }
            // smallest non-zero magnitude keeps the cross products small
            let Some(p) = (rank..m.len())
                .filter(|&i| !m[i][col].is_zero())
                .min_by(|&a, &b| m[a][col].abs().cmp(&m[b][col].abs()))
            else {
                continue;
            };
            m.swap(rank, p);
            let pivot_row = m[rank].clone();
            let a = &pivot_row[col];
            for (i, row) in m.iter_mut().enumerate() {
                if i == rank || row[col].is_zero() {
                    continue;
                }
                let b = row[col].clone();
                let g = a.gcd(&b);
                let (sa, sb) = (a / &g, &b / &g);
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x * &sa - y * &sb;
                }
                remove_content(row);
            }
            pivots.push(col);
            rank += 1;
        }
        m.truncate(rank);
        let rows = m
            .into_iter()
            .zip(&pivots)
            .map(|(row, &pc)| {
                let pv = row[pc].clone();
                row.into_iter()
                    .map(|x| BigRational::new(x, pv.clone()))
                    .collect()
            })
            .collect();
        Rref { ncols, rows, pivots }
    }

    pub fn from_i64_rows<'a>(ncols: usize, rows: impl IntoIterator<Item = &'a [i64]>) -> Self {
        Self::from_integer_rows(
            ncols,
            rows.into_iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    /// Each row is scaled by the lcm of its denominators before elimination.
    pub fn from_rational_rows(ncols: usize, rows: &[Vec<BigRational>]) -> Self {
        let int_rows = rows
            .iter()
            .map(|r| {
                let l = r
                    .iter()
                    .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                r.iter().map(|x| (x * &l).to_integer()).collect()
            })
            .collect();
        Self::from_integer_rows(ncols, int_rows)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coefficients `c` with `v = Σ c_r rows[r]`, or `None` when `v` is outside the span.
    pub fn coordinates(&self, v: &[BigRational]) -> Option<Vec<BigRational>> {
        assert_eq!(v.len(), self.ncols, "vector length mismatch");
        let coeffs: Vec<BigRational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let reproduces = (0..self.ncols).all(|col| {
            let mut acc = BigRational::zero();
            for (c, row) in coeffs.iter().zip(&self.rows) {
                if !c.is_zero() && !row[col].is_zero() {
                    acc += c * &row[col];
                }
            }
            acc == v[col]
        });
        reproduces.then_some(coeffs)
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Row-major flattening used for canonical comparisons.
    pub fn flattened(&self) -> Vec<BigRational> {
        self.rows.iter().flatten().cloned().collect()
    }
}

impl PartialOrd for Rref {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rref {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ncols
            .cmp(&other.ncols)
            .then_with(|| self.rank().cmp(&other.rank()))
            .then_with(|| self.rows.iter().flatten().cmp(other.rows.iter().flatten()))
    }
}

fn remove_content(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn reduces_small_system() {
        let rows: Vec<&[i64]> = vec![&[2, 4, 6], &[1, 1, 1], &[3, 5, 7]];
        let r = Rref::from_i64_rows(3, rows);
        assert_eq!(r.rank(), 2);
        assert_eq!(r.pivots(), &[0, 1]);
        assert_eq!(r.rows()[0], vec![q(1, 1), q(0, 1), q(-1, 1)]);
        assert_eq!(r.rows()[1], vec![q(0, 1), q(1, 1), q(2, 1)]);
    }

    #[test]
    fn empty_and_zero_rows() {
        let r = Rref::from_i64_rows(2, Vec::<&[i64]>::new());
        assert_eq!(r.rank(), 0);
        assert_eq!(r.coordinates(&[q(0, 1), q(0, 1)]), Some(vec![]));
        assert_eq!(r.coordinates(&[q(1, 1), q(0, 1)]), None);
        let zero: &[i64] = &[0, 0];
        assert_eq!(Rref::from_i64_rows(2, [zero]).rank(), 0);
    }

    #[test]
    fn rational_rows_match_integer_rows() {
        let a = Rref::from_rational_rows(2, &[vec![q(1, 2), q(1, 3)]]);
        let b = Rref::from_i64_rows(2, [&[3i64, 2][..]]);
        assert_eq!(a, b);
        assert_eq!(a.rows()[0], vec![q(1, 1), q(2, 3)]);
    }

    proptest! {
        /// The RREF depends only on the span: row order and invertible row
        /// combinations do not change it, and every input row is a member.
        #[test]
        fn rref_is_canonical_for_the_span(
            rows in proptest::collection::vec(proptest::collection::vec(-3i64..4, 5), 1..5),
            mix in proptest::collection::vec(-2i64..3, 4),
        ) {
            let base = Rref::from_i64_rows(5, rows.iter().map(Vec::as_slice));
            let mut shuffled = rows.clone();
            shuffled.reverse();
            // add a multiple of the (new) first row to every other row
            let first = shuffled[0].clone();
            for (r, m) in shuffled.iter_mut().skip(1).zip(&mix) {
                for (x, y) in r.iter_mut().zip(&first) {
                    *x += m * y;
                }
            }
            let other = Rref::from_i64_rows(5, shuffled.iter().map(Vec::as_slice));
            prop_assert_eq!(&base, &other);
            for r in &rows {
                let v: Vec<BigRational> = r.iter().map(|&x| q(x, 1)).collect();
                prop_assert!(base.contains(&v));
            }
        }
    }
}
