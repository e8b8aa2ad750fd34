//! Finite semigroups given by their Cayley tables.
//!
//! Elements are 0-based internally; `table[i][j] = m` encodes `a_i a_j = a_m`.
//! A [`CayleyTable`] only guarantees that entries are in range, so it can
//! hold a candidate that still has to pass [`CayleyTable::is_associative`].

mod enumerate;
pub mod text;

pub use enumerate::{anti_iso_census, enumerate_semigroups, AntiIsoCensus, MAX_ENUMERATION_ORDER};

use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Perm;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CayleyTable {
    order: usize,
    cells: Vec<usize>,
}

impl CayleyTable {
    /// Builds a table from 0-based rows.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let k = rows.len();
        if k == 0 {
            return Err(Error::MalformedTable("empty table".into()));
        }
        let mut cells = Vec::with_capacity(k * k);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != k {
                return Err(Error::MalformedTable(format!(
                    "row {} has {} entries, expected {k}",
                    i + 1,
                    row.len()
                )));
            }
            cells.extend_from_slice(row);
        }
        Self::from_cells(k, cells)
    }

    /// Builds a table from 1-based rows, as written in the text format and reports.
    pub fn from_one_based(rows: &[Vec<usize>]) -> Result<Self> {
        let zero_based: Vec<Vec<usize>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| {
                        x.checked_sub(1).ok_or_else(|| {
                            Error::MalformedTable("entries are 1-based; found 0".into())
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        Self::from_rows(&zero_based)
    }

    /// Builds a table from row-major 0-based cells.
    pub fn from_cells(order: usize, cells: Vec<usize>) -> Result<Self> {
        if order == 0 || cells.len() != order * order {
            return Err(Error::MalformedTable(format!(
                "{} cells cannot form a table of order {order}",
                cells.len()
            )));
        }
        if let Some((idx, &v)) = cells.iter().enumerate().find(|(_, &v)| v >= order) {
            return Err(Error::MalformedTable(format!(
                "entry {} at row {}, column {} is out of range 1..={order}",
                v + 1,
                idx / order + 1,
                idx % order + 1
            )));
        }
        Ok(CayleyTable { order, cells })
    }

    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let cells = (0..order)
            .flat_map(|i| (0..order).map(move |j| (i, j)))
            .map(|(i, j)| f(i, j))
            .collect();
        Self::from_cells(order, cells)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn product(&self, i: usize, j: usize) -> usize {
        self.cells[i * self.order + j]
    }

    /// Row-major cells, 0-based.
    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn rows_one_based(&self) -> Vec<Vec<usize>> {
        self.cells
            .chunks(self.order)
            .map(|r| r.iter().map(|x| x + 1).collect())
            .collect()
    }

    /// First violating triple `(i, j, m)` with `(a_i a_j) a_m != a_i (a_j a_m)`.
    pub fn associativity_violation(&self) -> Option<(usize, usize, usize)> {
        let k = self.order;
        for i in 0..k {
            for j in 0..k {
                let ij = self.product(i, j);
                for m in 0..k {
                    if self.product(ij, m) != self.product(i, self.product(j, m)) {
                        return Some((i, j, m));
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_violation().is_none()
    }

    pub fn ensure_associative(&self) -> Result<()> {
        match self.associativity_violation() {
            Some(triple) => Err(Error::NotAssociative { triple }),
            None => Ok(()),
        }
    }

    /// Relabels elements by `p`: the result `r` satisfies `r[p(i)][p(j)] = p(t[i][j])`.
    pub fn apply_perm(&self, p: &Perm) -> Result<CayleyTable> {
        if p.degree() != self.order {
            return Err(Error::OrderMismatch {
                expected: self.order,
                found: p.degree(),
            });
        }
        Ok(self.relabel(p.images()))
    }

    fn relabel(&self, p: &[usize]) -> CayleyTable {
        let k = self.order;
        let mut cells = vec![0; k * k];
        for i in 0..k {
            for j in 0..k {
                cells[p[i] * k + p[j]] = p[self.product(i, j)];
            }
        }
        CayleyTable { order: k, cells }
    }

    /// The anti-isomorphic copy: multiplication order reversed (the transpose).
    pub fn reverse(&self) -> CayleyTable {
        let k = self.order;
        CayleyTable {
            order: k,
            cells: (0..k * k).map(|idx| self.product(idx % k, idx / k)).collect(),
        }
    }

    pub fn is_commutative(&self) -> bool {
        *self == self.reverse()
    }

    /// Lexicographically smallest relabeling (row-major comparison) over all `k!` permutations.
    pub fn canonical_form(&self) -> CayleyTable {
        let mut best = self.clone();
        for p in Perm::all(self.order) {
            let cand = self.relabel(p.images());
            if cand.cells < best.cells {
                best = cand;
            }
        }
        best
    }

    pub fn is_canonical(&self) -> bool {
        Perm::all(self.order)
            .iter()
            .all(|p| self.relabel(p.images()).cells >= self.cells)
    }

    pub fn is_isomorphic(&self, other: &CayleyTable) -> bool {
        self.order == other.order && self.canonical_form() == other.canonical_form()
    }

    /// Two-sided identity element, if any.
    pub fn identity_element(&self) -> Option<usize> {
        (0..self.order).find(|&e| (0..self.order).all(|x| self.product(e, x) == x && self.product(x, e) == x))
    }
}

impl fmt::Display for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows_one_based().iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cols: Vec<String> = row.iter().map(usize::to_string).collect();
            write!(f, "{}", cols.join(" "))?;
        }
        Ok(())
    }
}
