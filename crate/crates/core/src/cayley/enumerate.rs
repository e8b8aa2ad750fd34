use std::collections::BTreeSet;

use log::debug;
use rayon::prelude::*;

use super::CayleyTable;
use crate::error::{Error, Result};

/// Largest order accepted by [`enumerate_semigroups`].
pub const MAX_ENUMERATION_ORDER: usize = 4;

const UNSET: usize = usize::MAX;

/// One canonical representative per isomorphism class of semigroups of order `k`,
/// sorted lexicographically. Anti-isomorphic classes are kept apart.
///
/// Cells are filled depth-first in row-major order; after every placement each
/// triple whose four products are all defined is checked, so dead branches are
/// cut as soon as associativity is decided. Only completed tables that are
/// their own canonical form are kept.
pub fn enumerate_semigroups(k: usize) -> Result<Vec<CayleyTable>> {
    if k == 0 || k > MAX_ENUMERATION_ORDER {
        return Err(Error::UnsupportedOrder(k));
    }
    let mut found: Vec<CayleyTable> = (0..k)
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut search = Search::new(k);
            search.cells[0] = first;
            if search.consistent() {
                search.descend(1);
            }
            search.found
        })
        .collect();
    found.sort();
    found.dedup();
    debug!("order {k}: {} semigroup classes", found.len());
    Ok(found)
}

struct Search {
    k: usize,
    cells: Vec<usize>,
    found: Vec<CayleyTable>,
}

impl Search {
    fn new(k: usize) -> Self {
        Search {
            k,
            cells: vec![UNSET; k * k],
            found: Vec::new(),
        }
    }

    fn descend(&mut self, pos: usize) {
        if pos == self.cells.len() {
            let table = CayleyTable {
                order: self.k,
                cells: self.cells.clone(),
            };
            if table.is_canonical() {
                self.found.push(table);
            }
            return;
        }
        for v in 0..self.k {
            self.cells[pos] = v;
            if self.consistent() {
                self.descend(pos + 1);
            }
        }
        self.cells[pos] = UNSET;
    }

    #[inline]
    fn get(&self, i: usize, j: usize) -> usize {
        self.cells[i * self.k + j]
    }

    fn consistent(&self) -> bool {
        let k = self.k;
        for a in 0..k {
            for b in 0..k {
                let ab = self.get(a, b);
                if ab == UNSET {
                    continue;
                }
                for c in 0..k {
                    let left = self.get(ab, c);
                    if left == UNSET {
                        continue;
                    }
                    let bc = self.get(b, c);
                    if bc == UNSET {
                        continue;
                    }
                    let right = self.get(a, bc);
                    if right != UNSET && left != right {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Split of the isomorphism classes of one order under anti-isomorphism.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct AntiIsoCensus {
    /// Classes isomorphic to their own reversed table.
    pub self_dual: usize,
    /// Unordered `{class, reversed class}` pairs of distinct classes.
    pub pairs: usize,
}

impl AntiIsoCensus {
    /// Number of classes once anti-isomorphic classes are merged.
    pub fn coarse_classes(&self) -> usize {
        self.self_dual + self.pairs
    }
}

pub fn anti_iso_census(tables: &[CayleyTable]) -> AntiIsoCensus {
    let classes: BTreeSet<CayleyTable> = tables.iter().map(CayleyTable::canonical_form).collect();
    let self_dual = classes
        .iter()
        .filter(|t| t.reverse().canonical_form() == **t)
        .count();
    let paired = classes
        .iter()
        .filter(|t| {
            let r = t.reverse().canonical_form();
            r != **t && classes.contains(&r)
        })
        .count();
    AntiIsoCensus {
        self_dual,
        pairs: paired / 2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exhaustive oracle: scan every table of order k, keep associative ones,
    /// collect canonical forms.
    fn brute_force_classes(k: usize) -> Vec<CayleyTable> {
        let n = k * k;
        let total = k.pow(n as u32);
        let mut set = BTreeSet::new();
        for mut code in 0..total {
            let mut cells = vec![0; n];
            for c in cells.iter_mut().rev() {
                *c = code % k;
                code /= k;
            }
            let t = CayleyTable::from_cells(k, cells).unwrap();
            if t.is_associative() {
                set.insert(t.canonical_form());
            }
        }
        set.into_iter().collect()
    }

    #[test]
    fn matches_brute_force_up_to_three() {
        for k in 1..=3 {
            assert_eq!(enumerate_semigroups(k).unwrap(), brute_force_classes(k), "k={k}");
        }
    }

    #[test]
    fn order_two_matches_listed_tables() {
        let got = enumerate_semigroups(2).unwrap();
        let listed: Vec<CayleyTable> = [
            [[1, 1], [1, 1]],
            [[1, 1], [1, 2]],
            [[1, 1], [2, 2]],
            [[1, 2], [1, 2]],
            [[1, 2], [2, 1]],
        ]
        .iter()
        .map(|rows| CayleyTable::from_one_based(&rows.map(|r| r.to_vec())).unwrap())
        .collect();
        assert_eq!(got, listed);
    }

    #[test]
    fn rejects_unsupported_orders() {
        assert_eq!(enumerate_semigroups(0), Err(Error::UnsupportedOrder(0)));
        assert_eq!(enumerate_semigroups(5), Err(Error::UnsupportedOrder(5)));
    }

    #[test]
    fn census_small_orders() {
        let two = enumerate_semigroups(2).unwrap();
        assert_eq!(anti_iso_census(&two), AntiIsoCensus { self_dual: 3, pairs: 1 });
        let three = enumerate_semigroups(3).unwrap();
        assert_eq!(anti_iso_census(&three), AntiIsoCensus { self_dual: 12, pairs: 6 });
    }
}
