//! Left regular representation of a semigroup by 0/1 matrices.

use crate::cayley::CayleyTable;
use crate::error::Result;
use crate::matrix::IntMatrix;

/// `matrices[i]` is left multiplication by `a_i`: column `j` holds a single 1
/// in row `t[i][j]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RegularRep {
    order: usize,
    matrices: Vec<IntMatrix>,
}

impl RegularRep {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn matrices(&self) -> &[IntMatrix] {
        &self.matrices
    }

    /// The map `a_i ↦ A_i` need not be injective for semigroups.
    pub fn is_injective(&self) -> bool {
        self.matrices
            .iter()
            .enumerate()
            .all(|(i, a)| self.matrices[..i].iter().all(|b| a != b))
    }
}

pub fn regular_rep(t: &CayleyTable) -> Result<RegularRep> {
    t.ensure_associative()?;
    let k = t.order();
    let matrices = (0..k)
        .map(|i| IntMatrix::from_fn(k, |row, col| i64::from(t.product(i, col) == row)))
        .collect();
    Ok(RegularRep { order: k, matrices })
}

pub fn rep_is_injective(r: &RegularRep) -> bool {
    r.is_injective()
}
