//! Models built without the enumeration pipeline: group-based models,
//! equivariant models and a few fixed reference models.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::Zero;

use crate::cayley::CayleyTable;
use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, QMatrix};
use crate::modelgen::{rate_basis, ModelSubspace};
use crate::perm::Perm;
use crate::representation::regular_rep;
use crate::symmetry::check_closed;

/// A Cayley table known to be a group.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupSpec {
    table: CayleyTable,
    identity: usize,
    element_names: Option<Vec<String>>,
}

impl GroupSpec {
    pub fn new(table: CayleyTable) -> Result<Self> {
        if let Some((a, b, c)) = table.associativity_violation() {
            return Err(Error::NotAGroup(format!(
                "associativity fails at ({}, {}, {})",
                a + 1,
                b + 1,
                c + 1
            )));
        }
        let identity = table
            .identity_element()
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
        let k = table.order();
        for x in 0..k {
            let has_inverse = (0..k).any(|y| table.product(x, y) == identity && table.product(y, x) == identity);
            if !has_inverse {
                return Err(Error::NotAGroup(format!("element {} has no inverse", x + 1)));
            }
        }
        Ok(GroupSpec {
            table,
            identity,
            element_names: None,
        })
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.table.order(), "one name per element");
        self.element_names = Some(names);
        self
    }

    /// `Z_n` with element `i` standing for `i mod n`.
    pub fn cyclic(n: usize) -> Self {
        Self::new(CayleyTable::from_fn(n, |i, j| (i + j) % n).expect("in range")).expect("cyclic group")
    }

    /// Klein four-group as `Z_2 × Z_2` (bitwise xor).
    pub fn klein() -> Self {
        Self::new(CayleyTable::from_fn(4, |i, j| i ^ j).expect("in range")).expect("klein group")
    }

    /// Symmetric group on `n` points; elements are `Perm::all(n)` in order and
    /// the product `στ` applies `τ` first.
    pub fn symmetric(n: usize) -> Self {
        let elems = Perm::all(n);
        let index = |p: &Perm| elems.iter().position(|q| q == p).expect("closed");
        let table = CayleyTable::from_fn(elems.len(), |i, j| index(&elems[i].compose(&elems[j]))).expect("in range");
        let names = elems.iter().map(ToString::to_string).collect();
        Self::new(table).expect("symmetric group").with_names(names)
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn element_names(&self) -> Option<&[String]> {
        self.element_names.as_deref()
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub fn inverse(&self, x: usize) -> usize {
        (0..self.order())
            .find(|&y| self.table.product(x, y) == self.identity)
            .expect("validated group")
    }

    pub fn is_abelian(&self) -> bool {
        self.table.is_commutative()
    }
}

/// Span of `-I + K(g)` over the regular representation; the identity gives zero.
/// This is exactly the semigroup construction applied to a group table.
pub fn group_based_model(g: &GroupSpec) -> ModelSubspace {
    rate_basis(&regular_rep(g.table()).expect("groups are associative"))
}

/// Rate matrix with `Q[r][c] = f(r - c)` off the diagonal, where `r - c` is
/// `r · c⁻¹` in the group, and zero column sums. `rates[x]` is `f` at element `x`;
/// the identity's rate is ignored.
pub fn abelian_rate_pattern(g: &GroupSpec, rates: &[BigRational]) -> Result<QMatrix> {
    if !g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let k = g.order();
    if rates.len() != k {
        return Err(Error::OrderMismatch {
            expected: k,
            found: rates.len(),
        });
    }
    let mut q = QMatrix::from_fn(k, |r, c| {
        if r == c {
            BigRational::zero()
        } else {
            rates[g.table().product(r, g.inverse(c))].clone()
        }
    });
    for c in 0..k {
        let out: BigRational = (0..k).filter(|&r| r != c).map(|r| q.get(r, c).clone()).sum();
        q.set(c, c, -out);
    }
    Ok(q)
}

/// Generator with 1 on the given off-diagonal cells and the diagonal fixed by
/// zero column sums.
pub fn pattern_generator(k: usize, cells: &[(usize, usize)]) -> IntMatrix {
    let mut m = IntMatrix::zeros(k);
    for &(i, j) in cells {
        assert!(i != j && i < k && j < k, "cells must be off-diagonal and in range");
        m.set(i, j, 1);
    }
    for j in 0..k {
        let out: i64 = (0..k).filter(|&i| i != j).map(|i| *m.get(i, j)).sum();
        m.set(j, j, -out);
    }
    m
}

/// Rate matrices fixed by `Q ↦ K_σ Q K_σᵀ` for every `σ` in `group`: one
/// generator per orbit of off-diagonal cells under `(i, j) ↦ (σ(i), σ(j))`.
pub fn equivariant_model(group: &[Perm], k: usize) -> Result<ModelSubspace> {
    if let Some(bad) = group.iter().find(|p| p.degree() != k) {
        return Err(Error::InvalidPerm(format!("{bad} does not act on {k} points")));
    }
    let set: BTreeSet<Perm> = group.iter().cloned().collect();
    check_closed(&set)?;
    let mut assigned = vec![false; k * k];
    let mut generators = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if i == j || assigned[i * k + j] {
                continue;
            }
            let orbit: BTreeSet<(usize, usize)> = set.iter().map(|s| (s.apply(i), s.apply(j))).collect();
            for &(a, b) in &orbit {
                assigned[a * k + b] = true;
            }
            generators.push(pattern_generator(k, &orbit.into_iter().collect::<Vec<_>>()));
        }
    }
    ModelSubspace::from_generators(k, generators)
}

#[derive(Clone, Debug)]
pub struct FixtureModel {
    pub name: String,
    pub subspace: ModelSubspace,
}

pub const FIXTURE_NAMES: [&str; 3] = ["SYM", "GM2", "JJ3"];

/// Reference models: `SYM` (4-state symmetric rates), `GM2` (general 2-state
/// Markov model) and `JJ3` (a 3-state model whose Lie algebra matches `GM2`).
pub fn fixture(name: &str) -> Result<FixtureModel> {
    let upper = name.to_ascii_uppercase();
    let (order, generators) = match upper.as_str() {
        "SYM" => {
            let gens = (0..4)
                .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                .map(|(i, j)| pattern_generator(4, &[(i, j), (j, i)]))
                .collect::<Vec<_>>();
            (4, gens)
        }
        "GM2" => (
            2,
            vec![
                IntMatrix::from_rows(vec![vec![-1, 0], vec![1, 0]]),
                IntMatrix::from_rows(vec![vec![0, 1], vec![0, -1]]),
            ],
        ),
        "JJ3" => (
            3,
            vec![
                IntMatrix::from_rows(vec![vec![-2, 0, 0], vec![2, -1, 0], vec![0, 1, 0]]),
                IntMatrix::from_rows(vec![vec![0, 1, 0], vec![0, -1, 2], vec![0, 0, -2]]),
            ],
        ),
        _ => return Err(Error::UnknownFixture(name.to_string())),
    };
    Ok(FixtureModel {
        name: upper,
        subspace: ModelSubspace::from_generators(order, generators)?,
    })
}
