//! State-permutation symmetries of models.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::modelgen::{conjugate_matrix, ModelSubspace};
use crate::perm::Perm;

/// `K_σ` with entry `(σ(j), j) = 1`, so `K_{σ∘τ} = K_σ K_τ`.
pub fn perm_matrix(p: &Perm) -> IntMatrix {
    IntMatrix::from_fn(p.degree(), |i, j| i64::from(p.apply(j) == i))
}

/// Abstract type of a permutation group, as far as subgroups of `S_4` go.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum GroupName {
    Trivial,
    Z2,
    Z3,
    Z4,
    V4,
    S3,
    D4,
    A4,
    S4,
    /// Anything not recognized, tagged by its order.
    Order(usize),
}

impl fmt::Display for GroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupName::Trivial => f.write_str("trivial"),
            GroupName::Z2 => f.write_str("Z2"),
            GroupName::Z3 => f.write_str("Z3"),
            GroupName::Z4 => f.write_str("Z4"),
            GroupName::V4 => f.write_str("V4"),
            GroupName::S3 => f.write_str("S3"),
            GroupName::D4 => f.write_str("D4"),
            GroupName::A4 => f.write_str("A4"),
            GroupName::S4 => f.write_str("S4"),
            GroupName::Order(n) => write!(f, "order-{n} subgroup"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymmetryGroup {
    degree: usize,
    elements: Vec<Perm>,
    name: GroupName,
}

impl SymmetryGroup {
    /// Checks the group axioms; elements are stored sorted.
    pub fn new(degree: usize, elements: Vec<Perm>) -> Result<Self> {
        let set: BTreeSet<Perm> = elements.into_iter().collect();
        if set.iter().any(|p| p.degree() != degree) {
            return Err(Error::InvalidPerm(format!("all elements must have degree {degree}")));
        }
        check_closed(&set)?;
        let elements: Vec<Perm> = set.into_iter().collect();
        let name = name_group(&elements);
        Ok(SymmetryGroup {
            degree,
            elements,
            name,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn name(&self) -> GroupName {
        self.name
    }

    /// Number of distinct relabeled copies of a model with this symmetry group.
    pub fn variant_count(&self) -> usize {
        variant_count(self)
    }
}

/// Errors unless the non-empty set contains the identity and is closed under composition.
pub fn check_closed(set: &BTreeSet<Perm>) -> Result<()> {
    let Some(first) = set.iter().next() else {
        return Err(Error::NotClosed("empty set".into()));
    };
    if !set.contains(&Perm::identity(first.degree())) {
        return Err(Error::NotClosed("identity missing".into()));
    }
    for a in set {
        for b in set {
            let ab = a.compose(b);
            if !set.contains(&ab) {
                return Err(Error::NotClosed(format!("{a} ∘ {b} = {ab} is missing")));
            }
        }
    }
    Ok(())
}

/// Closure of a generating set under composition.
pub fn generate_group(degree: usize, generators: &[Perm]) -> Result<SymmetryGroup> {
    if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
        return Err(Error::InvalidPerm(format!("{bad} does not act on {degree} points")));
    }
    let mut set: BTreeSet<Perm> = BTreeSet::new();
    set.insert(Perm::identity(degree));
    let mut frontier: Vec<Perm> = vec![Perm::identity(degree)];
    while let Some(x) = frontier.pop() {
        for g in generators {
            let y = g.compose(&x);
            if set.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    SymmetryGroup::new(degree, set.into_iter().collect())
}

/// All `σ` whose conjugation maps every generator back into the span.
pub fn symmetry_group(m: &ModelSubspace) -> SymmetryGroup {
    let elements: Vec<Perm> = Perm::all(m.order())
        .into_iter()
        .filter(|p| {
            m.basis()
                .iter()
                .all(|b| m.contains_int(&conjugate_matrix(b, p)).is_some())
        })
        .collect();
    SymmetryGroup::new(m.order(), elements).expect("stabilizer of a subspace is a group")
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

pub fn variant_count(g: &SymmetryGroup) -> usize {
    factorial(g.degree) / g.len()
}

/// Identifies the abstract type from the order and the element orders.
pub fn name_group(elements: &[Perm]) -> GroupName {
    let n = elements.len();
    let degree = elements.first().map_or(0, Perm::degree);
    let max_order = elements.iter().map(Perm::element_order).max().unwrap_or(1);
    if degree > 4 {
        return match n {
            1 => GroupName::Trivial,
            _ => GroupName::Order(n),
        };
    }
    match (n, max_order) {
        (1, _) => GroupName::Trivial,
        (2, _) => GroupName::Z2,
        (3, _) => GroupName::Z3,
        (4, 4) => GroupName::Z4,
        (4, 2) => GroupName::V4,
        (6, _) => GroupName::S3,
        (8, _) => GroupName::D4,
        (12, _) => GroupName::A4,
        (24, _) => GroupName::S4,
        _ => GroupName::Order(n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::CayleyTable;
    use crate::modelgen::derive_model;
    use proptest::prelude::*;

    fn perms(list: &str, k: usize) -> Vec<Perm> {
        list.split(',').map(|s| Perm::parse_cycles(s, k).unwrap()).collect()
    }

    #[test]
    fn perm_matrix_examples() {
        assert_eq!(perm_matrix(&Perm::identity(3)), IntMatrix::identity(3));
        let swap = Perm::swap(2, 0, 1);
        assert_eq!(perm_matrix(&swap), IntMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]));
    }

    proptest! {
        #[test]
        fn perm_matrix_is_a_homomorphism(
            a in prop::sample::select(Perm::all(4)),
            b in prop::sample::select(Perm::all(4)),
        ) {
            prop_assert_eq!(perm_matrix(&a.compose(&b)), &perm_matrix(&a) * &perm_matrix(&b));
        }
    }

    #[test]
    fn f81_has_full_symmetry() {
        let f = derive_model(&CayleyTable::from_fn(4, |i, _| i).unwrap()).unwrap().subspace;
        let g = symmetry_group(&f);
        assert_eq!(g.len(), 24);
        assert_eq!(g.name(), GroupName::S4);
        assert_eq!(g.variant_count(), 1);
    }

    #[test]
    fn new_model_has_klein_symmetry() {
        let t = CayleyTable::from_one_based(&[
            vec![1, 1, 3, 3],
            vec![2, 2, 4, 4],
            vec![3, 3, 1, 1],
            vec![4, 4, 2, 2],
        ])
        .unwrap();
        let g = symmetry_group(&derive_model(&t).unwrap().subspace);
        let expected = perms("e,(12)(34),(13)(24),(14)(23)", 4);
        let mut got = g.elements().to_vec();
        got.sort();
        let mut want = expected;
        want.sort();
        assert_eq!(got, want);
        assert_eq!(g.name(), GroupName::V4);
        assert_eq!(g.variant_count(), 6);
    }

    #[test]
    fn c4_group_model_has_dihedral_symmetry() {
        let t = CayleyTable::from_fn(4, |i, j| (i + j) % 4).unwrap();
        let g = symmetry_group(&derive_model(&t).unwrap().subspace);
        assert_eq!(g.len(), 8);
        assert_eq!(g.name(), GroupName::D4);
        assert_eq!(g.variant_count(), 3);
    }

    #[test]
    fn example_three_symmetry() {
        let t = CayleyTable::from_one_based(&[vec![1, 1, 3], vec![2, 2, 3], vec![3, 3, 3]]).unwrap();
        let g = symmetry_group(&derive_model(&t).unwrap().subspace);
        assert_eq!(g.elements(), perms("e,(12)", 3).as_slice());
        assert_eq!(g.name(), GroupName::Z2);
    }

    #[test]
    fn names() {
        let d4 = perms("e,(12),(34),(12)(34),(13)(24),(14)(23),(1324),(1423)", 4);
        assert_eq!(SymmetryGroup::new(4, d4).unwrap().name(), GroupName::D4);
        assert_eq!(name_group(&Perm::all(3)), GroupName::S3);
        assert_eq!(name_group(&perms("e,(12)", 3)), GroupName::Z2);
        assert_eq!(name_group(&perms("e,(1234),(13)(24),(1432)", 4)), GroupName::Z4);
        assert_eq!(name_group(&perms("e,(12),(34),(12)(34)", 4)), GroupName::V4);
        assert_eq!(name_group(&perms("e,(123),(132)", 3)), GroupName::Z3);
        assert_eq!(name_group(&Perm::all(5)).to_string(), "order-120 subgroup");
        let a4: Vec<Perm> = Perm::all(4).into_iter().filter(|p| {
            p.cycle_type() != vec![1, 1, 2] && p.cycle_type() != vec![4]
        }).collect();
        assert_eq!(a4.len(), 12);
        assert_eq!(name_group(&a4), GroupName::A4);
    }

    #[test]
    fn variant_counts() {
        let d4 = perms("e,(12),(34),(12)(34),(13)(24),(14)(23),(1324),(1423)", 4);
        assert_eq!(variant_count(&SymmetryGroup::new(4, d4).unwrap()), 3);
        let full = SymmetryGroup::new(3, Perm::all(3)).unwrap();
        assert_eq!(variant_count(&full), 1);
    }

    #[test]
    fn generated_groups_and_closure_errors() {
        let v4 = generate_group(4, &perms("(12)(34),(13)(24)", 4)).unwrap();
        assert_eq!(v4.len(), 4);
        let d4 = generate_group(4, &perms("(13),(1234)", 4)).unwrap();
        assert_eq!((d4.len(), d4.name()), (8, GroupName::D4));
        assert_eq!(generate_group(4, &perms("(12),(1234)", 4)).unwrap().name(), GroupName::S4);
        assert!(matches!(
            SymmetryGroup::new(4, perms("e,(12)(34),(13)(24)", 4)),
            Err(Error::NotClosed(_))
        ));
        assert!(matches!(SymmetryGroup::new(4, perms("(12)", 4)), Err(Error::NotClosed(_))));
    }
}
