use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::cayley::CayleyTable;
use crate::constructors::{equivariant_model, group_based_model, pattern_generator, GroupSpec};
use crate::modelgen::{derive_model, CanonicalKey, ModelSubspace};
use crate::perm::Perm;

/// Canonical keys of named models, each built by a constructor.
#[derive(Clone, Debug)]
pub struct KnownModelRegistry {
    labels: BTreeMap<CanonicalKey, String>,
    models: Vec<(String, ModelSubspace)>,
}

fn equal_input(k: usize) -> ModelSubspace {
    derive_model(&CayleyTable::from_fn(k, |i, _| i).expect("in range"))
        .expect("left-zero band is associative")
        .subspace
}

/// The α/β/γ rate pattern of the model whose symmetry group is D4
/// (α on 1↔2 and 3↔4, β on the 4-cycle 1→3→2→4→1, γ on its reverse).
fn model_3_3b() -> ModelSubspace {
    let alpha = [(0, 1), (1, 0), (2, 3), (3, 2)];
    let beta = [(0, 2), (1, 3), (2, 1), (3, 0)];
    let gamma = [(0, 3), (1, 2), (2, 0), (3, 1)];
    ModelSubspace::from_generators(
        4,
        [alpha, beta, gamma].iter().map(|cells| pattern_generator(4, cells)),
    )
    .expect("zero column sums")
}

fn new_model() -> ModelSubspace {
    let t = CayleyTable::from_one_based(&[
        vec![1, 1, 3, 3],
        vec![2, 2, 4, 4],
        vec![3, 3, 1, 1],
        vec![4, 4, 2, 2],
    ])
    .expect("valid table");
    derive_model(&t).expect("associative").subspace
}

fn k2st() -> ModelSubspace {
    let d4: Vec<Perm> = ["e", "(12)", "(34)", "(12)(34)", "(13)(24)", "(14)(23)", "(1324)", "(1423)"]
        .iter()
        .map(|s| Perm::parse_cycles(s, 4).expect("valid cycles"))
        .collect();
    equivariant_model(&d4, 4).expect("D4 is a group")
}

impl KnownModelRegistry {
    pub fn build() -> Self {
        let models: Vec<(String, ModelSubspace)> = vec![
            ("binary-symmetric".into(), group_based_model(&GroupSpec::cyclic(2))),
            ("equal-input-2".into(), equal_input(2)),
            ("equal-input-3".into(), equal_input(3)),
            ("C3-group-based".into(), group_based_model(&GroupSpec::cyclic(3))),
            ("F81".into(), equal_input(4)),
            ("K3ST".into(), group_based_model(&GroupSpec::klein())),
            ("K2ST".into(), k2st()),
            ("Model-3.3b".into(), model_3_3b()),
            ("New-4.1".into(), new_model()),
        ];
        let mut labels = BTreeMap::new();
        for (name, m) in &models {
            let previous = labels.insert(m.canonical_key(), name.clone());
            assert!(previous.is_none(), "registry keys must be distinct ({name})");
        }
        KnownModelRegistry { labels, models }
    }

    pub fn global() -> &'static Self {
        static REGISTRY: OnceLock<KnownModelRegistry> = OnceLock::new();
        REGISTRY.get_or_init(Self::build)
    }

    pub fn label(&self, key: &CanonicalKey) -> Option<&str> {
        self.labels.get(key).map(String::as_str)
    }

    pub fn model(&self, label: &str) -> Option<&ModelSubspace> {
        self.models.iter().find(|(n, _)| n == label).map(|(_, m)| m)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.models.iter().map(|(n, _)| n.as_str())
    }

    pub fn len(&self) -> usize {
        self.models.len()
    }

    pub fn is_empty(&self) -> bool {
        self.models.is_empty()
    }
}
