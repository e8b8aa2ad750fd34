//! Inputs shared by the benchmarks.

use semilie::{CayleyTable, ModelSubspace};

/// The four order-4 semigroups whose models are non-reducible without absorbing states.
pub fn interesting_tables() -> Vec<CayleyTable> {
    ["0000111122223333", "0022113322003311", "0123103223013210", "0123103223103201"]
        .iter()
        .map(|s| {
            let cells = s.bytes().map(|b| usize::from(b - b'0')).collect();
            CayleyTable::from_cells(4, cells).expect("valid table")
        })
        .collect()
}

pub fn interesting_models() -> Vec<ModelSubspace> {
    interesting_tables()
        .iter()
        .map(|t| semilie::modelgen::derive_model(t).expect("associative").subspace)
        .collect()
}

/// Sum of the generators of the second interesting model (the Klein-symmetric one).
pub fn sample_rate_generator() -> semilie::IntMatrix {
    let m = &interesting_models()[1];
    m.basis().iter().skip(1).fold(m.basis()[0].clone(), |acc, g| &acc + g)
}
