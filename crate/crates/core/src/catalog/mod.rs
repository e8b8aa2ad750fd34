//! The end-to-end pipeline: enumerate semigroups, derive and deduplicate
//! their models, classify each class and attach known-model labels.

mod registry;
mod render;

pub use registry::KnownModelRegistry;
pub use render::{parse_json, render, CatalogDocument, EntryRecord, Format, SymmetryRecord};

use std::fmt;

use log::info;
use num_rational::BigRational;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::cayley::{enumerate_semigroups, CayleyTable};
use crate::closure::commutator;
use crate::error::{Error, Result};
use crate::modelgen::{dedup_models, derive_model, generator_set_classes, CanonicalKey, ModelReport, ModelSubspace};

/// First 16 hex digits of SHA-256 over [`CanonicalKey::serialize`].
pub fn model_id(key: &CanonicalKey) -> String {
    let digest = Sha256::digest(key.serialize().as_bytes());
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub model_id: String,
    pub order: usize,
    pub report: ModelReport,
    /// 1-based positions of the sources in the pipeline's table list.
    pub source_semigroup_ids: Vec<usize>,
    pub known_label: Option<String>,
}

/// Stage counts of one pipeline run.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Funnel {
    pub tables: usize,
    pub models: usize,
    pub generator_set_classes: usize,
    pub classes: usize,
    pub interesting: usize,
}

impl fmt::Display for Funnel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} tables -> {} models -> {} generator sets -> {} classes -> {} non-reducible without absorbing states",
            self.tables, self.models, self.generator_set_classes, self.classes, self.interesting
        )
    }
}

#[derive(Clone, Debug)]
pub struct Catalog {
    pub order: usize,
    pub entries: Vec<CatalogEntry>,
    pub funnel: Funnel,
}

impl Catalog {
    pub fn interesting(&self) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.iter().filter(|e| e.report.is_interesting())
    }

    pub fn find(&self, model_id: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.model_id == model_id)
    }

    pub fn labeled(&self, label: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.known_label.as_deref() == Some(label))
    }
}

#[derive(Clone, Debug)]
pub enum Source {
    Enumerate,
    Tables(Vec<CayleyTable>),
}

/// Runs the full pipeline at order `k`. Entries are sorted by their smallest
/// source table. A semigroup-derived model that is not Lie-closed is reported
/// as [`Error::InvariantViolation`].
pub fn run_pipeline(k: usize, source: Source) -> Result<Catalog> {
    let tables = match source {
        Source::Enumerate => {
            if !(2..=4).contains(&k) {
                return Err(Error::UnsupportedOrder(k));
            }
            enumerate_semigroups(k)?
        }
        Source::Tables(tables) => {
            let mut canon = Vec::with_capacity(tables.len());
            for t in &tables {
                if t.order() != k {
                    return Err(Error::OrderMismatch {
                        expected: k,
                        found: t.order(),
                    });
                }
                t.ensure_associative()?;
                canon.push(t.canonical_form());
            }
            canon.sort();
            canon.dedup();
            canon
        }
    };
    info!("order {k}: {} semigroup tables", tables.len());

    let derived = tables.par_iter().map(derive_model).collect::<Result<Vec<_>>>()?;
    let generator_sets = generator_set_classes(&derived);
    let models = derived.len();
    let classes = dedup_models(derived);
    info!("order {k}: {models} models, {generator_sets} generator sets, {} classes", classes.len());

    let registry = KnownModelRegistry::global();
    let mut entries = classes
        .into_par_iter()
        .map(|class| {
            let report = ModelReport::classify(class.representative, class.sources);
            if !report.lie_closed {
                return Err(Error::InvariantViolation(format!(
                    "model of semigroup\n{}\nis not Lie-closed",
                    report.provenance[0]
                )));
            }
            let mut report = report;
            let known_label = registry.label(&class.key).map(str::to_string);
            report.known_label = known_label.clone();
            let source_semigroup_ids = report
                .provenance
                .iter()
                .map(|s| tables.binary_search(s).map_or(0, |i| i + 1))
                .collect();
            Ok(CatalogEntry {
                model_id: model_id(&class.key),
                order: k,
                report,
                source_semigroup_ids,
                known_label,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    entries.sort_by(|a, b| a.report.provenance[0].cmp(&b.report.provenance[0]));

    let funnel = Funnel {
        tables: tables.len(),
        models,
        generator_set_classes: generator_sets,
        classes: entries.len(),
        interesting: entries.iter().filter(|e| e.report.is_interesting()).count(),
    };
    info!("order {k}: {funnel}");
    Ok(Catalog {
        order: k,
        entries,
        funnel,
    })
}

/// Classifies a model built outside the pipeline (constructors, fixtures).
/// Not-Lie-closed inputs are reported, not rejected.
pub fn describe(subspace: ModelSubspace) -> CatalogEntry {
    let key = subspace.canonical_key();
    let mut report = ModelReport::classify(subspace, Vec::new());
    let known_label = KnownModelRegistry::global().label(&key).map(str::to_string);
    report.known_label = known_label.clone();
    CatalogEntry {
        model_id: model_id(&key),
        order: key.order(),
        report,
        source_semigroup_ids: Vec::new(),
        known_label,
    }
}

/// Bracket `[B_i, B_j]` of two generators expressed over the generator list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CommutatorRow {
    pub i: usize,
    pub j: usize,
    pub coefficients: Vec<BigRational>,
}

impl CommutatorRow {
    /// Renders as `L_1 - L_2`, or `0`, with 1-based generator names.
    pub fn symbolic(&self, symbol: &str) -> String {
        let mut out = String::new();
        for (idx, c) in self.coefficients.iter().enumerate() {
            if num_traits::Zero::is_zero(c) {
                continue;
            }
            let negative = c < &BigRational::from_integer(0.into());
            let magnitude = if negative { -c.clone() } else { c.clone() };
            let sign = match (out.is_empty(), negative) {
                (true, false) => "",
                (true, true) => "-",
                (false, false) => " + ",
                (false, true) => " - ",
            };
            let coeff = if num_traits::One::is_one(&magnitude) {
                String::new()
            } else {
                format!("{magnitude} ")
            };
            out.push_str(&format!("{sign}{coeff}{symbol}_{}", idx + 1));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Coefficients of every bracket `[B_i, B_j]`, `i < j`. When the generators
/// are linearly dependent the coefficients live on the independent prefix
/// chosen by [`ModelSubspace::independent_generators`].
pub fn commutator_table(m: &ModelSubspace) -> Result<Vec<CommutatorRow>> {
    let b = m.basis();
    let mut rows = Vec::new();
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            let bracket = commutator(&b[i], &b[j])?.to_rational();
            let coefficients = m.generator_coefficients(&bracket).ok_or_else(|| {
                Error::InvariantViolation(format!("[B_{}, B_{}] leaves the span", i + 1, j + 1))
            })?;
            rows.push(CommutatorRow { i, j, coefficients });
        }
    }
    Ok(rows)
}
