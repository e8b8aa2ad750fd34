use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{commutator_table, Catalog, CatalogEntry};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "md" | "markdown" => Ok(Format::Markdown),
            _ => Err(Error::UnknownFormat(s.to_string())),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SymmetryRecord {
    pub order: usize,
    pub name: String,
    pub elements: Vec<String>,
}

/// One catalog entry in its serialized shape. States and table entries are 1-based.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct EntryRecord {
    pub model_id: String,
    pub dimension: usize,
    pub reducible: bool,
    pub absorbing_states: Vec<usize>,
    pub symmetry: SymmetryRecord,
    pub variant_count: usize,
    pub lie_closed: bool,
    pub algebra_closed: bool,
    pub known_label: Option<String>,
    pub generators: Vec<Vec<Vec<String>>>,
    pub sources: Vec<Vec<Vec<usize>>>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CatalogDocument {
    pub order: usize,
    pub entries: Vec<EntryRecord>,
}

impl From<&CatalogEntry> for EntryRecord {
    fn from(e: &CatalogEntry) -> Self {
        let r = &e.report;
        EntryRecord {
            model_id: e.model_id.clone(),
            dimension: r.dimension,
            reducible: r.reducible,
            absorbing_states: r.absorbing_states.iter().map(|s| s + 1).collect(),
            symmetry: SymmetryRecord {
                order: r.symmetry_group.len(),
                name: r.symmetry_group.name().to_string(),
                elements: r.symmetry_group.elements().iter().map(ToString::to_string).collect(),
            },
            variant_count: r.variant_count,
            lie_closed: r.lie_closed,
            algebra_closed: r.matrix_algebra_closed,
            known_label: e.known_label.clone(),
            generators: r
                .subspace
                .basis()
                .iter()
                .map(|g| g.rows().map(|row| row.iter().map(ToString::to_string).collect()).collect())
                .collect(),
            sources: r.provenance.iter().map(|t| t.rows_one_based()).collect(),
        }
    }
}

impl From<&Catalog> for CatalogDocument {
    fn from(c: &Catalog) -> Self {
        CatalogDocument {
            order: c.order,
            entries: c.entries.iter().map(EntryRecord::from).collect(),
        }
    }
}

pub fn parse_json(text: &str) -> Result<CatalogDocument> {
    serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
}

/// Renders a catalog; JSON output ends with a newline and keeps field order fixed.
pub fn render(catalog: &Catalog, format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let doc = CatalogDocument::from(catalog);
            let mut s = serde_json::to_string_pretty(&doc).map_err(|e| Error::Document(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => Ok(render_csv(catalog)),
        Format::Markdown => render_markdown(catalog),
    }
}

const CSV_HEADER: &str = "model_id,order,dimension,reducible,absorbing_states,symmetry_order,symmetry_name,variant_count,lie_closed,algebra_closed,known_label,source_ids";

fn render_csv(catalog: &Catalog) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for e in &catalog.entries {
        let rec = EntryRecord::from(e);
        let join = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(";");
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            rec.model_id,
            e.order,
            rec.dimension,
            rec.reducible,
            join(&rec.absorbing_states),
            rec.symmetry.order,
            rec.symmetry.name,
            rec.variant_count,
            rec.lie_closed,
            rec.algebra_closed,
            rec.known_label.as_deref().unwrap_or(""),
            join(&e.source_semigroup_ids),
        )
        .expect("writing to a String");
    }
    out
}

fn render_markdown(catalog: &Catalog) -> Result<String> {
    let mut out = String::new();
    let w = &mut out;
    let ok = "writing to a String";
    writeln!(w, "# Semigroup-based models on {} states", catalog.order).expect(ok);
    writeln!(w).expect(ok);
    writeln!(w, "{} model classes.", catalog.entries.len()).expect(ok);
    for (n, e) in catalog.entries.iter().enumerate() {
        let rec = EntryRecord::from(e);
        writeln!(w).expect(ok);
        match &rec.known_label {
            Some(label) => writeln!(w, "## Model {} ({label})", n + 1),
            None => writeln!(w, "## Model {}", n + 1),
        }
        .expect(ok);
        writeln!(w).expect(ok);
        writeln!(w, "- id: `{}`", rec.model_id).expect(ok);
        writeln!(w, "- dimension: {}", rec.dimension).expect(ok);
        writeln!(w, "- reducible: {}", rec.reducible).expect(ok);
        let absorbing = if rec.absorbing_states.is_empty() {
            "none".to_string()
        } else {
            rec.absorbing_states.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
        };
        writeln!(w, "- absorbing states: {absorbing}").expect(ok);
        writeln!(
            w,
            "- symmetry: {} of order {}: {{{}}}",
            rec.symmetry.name,
            rec.symmetry.order,
            rec.symmetry.elements.join(", ")
        )
        .expect(ok);
        writeln!(w, "- variants: {}", rec.variant_count).expect(ok);
        writeln!(w, "- Lie closed: {}, algebra closed: {}", rec.lie_closed, rec.algebra_closed).expect(ok);
        writeln!(w).expect(ok);
        writeln!(w, "Semigroups:").expect(ok);
        for t in &e.report.provenance {
            writeln!(w).expect(ok);
            writeln!(w, "```").expect(ok);
            writeln!(w, "{t}").expect(ok);
            writeln!(w, "```").expect(ok);
        }
        writeln!(w).expect(ok);
        writeln!(w, "Generators:").expect(ok);
        for (i, g) in e.report.subspace.basis().iter().enumerate() {
            writeln!(w).expect(ok);
            writeln!(w, "L_{} =", i + 1).expect(ok);
            writeln!(w, "```").expect(ok);
            writeln!(w, "{g}").expect(ok);
            writeln!(w, "```").expect(ok);
        }
        let brackets = commutator_table(&e.report.subspace)?;
        if !brackets.is_empty() {
            writeln!(w).expect(ok);
            writeln!(w, "| bracket | value |").expect(ok);
            writeln!(w, "|---|---|").expect(ok);
            for b in brackets {
                writeln!(w, "| [L_{}, L_{}] | {} |", b.i + 1, b.j + 1, b.symbolic("L")).expect(ok);
            }
        }
    }
    Ok(out)
}
