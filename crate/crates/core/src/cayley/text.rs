//! Plain-text Cayley table files.
//!
//! A file holds one or more blocks. A block is `k` lines of `k`
//! whitespace-separated 1-based integers; blocks are separated by blank lines
//! and lines starting with `#` are comments.

use super::CayleyTable;
use crate::error::{Error, Result};

pub fn parse_tables(text: &str) -> Result<Vec<CayleyTable>> {
    let mut tables = Vec::new();
    let mut rows: Vec<Vec<usize>> = Vec::new();
    let mut block_start = 0;

    fn flush(rows: &mut Vec<Vec<usize>>, block_start: usize, tables: &mut Vec<CayleyTable>) -> Result<()> {
        if rows.is_empty() {
            return Ok(());
        }
        let block = tables.len() + 1;
        let k = rows.len();
        for (offset, row) in rows.iter().enumerate() {
            if row.len() != k {
                return Err(Error::Parse {
                    block,
                    line: block_start + offset,
                    message: format!("expected {k} entries, found {}", row.len()),
                });
            }
        }
        let table = CayleyTable::from_one_based(rows).map_err(|e| Error::Parse {
            block,
            line: block_start,
            message: e.to_string(),
        })?;
        tables.push(table);
        rows.clear();
        Ok(())
    }

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.starts_with('#') {
            continue;
        }
        if line.is_empty() {
            flush(&mut rows, block_start, &mut tables)?;
            continue;
        }
        if rows.is_empty() {
            block_start = lineno;
        }
        let row = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>().map_err(|_| Error::Parse {
                    block: tables.len() + 1,
                    line: lineno,
                    message: format!("`{tok}` is not a positive integer"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    flush(&mut rows, block_start, &mut tables)?;
    Ok(tables)
}

pub fn write_tables(tables: &[CayleyTable]) -> String {
    let mut out = String::new();
    for (i, t) in tables.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&t.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_blocks_and_comments() {
        let text = "# two semigroups\n1 1\n1 1\n\n\n# next\n1 2\n2 1\n";
        let tables = parse_tables(text).unwrap();
        assert_eq!(tables.len(), 2);
        assert_eq!(tables[1].rows(), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn empty_input_gives_no_tables() {
        assert!(parse_tables("").unwrap().is_empty());
        assert!(parse_tables("# nothing\n\n").unwrap().is_empty());
    }

    #[test]
    fn errors_name_block_and_line() {
        let err = parse_tables("1 1\n1 1\n\n1 2\n2 x\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                block: 2,
                line: 5,
                message: "`x` is not a positive integer".into()
            }
        );
        let err = parse_tables("1 1\n1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { block: 1, line: 2, .. }));
        let err = parse_tables("1 3\n1 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { block: 1, line: 1, .. }));
    }

    proptest! {
        #[test]
        fn write_then_parse_is_identity(k in 1usize..5, seed in proptest::collection::vec(0usize..16, 16 * 3)) {
            let tables: Vec<CayleyTable> = seed
                .chunks(16)
                .map(|c| CayleyTable::from_cells(k, c[..k * k].iter().map(|v| v % k).collect()).unwrap())
                .collect();
            prop_assert_eq!(parse_tables(&write_tables(&tables)).unwrap(), tables);
        }
    }
}
