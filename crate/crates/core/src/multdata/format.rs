//! The canonical multiplicity file.
//!
//! ```text
//! # comment
//! mult 3,1 ; 2,1 ; 2
//! phi 1 ; 2,1,1 ; 2,1 ; 1
//! ```
//!
//! `mult` lines give (ωβS_λ)^ρ directly; `phi` lines give the conjugated
//! form Φ^k[λ′, ρ′] with k = |λ′| − |ρ′|.

use std::cmp::Reverse;
use std::path::Path;

use crate::error::{Cell, Error, Result};
use crate::partition::Partition;

use super::gh22::{translate_record, DatasetRecord};
use super::{MultTable, Provenance};

/// A parsed file: the table fragment plus the raw conjugated records it
/// contained.
#[derive(Clone, Debug, Default)]
pub struct MultFile {
    pub table: MultTable,
    pub records: Vec<DatasetRecord>,
}

fn fields<'a>(rest: &'a str, n: usize, source: &str, line: usize) -> Result<Vec<&'a str>> {
    let f: Vec<&str> = rest.split(';').map(str::trim).collect();
    if f.len() != n {
        return Err(Error::Load {
            source_name: source.to_string(),
            line,
            msg: format!("expected {} `;`-separated fields, found {}", n, f.len()),
        });
    }
    Ok(f)
}

pub fn parse_mult_text(text: &str, source: &str, provenance: Provenance) -> Result<MultFile> {
    let mut out = MultFile::default();
    let load_err = |line: usize, msg: String| Error::Load {
        source_name: source.to_string(),
        line,
        msg,
    };
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (tag, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let (lambda, rho, value) = match tag {
            "mult" => {
                let f = fields(rest, 3, source, line_no)?;
                let lambda: Partition = f[0].parse().map_err(|e: Error| load_err(line_no, e.to_string()))?;
                let rho: Partition = f[1].parse().map_err(|e: Error| load_err(line_no, e.to_string()))?;
                let value: u64 = f[2]
                    .parse()
                    .map_err(|_| load_err(line_no, format!("bad value {:?}", f[2])))?;
                (lambda, rho, value)
            }
            "phi" => {
                let f = fields(rest, 4, source, line_no)?;
                let k: usize = f[0]
                    .parse()
                    .map_err(|_| load_err(line_no, format!("bad degree drop {:?}", f[0])))?;
                let record = DatasetRecord {
                    degree_drop: k,
                    lambda_conj: f[1].parse().map_err(|e: Error| load_err(line_no, e.to_string()))?,
                    rho_conj: f[2].parse().map_err(|e: Error| load_err(line_no, e.to_string()))?,
                    value: f[3]
                        .parse()
                        .map_err(|_| load_err(line_no, format!("bad value {:?}", f[3])))?,
                };
                let (lambda, rho) = translate_record(&record).map_err(|e| load_err(line_no, e.to_string()))?;
                out.records.push(record.clone());
                (lambda, rho, record.value)
            }
            other => return Err(load_err(line_no, format!("unknown record type {:?}", other))),
        };
        if rho.size() > lambda.size() {
            return Err(load_err(
                line_no,
                format!("{} lies above the diagonal", Cell::Mult(lambda, rho)),
            ));
        }
        out.table
            .insert(lambda, rho, value, provenance.clone())
            .map_err(|e| load_err(line_no, e.to_string()))?;
    }
    Ok(out)
}

/// Reads a file, tagging every entry with `Dataset` or `Fixture` provenance
/// named after the file.
pub fn load_mult_file(path: &Path, fixture: bool) -> Result<MultFile> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    let name = path
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    let prov = if fixture {
        Provenance::Fixture(name.clone())
    } else {
        Provenance::Dataset(name.clone())
    };
    parse_mult_text(&text, &name, prov)
}

impl MultTable {
    /// Canonical text: one `mult` line per stored entry, sorted by |λ|, then
    /// λ and ρ in canonical order.
    pub fn to_canonical_text(&self) -> String {
        let mut rows: Vec<_> = self.entries().collect();
        rows.sort_by_key(|(l, r, _)| (l.size(), Reverse(*l), r.size(), Reverse(*r)));
        let mut out = String::new();
        for (lambda, rho, e) in rows {
            out.push_str(&format!("mult {} ; {} ; {}\n", lambda, rho, e.value));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn ds() -> Provenance {
        Provenance::Dataset("t".into())
    }

    #[test]
    fn parses_both_record_kinds() {
        let text = "# header\n\nmult 3,1 ; 2,1 ; 2\nphi 1 ; 3,1 ; 3 ; 1   # trailing\n";
        let f = parse_mult_text(text, "t", ds()).unwrap();
        assert_eq!(f.table.query(&p("3,1"), &p("2,1")).value(), Some(2));
        // (3,1)' = (2,1,1) and (3)' = (1,1,1)
        assert_eq!(f.table.query(&p("2,1,1"), &p("1,1,1")).value(), Some(1));
        assert_eq!(f.records.len(), 1);
    }

    #[test]
    fn conflicting_duplicate_is_a_load_error() {
        let text = "mult 3,1 ; 2,1 ; 2\nmult 3,1 ; 2,1 ; 3\n";
        match parse_mult_text(text, "t", ds()) {
            Err(Error::Load { line, .. }) => assert_eq!(line, 2),
            other => panic!("{:?}", other),
        }
        let text = "mult 3,1 ; 2,1 ; 2\nmult 3,1 ; 2,1 ; 2\n";
        assert!(parse_mult_text(text, "t", ds()).is_ok());
    }

    #[test]
    fn malformed_lines() {
        for text in [
            "mult 3,1 ; 2,1\n",
            "mult 3,1 ; 1,2 ; 1\n",
            "mult 3,1 ; 2,1 ; -1\n",
            "mul 3,1 ; 2,1 ; 1\n",
            "phi 2 ; 2,1,1 ; 2,1 ; 1\n",
            "mult 2 ; 2,1 ; 0\n",
        ] {
            assert!(
                matches!(parse_mult_text(text, "t", ds()), Err(Error::Load { .. })),
                "{:?}",
                text
            );
        }
    }

    #[test]
    fn canonical_text_round_trip() {
        let text = "mult 3,1 ; 2,1 ; 2\nmult 4 ; 3 ; 0\nmult 2,1,1 ; 2 ; 1\n";
        let f = parse_mult_text(text, "t", ds()).unwrap();
        let out = f.table.to_canonical_text();
        assert_eq!(out, "mult 4 ; 3 ; 0\nmult 3,1 ; 2,1 ; 2\nmult 2,1,1 ; 2 ; 1\n");
        let again = parse_mult_text(&out, "t", ds()).unwrap();
        assert_eq!(again.table, f.table);
    }
}
