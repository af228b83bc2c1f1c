//! Conjugated multiplicity records, (ωβS_λ)^ρ = Φ^{|λ|−|ρ|}[λ′, ρ′].

use std::collections::BTreeMap;

use crate::error::{Cell, Error, Result};
use crate::partition::Partition;

use super::{MultTable, Provenance};

/// One Φ^k[λ′, ρ′] = value record.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DatasetRecord {
    pub degree_drop: usize,
    pub lambda_conj: Partition,
    pub rho_conj: Partition,
    pub value: u64,
}

/// Target cell (λ, ρ) of a record, after checking k = |λ′| − |ρ′|.
pub(crate) fn translate_record(r: &DatasetRecord) -> Result<(Partition, Partition)> {
    let (l, p) = (r.lambda_conj.size(), r.rho_conj.size());
    if p > l || l - p != r.degree_drop {
        return Err(Error::Precondition(format!(
            "record Φ^{}[{} ; {}] has |λ′| − |ρ′| = {}",
            r.degree_drop,
            r.lambda_conj,
            r.rho_conj,
            l as i64 - p as i64
        )));
    }
    Ok((r.lambda_conj.conjugate(), r.rho_conj.conjugate()))
}

/// Builds a dataset-tagged table fragment from conjugated records. Duplicate
/// records must carry equal values.
pub fn translate_gh22(records: &[DatasetRecord], source: &str) -> Result<MultTable> {
    let mut t = MultTable::empty();
    for r in records {
        let (lambda, rho) = translate_record(r)?;
        t.insert(lambda, rho, r.value, Provenance::Dataset(source.to_string()))?;
    }
    Ok(t)
}

/// `phi` lines for a record set, sorted and deduplicated.
pub fn records_to_text(records: &[DatasetRecord]) -> String {
    let mut out = String::new();
    let mut sorted = records.to_vec();
    sorted.sort();
    sorted.dedup();
    for r in sorted {
        out.push_str(&format!(
            "phi {} ; {} ; {} ; {}\n",
            r.degree_drop, r.lambda_conj, r.rho_conj, r.value
        ));
    }
    out
}

/// Parses a raw tabular export into records. This is the one place that
/// knows the upstream layout; everything downstream sees `DatasetRecord`.
///
/// Accepted layout: one record per line, four fields separated by tabs or
/// `|`, in the order `k`, `λ′`, `ρ′`, `value`, where partitions may be
/// written `[3, 1]`, `(3,1)` or `3 1`. Lines starting with `#` and a header
/// line beginning with `k` are skipped.
pub fn parse_raw_export(text: &str) -> Result<Vec<DatasetRecord>> {
    fn partition(field: &str) -> Result<Partition> {
        let cleaned: String = field
            .chars()
            .filter(|c| !matches!(c, '[' | ']' | '(' | ')'))
            .map(|c| if c.is_whitespace() { ',' } else { c })
            .collect();
        let parts: Result<Vec<usize>> = cleaned
            .split(',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(|_| Error::parse("partition", field)))
            .collect();
        Partition::new(parts?)
    }

    let mut seen: BTreeMap<(usize, Partition, Partition), u64> = BTreeMap::new();
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('k') {
            continue;
        }
        let f: Vec<&str> = line.split(['\t', '|']).map(str::trim).collect();
        if f.len() != 4 {
            return Err(Error::Load {
                source_name: "raw export".into(),
                line: i + 1,
                msg: format!("expected 4 fields, found {}", f.len()),
            });
        }
        let wrap = |e: Error| Error::Load {
            source_name: "raw export".into(),
            line: i + 1,
            msg: e.to_string(),
        };
        let record = DatasetRecord {
            degree_drop: f[0].parse().map_err(|_| wrap(Error::parse("degree", f[0])))?,
            lambda_conj: partition(f[1]).map_err(wrap)?,
            rho_conj: partition(f[2]).map_err(wrap)?,
            value: f[3].parse().map_err(|_| wrap(Error::parse("value", f[3])))?,
        };
        let key = (record.degree_drop, record.lambda_conj.clone(), record.rho_conj.clone());
        if let Some(&old) = seen.get(&key) {
            if old != record.value {
                return Err(Error::Conflict {
                    cell: Cell::Mult(record.lambda_conj.conjugate(), record.rho_conj.conjugate()),
                    first: old,
                    first_source: "raw export".into(),
                    second: record.value,
                    second_source: format!("raw export line {}", i + 1),
                });
            }
            continue;
        }
        seen.insert(key, record.value);
        out.push(record);
    }
    Ok(out)
}
