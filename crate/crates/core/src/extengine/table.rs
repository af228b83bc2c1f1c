//! The Ext table and its cache file.
//!
//! ```text
//! ext 4 ; 3,1,1,1,1 ; 3 ; 2 ; computed
//! ext 4 ; 1,1,1,1,1,1,1,1,1 ; 5 ; -1 ; contradiction
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Cell, Error, Result};
use crate::partition::Partition;

/// (ν, λ, k).
pub type ExtKey = (Partition, Partition, usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtStatus {
    /// Zero by the vanishing range, Schur's lemma or projectivity.
    ForcedZero,
    /// Solved from a row complex under the concentration hypothesis.
    Computed,
    /// Solved after a contradiction had already been found.
    Conditional,
    Fixture,
    /// The row complex forced a negative value.
    Contradiction,
    /// The row complex would consume a contradicted or blocked cell.
    Blocked,
}

impl ExtStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ExtStatus::ForcedZero => "forced-zero",
            ExtStatus::Computed => "computed",
            ExtStatus::Conditional => "conditional",
            ExtStatus::Fixture => "fixture",
            ExtStatus::Contradiction => "contradiction",
            ExtStatus::Blocked => "blocked",
        }
    }
}

impl fmt::Display for ExtStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExtStatus {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "forced-zero" => ExtStatus::ForcedZero,
            "computed" => ExtStatus::Computed,
            "conditional" => ExtStatus::Conditional,
            "fixture" => ExtStatus::Fixture,
            "contradiction" => ExtStatus::Contradiction,
            "blocked" => ExtStatus::Blocked,
            _ => return Err(Error::parse("ext status", s)),
        })
    }
}

/// A stored cell. `value` is negative only for a contradiction (the forced
/// value) and absent only for a blocked cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtEntry {
    pub value: Option<i64>,
    pub status: ExtStatus,
}

impl ExtEntry {
    pub fn known(value: u64, status: ExtStatus) -> Self {
        ExtEntry {
            value: Some(value as i64),
            status,
        }
    }
}

/// How a computed cell was obtained: a complex of `len` terms (the solved
/// slot included), and the on-row cells Ext(ν, ρ) it consumed at position
/// `i` with multiplicity `mult`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub len: usize,
    pub inputs: Vec<(Partition, usize, u64)>,
}

/// Answer to an Ext lookup.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtLookup {
    /// Fixed without any hypothesis.
    Forced(u64),
    /// Zero only under the concentration hypothesis.
    HypothesisZero,
    Stored(u64, ExtStatus),
    Contradicted,
    Blocked,
    Unknown,
}

impl ExtLookup {
    pub fn value(self) -> Option<u64> {
        match self {
            ExtLookup::Forced(v) | ExtLookup::Stored(v, _) => Some(v),
            ExtLookup::HypothesisZero => Some(0),
            _ => None,
        }
    }
}

/// Value of a cell fixed by rule alone, if any.
pub fn forced_value(nu: &Partition, lambda: &Partition, k: usize) -> Option<u64> {
    let (n, m) = (nu.size(), lambda.size());
    if m < n || k > m - n {
        return Some(0);
    }
    if k == 0 {
        return Some(u64::from(nu == lambda));
    }
    if n <= 1 {
        return Some(0);
    }
    if k == 1 && m > n + 1 {
        return Some(0);
    }
    None
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExtTable {
    entries: BTreeMap<ExtKey, ExtEntry>,
    derivations: BTreeMap<ExtKey, Derivation>,
    /// True when off-row cells are read as zero (the concentration
    /// hypothesis). Every recursion-produced table sets it.
    concentrated: bool,
}

impl ExtTable {
    pub fn new(concentrated: bool) -> Self {
        ExtTable {
            concentrated,
            ..Default::default()
        }
    }

    pub fn is_concentrated(&self) -> bool {
        self.concentrated
    }

    pub fn set_concentrated(&mut self, on: bool) {
        self.concentrated = on;
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&ExtKey, &ExtEntry)> {
        self.entries.iter()
    }

    pub fn entry(&self, nu: &Partition, lambda: &Partition, k: usize) -> Option<&ExtEntry> {
        self.entries.get(&(nu.clone(), lambda.clone(), k))
    }

    pub fn derivation(&self, nu: &Partition, lambda: &Partition, k: usize) -> Option<&Derivation> {
        self.derivations.get(&(nu.clone(), lambda.clone(), k))
    }

    /// Stores a cell. A known value may not be replaced by a different one.
    pub fn insert(&mut self, nu: Partition, lambda: Partition, k: usize, entry: ExtEntry) -> Result<()> {
        if let Some(v) = forced_value(&nu, &lambda, k) {
            if entry.value != Some(v as i64) {
                return Err(Error::Invariant {
                    cell: Cell::Ext(nu, lambda, k),
                    msg: format!("{} entry contradicts the forced value {}", entry.status, v),
                });
            }
        }
        let key = (nu, lambda, k);
        if let Some(old) = self.entries.get(&key) {
            if old.value != entry.value && old.value.is_some() && entry.value.is_some() {
                return Err(Error::Conflict {
                    cell: Cell::Ext(key.0, key.1, key.2),
                    first: old.value.unwrap_or(0).max(0) as u64,
                    first_source: old.status.to_string(),
                    second: entry.value.unwrap_or(0).max(0) as u64,
                    second_source: entry.status.to_string(),
                });
            }
        }
        self.entries.insert(key, entry);
        Ok(())
    }

    pub(crate) fn record_derivation(&mut self, key: ExtKey, d: Derivation) {
        self.derivations.insert(key, d);
    }

    pub fn get(&self, nu: &Partition, lambda: &Partition, k: usize) -> ExtLookup {
        if let Some(v) = forced_value(nu, lambda, k) {
            return ExtLookup::Forced(v);
        }
        if let Some(e) = self.entry(nu, lambda, k) {
            return match (e.status, e.value) {
                (ExtStatus::Contradiction, _) => ExtLookup::Contradicted,
                (ExtStatus::Blocked, _) | (_, None) => ExtLookup::Blocked,
                (s, Some(v)) => ExtLookup::Stored(v.max(0) as u64, s),
            };
        }
        if self.concentrated && k + nu.size() < lambda.size() {
            return ExtLookup::HypothesisZero;
        }
        ExtLookup::Unknown
    }

    /// Known value of a cell, or an error naming it.
    pub fn require(&self, nu: &Partition, lambda: &Partition, k: usize) -> Result<u64> {
        let cell = || Cell::Ext(nu.clone(), lambda.clone(), k);
        match self.get(nu, lambda, k) {
            ExtLookup::Contradicted | ExtLookup::Blocked => Err(Error::Blocked(cell())),
            l => l.value().ok_or_else(|| Error::UnknownCell(cell())),
        }
    }

    /// Adds every entry of `other`, which must agree on shared cells.
    pub fn merge(&mut self, other: &ExtTable) -> Result<()> {
        for ((n, l, k), e) in &other.entries {
            self.insert(n.clone(), l.clone(), *k, e.clone())?;
        }
        for (key, d) in &other.derivations {
            self.derivations.insert(key.clone(), d.clone());
        }
        Ok(())
    }

    pub fn count_status(&self, status: ExtStatus) -> usize {
        self.entries.values().filter(|e| e.status == status).count()
    }

    /// Cache text, sorted by (|λ|, |λ| − |ν|, ν, λ) with partitions in
    /// canonical order within each size.
    pub fn to_cache_text(&self) -> String {
        let mut keys: Vec<&ExtKey> = self.entries.keys().collect();
        keys.sort_by_key(|a| cache_order(a));
        let mut out = String::new();
        for key in keys {
            let e = &self.entries[key];
            let v = e.value.map_or("?".to_string(), |v| v.to_string());
            out.push_str(&format!(
                "ext {} ; {} ; {} ; {} ; {}\n",
                key.0, key.1, key.2, v, e.status
            ));
        }
        out
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_cache_text()).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })
    }
}

fn cache_order(
    k: &ExtKey,
) -> (
    usize,
    usize,
    std::cmp::Reverse<Partition>,
    std::cmp::Reverse<Partition>,
    usize,
) {
    (
        k.1.size(),
        k.1.size().saturating_sub(k.0.size()),
        std::cmp::Reverse(k.0.clone()),
        std::cmp::Reverse(k.1.clone()),
        k.2,
    )
}

/// Parses cache text. The result is not marked concentrated; callers decide.
pub fn parse_ext_text(text: &str, source: &str) -> Result<ExtTable> {
    let mut t = ExtTable::new(false);
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let err = |msg: String| Error::Load {
            source_name: source.to_string(),
            line: line_no,
            msg,
        };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let rest = line
            .strip_prefix("ext ")
            .ok_or_else(|| err(format!("expected an `ext` record, found {:?}", line)))?;
        let f: Vec<&str> = rest.split(';').map(str::trim).collect();
        if f.len() != 5 {
            return Err(err(format!("expected 5 `;`-separated fields, found {}", f.len())));
        }
        let nu: Partition = f[0].parse().map_err(|e: Error| err(e.to_string()))?;
        let lambda: Partition = f[1].parse().map_err(|e: Error| err(e.to_string()))?;
        let k: usize = f[2].parse().map_err(|_| err(format!("bad degree {:?}", f[2])))?;
        let status: ExtStatus = f[4].parse().map_err(|e: Error| err(e.to_string()))?;
        let value = match f[3] {
            "?" => None,
            v => Some(v.parse::<i64>().map_err(|_| err(format!("bad value {:?}", v)))?),
        };
        let consistent = match status {
            ExtStatus::Blocked => value.is_none(),
            ExtStatus::Contradiction => value.is_some_and(|v| v < 0),
            _ => value.is_some_and(|v| v >= 0),
        };
        if !consistent {
            return Err(err(format!("value {:?} does not fit status {}", f[3], status)));
        }
        t.insert(nu, lambda, k, ExtEntry { value, status })
            .map_err(|e| err(e.to_string()))?;
    }
    Ok(t)
}

pub fn load_ext_file(path: &Path) -> Result<ExtTable> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    let name = path
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    parse_ext_text(&text, &name)
}
