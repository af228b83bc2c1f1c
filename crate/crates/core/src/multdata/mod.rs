//! Composition-factor multiplicity tables (ωβS_λ)^ρ.
//!
//! A [`MultTable`] stores explicit entries with their provenance. Cells
//! fixed by structure (above the diagonal, the diagonal itself, low degree
//! targets, the `(1,1)` column from degree 4 on) are answered by rule and
//! never need storing; anything else not stored is reported as unknown.

mod format;
mod gh22;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Cell, Error, Result};
use crate::partition::{generate_partitions, hook_family, Partition};

pub use format::{load_mult_file, parse_mult_text, MultFile};
pub use gh22::{parse_raw_export, records_to_text, translate_gh22, DatasetRecord};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    Builtin,
    Dataset(String),
    Fixture(String),
    /// Solved by the multiplicity-inversion recursion.
    Derived,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Builtin => f.write_str("builtin"),
            Provenance::Dataset(src) => write!(f, "dataset:{}", src),
            Provenance::Fixture(src) => write!(f, "fixture:{}", src),
            Provenance::Derived => f.write_str("derived"),
        }
    }
}

/// Answer to a table lookup.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mult {
    Entry(u64),
    StructuralZero,
    Unknown,
}

impl Mult {
    pub fn value(self) -> Option<u64> {
        match self {
            Mult::Entry(v) => Some(v),
            Mult::StructuralZero => Some(0),
            Mult::Unknown => None,
        }
    }

    pub fn is_known_zero(self) -> bool {
        self.value() == Some(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultEntry {
    pub value: u64,
    pub provenance: Provenance,
}

/// Value forced by structure alone, independent of any data.
pub fn structural_value(lambda: &Partition, rho: &Partition) -> Option<u64> {
    let (l, r) = (lambda.size(), rho.size());
    if r > l {
        return Some(0);
    }
    if r == l {
        return Some(u64::from(lambda == rho));
    }
    if r <= 1 && l >= 1 {
        // the constant functor and the abelianization are projective;
        // in degree 1 the simple functor is its own envelope
        return Some(0);
    }
    if rho.parts() == [1, 1] && l >= 4 {
        return Some(0);
    }
    None
}

/// Row of the sign-type envelope ωβS_{(1^m)}: one on each hook (a, 1^b)
/// with 2a + b = m + 1, zero elsewhere.
pub fn column_row_value(lambda: &Partition, rho: &Partition) -> Option<u64> {
    let m = lambda.size();
    if m == 0 || *lambda != Partition::column(m) {
        return None;
    }
    Some(u64::from(hook_family(m).contains(rho)))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultTable {
    max_degree: usize,
    entries: BTreeMap<(Partition, Partition), MultEntry>,
}

impl MultTable {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Entries known without any dataset: the diagonal and the complete
    /// rows for λ = (1^m), m ≤ `max_degree`. Structural zeros are answered
    /// by rule.
    pub fn builtin(max_degree: usize) -> Self {
        let mut t = MultTable {
            max_degree,
            entries: BTreeMap::new(),
        };
        for m in 0..=max_degree {
            for lambda in generate_partitions(m) {
                t.put(lambda.clone(), lambda, 1, Provenance::Builtin);
            }
            if m >= 2 {
                let col = Partition::column(m);
                for r in 2..m {
                    for rho in generate_partitions(r) {
                        let v = column_row_value(&col, &rho).unwrap_or(0);
                        t.put(col.clone(), rho, v, Provenance::Builtin);
                    }
                }
            }
        }
        t
    }

    pub(crate) fn put(&mut self, lambda: Partition, rho: Partition, value: u64, provenance: Provenance) {
        self.max_degree = self.max_degree.max(lambda.size());
        self.entries.insert((lambda, rho), MultEntry { value, provenance });
    }

    /// Inserts one entry, rejecting a different value already present.
    pub fn insert(&mut self, lambda: Partition, rho: Partition, value: u64, provenance: Provenance) -> Result<()> {
        if let Some(old) = self.entries.get(&(lambda.clone(), rho.clone())) {
            if old.value != value {
                return Err(Error::Conflict {
                    cell: Cell::Mult(lambda, rho),
                    first: old.value,
                    first_source: old.provenance.to_string(),
                    second: value,
                    second_source: provenance.to_string(),
                });
            }
            return Ok(());
        }
        self.put(lambda, rho, value, provenance);
        Ok(())
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Partition, &Partition, &MultEntry)> {
        self.entries.iter().map(|((l, r), e)| (l, r, e))
    }

    pub fn entry(&self, lambda: &Partition, rho: &Partition) -> Option<&MultEntry> {
        self.entries.get(&(lambda.clone(), rho.clone()))
    }

    /// The stored entry, a structural zero, or `Unknown`. Never guesses.
    pub fn query(&self, lambda: &Partition, rho: &Partition) -> Mult {
        if let Some(e) = self.entry(lambda, rho) {
            return Mult::Entry(e.value);
        }
        match structural_value(lambda, rho) {
            Some(0) => Mult::StructuralZero,
            Some(v) => Mult::Entry(v),
            None => Mult::Unknown,
        }
    }

    /// Like [`query`](Self::query) but unknown cells are an error.
    pub fn require(&self, lambda: &Partition, rho: &Partition) -> Result<u64> {
        self.query(lambda, rho)
            .value()
            .ok_or_else(|| Error::UnknownCell(Cell::Mult(lambda.clone(), rho.clone())))
    }

    pub fn is_known(&self, lambda: &Partition, rho: &Partition) -> bool {
        self.query(lambda, rho) != Mult::Unknown
    }

    /// Unknown cells (λ, ρ) with |λ| = `lambda_size` and |ρ| < |λ|.
    pub fn unknown_cells(&self, lambda_size: usize) -> Vec<Cell> {
        let mut out = Vec::new();
        for lambda in generate_partitions(lambda_size) {
            for r in 0..lambda_size {
                for rho in generate_partitions(r) {
                    if !self.is_known(&lambda, &rho) {
                        out.push(Cell::Mult(lambda.clone(), rho));
                    }
                }
            }
        }
        out
    }

    /// True when every cell with |λ| ≤ `degree` is known.
    pub fn covers(&self, degree: usize) -> bool {
        (0..=degree).all(|d| self.unknown_cells(d).is_empty())
    }

    /// Largest d such that every cell with |λ| ≤ d is known.
    pub fn coverage_degree(&self) -> usize {
        let mut d = 0;
        while d < self.max_degree && self.unknown_cells(d + 1).is_empty() {
            d += 1;
        }
        d
    }

    /// Sub-table of entries with |λ| ≤ `degree`.
    pub fn truncate(&self, degree: usize) -> MultTable {
        MultTable {
            max_degree: degree.min(self.max_degree),
            entries: self
                .entries
                .iter()
                .filter(|((l, _), _)| l.size() <= degree)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// Checks every stored entry against the structural rules and the
    /// closed-form (1^m) rows.
    pub fn validate(&self) -> Result<()> {
        for ((lambda, rho), e) in &self.entries {
            let cell = || Cell::Mult(lambda.clone(), rho.clone());
            if let Some(v) = structural_value(lambda, rho) {
                if v != e.value {
                    return Err(Error::Invariant {
                        cell: cell(),
                        msg: format!("{} is {}, structure forces {}", e.provenance, e.value, v),
                    });
                }
            }
            if let Some(v) = column_row_value(lambda, rho) {
                if v != e.value {
                    return Err(Error::Conflict {
                        cell: cell(),
                        first: v,
                        first_source: Provenance::Builtin.to_string(),
                        second: e.value,
                        second_source: e.provenance.to_string(),
                    });
                }
            }
        }
        Ok(())
    }
}

/// Union of table fragments. Overlapping cells must agree; the merged table
/// must satisfy every structural invariant.
pub fn merge_and_validate<'a>(parts: impl IntoIterator<Item = &'a MultTable>) -> Result<MultTable> {
    let mut out = MultTable::empty();
    for part in parts {
        for ((lambda, rho), e) in &part.entries {
            out.insert(lambda.clone(), rho.clone(), e.value, e.provenance.clone())?;
        }
        out.max_degree = out.max_degree.max(part.max_degree);
    }
    out.validate()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn builtin_cells() {
        let t = MultTable::builtin(10);
        assert_eq!(t.query(&p("1^9"), &p("5")), Mult::Entry(1));
        assert_eq!(t.query(&p("1^9"), &p("4,1,1")), Mult::Entry(1));
        assert_eq!(t.query(&p("1^9"), &p("4,1")), Mult::Entry(0));
        assert_eq!(t.query(&p("3,1"), &p("3,1")), Mult::Entry(1));
        assert_eq!(t.query(&p("2,2"), &p("1")), Mult::StructuralZero);
        assert_eq!(t.query(&p("3,1"), &p("2,2")), Mult::StructuralZero);
        assert_eq!(t.query(&p("2,2"), &p("3,1,1")), Mult::StructuralZero);
        assert_eq!(t.query(&p("3,1"), &p("1,1")), Mult::StructuralZero);
        assert_eq!(t.query(&p("2,1"), &p("1,1")), Mult::Unknown);
        assert_eq!(t.query(&p("3,2"), &p("2,1")), Mult::Unknown);
        t.validate().unwrap();
    }

    #[test]
    fn column_row_of_degree_five() {
        let t = MultTable::builtin(6);
        let family = hook_family(5);
        assert_eq!(family, vec![p("1^5"), p("2,1,1"), p("3")]);
        assert_eq!(t.query(&p("1^5"), &p("2,1")), Mult::Entry(0));
        assert_eq!(t.query(&p("1^5"), &p("2,1,1")), Mult::Entry(1));
        assert_eq!(t.query(&p("1^5"), &p("3")), Mult::Entry(1));
    }

    #[test]
    fn merging() {
        let builtin = MultTable::builtin(9);
        assert_eq!(merge_and_validate([&MultTable::empty(), &builtin]).unwrap(), builtin);

        let mut agree = MultTable::empty();
        for rho in hook_family(9) {
            agree
                .insert(p("1^9"), rho, 1, Provenance::Dataset("gh".into()))
                .unwrap();
        }
        let merged = merge_and_validate([&builtin, &agree]).unwrap();
        assert_eq!(merged.query(&p("1^9"), &p("5")), Mult::Entry(1));

        let mut bad = MultTable::empty();
        bad.insert(p("1^9"), p("5"), 2, Provenance::Dataset("gh".into()))
            .unwrap();
        let err = merge_and_validate([&builtin, &bad]).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("mult[1,1,1,1,1,1,1,1,1 ; 5]"), "{}", msg);
        assert!(msg.contains("builtin") && msg.contains("dataset:gh"), "{}", msg);
    }

    #[test]
    fn structural_violations_are_rejected() {
        let mut t = MultTable::empty();
        t.insert(p("2,2"), p("1,1"), 1, Provenance::Dataset("x".into()))
            .unwrap();
        assert!(matches!(t.validate(), Err(Error::Invariant { .. })));

        let mut t = MultTable::empty();
        t.insert(p("3"), p("2,1"), 1, Provenance::Dataset("x".into())).unwrap();
        assert!(matches!(t.validate(), Err(Error::Invariant { .. })));
    }

    #[test]
    fn coverage() {
        let t = MultTable::builtin(4);
        assert!(t.covers(2));
        assert!(!t.covers(3));
        assert_eq!(t.coverage_degree(), 2);
        assert!(t.unknown_cells(3).contains(&Cell::Mult(p("2,1"), p("2"))));
        assert!(matches!(t.require(&p("2,1"), &p("2")), Err(Error::UnknownCell(_))));
    }
}
