//! The Euler-characteristic recursion under the concentration hypothesis.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::multdata::MultTable;
use crate::partition::{generate_partitions, Partition};

use super::complex::{build_row_complex, solve_with_history, ContradictionReport, RowComplex, Solution};
use super::table::{ExtEntry, ExtStatus, ExtTable};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    /// Record a contradiction, block whatever consumes it, keep going.
    #[default]
    Continue,
    /// Stop after the first contradiction.
    Strict,
}

#[derive(Clone, Debug)]
pub struct RecursionOutcome {
    pub max_degree: usize,
    pub table: ExtTable,
    /// In (|λ|, |λ| − |ν|, ν, λ) order, partitions canonical.
    pub reports: Vec<ContradictionReport>,
    pub halted: bool,
}

impl RecursionOutcome {
    pub fn first_report(&self) -> Option<&ContradictionReport> {
        self.reports.first()
    }

    pub fn report_for(&self, nu: &Partition, lambda: &Partition) -> Option<&ContradictionReport> {
        self.reports.iter().find(|r| &r.nu == nu && &r.lambda == lambda)
    }
}

enum Step {
    Solved(RowComplex, u64),
    Contradiction(RowComplex, Box<ContradictionReport>),
    Blocked,
}

/// Checks that every multiplicity through `degree` is known.
pub fn require_coverage(mult: &MultTable, degree: usize) -> Result<()> {
    for d in 0..=degree {
        if let Some(cell) = mult.unknown_cells(d).into_iter().next() {
            return Err(Error::UnknownCell(cell));
        }
    }
    Ok(())
}

/// Fills Ext^{m−n}(ν, λ) for 2 ≤ n < m ≤ `max_degree`, level by level.
/// Pairs within a level are independent and solved in parallel against the
/// table as committed by earlier levels; |ν| ≤ 1 needs no solving.
pub fn run_koszul_recursion(max_degree: usize, mult: &MultTable, mode: Mode) -> Result<RecursionOutcome> {
    require_coverage(mult, max_degree)?;
    let mut table = ExtTable::new(true);
    let mut reports = Vec::new();
    let mut halted = false;

    'outer: for m in 3..=max_degree {
        let lambdas = generate_partitions(m);
        for d in 1..=m - 2 {
            let pairs: Vec<(Partition, Partition)> = generate_partitions(m - d)
                .into_iter()
                .flat_map(|nu| lambdas.iter().map(move |l| (nu.clone(), l.clone())))
                .collect();
            let frozen = &table;
            let steps: Vec<Result<Step>> = pairs
                .par_iter()
                .map(|(nu, lambda)| {
                    let c = match build_row_complex(nu, lambda, frozen, mult) {
                        Ok(c) => c,
                        Err(Error::Blocked(_)) => return Ok(Step::Blocked),
                        Err(e) => return Err(e),
                    };
                    Ok(match solve_with_history(&c, frozen)? {
                        Solution::Value(x) => Step::Solved(c, x),
                        Solution::Contradiction(r) => Step::Contradiction(c, r),
                    })
                })
                .collect();

            for ((nu, lambda), step) in pairs.into_iter().zip(steps) {
                match step? {
                    Step::Solved(c, x) => {
                        let status = if reports.is_empty() {
                            ExtStatus::Computed
                        } else {
                            ExtStatus::Conditional
                        };
                        table.insert(nu.clone(), lambda.clone(), d, ExtEntry::known(x, status))?;
                        table.record_derivation((nu, lambda, d), c.derivation());
                    }
                    Step::Contradiction(c, r) => {
                        let entry = ExtEntry {
                            value: Some(r.forced_value),
                            status: ExtStatus::Contradiction,
                        };
                        table.insert(nu.clone(), lambda.clone(), d, entry)?;
                        table.record_derivation((nu, lambda, d), c.derivation());
                        reports.push(*r);
                        if mode == Mode::Strict {
                            halted = true;
                            break 'outer;
                        }
                    }
                    Step::Blocked => {
                        let entry = ExtEntry {
                            value: None,
                            status: ExtStatus::Blocked,
                        };
                        table.insert(nu, lambda, d, entry)?;
                    }
                }
            }
        }
    }
    Ok(RecursionOutcome {
        max_degree,
        table,
        reports,
        halted,
    })
}
