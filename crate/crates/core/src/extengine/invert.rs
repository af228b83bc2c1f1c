//! Recovering multiplicities from Ext groups.
//!
//! Read backwards, the row complex for (ν, λ) has mult(λ, ν) as its only
//! unknown once the multiplicities mult(λ, ρ) with |ν| < |ρ| < |λ| are in
//! hand, so a recursion on |λ| − |ν| solves for it.

use crate::error::{Cell, Error, Result};
use crate::multdata::{MultTable, Provenance};
use crate::partition::generate_partitions;

use super::table::ExtTable;

/// Multiplicities mult(λ, ν) for |ν| ≤ |λ| ≤ `max_degree`, solved from
/// on-row Ext values. Off-row cells are never read.
pub fn invert_for_multiplicities(ext: &ExtTable, max_degree: usize) -> Result<MultTable> {
    let mut out = MultTable::empty();
    for m in 0..=max_degree {
        for lambda in generate_partitions(m) {
            out.insert(lambda.clone(), lambda.clone(), 1, Provenance::Derived)?;
            for d in 1..=m {
                let n = m - d;
                for nu in generate_partitions(n) {
                    // Σ_{i=0}^{d} (−1)^i t_i = 0 with t_0 = mult(λ, ν)
                    let mut rest: i128 = 0;
                    for i in 1..d {
                        let mut t: i128 = 0;
                        for rho in generate_partitions(n + i) {
                            let mv = out.require(&lambda, &rho)?;
                            if mv == 0 {
                                continue;
                            }
                            t += mv as i128 * ext.require(&nu, &rho, i)? as i128;
                        }
                        rest += if i % 2 == 0 { t } else { -t };
                    }
                    let top = ext.require(&nu, &lambda, d)? as i128;
                    rest += if d % 2 == 0 { top } else { -top };
                    let value = -rest;
                    if value < 0 {
                        return Err(Error::Negative {
                            cell: Cell::Mult(lambda.clone(), nu.clone()),
                            value: value.to_string(),
                        });
                    }
                    let v =
                        u64::try_from(value).map_err(|_| Error::Overflow(Cell::Mult(lambda.clone(), nu.clone())))?;
                    out.insert(lambda.clone(), nu, v, Provenance::Derived)?;
                }
            }
        }
    }
    out.validate()?;
    Ok(out)
}

/// Cells with |λ| ≤ `degree` on which the two tables give different known
/// answers, or which only one of them knows.
pub fn compare_tables(a: &MultTable, b: &MultTable, degree: usize) -> Vec<Cell> {
    let mut out = Vec::new();
    for m in 0..=degree {
        for lambda in generate_partitions(m) {
            for r in 0..=m {
                for rho in generate_partitions(r) {
                    if a.query(&lambda, &rho).value() != b.query(&lambda, &rho).value() {
                        out.push(Cell::Mult(lambda.clone(), rho));
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extengine::recursion::{run_koszul_recursion, Mode};
    use crate::extengine::table::{ExtEntry, ExtStatus};
    use crate::partition::Partition;
    use proptest::prelude::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn degree_three() -> MultTable {
        let mut t = MultTable::builtin(3);
        for l in ["3", "2,1"] {
            for r in ["2", "1,1"] {
                t.insert(p(l), p(r), 0, Provenance::Fixture("t".into())).unwrap();
            }
        }
        t
    }

    #[test]
    fn diagonal_and_two_term_cells() {
        let ext = run_koszul_recursion(3, &degree_three(), Mode::Continue).unwrap().table;
        let inv = invert_for_multiplicities(&ext, 3).unwrap();
        assert_eq!(inv.query(&p("2,1"), &p("2,1")).value(), Some(1));
        assert_eq!(inv.query(&p("1^3"), &p("2")).value(), Some(1));
        assert!(compare_tables(&inv, &degree_three(), 3).is_empty());
    }

    #[test]
    fn inconsistent_input() {
        let mut ext = ExtTable::new(true);
        for nu in generate_partitions(2) {
            for l in generate_partitions(3) {
                ext.insert(nu.clone(), l, 1, ExtEntry::known(0, ExtStatus::Fixture))
                    .unwrap();
            }
            for l in generate_partitions(4) {
                let v = u64::from(nu == p("2") && l == p("2,1,1"));
                ext.insert(nu.clone(), l, 2, ExtEntry::known(v, ExtStatus::Fixture))
                    .unwrap();
            }
        }
        for nu in generate_partitions(3) {
            for l in generate_partitions(4) {
                let v = u64::from(nu == p("1^3") && l == p("2,1,1"));
                ext.insert(nu.clone(), l, 1, ExtEntry::known(v, ExtStatus::Fixture))
                    .unwrap();
            }
        }
        // mult((2,1,1),(2)) − 0 + Ext²((2);(2,1,1)) = 0 forces −1
        match invert_for_multiplicities(&ext, 4) {
            Err(Error::Negative { cell, value }) => {
                assert_eq!(cell, Cell::Mult(p("2,1,1"), p("2")));
                assert_eq!(value, "-1");
            }
            other => panic!("{:?}", other.map(|t| t.len())),
        }
        assert!(matches!(
            invert_for_multiplicities(&ExtTable::new(true), 3),
            Err(Error::UnknownCell(_))
        ));
    }

    /// Random data over the builtin skeleton through `degree`.
    fn arb_table(degree: usize) -> impl Strategy<Value = MultTable> {
        let mut cells = Vec::new();
        let base = MultTable::builtin(degree);
        for m in 3..=degree {
            for lambda in generate_partitions(m) {
                for r in 2..m {
                    for rho in generate_partitions(r) {
                        if !base.is_known(&lambda, &rho) {
                            cells.push((lambda.clone(), rho));
                        }
                    }
                }
            }
        }
        proptest::collection::vec(0u64..3, cells.len()).prop_map(move |vals| {
            let mut t = base.clone();
            for ((l, r), v) in cells.iter().zip(vals) {
                t.insert(l.clone(), r.clone(), v, Provenance::Fixture("rand".into()))
                    .unwrap();
            }
            t
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn inversion_undoes_the_recursion(t in arb_table(5)) {
            let out = run_koszul_recursion(5, &t, Mode::Continue).unwrap();
            // degrees below the first contradiction are clean
            let clean = out.first_report().map_or(5, |r| r.lambda.size() - 1);
            let inv = invert_for_multiplicities(&out.table, clean).unwrap();
            prop_assert!(compare_tables(&inv, &t, clean).is_empty());
            for r in &out.reports {
                prop_assert!(r.forced_value < 0);
            }
        }

        #[test]
        fn solved_complexes_are_acyclic(t in arb_table(5)) {
            let out = run_koszul_recursion(5, &t, Mode::Continue).unwrap();
            for ((nu, lambda, k), e) in out.table.entries() {
                prop_assert_eq!(*k, lambda.size() - nu.size());
                match e.status {
                    ExtStatus::Computed | ExtStatus::Conditional => {
                        let c = crate::extengine::build_row_complex(nu, lambda, &out.table, &t).unwrap();
                        prop_assert_eq!(c.euler_characteristic(e.value.unwrap()), 0);
                    }
                    ExtStatus::Contradiction => prop_assert!(e.value.unwrap() < 0),
                    _ => {}
                }
            }
        }
    }
}
