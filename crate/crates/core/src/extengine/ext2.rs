//! Ext² between tensor powers, and equivariant assembly in general.
//!
//! By Schur–Weyl duality Ext^k(a⊗n, a⊗m) = ⊕ Ext^k(αS_ν, αS_λ) ⊗ (S_ν ⊠ S_λ)
//! over ν ⊢ n, λ ⊢ m, so a table of dimensions determines a [`BiRep`].

use crate::error::{Error, Result};
use crate::multdata::MultTable;
use crate::partition::generate_partitions;
use crate::repring::BiRep;

use super::complex::{build_row_complex, solve_acyclic, Solution};
use super::table::{forced_value, ExtEntry, ExtStatus, ExtTable};

#[derive(Clone, Debug)]
pub struct Ext2 {
    pub n: usize,
    /// Ext²(ν, λ) for ν ⊢ n − 2, λ ⊢ n, zeros included.
    pub table: ExtTable,
    pub birep: BiRep,
}

/// Ext²(a⊗(n−2), a⊗n) from the three-term complexes
/// mult(λ, ν) → Σ_ρ mult(λ, ρ) mult(ρ, ν) → Ext²(ν, λ).
pub fn compute_ext2_table(n: usize, mult: &MultTable) -> Result<Ext2> {
    if n < 2 {
        return Err(Error::Precondition(format!("Ext² needs n >= 2, got {}", n)));
    }
    let nus = generate_partitions(n - 2);
    // Ext¹(ν, ρ) = mult(ρ, ν) for ρ ⊢ n − 1
    let mut ext1 = ExtTable::new(true);
    for nu in &nus {
        for rho in generate_partitions(n - 1) {
            if forced_value(nu, &rho, 1).is_none() {
                let v = mult.require(&rho, nu)?;
                ext1.insert(nu.clone(), rho, 1, ExtEntry::known(v, ExtStatus::Computed))?;
            }
        }
    }
    let mut table = ExtTable::new(true);
    let mut birep = BiRep::zero(n - 2, n);
    for nu in &nus {
        for lambda in generate_partitions(n) {
            let c = build_row_complex(nu, &lambda, &ext1, mult)?;
            match solve_acyclic(&c)? {
                Solution::Value(x) => {
                    if forced_value(nu, &lambda, 2).is_none() {
                        table.insert(nu.clone(), lambda.clone(), 2, ExtEntry::known(x, ExtStatus::Computed))?;
                    }
                    birep.add_term(nu.clone(), lambda, x)?;
                }
                Solution::Contradiction(r) => return Err(Error::Contradiction(r)),
            }
        }
    }
    Ok(Ext2 { n, table, birep })
}

/// Σ_{ν ⊢ n, λ ⊢ m} Ext^k(ν, λ) (S_ν ⊠ S_λ).
pub fn assemble_equivariant(n: usize, m: usize, ext: &ExtTable, k: usize) -> Result<BiRep> {
    let mut out = BiRep::zero(n, m);
    for nu in generate_partitions(n) {
        for lambda in generate_partitions(m) {
            let v = ext.require(&nu, &lambda, k)?;
            out.add_term(nu.clone(), lambda, v)?;
        }
    }
    Ok(out)
}

/// Ext¹(a⊗(m−1), a⊗m) straight from the multiplicities.
pub fn ext1_from_mult(m: usize, mult: &MultTable) -> Result<BiRep> {
    if m == 0 {
        return Err(Error::Precondition("Ext¹ needs m >= 1".into()));
    }
    let mut out = BiRep::zero(m - 1, m);
    for nu in generate_partitions(m - 1) {
        for lambda in generate_partitions(m) {
            let v = if forced_value(&nu, &lambda, 1) == Some(0) {
                0
            } else {
                mult.require(&lambda, &nu)?
            };
            out.add_term(nu.clone(), lambda, v)?;
        }
    }
    Ok(out)
}

/// Σ_ν (S_ν ⊠ S_ν), the Ext⁰ of a tensor power with itself.
pub fn diagonal_birep(n: usize) -> BiRep {
    let mut out = BiRep::zero(n, n);
    for nu in generate_partitions(n) {
        out.add_term(nu.clone(), nu, 1).expect("levels match");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multdata::Provenance;
    use crate::partition::Partition;
    use num_bigint::BigInt;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn degree_three() -> MultTable {
        let mut t = MultTable::builtin(5);
        for l in ["3", "2,1"] {
            for r in ["2", "1,1"] {
                t.insert(p(l), p(r), 0, Provenance::Fixture("t".into())).unwrap();
            }
        }
        t
    }

    #[test]
    fn low_degrees_vanish() {
        let t = degree_three();
        for n in 2..=3 {
            let e = compute_ext2_table(n, &t).unwrap();
            assert!(e.birep.is_zero());
            assert_eq!(e.birep.render(), "0");
            assert_eq!(e.birep.dim(), BigInt::from(0));
        }
        assert!(matches!(compute_ext2_table(4, &t), Err(Error::UnknownCell(_))));
        assert!(compute_ext2_table(1, &t).is_err());
    }

    #[test]
    fn synthetic_ext2_and_negative_case() {
        // n = 4 over ν ⊢ 2 with made-up data
        let mut t = degree_three();
        let fx = || Provenance::Fixture("t".into());
        for l in generate_partitions(4) {
            if l == Partition::column(4) {
                continue;
            }
            for r in 2..4 {
                for rho in generate_partitions(r) {
                    if rho == p("1,1") {
                        continue;
                    }
                    let v = u64::from(l == p("3,1") && (rho == p("1^3") || rho == p("2,1")));
                    t.insert(l.clone(), rho, v, fx()).unwrap();
                }
            }
        }
        // Ext²((2) ; (3,1)) = mult((3,1),(1^3)) mult((1^3),(2)) − mult((3,1),(2)) = 1
        let e = compute_ext2_table(4, &t).unwrap();
        assert_eq!(e.birep.render(), "(S(2) ⊠ S(3,1))");
        assert_eq!(e.birep.dim(), BigInt::from(3));
        assert_eq!(e.table.require(&p("2"), &p("3,1"), 2).unwrap(), 1);

        let mut bad = MultTable::empty();
        for (l, r, en) in t.entries() {
            let v = if *l == p("3,1") && *r == p("2") { 2 } else { en.value };
            bad.insert(l.clone(), r.clone(), v, en.provenance.clone()).unwrap();
        }
        match compute_ext2_table(4, &bad) {
            Err(Error::Contradiction(r)) => {
                assert_eq!(r.forced_value, -1);
                assert_eq!(r.term_dims, vec![2, 1]);
            }
            other => panic!("{:?}", other.map(|e| e.birep)),
        }
    }

    #[test]
    fn assembly() {
        let mut ext = ExtTable::new(true);
        assert_eq!(assemble_equivariant(3, 3, &ext, 0).unwrap(), diagonal_birep(3));
        assert_eq!(diagonal_birep(2).render(), "(S(1^2) ⊠ S(1^2)) + (S(2) ⊠ S(2))");
        assert!(assemble_equivariant(2, 4, &ext, 2).is_err());
        for l in generate_partitions(4) {
            for nu in generate_partitions(2) {
                let v = u64::from(nu == p("2") && l == p("2,2"));
                ext.insert(nu, l.clone(), 2, ExtEntry::known(v, ExtStatus::Fixture))
                    .unwrap();
            }
        }
        let b = assemble_equivariant(2, 4, &ext, 2).unwrap();
        assert_eq!(b.render(), "(S(2) ⊠ S(2^2))");
        assert_eq!(b.dim(), BigInt::from(2));
    }

    #[test]
    fn ext1_rows() {
        let b = ext1_from_mult(3, &degree_three()).unwrap();
        assert_eq!(b.render(), "(S(2) ⊠ S(1^3))");
        assert_eq!(b.coeff(&p("2"), &p("1^3")), BigInt::from(1));
    }
}
