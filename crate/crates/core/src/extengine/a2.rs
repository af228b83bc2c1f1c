//! Vanishing of Ext*(a⊗2, a⊗n) for n ≥ 4.
//!
//! For ν = (1,1) every E₁ term off the last column needs mult(λ, (1,1)),
//! which must vanish. For ν = (2) the only possible differential is
//! mult(λ, (2)) → mult(λ, (1^3)) · Ext¹((2), (1^3)), an isomorphism when the
//! two multiplicities agree. Both conditions are checked row by row.

use std::fmt;

use crate::error::{Cell, Result};
use crate::multdata::MultTable;
use crate::partition::{generate_partitions, Partition};
use crate::repring::BiRep;

use super::ext2::{diagonal_birep, ext1_from_mult};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum A2Outcome {
    Pass,
    Fail { lhs: u64, rhs: u64 },
    Unknown(Cell),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Obligation {
    /// mult(λ, (1,1)) = 0.
    ColumnVanishes,
    /// mult(λ, (2)) = mult(λ, (1,1,1)).
    TwoMatchesThree,
}

impl fmt::Display for Obligation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Obligation::ColumnVanishes => "mult(lambda,(1,1)) = 0",
            Obligation::TwoMatchesThree => "mult(lambda,(2)) = mult(lambda,(1,1,1))",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct A2Check {
    pub lambda: Partition,
    pub obligation: Obligation,
    pub outcome: A2Outcome,
}

#[derive(Clone, Debug)]
pub struct A2Report {
    pub max_degree: usize,
    pub checks: Vec<A2Check>,
    pub ext0: BiRep,
    /// `None` when degree-3 multiplicities are missing.
    pub ext1: Option<BiRep>,
}

/// Ext⁰(a⊗2, a⊗2) = S(1,1) ⊠ S(1,1) + S(2) ⊠ S(2).
pub fn expected_ext0() -> BiRep {
    let mut b = BiRep::zero(2, 2);
    b.add_term(Partition::column(2), Partition::column(2), 1)
        .expect("levels");
    b.add_term(Partition::row(2), Partition::row(2), 1).expect("levels");
    b
}

/// Ext¹(a⊗2, a⊗3) = S(2) ⊠ S(1,1,1).
pub fn expected_ext1() -> BiRep {
    let mut b = BiRep::zero(2, 3);
    b.add_term(Partition::row(2), Partition::column(3), 1).expect("levels");
    b
}

impl A2Report {
    pub fn failures(&self) -> impl Iterator<Item = &A2Check> {
        self.checks
            .iter()
            .filter(|c| matches!(c.outcome, A2Outcome::Fail { .. }))
    }

    pub fn unknowns(&self) -> impl Iterator<Item = &A2Check> {
        self.checks
            .iter()
            .filter(|c| matches!(c.outcome, A2Outcome::Unknown(_)))
    }

    /// True when degree `n` has checks and all of them pass.
    pub fn degree_passes(&self, n: usize) -> bool {
        let mut any = false;
        for c in self.checks.iter().filter(|c| c.lambda.size() == n) {
            any = true;
            if c.outcome != A2Outcome::Pass {
                return false;
            }
        }
        any
    }

    pub fn low_degree_ok(&self) -> bool {
        self.ext0 == expected_ext0() && self.ext1.as_ref() == Some(&expected_ext1())
    }

    pub fn passed(&self) -> bool {
        self.low_degree_ok() && self.checks.iter().all(|c| c.outcome == A2Outcome::Pass)
    }
}

fn check(t: &MultTable, lambda: &Partition, a: &Partition, b: Option<&Partition>) -> A2Outcome {
    let get = |rho: &Partition| t.require(lambda, rho);
    let lhs = match get(a) {
        Ok(v) => v,
        Err(_) => return A2Outcome::Unknown(Cell::Mult(lambda.clone(), a.clone())),
    };
    let rhs = match b {
        None => 0,
        Some(b) => match get(b) {
            Ok(v) => v,
            Err(_) => return A2Outcome::Unknown(Cell::Mult(lambda.clone(), b.clone())),
        },
    };
    if lhs == rhs {
        A2Outcome::Pass
    } else {
        A2Outcome::Fail { lhs, rhs }
    }
}

/// Runs both obligations for 4 ≤ |λ| ≤ `max_degree`. Missing cells are
/// reported as unknown, never as passing.
pub fn verify_a2_vanishing(mult: &MultTable, max_degree: usize) -> Result<A2Report> {
    let (two, col2, col3) = (Partition::row(2), Partition::column(2), Partition::column(3));
    let mut checks = Vec::new();
    for n in 4..=max_degree {
        for lambda in generate_partitions(n) {
            checks.push(A2Check {
                lambda: lambda.clone(),
                obligation: Obligation::ColumnVanishes,
                outcome: check(mult, &lambda, &col2, None),
            });
            checks.push(A2Check {
                outcome: check(mult, &lambda, &two, Some(&col3)),
                lambda,
                obligation: Obligation::TwoMatchesThree,
            });
        }
    }
    Ok(A2Report {
        max_degree,
        checks,
        ext0: diagonal_birep(2),
        ext1: ext1_from_mult(3, mult).ok(),
    })
}
