//! Characters of Lie(n) and of the cyclic Lie module Lie((n)).
//!
//! `Lie((n))` is read off a multiplicity table through
//! ⟨Lie((n)), S_λ⟩ = (ωβS_λ)^{(2)}, and checked against `Lie(n − 1)` by
//! restriction. Nothing here derives the cyclic character independently.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Cell, Error, Result};
use crate::multdata::MultTable;
use crate::partition::{factorial, generate_partitions, Partition};
use crate::repring::{decompose, ClassFunction, VirtualRep};

/// A Lie-type S_n-module, stored as its class in the representation ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieRep {
    pub level: usize,
    pub rep: VirtualRep,
}

impl LieRep {
    pub fn dim(&self) -> BigInt {
        self.rep.dim()
    }
}

/// Möbius function by trial division.
pub fn mobius(mut d: usize) -> i64 {
    assert!(d >= 1);
    let mut sign = 1;
    let mut q = 2;
    while q * q <= d {
        if d.is_multiple_of(q) {
            d /= q;
            if d.is_multiple_of(q) {
                return 0;
            }
            sign = -sign;
        }
        q += 1;
    }
    if d > 1 {
        sign = -sign;
    }
    sign
}

/// Lie(n) = (1/n) Σ_{d | n} μ(d) p_d^{n/d}, expanded in Specht modules.
pub fn lie_rep(n: usize) -> Result<LieRep> {
    if n == 0 {
        return Err(Error::Precondition("Lie(n) needs n >= 1".into()));
    }
    let mut f = ClassFunction::zero(n);
    for d in (1..=n).filter(|&d| n.is_multiple_of(d)) {
        let mu = mobius(d);
        if mu == 0 {
            continue;
        }
        let p = ClassFunction::power_sum(&Partition::new(vec![d; n / d])?);
        f = &f + &p.scale(&BigRational::from_integer(mu.into()));
    }
    let f = f.scale(&BigRational::new(1.into(), n.into()));
    Ok(LieRep {
        level: n,
        rep: decompose(&f)?,
    })
}

/// Lie((n)) = Σ_{λ ⊢ n} (ωβS_λ)^{(2)} [λ].
pub fn cyclic_lie_from_table(t: &MultTable, n: usize) -> Result<LieRep> {
    if n < 3 {
        return Err(Error::Precondition("cyclic Lie reconstruction needs n >= 3".into()));
    }
    let two = Partition::row(2);
    let mut terms = Vec::new();
    for lambda in generate_partitions(n) {
        let v = t.require(&lambda, &two)?;
        terms.push((lambda, BigInt::from(v)));
    }
    Ok(LieRep {
        level: n,
        rep: VirtualRep::from_terms(n, terms)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CyclicOutcome {
    Pass,
    /// restrict(Lie((n))) − Lie(n−1), and whether the dimension was right.
    Fail {
        difference: VirtualRep,
        dim_ok: bool,
    },
    Unknown(Cell),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicCheck {
    pub n: usize,
    pub cyclic: Option<LieRep>,
    pub outcome: CyclicOutcome,
}

/// Checks restrict(Lie((n))) = Lie(n − 1) and dim Lie((n)) = (n − 2)!.
/// Missing data is reported, not thrown.
pub fn verify_cyclic_restriction(t: &MultTable, n: usize) -> Result<CyclicCheck> {
    let cyclic = match cyclic_lie_from_table(t, n) {
        Ok(c) => c,
        Err(Error::UnknownCell(cell)) => {
            return Ok(CyclicCheck {
                n,
                cyclic: None,
                outcome: CyclicOutcome::Unknown(cell),
            })
        }
        Err(e) => return Err(e),
    };
    let restricted = cyclic.rep.restrict()?;
    let expected = lie_rep(n - 1)?.rep;
    let difference = &restricted - &expected;
    let dim_ok = cyclic.dim() == factorial(n - 2);
    let outcome = if difference.is_zero() && dim_ok {
        CyclicOutcome::Pass
    } else {
        CyclicOutcome::Fail { difference, dim_ok }
    };
    Ok(CyclicCheck {
        n,
        cyclic: Some(cyclic),
        outcome,
    })
}
