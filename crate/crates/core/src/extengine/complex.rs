//! One-row complexes and their Euler characteristic.
//!
//! Under concentration the spectral sequence for (αS_ν, ωβS_λ) collapses
//! to a single row
//!
//! ```text
//! 0 → t_n → t_{n+1} → … → t_{m−1} → Ext^{m−n}(ν, λ) → 0,
//! t_p = Σ_{ρ ⊢ p} mult(λ, ρ) · Ext^{p−n}(ν, ρ),
//! ```
//!
//! which must be acyclic for ν ≠ λ.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Cell, Error, Result};
use crate::multdata::{Mult, MultTable};
use crate::partition::{generate_partitions, Partition};

use super::table::{Derivation, ExtLookup, ExtTable};

/// One summand mult(λ, ρ) · Ext^{|ρ|−n}(ν, ρ) with nonzero multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermInput {
    pub rho: Partition,
    pub mult: u64,
    pub mult_source: String,
    pub ext: u64,
    pub ext_source: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub p: usize,
    pub dim: u64,
    pub inputs: Vec<TermInput>,
}

/// Terms at p = n … m − 1; the unknown slot at p = m is implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowComplex {
    pub nu: Partition,
    pub lambda: Partition,
    pub terms: Vec<Term>,
}

impl RowComplex {
    /// A complex given by its known dimensions only.
    pub fn from_dims(nu: Partition, lambda: Partition, dims: &[u64]) -> Result<Self> {
        let (n, m) = (nu.size(), lambda.size());
        if m <= n || dims.len() != m - n {
            return Err(Error::Precondition(format!(
                "a row complex for |ν| = {}, |λ| = {} needs {} known terms, got {}",
                n,
                m,
                m.saturating_sub(n),
                dims.len()
            )));
        }
        let terms = dims
            .iter()
            .enumerate()
            .map(|(i, &dim)| Term {
                p: n + i,
                dim,
                inputs: Vec::new(),
            })
            .collect();
        Ok(RowComplex { nu, lambda, terms })
    }

    /// Ext degree of the unknown slot.
    pub fn degree(&self) -> usize {
        self.lambda.size() - self.nu.size()
    }

    /// Number of terms with the unknown slot included.
    pub fn len(&self) -> usize {
        self.terms.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dims(&self) -> Vec<u64> {
        self.terms.iter().map(|t| t.dim).collect()
    }

    /// Alternating sum with `top` in the last slot.
    pub fn euler_characteristic(&self, top: i64) -> i128 {
        let mut s: i128 = 0;
        for (i, t) in self.terms.iter().enumerate() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            s += sign * t.dim as i128;
        }
        let sign = if self.terms.len().is_multiple_of(2) { 1 } else { -1 };
        s + sign * top as i128
    }

    /// Every cell consumed, in term order.
    pub fn consumed_cells(&self) -> Vec<(Cell, String)> {
        let n = self.nu.size();
        let mut out = Vec::new();
        for t in &self.terms {
            for inp in &t.inputs {
                out.push((
                    Cell::Mult(self.lambda.clone(), inp.rho.clone()),
                    inp.mult_source.clone(),
                ));
                out.push((
                    Cell::Ext(self.nu.clone(), inp.rho.clone(), inp.rho.size() - n),
                    inp.ext_source.clone(),
                ));
            }
        }
        out
    }

    pub(crate) fn derivation(&self) -> Derivation {
        let mut inputs = Vec::new();
        for (i, t) in self.terms.iter().enumerate() {
            for inp in &t.inputs {
                inputs.push((inp.rho.clone(), i, inp.mult));
            }
        }
        Derivation {
            len: self.len(),
            inputs,
        }
    }

    /// `[0, 0, 0, 2, 1, ?]`.
    pub fn render_dims(&self) -> String {
        let mut parts: Vec<String> = self.terms.iter().map(|t| t.dim.to_string()).collect();
        parts.push("?".into());
        format!("[{}]", parts.join(", "))
    }
}

fn lookup_source(l: ExtLookup) -> String {
    match l {
        ExtLookup::Forced(_) => "forced".into(),
        ExtLookup::HypothesisZero => "hypothesis".into(),
        ExtLookup::Stored(_, s) => s.to_string(),
        ExtLookup::Contradicted => "contradiction".into(),
        ExtLookup::Blocked => "blocked".into(),
        ExtLookup::Unknown => "unknown".into(),
    }
}

/// Builds the row complex for (ν, λ) from on-row Ext values of smaller
/// degree. A zero multiplicity skips its Ext cell entirely.
pub fn build_row_complex(nu: &Partition, lambda: &Partition, ext: &ExtTable, mult: &MultTable) -> Result<RowComplex> {
    let (n, m) = (nu.size(), lambda.size());
    if m <= n {
        return Err(Error::Precondition(format!(
            "row complex needs |λ| > |ν|, got {} and {}",
            m, n
        )));
    }
    let mut terms = Vec::with_capacity(m - n);
    for p in n..m {
        let mut dim: u64 = 0;
        let mut inputs = Vec::new();
        for rho in generate_partitions(p) {
            let q = mult.query(lambda, &rho);
            let mv = match q {
                Mult::Unknown => return Err(Error::UnknownCell(Cell::Mult(lambda.clone(), rho))),
                _ => q.value().unwrap_or(0),
            };
            if mv == 0 {
                continue;
            }
            let k = p - n;
            let look = ext.get(nu, &rho, k);
            let ev = match look {
                ExtLookup::Contradicted | ExtLookup::Blocked => {
                    return Err(Error::Blocked(Cell::Ext(nu.clone(), rho, k)))
                }
                ExtLookup::Unknown => return Err(Error::UnknownCell(Cell::Ext(nu.clone(), rho, k))),
                l => l.value().unwrap_or(0),
            };
            let prod = mv
                .checked_mul(ev)
                .and_then(|x| dim.checked_add(x))
                .ok_or_else(|| Error::Overflow(Cell::Ext(nu.clone(), lambda.clone(), m - n)))?;
            dim = prod;
            let mult_source = match mult.entry(lambda, &rho) {
                Some(e) => e.provenance.to_string(),
                None => "structural".into(),
            };
            inputs.push(TermInput {
                rho,
                mult: mv,
                mult_source,
                ext: ev,
                ext_source: lookup_source(look),
            });
        }
        terms.push(Term { p, dim, inputs });
    }
    Ok(RowComplex {
        nu: nu.clone(),
        lambda: lambda.clone(),
        terms,
    })
}

/// A failed acyclic complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContradictionReport {
    pub nu: Partition,
    pub lambda: Partition,
    pub term_dims: Vec<u64>,
    pub forced_value: i64,
    /// Groups Ext^k(ν, λ_i) at least one of which must be nonzero.
    pub blame_set: Vec<(Partition, Partition, usize)>,
}

impl ContradictionReport {
    pub fn degree(&self) -> usize {
        self.lambda.size() - self.nu.size()
    }

    pub fn headline(&self) -> String {
        format!(
            "no acyclic value for Ext^{}({} ; {}): forced {}",
            self.degree(),
            self.nu.display_compact(),
            self.lambda.display_compact(),
            self.forced_value
        )
    }

    /// The frozen text block.
    pub fn render(&self) -> String {
        let mut dims: Vec<String> = self.term_dims.iter().map(u64::to_string).collect();
        dims.push("?".into());
        let blame: Vec<String> = self
            .blame_set
            .iter()
            .map(|(n, l, k)| format!("Ext^{}({} ; {})", k, n.display_compact(), l.display_compact()))
            .collect();
        format!(
            "contradiction nu = {} ; lambda = {}\n  terms: [{}] for p = {}..{}\n  forced: Ext^{} = {}\n  blame: {}\n",
            self.nu.display_compact(),
            self.lambda.display_compact(),
            dims.join(", "),
            self.nu.size(),
            self.lambda.size(),
            self.degree(),
            self.forced_value,
            if blame.is_empty() {
                "(none)".to_string()
            } else {
                blame.join(", ")
            }
        )
    }
}

impl fmt::Display for ContradictionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Value(u64),
    Contradiction(Box<ContradictionReport>),
}

/// X = (−1)^L Σ_{i < L−1} (−1)^i t_i, the value that makes the alternating
/// sum vanish.
pub fn forced_top(c: &RowComplex) -> i128 {
    -c.euler_characteristic(0) * if c.terms.len().is_multiple_of(2) { 1 } else { -1 }
}

/// Solves for the top slot. Blame tracing uses only this complex; see
/// [`blame_set`] for the transitive version.
pub fn solve_acyclic(c: &RowComplex) -> Result<Solution> {
    solve_with_history(c, &ExtTable::new(true))
}

pub(crate) fn solve_with_history(c: &RowComplex, history: &ExtTable) -> Result<Solution> {
    if c.terms.is_empty() {
        return Err(Error::Precondition("row complex has no known terms".into()));
    }
    let x = forced_top(c);
    let cell = || Cell::Ext(c.nu.clone(), c.lambda.clone(), c.degree());
    if x < 0 {
        let forced_value = i64::try_from(x).map_err(|_| Error::Overflow(cell()))?;
        return Ok(Solution::Contradiction(Box::new(ContradictionReport {
            nu: c.nu.clone(),
            lambda: c.lambda.clone(),
            term_dims: c.dims(),
            forced_value,
            blame_set: blame_set(c, history),
        })));
    }
    Ok(Solution::Value(u64::try_from(x).map_err(|_| Error::Overflow(cell()))?))
}

/// Off-row groups a contradiction can be blamed on.
///
/// Each on-row cell E = Ext^k(ν, ρ) feeding the failed slot X has a signed
/// sensitivity ∂X/∂E, propagated through the derivations recorded in
/// `history`. A nonzero Ext^{k−1}(ν, ρ) would sit just below E on the
/// E₁-page and, through a differential, lower E's contribution; only cells
/// with positive sensitivity can therefore lift X. Groups whose vanishing
/// does not rest on the hypothesis (k − 1 ≤ 1, |ν| ≤ 2) are dropped.
pub fn blame_set(c: &RowComplex, history: &ExtTable) -> Vec<(Partition, Partition, usize)> {
    let nu = &c.nu;
    let n = nu.size();
    let mut sens: BTreeMap<Partition, i128> = BTreeMap::new();
    // largest partitions first, so every contribution lands before expansion
    let mut pending: BTreeMap<(Reverse<usize>, Partition), i128> = BTreeMap::new();

    sens.insert(c.lambda.clone(), 1);
    let spread = |pending: &mut BTreeMap<(Reverse<usize>, Partition), i128>,
                  s: i128,
                  len: usize,
                  inputs: &mut dyn Iterator<Item = (Partition, usize, u64)>| {
        for (rho, i, mult) in inputs {
            if rho.size() <= n {
                continue;
            }
            let sign = if (len + i).is_multiple_of(2) { 1 } else { -1 };
            *pending.entry((Reverse(rho.size()), rho)).or_default() += s * sign * mult as i128;
        }
    };
    let top = c.derivation();
    spread(&mut pending, 1, top.len, &mut top.inputs.into_iter());
    while let Some(((_, rho), s)) = pending.pop_first() {
        *sens.entry(rho.clone()).or_default() += s;
        if s == 0 {
            continue;
        }
        let k = rho.size() - n;
        if let Some(d) = history.derivation(nu, &rho, k) {
            spread(&mut pending, s, d.len, &mut d.inputs.iter().cloned());
        }
    }

    let mut out: Vec<(Partition, Partition, usize)> = sens
        .into_iter()
        .filter(|(rho, s)| *s > 0 && n >= 3 && rho.size() - n >= 3)
        .map(|(rho, _)| {
            let k = rho.size() - n - 1;
            (nu.clone(), rho, k)
        })
        .collect();
    out.sort_by(|a, b| (a.2, Reverse(&a.1)).cmp(&(b.2, Reverse(&b.1))));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extengine::table::{ExtEntry, ExtStatus};
    use proptest::prelude::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn solves_short_complexes() {
        let c = RowComplex::from_dims(p("3,1"), p("3,2"), &[4]).unwrap();
        assert_eq!(solve_acyclic(&c).unwrap(), Solution::Value(4));
        let c = RowComplex::from_dims(p("2,1"), p("3,2"), &[1, 3]).unwrap();
        assert_eq!(solve_acyclic(&c).unwrap(), Solution::Value(2));
        let c = RowComplex::from_dims(p("2,1"), p("3,2"), &[3, 1]).unwrap();
        match solve_acyclic(&c).unwrap() {
            Solution::Contradiction(r) => assert_eq!(r.forced_value, -2),
            other => panic!("{:?}", other),
        }
        assert!(RowComplex::from_dims(p("2,1"), p("3,2"), &[1]).is_err());
        assert!(RowComplex::from_dims(p("3,2"), p("3,2"), &[]).is_err());
    }

    #[test]
    fn koszul_failure_dims() {
        let c = RowComplex::from_dims(p("4"), p("1^9"), &[0, 0, 0, 2, 1]).unwrap();
        assert_eq!(c.render_dims(), "[0, 0, 0, 2, 1, ?]");
        match solve_acyclic(&c).unwrap() {
            Solution::Contradiction(r) => {
                assert_eq!(r.forced_value, -1);
                assert_eq!(r.blame_set, vec![(p("4"), p("1^9"), 4)]);
                assert_eq!(
                    r.render(),
                    "contradiction nu = 4 ; lambda = 1^9\n  terms: [0, 0, 0, 2, 1, ?] for p = 4..9\n  forced: Ext^5 = -1\n  blame: Ext^4(4 ; 1^9)\n"
                );
            }
            other => panic!("{:?}", other),
        }
    }

    fn koszul_fixture() -> (ExtTable, MultTable) {
        let mut ext = ExtTable::new(true);
        for (l, k, v) in [("5", 1, 0), ("4,1,1", 2, 0), ("3,1^4", 3, 2), ("2,1^6", 4, 1)] {
            ext.insert(p("4"), p(l), k, ExtEntry::known(v, ExtStatus::Fixture))
                .unwrap();
        }
        (ext, MultTable::builtin(9))
    }

    #[test]
    fn koszul_failure_through_the_builder() {
        let (ext, mult) = koszul_fixture();
        let c = build_row_complex(&p("4"), &p("1^9"), &ext, &mult).unwrap();
        assert_eq!(c.dims(), vec![0, 0, 0, 2, 1]);
        assert_eq!(c.terms[3].inputs[0].rho, p("3,1^4"));
        assert_eq!(c.consumed_cells().len(), 8);
        match solve_acyclic(&c).unwrap() {
            Solution::Contradiction(r) => {
                assert_eq!(r.forced_value, -1);
                assert_eq!(r.blame_set, vec![(p("4"), p("2,1^6"), 3), (p("4"), p("1^9"), 4)]);
            }
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn builder_errors() {
        let (ext, mult) = koszul_fixture();
        assert!(matches!(
            build_row_complex(&p("4"), &p("2,1^7"), &ext, &mult),
            Err(Error::UnknownCell(Cell::Mult(..)))
        ));
        let (mut ext, _) = koszul_fixture();
        ext.insert(
            p("4"),
            p("1^9"),
            5,
            ExtEntry {
                value: Some(-1),
                status: ExtStatus::Contradiction,
            },
        )
        .unwrap();
        // a row for (2,1^8) that sees only the contradicted cell
        let lambda = p("2,1^8");
        let mut mult = MultTable::builtin(10);
        for r in 4..10 {
            for rho in generate_partitions(r) {
                let v = u64::from(rho == p("1^9"));
                mult.insert(lambda.clone(), rho, v, crate::multdata::Provenance::Fixture("t".into()))
                    .unwrap();
            }
        }
        assert!(matches!(
            build_row_complex(&p("4"), &lambda, &ext, &mult),
            Err(Error::Blocked(Cell::Ext(_, ref l, 5))) if *l == p("1^9")
        ));
        assert!(build_row_complex(&p("4"), &p("4"), &ext, &mult).is_err());

        let mut e = ExtTable::new(true);
        e.insert(p("4"), p("5"), 1, ExtEntry::known(0, ExtStatus::Fixture))
            .unwrap();
        e.insert(p("4"), p("4,1,1"), 2, ExtEntry::known(0, ExtStatus::Fixture))
            .unwrap();
        assert!(matches!(
            build_row_complex(&p("4"), &p("1^9"), &e, &MultTable::builtin(9)),
            Err(Error::UnknownCell(Cell::Ext(..)))
        ));
    }

    #[test]
    fn two_term_complex_is_the_multiplicity() {
        let mut mult = MultTable::builtin(3);
        for (r, v) in [("2", 3), ("1,1", 0)] {
            mult.insert(p("2,1"), p(r), v, crate::multdata::Provenance::Fixture("t".into()))
                .unwrap();
        }
        let c = build_row_complex(&p("2"), &p("2,1"), &ExtTable::new(true), &mult).unwrap();
        assert_eq!(c.dims(), vec![3]);
        assert_eq!(solve_acyclic(&c).unwrap(), Solution::Value(3));
    }

    #[test]
    fn transitive_blame() {
        // X depends on E = Ext^3(3 ; ρ) with sensitivity −1 at position 1
        // of a three-term complex; E itself was solved from a complex in
        // which Ext^2(3 ; σ) sat at position 1 with multiplicity 2.
        let nu = p("3");
        let (rho, sigma) = (p("4,2"), p("5"));
        let lambda = p("4,3");
        let mut history = ExtTable::new(true);
        history.record_derivation(
            (nu.clone(), rho.clone(), 3),
            Derivation {
                len: 3,
                inputs: vec![(sigma.clone(), 1, 2)],
            },
        );
        let c = RowComplex {
            nu: nu.clone(),
            lambda: lambda.clone(),
            terms: vec![
                Term {
                    p: 3,
                    dim: 0,
                    inputs: vec![],
                },
                Term {
                    p: 4,
                    dim: 0,
                    inputs: vec![],
                },
                Term {
                    p: 5,
                    dim: 0,
                    inputs: vec![],
                },
                Term {
                    p: 6,
                    dim: 5,
                    inputs: vec![TermInput {
                        rho: rho.clone(),
                        mult: 1,
                        mult_source: "t".into(),
                        ext: 5,
                        ext_source: "t".into(),
                    }],
                },
            ],
        };
        // len 5, position 3: sign (−1)^8 = +1 for ρ; then σ at position 1 of
        // a 3-term complex: (−1)^4 · 2 = +2
        let b = blame_set(&c, &history);
        assert_eq!(b, vec![(nu.clone(), rho, 2), (nu, lambda, 3)]);
    }

    proptest! {
        #[test]
        fn solution_makes_complex_acyclic(dims in proptest::collection::vec(0u64..1000, 1..8)) {
            let n = 2;
            let lambda = Partition::row(n + dims.len());
            let c = RowComplex::from_dims(Partition::row(n), lambda, &dims).unwrap();
            match solve_acyclic(&c).unwrap() {
                Solution::Value(x) => prop_assert_eq!(c.euler_characteristic(x as i64), 0),
                Solution::Contradiction(r) => {
                    prop_assert!(r.forced_value < 0);
                    prop_assert_eq!(c.euler_characteristic(r.forced_value), 0);
                }
            }
        }
    }
}
