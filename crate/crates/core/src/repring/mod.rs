//! The representation ring of the symmetric groups over Q.
//!
//! [`VirtualRep`] is an integer combination of Specht modules [λ] at a fixed
//! level n; [`BiRep`] is the same for S_n × S_m, with basis S_ν ⊠ S_λ.

mod character;
mod lr;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::partition::{generate_partitions, Partition};

pub use character::{character, character_value, decompose, group_order, inner_product, ClassFunction};
pub use lr::lr_coefficient;

/// An element Σ c_λ [λ] of the representation ring of S_n. Zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VirtualRep {
    level: usize,
    coeffs: BTreeMap<Partition, BigInt>,
}

impl VirtualRep {
    pub fn zero(level: usize) -> Self {
        VirtualRep {
            level,
            coeffs: BTreeMap::new(),
        }
    }

    /// The class [λ] of a single Specht module.
    pub fn specht(lambda: Partition) -> Self {
        let mut v = Self::zero(lambda.size());
        v.add_term(lambda, BigInt::one());
        v
    }

    pub fn from_terms<I, C>(level: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Partition, C)>,
        C: Into<BigInt>,
    {
        let mut v = Self::zero(level);
        for (lambda, c) in terms {
            if lambda.size() != level {
                return Err(Error::LevelMismatch(level, lambda.size()));
            }
            v.add_term(lambda, c.into());
        }
        Ok(v)
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, lambda: &Partition) -> BigInt {
        self.coeffs.get(lambda).cloned().unwrap_or_default()
    }

    /// Nonzero terms in canonical (reverse lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &BigInt)> {
        self.coeffs.iter().rev()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    pub(crate) fn add_term(&mut self, lambda: Partition, c: BigInt) {
        debug_assert_eq!(lambda.size(), self.level);
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(lambda).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.retain(|_, c| !c.is_zero());
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero(self.level);
        for (l, v) in &self.coeffs {
            out.add_term(l.clone(), v * c);
        }
        out
    }

    /// Σ c_λ f^λ.
    pub fn dim(&self) -> BigInt {
        self.coeffs.iter().map(|(l, c)| c * l.hook_dimension()).sum()
    }

    /// The standard pairing Σ a_λ b_λ, which equals the character inner
    /// product of the underlying class functions.
    pub fn pairing(&self, other: &Self) -> Result<BigInt> {
        if self.level != other.level {
            return Err(Error::LevelMismatch(self.level, other.level));
        }
        Ok(self
            .coeffs
            .iter()
            .filter_map(|(l, a)| other.coeffs.get(l).map(|b| a * b))
            .sum())
    }

    pub fn class_function(&self) -> ClassFunction {
        let mut f = ClassFunction::zero(self.level);
        for (l, c) in &self.coeffs {
            f = &f + &character(l).scale(&BigRational::from_integer(c.clone()));
        }
        f
    }

    /// Restriction from S_n to S_{n−1}: [λ] ↦ Σ [λ − corner].
    pub fn restrict(&self) -> Result<Self> {
        if self.level == 0 {
            return Err(Error::Precondition("cannot restrict a level-0 representation".into()));
        }
        let mut out = Self::zero(self.level - 1);
        for (l, c) in &self.coeffs {
            for mu in l.remove_box_partitions()? {
                out.add_term(mu, c.clone());
            }
        }
        Ok(out)
    }

    /// Induction product [μ]·[ν] = Σ c^λ_{μν} [λ], extended bilinearly.
    pub fn lr_product(&self, other: &Self) -> Self {
        let level = self.level + other.level;
        let targets = generate_partitions(level);
        let mut out = Self::zero(level);
        for (mu, a) in &self.coeffs {
            for (nu, b) in &other.coeffs {
                let ab = a * b;
                for lambda in &targets {
                    let c = lr_coefficient(lambda, mu, nu);
                    if c != 0 {
                        out.add_term(lambda.clone(), &ab * c);
                    }
                }
            }
        }
        out
    }
}

impl Add for &VirtualRep {
    type Output = VirtualRep;
    fn add(self, rhs: Self) -> VirtualRep {
        assert_eq!(self.level, rhs.level, "level mismatch in VirtualRep sum");
        let mut out = self.clone();
        for (l, c) in &rhs.coeffs {
            out.add_term(l.clone(), c.clone());
        }
        out
    }
}

impl Sub for &VirtualRep {
    type Output = VirtualRep;
    fn sub(self, rhs: Self) -> VirtualRep {
        self + &(-rhs)
    }
}

impl Neg for &VirtualRep {
    type Output = VirtualRep;
    fn neg(self) -> VirtualRep {
        self.scale(&-BigInt::one())
    }
}

impl fmt::Display for VirtualRep {
    /// `coeff*partition` terms joined by ` + `; `0` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (l, c)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}*{}", c, l)?;
        }
        Ok(())
    }
}

impl FromStr for VirtualRep {
    type Err = Error;

    /// Inverse of `Display`. The level is taken from the first term, so the
    /// zero element parses as level 0.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" || s.is_empty() {
            return Ok(VirtualRep::zero(0));
        }
        let mut terms = Vec::new();
        for term in s.split(" + ") {
            let (c, l) = term
                .trim()
                .split_once('*')
                .ok_or_else(|| Error::parse("virtual representation", s))?;
            let c: BigInt = c.trim().parse().map_err(|_| Error::parse("coefficient", c))?;
            terms.push((l.parse::<Partition>()?, c));
        }
        let level = terms[0].0.size();
        VirtualRep::from_terms(level, terms)
    }
}

/// Σ c_{νλ} (S_ν ⊠ S_λ) for S_n × S_m.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BiRep {
    levels: (usize, usize),
    coeffs: BTreeMap<(Partition, Partition), BigInt>,
}

impl BiRep {
    pub fn zero(n: usize, m: usize) -> Self {
        BiRep {
            levels: (n, m),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn levels(&self) -> (usize, usize) {
        self.levels
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, nu: Partition, lambda: Partition, c: impl Into<BigInt>) -> Result<()> {
        if nu.size() != self.levels.0 {
            return Err(Error::LevelMismatch(self.levels.0, nu.size()));
        }
        if lambda.size() != self.levels.1 {
            return Err(Error::LevelMismatch(self.levels.1, lambda.size()));
        }
        let c = c.into();
        if c.is_zero() {
            return Ok(());
        }
        let key = (nu, lambda);
        let entry = self.coeffs.entry(key.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&key);
        }
        Ok(())
    }

    pub fn coeff(&self, nu: &Partition, lambda: &Partition) -> BigInt {
        self.coeffs
            .get(&(nu.clone(), lambda.clone()))
            .cloned()
            .unwrap_or_default()
    }

    /// Terms ordered with ν lexicographically ascending, then λ, which is the
    /// order used in printed tables.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Partition, &BigInt)> {
        self.coeffs.iter().map(|((n, l), c)| (n, l, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Σ c f^ν f^λ.
    pub fn dim(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|((n, l), c)| c * n.hook_dimension() * l.hook_dimension())
            .sum()
    }

    /// Table rendering, e.g. `(S(2,1) ⊠ S(1^5)) + 2(S(3,1) ⊠ S(2,1^4))`.
    /// Coefficient 1 is omitted; the zero element renders as `0`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms()
            .map(|(n, l, c)| {
                let coeff = if c.is_one() { String::new() } else { c.to_string() };
                format!("{}(S({}) ⊠ S({}))", coeff, n.display_compact(), l.display_compact())
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// One `nu,lambda,coeff` CSV line per term (partitions in `2 1 1` form
    /// to keep the comma free for the CSV separator).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("nu,lambda,coeff\n");
        for (n, l, c) in self.terms() {
            out.push_str(&format!("{},{},{}\n", space_form(n), space_form(l), c));
        }
        out
    }
}

fn space_form(p: &Partition) -> String {
    p.parts().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}
