//! Integer partitions and the combinatorics hung off them.
//!
//! The derived [`Ord`] on [`Partition`] is lexicographic on the parts, so
//! `(1,1,1) < (2,1) < (3)`. The *canonical* enumeration order returned by
//! [`generate_partitions`] is the reverse of that (reverse lexicographic):
//! `(3), (2,1), (1,1,1)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(parts));
        }
        Ok(Partition { parts })
    }

    /// Sorts and drops zeros, so any multiset of part sizes is accepted.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition `(n)`; empty for `n = 0`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    /// The hook `(a, 1^b)`; requires `a ≥ 1`.
    pub fn hook(a: usize, b: usize) -> Self {
        assert!(a >= 1, "hook arm must be positive");
        let mut parts = vec![a];
        parts.extend(std::iter::repeat_n(1, b));
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// |λ|
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i`, or 0 past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        let parts = (0..width)
            .map(|j| self.parts.iter().take_while(|&&p| p > j).count())
            .collect();
        Partition { parts }
    }

    /// True when the Young diagram of `self` contains that of `other`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && (0..other.len()).all(|i| self.parts[i] >= other.parts[i])
    }

    /// Multiplicity of each part size: `m[i]` counts parts equal to `i`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.part(0) + 1];
        for &p in &self.parts {
            m[p] += 1;
        }
        m
    }

    /// f^λ, the number of standard Young tableaux, by the hook length formula.
    pub fn hook_dimension(&self) -> BigInt {
        let conj = self.conjugate();
        let mut hooks = BigInt::one();
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                let arm = row - j - 1;
                let leg = conj.parts[j] - i - 1;
                hooks *= arm + leg + 1;
            }
        }
        factorial(self.size()) / hooks
    }

    /// All partitions of |λ| − 1 obtained by deleting one corner cell, in
    /// canonical (reverse lexicographic) order.
    pub fn remove_box_partitions(&self) -> Result<Vec<Partition>> {
        if self.is_empty() {
            return Err(Error::EmptyPartition);
        }
        let out = (0..self.len())
            .filter(|&i| self.part(i) > self.part(i + 1))
            .map(|i| {
                let mut parts = self.parts.clone();
                parts[i] -= 1;
                if parts[i] == 0 {
                    parts.pop();
                }
                Partition { parts }
            })
            .rev()
            .collect();
        Ok(out)
    }

    /// All partitions of |λ| + 1 obtained by adding one cell, canonical order.
    pub fn add_box_partitions(&self) -> Vec<Partition> {
        (0..=self.len())
            .filter(|&i| i == 0 || self.part(i - 1) > self.part(i))
            .map(|i| {
                let mut parts = self.parts.clone();
                if i == parts.len() {
                    parts.push(1);
                } else {
                    parts[i] += 1;
                }
                Partition { parts }
            })
            .collect()
    }

    /// Exponent shorthand for human output: `(2,1,1,1)` becomes `2,1^3`.
    pub fn display_compact(&self) -> String {
        let mut out = Vec::new();
        let mut i = 0;
        while i < self.parts.len() {
            let p = self.parts[i];
            let run = self.parts[i..].iter().take_while(|&&q| q == p).count();
            if run == 1 {
                out.push(p.to_string());
            } else {
                out.push(format!("{}^{}", p, run));
            }
            i += run;
        }
        out.join(",")
    }
}

impl fmt::Display for Partition {
    /// The canonical text form: parts joined by commas, empty string for ().
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", p)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses the canonical comma form. Exponent shorthand (`2,1^3`) is also
    /// accepted since it is unambiguous.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s);
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for tok in s.split(',') {
            let tok = tok.trim();
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => (b, e.parse::<usize>().map_err(|_| Error::parse("partition", s))?),
                None => (tok, 1),
            };
            let base = base.parse::<usize>().map_err(|_| Error::parse("partition", s))?;
            parts.extend(std::iter::repeat_n(base, exp));
        }
        Partition::new(parts)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

/// All partitions of `n` in reverse lexicographic order; `[()]` for `n = 0`.
pub fn generate_partitions(n: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: prefix.clone() });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            prefix.push(p);
            rec(rest - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Hooks `(a, 1^b)` with `a ≥ 1` and `2a + b = m + 1`, ordered by increasing
/// arm. These are the composition factors of the injective envelope of the
/// sign-type simple functor in degree `m`.
pub fn hook_family(m: usize) -> Vec<Partition> {
    assert!(m >= 1, "hook_family needs m >= 1");
    (1..=m.div_ceil(2)).map(|a| Partition::hook(a, m + 1 - 2 * a)).collect()
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// A partition read as the cycle type of a permutation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    partition: Partition,
    centralizer_order: BigInt,
}

impl CycleType {
    pub fn new(partition: Partition) -> Self {
        let centralizer_order = partition
            .multiplicities()
            .iter()
            .enumerate()
            .skip(1)
            .fold(BigInt::one(), |acc, (i, &m)| {
                acc * BigInt::from(i).pow(m as u32) * factorial(m)
            });
        CycleType {
            partition,
            centralizer_order,
        }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    /// z_μ = Π i^{m_i} m_i!
    pub fn centralizer_order(&self) -> &BigInt {
        &self.centralizer_order
    }

    /// Number of permutations with this cycle type, n!/z_μ.
    pub fn class_size(&self) -> BigInt {
        factorial(self.partition.size()) / &self.centralizer_order
    }
}

/// All cycle types of S_n, canonical order.
pub fn cycle_types(n: usize) -> Vec<CycleType> {
    generate_partitions(n).into_iter().map(CycleType::new).collect()
}
