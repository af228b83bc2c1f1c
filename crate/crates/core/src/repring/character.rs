//! Class functions on S_n and irreducible characters via Murnaghan–Nakayama.

use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partition::{cycle_types, factorial, generate_partitions, CycleType, Partition};

use super::VirtualRep;

/// A rational-valued class function on S_n. Values are stored in the
/// canonical order of [`cycle_types`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    level: usize,
    values: Vec<BigRational>,
}

fn class_index(level: usize, mu: &Partition) -> usize {
    assert_eq!(mu.size(), level, "cycle type {:?} is not of level {}", mu, level);
    // canonical order is descending
    generate_partitions(level)
        .binary_search_by(|p| mu.cmp(p))
        .expect("every partition of n is a cycle type")
}

impl ClassFunction {
    pub fn zero(level: usize) -> Self {
        let len = generate_partitions(level).len();
        ClassFunction {
            level,
            values: vec![BigRational::zero(); len],
        }
    }

    /// Builds from a function on cycle types.
    pub fn from_fn(level: usize, f: impl FnMut(&CycleType) -> BigRational) -> Self {
        let values = cycle_types(level).iter().map(f).collect();
        ClassFunction { level, values }
    }

    /// The power sum p_μ seen as a class function: z_μ at μ, zero elsewhere,
    /// so that ⟨p_μ, χ_λ⟩ = χ_λ(μ).
    pub fn power_sum(mu: &Partition) -> Self {
        let level = mu.size();
        let mut out = Self::zero(level);
        let z = CycleType::new(mu.clone()).centralizer_order().clone();
        out.values[class_index(level, mu)] = BigRational::from_integer(z);
        out
    }

    /// Character of the regular representation.
    pub fn regular(level: usize) -> Self {
        Self::power_sum(&Partition::column(level))
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn value(&self, mu: &Partition) -> &BigRational {
        &self.values[class_index(self.level, mu)]
    }

    /// (cycle type, value) pairs in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (Partition, &BigRational)> {
        generate_partitions(self.level).into_iter().zip(self.values.iter())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        ClassFunction {
            level: self.level,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Self {
        assert_eq!(self.level, other.level, "class function levels differ");
        ClassFunction {
            level: self.level,
            values: self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect(),
        }
    }
}

impl Add for &ClassFunction {
    type Output = ClassFunction;
    fn add(self, rhs: Self) -> ClassFunction {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &ClassFunction {
    type Output = ClassFunction;
    fn sub(self, rhs: Self) -> ClassFunction {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &ClassFunction {
    type Output = ClassFunction;
    /// Pointwise product (character of the inner tensor product).
    fn mul(self, rhs: Self) -> ClassFunction {
        self.zip_with(rhs, |a, b| a * b)
    }
}

impl Neg for &ClassFunction {
    type Output = ClassFunction;
    fn neg(self) -> ClassFunction {
        self.scale(&-BigRational::one())
    }
}

/// ⟨f, g⟩ = Σ_μ f(μ) g(μ) / z_μ.
pub fn inner_product(f: &ClassFunction, g: &ClassFunction) -> Result<BigRational> {
    if f.level != g.level {
        return Err(Error::LevelMismatch(f.level, g.level));
    }
    let mut total = BigRational::zero();
    for ((c, a), b) in cycle_types(f.level).iter().zip(&f.values).zip(&g.values) {
        if a.is_zero() || b.is_zero() {
            continue;
        }
        total += a * b / BigRational::from_integer(c.centralizer_order().clone());
    }
    Ok(total)
}

/// Expands `f` in the irreducible characters. Fails when a multiplicity is
/// not an integer.
pub fn decompose(f: &ClassFunction) -> Result<VirtualRep> {
    let mut out = VirtualRep::zero(f.level);
    for lambda in generate_partitions(f.level) {
        let m = inner_product(f, &character(&lambda))?;
        if !m.is_integer() {
            return Err(Error::NonIntegral {
                partition: lambda,
                value: m.to_string(),
            });
        }
        out.add_term(lambda, m.to_integer());
    }
    Ok(out)
}

/// χ_λ on every cycle type of |λ|.
pub fn character(lambda: &Partition) -> ClassFunction {
    ClassFunction::from_fn(lambda.size(), |mu| {
        BigRational::from_integer(character_value(lambda, mu.partition()))
    })
}

type MnKey = (Partition, Partition);

fn mn_cache() -> &'static RwLock<HashMap<MnKey, BigInt>> {
    static CACHE: OnceLock<RwLock<HashMap<MnKey, BigInt>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// χ_λ(μ) by recursive border-strip removal, memoized on (λ, μ).
///
/// Strips are removed on the beta-set (first-column hook lengths) of λ:
/// removing a strip of length r moves one bead from b to b − r, and the
/// height of the strip is the number of beads jumped over.
pub fn character_value(lambda: &Partition, mu: &Partition) -> BigInt {
    assert_eq!(lambda.size(), mu.size(), "χ_λ(μ) needs |λ| = |μ|");
    if mu.is_empty() {
        return BigInt::one();
    }
    let key = (lambda.clone(), mu.clone());
    if let Some(v) = mn_cache().read().unwrap().get(&key) {
        return v.clone();
    }

    let r = mu.part(0);
    let rest = Partition::new(mu.parts()[1..].to_vec()).expect("suffix of a partition");
    let len = lambda.len();
    let beta: Vec<usize> = (0..len).map(|i| lambda.part(i) + len - 1 - i).collect();
    let mut total = BigInt::zero();
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let jumped = beta.iter().filter(|&&c| c > b - r && c < b).count();
        let mut moved = beta.clone();
        moved[i] = b - r;
        let smaller = from_beta(&moved);
        let v = character_value(&smaller, &rest);
        if jumped % 2 == 0 {
            total += v;
        } else {
            total -= v;
        }
    }

    mn_cache().write().unwrap().insert(key, total.clone());
    total
}

fn from_beta(beta: &[usize]) -> Partition {
    let mut sorted = beta.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let len = sorted.len();
    Partition::from_unsorted(sorted.iter().enumerate().map(|(i, &b)| b - (len - 1 - i)).collect())
}

/// Order of S_n, as a rational for class-function arithmetic.
pub fn group_order(level: usize) -> BigRational {
    BigRational::from_integer(factorial(level))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    /// χ_{(2,1)} from the explicit standard representation of S_3 on
    /// {x ∈ Q^3 : Σx = 0}: trace of a permutation matrix minus one.
    fn standard_rep_trace(perm: [usize; 3]) -> i64 {
        let fixed = (0..3).filter(|&i| perm[i] == i).count() as i64;
        fixed - 1
    }

    #[test]
    fn small_characters() {
        for mu in generate_partitions(5) {
            assert_eq!(character_value(&p(&[5]), &mu), BigInt::one());
        }
        assert_eq!(character_value(&p(&[1, 1]), &p(&[2])), BigInt::from(-1));
        // a 3-cycle
        assert_eq!(
            character_value(&p(&[2, 1]), &p(&[3])),
            BigInt::from(standard_rep_trace([1, 2, 0]))
        );
        assert_eq!(character_value(&p(&[2, 1]), &p(&[3])), BigInt::from(-1));
        assert_eq!(
            character_value(&p(&[2, 1]), &p(&[2, 1])),
            BigInt::from(standard_rep_trace([1, 0, 2]))
        );
        // degree at the identity is f^λ
        for n in 0..=8 {
            for l in generate_partitions(n) {
                assert_eq!(character_value(&l, &Partition::column(n)), l.hook_dimension());
            }
        }
    }

    #[test]
    fn orthonormality_and_column_sums() {
        for n in 0..=7 {
            let chars: Vec<_> = generate_partitions(n).iter().map(character).collect();
            for (i, a) in chars.iter().enumerate() {
                for (j, b) in chars.iter().enumerate() {
                    let expected = if i == j { q(1) } else { q(0) };
                    assert_eq!(inner_product(a, b).unwrap(), expected);
                }
            }
            for c in cycle_types(n) {
                let sum: BigInt = generate_partitions(n)
                    .iter()
                    .map(|l| character_value(l, c.partition()).pow(2))
                    .sum();
                assert_eq!(&sum, c.centralizer_order());
            }
        }
    }

    #[test]
    fn inner_products() {
        assert_eq!(
            inner_product(&character(&p(&[3])), &character(&p(&[1, 1, 1]))).unwrap(),
            q(0)
        );
        assert_eq!(
            inner_product(&ClassFunction::regular(3), &character(&p(&[2, 1]))).unwrap(),
            q(2)
        );
        assert!(matches!(
            inner_product(&ClassFunction::regular(3), &ClassFunction::regular(4)),
            Err(Error::LevelMismatch(3, 4))
        ));
    }

    #[test]
    fn decompositions() {
        let v = decompose(&character(&p(&[2, 1]))).unwrap();
        assert_eq!(v.to_string(), "1*2,1");
        let reg = decompose(&ClassFunction::regular(3)).unwrap();
        assert_eq!(reg.to_string(), "1*3 + 2*2,1 + 1*1,1,1");
        assert!(decompose(&ClassFunction::zero(4)).unwrap().is_zero());
        let half = character(&p(&[2])).scale(&BigRational::new(1.into(), 2.into()));
        assert!(matches!(decompose(&half), Err(Error::NonIntegral { .. })));
    }
}
