//! Smallest-prime-factor sieve, factorization and exponent vectors.

use crate::bits::BitVec;
use crate::error::{Error, Result};

/// Smallest-prime-factor table for `2..=limit`, plus the global prime
/// index used to address exponent-vector bits (2 is bit 0, 3 is bit 1, ...).
#[derive(Debug, Clone)]
pub struct SpfSieve {
    limit: u64,
    spf: Vec<u32>,
    primes: Vec<u64>,
}

impl SpfSieve {
    /// Linear sieve over `2..=limit`.
    pub fn new(limit: u64) -> Result<Self> {
        if limit < 2 {
            return Err(Error::InvalidArgument(format!(
                "sieve limit must be at least 2, got {limit}"
            )));
        }
        if limit > u32::MAX as u64 {
            return Err(Error::InvalidArgument(format!("sieve limit {limit} is too large")));
        }
        let size = limit as usize + 1;
        let mut spf = vec![0u32; size];
        let mut primes: Vec<u64> = Vec::new();
        for i in 2..size {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u64);
            }
            let si = spf[i] as u64;
            for &p in &primes {
                let ip = i as u64 * p;
                if p > si || ip > limit {
                    break;
                }
                spf[ip as usize] = p as u32;
            }
        }
        Ok(Self { limit, spf, primes })
    }

    /// Sieve large enough for every computation over `0..=max_n`: covers
    /// the `g(n) <= 4n` fallback bound for tiny n and `f(n)` as well.
    pub fn for_range(max_n: u64) -> Result<Self> {
        Self::new((4 * max_n).max(64))
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn spf(&self, n: u64) -> Option<u64> {
        if (2..=self.limit).contains(&n) {
            Some(self.spf[n as usize] as u64)
        } else {
            None
        }
    }

    pub fn is_prime(&self, n: u64) -> bool {
        self.spf(n) == Some(n)
    }

    /// Zero-based position of `p` among the primes, `None` if `p` is not a
    /// prime within the sieve.
    pub fn prime_index(&self, p: u64) -> Option<usize> {
        if !self.is_prime(p) {
            return None;
        }
        self.primes.binary_search(&p).ok()
    }

    pub fn nth_prime(&self, index: usize) -> Option<u64> {
        self.primes.get(index).copied()
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    fn check(&self, n: u64, min: u64) -> Result<()> {
        if n < min || n > self.limit {
            Err(Error::OutOfRange {
                value: n,
                limit: self.limit,
            })
        } else {
            Ok(())
        }
    }

    pub fn factorize(&self, n: u64) -> Result<Factorization> {
        self.check(n, 2)?;
        Ok(self.factor_unchecked(n))
    }

    fn factor_unchecked(&self, n: u64) -> Factorization {
        let mut factors: Vec<(u64, u32)> = Vec::new();
        let mut rest = n;
        while rest > 1 {
            let p = self.spf[rest as usize] as u64;
            rest /= p;
            match factors.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => factors.push((p, 1)),
            }
        }
        Factorization { value: n, factors }
    }

    /// Parity of every prime exponent of `n`; `n = 1` gives the zero vector.
    pub fn exponent_vector(&self, n: u64) -> Result<ExponentVector> {
        self.check(n, 1)?;
        let mut bits = BitVec::new();
        let mut rest = n;
        while rest > 1 {
            let p = self.spf[rest as usize] as u64;
            rest /= p;
            // primes are visited in increasing order, so the index search is cheap
            let idx = self
                .primes
                .binary_search(&p)
                .expect("spf entries are primes");
            bits.toggle(idx);
        }
        Ok(ExponentVector(bits))
    }

    pub fn squarefree_decompose(&self, n: u64) -> Result<SquarefreeDecomposition> {
        self.check(n, 1)?;
        if n == 1 {
            return Ok(SquarefreeDecomposition { m: 1, r: 1 });
        }
        let mut m = 1u64;
        let mut r = 1u64;
        for (p, e) in self.factor_unchecked(n).factors {
            if e % 2 == 1 {
                m *= p;
            }
            r *= p.pow(e / 2);
        }
        Ok(SquarefreeDecomposition { m, r })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub value: u64,
    /// `(prime, exponent)` with strictly increasing primes.
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn product(&self) -> u64 {
        self.factors.iter().map(|&(p, e)| p.pow(e)).product()
    }
}

/// Exponent parities of an integer, indexed by global prime index.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct ExponentVector(BitVec);

impl ExponentVector {
    pub fn zero() -> Self {
        Self(BitVec::new())
    }

    /// Vector with the given prime indices set (each index toggled once).
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        Self(BitVec::from_ones(indices))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn bits(&self) -> &BitVec {
        &self.0
    }

    pub fn into_bits(self) -> BitVec {
        self.0
    }

    /// Prime indices with odd exponent, ascending.
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter_ones()
    }

    pub fn xor_assign(&mut self, other: &ExponentVector) {
        self.0.xor_assign(&other.0);
    }
}

impl std::ops::BitXor for &ExponentVector {
    type Output = ExponentVector;

    fn bitxor(self, rhs: &ExponentVector) -> ExponentVector {
        ExponentVector(&self.0 ^ &rhs.0)
    }
}

impl std::fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ExponentVector{:?}", self.0)
    }
}

/// `value = m * r^2` with `m` squarefree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    pub m: u64,
    pub r: u64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Roots;
    use proptest::prelude::*;

    fn trial_spf(n: u64) -> u64 {
        (2..=n).find(|d| n.is_multiple_of(*d)).unwrap()
    }

    #[test]
    fn small_sieves() {
        let s = SpfSieve::new(10).unwrap();
        assert_eq!(s.spf(9), Some(3));
        assert_eq!(s.spf(10), Some(2));
        assert_eq!(s.spf(7), Some(7));
        let s = SpfSieve::new(2).unwrap();
        assert_eq!(s.spf(2), Some(2));
        let s = SpfSieve::new(100).unwrap();
        assert_eq!(s.spf(91), Some(7));
        assert_eq!(s.spf(101), None);
    }

    #[test]
    fn rejects_tiny_limit() {
        assert!(matches!(SpfSieve::new(1), Err(Error::InvalidArgument(_))));
        assert!(matches!(SpfSieve::new(0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn spf_matches_trial_division() {
        let s = SpfSieve::new(3000).unwrap();
        for i in 2..=3000 {
            let p = s.spf(i).unwrap();
            assert_eq!(p, trial_spf(i), "spf({i})");
            assert_eq!(s.is_prime(i), p == i);
        }
        assert_eq!(s.primes().len(), 430);
        assert_eq!(s.prime_index(2), Some(0));
        assert_eq!(s.prime_index(7), Some(3));
        assert_eq!(s.prime_index(9), None);
    }

    #[test]
    fn factorizations() {
        let s = SpfSieve::new(100).unwrap();
        assert_eq!(s.factorize(8).unwrap().factors, vec![(2, 3)]);
        assert_eq!(s.factorize(12).unwrap().factors, vec![(2, 2), (3, 1)]);
        assert_eq!(s.factorize(97).unwrap().factors, vec![(97, 1)]);
        assert!(matches!(s.factorize(101), Err(Error::OutOfRange { .. })));
        assert!(matches!(s.factorize(1), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn exponent_vectors() {
        let s = SpfSieve::new(100).unwrap();
        assert_eq!(s.exponent_vector(8).unwrap(), ExponentVector::from_indices([0]));
        assert_eq!(s.exponent_vector(15).unwrap(), ExponentVector::from_indices([1, 2]));
        assert!(s.exponent_vector(16).unwrap().is_zero());
        assert!(s.exponent_vector(1).unwrap().is_zero());
        assert!(s.exponent_vector(0).is_err());
        assert!(s.exponent_vector(101).is_err());
    }

    #[test]
    fn squarefree_parts() {
        let s = SpfSieve::new(100).unwrap();
        assert_eq!(s.squarefree_decompose(12).unwrap(), SquarefreeDecomposition { m: 3, r: 2 });
        assert_eq!(s.squarefree_decompose(8).unwrap(), SquarefreeDecomposition { m: 2, r: 2 });
        assert_eq!(s.squarefree_decompose(36).unwrap(), SquarefreeDecomposition { m: 1, r: 6 });
        assert_eq!(s.squarefree_decompose(1).unwrap(), SquarefreeDecomposition { m: 1, r: 1 });
    }

    proptest! {
        #[test]
        fn factorization_reconstructs(n in 2u64..=20_000) {
            let s = SpfSieve::new(20_000).unwrap();
            let f = s.factorize(n).unwrap();
            prop_assert_eq!(f.product(), n);
            prop_assert!(f.factors.windows(2).all(|w| w[0].0 < w[1].0));
            prop_assert!(f.factors.iter().all(|&(p, e)| e > 0 && s.is_prime(p)));
        }

        #[test]
        fn zero_vector_iff_square(n in 1u64..=20_000) {
            let s = SpfSieve::new(20_000).unwrap();
            let sq = n.sqrt();
            prop_assert_eq!(s.exponent_vector(n).unwrap().is_zero(), sq * sq == n);
        }

        #[test]
        fn vector_of_product_is_xor(x in 1u64..=150, y in 1u64..=150) {
            let s = SpfSieve::new(150 * 150).unwrap();
            let vx = s.exponent_vector(x).unwrap();
            let vy = s.exponent_vector(y).unwrap();
            prop_assert_eq!(s.exponent_vector(x * y).unwrap(), &vx ^ &vy);
        }

        #[test]
        fn squarefree_part_is_odd_exponent_product(n in 1u64..=20_000) {
            let s = SpfSieve::new(20_000).unwrap();
            let d = s.squarefree_decompose(n).unwrap();
            prop_assert_eq!(d.m * d.r * d.r, n);
            let odd: u64 = if n == 1 { 1 } else {
                s.factorize(n).unwrap().factors.iter()
                    .filter(|(_, e)| e % 2 == 1).map(|(p, _)| p).product()
            };
            prop_assert_eq!(d.m, odd);
            if d.m > 1 {
                let f = s.factorize(d.m).unwrap();
                prop_assert!(f.factors.iter().all(|&(_, e)| e == 1));
            }
        }
    }
}
