//! Ron Graham's sequence `g(n)` and its relatives.
//!
//! `g(n)` is the least `k` for which some strictly increasing sequence
//! `n = a_1 < ... < a_t = k` has a perfect-square product. A sequence has
//! square product exactly when the exponent vectors of its terms XOR to
//! zero, so `g(n)` is the first `r` for which `v(n)` lies in the span of
//! `v(n+1), ..., v(r)`. Every solution of that system at `r = g(n)` is a
//! corresponding sequence, and they form a coset of the null space.

mod min_length;
mod scan;

pub use min_length::min_length;
pub use scan::{records_from, scan_conjectures, scan_records, Analysis, ConjectureReport, DoublingEntry};

use std::fmt;

use num_integer::Roots;

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::gf2::{Gf2Eliminator, Residual};
use crate::sieve::{SpfSieve, SquarefreeDecomposition};

/// Nullity cap used by enumeration and primitive counting unless overridden.
pub const DEFAULT_MAX_NULLITY: usize = 20;

/// Strictly increasing list of positive integers with square product.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CorrespondingSequence {
    terms: Vec<u64>,
}

impl CorrespondingSequence {
    /// Sorts `terms`; rejects repeats.
    pub fn from_terms(mut terms: Vec<u64>) -> Result<Self> {
        terms.sort_unstable();
        if terms.is_empty() || terms.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument(format!(
                "terms must be non-empty and distinct: {terms:?}"
            )));
        }
        Ok(Self { terms })
    }

    pub fn terms(&self) -> &[u64] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn first(&self) -> u64 {
        self.terms[0]
    }

    pub fn last(&self) -> u64 {
        *self.terms.last().expect("non-empty")
    }
}

impl fmt::Display for CorrespondingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrahamResult {
    pub n: u64,
    pub g: u64,
    /// Dimension of the null space of the columns `v(n+1), ..., v(g)`;
    /// there are `2^nullity` corresponding sequences.
    pub nullity: usize,
    pub bound_used: u64,
    /// One corresponding sequence, the one the reduction path produced.
    pub particular: CorrespondingSequence,
}

/// Number of corresponding sequences, `2^nullity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SequenceCount {
    pub nullity: usize,
}

impl SequenceCount {
    /// `2^nullity` when it fits comfortably in a `u64`.
    pub fn exact(&self) -> Option<u64> {
        (self.nullity <= 62).then(|| 1u64 << self.nullity)
    }
}

impl fmt::Display for SequenceCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact() {
            Some(c) => write!(f, "{c}"),
            None => write!(f, "2^{}", self.nullity),
        }
    }
}

pub fn is_square(n: u64) -> bool {
    let r = n.sqrt();
    r * r == n
}

/// `n = m r^2` by trial division; works for any `n >= 1` independent of a
/// sieve.
pub fn squarefree_split(n: u64) -> SquarefreeDecomposition {
    assert!(n >= 1);
    let (mut m, mut r, mut rest) = (1u64, 1u64, n);
    let mut p = 2u64;
    while p * p <= rest {
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        if e % 2 == 1 {
            m *= p;
        }
        r *= p.pow(e / 2);
        p += if p == 2 { 1 } else { 2 };
    }
    m *= rest;
    SquarefreeDecomposition { m, r }
}

/// Upper bound on `g(n)` used to size the search.
///
/// Square `n` gives `n`. Otherwise, with `n = m r^2`: `(r+1)(mr+1)` when
/// `r >= 2`, else `2n` for `n >= 4`, else `4n`.
pub fn upper_bound(n: u64) -> u64 {
    if n == 0 || is_square(n) {
        return n;
    }
    let SquarefreeDecomposition { m, r } = squarefree_split(n);
    if r >= 2 {
        (r + 1) * (m * r + 1)
    } else if n >= 4 {
        2 * n
    } else {
        4 * n
    }
}

/// Least `k > n` with `nk` square: `m (r+1)^2` for `n = m r^2`.
pub fn compute_f(n: u64, sieve: &SpfSieve) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidArgument("f(0) is undefined".into()));
    }
    let SquarefreeDecomposition { m, r } = if n <= sieve.limit() {
        sieve.squarefree_decompose(n)?
    } else {
        squarefree_split(n)
    };
    Ok(m * (r + 1) * (r + 1))
}

/// The four-term witness `(m r^2, r s, m r (r+1), (r+1) s)` with
/// `s = m r + 1`, whose product is `(m r^2 (r+1) s)^2`.
pub fn wilson_sequence(n: u64, sieve: &SpfSieve) -> Result<CorrespondingSequence> {
    if n < 2 || is_square(n) {
        return Err(Error::InvalidArgument(format!(
            "witness needs a non-square n >= 2, got {n}"
        )));
    }
    let SquarefreeDecomposition { m, r } = if n <= sieve.limit() {
        sieve.squarefree_decompose(n)?
    } else {
        squarefree_split(n)
    };
    let s = m * r + 1;
    let terms = vec![m * r * r, r * s, m * r * (r + 1), (r + 1) * s];
    if terms.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(format!(
            "witness terms {terms:?} for {n} are not strictly increasing"
        )));
    }
    Ok(CorrespondingSequence { terms })
}

/// Outcome of running the incremental system for one `n`.
pub(crate) struct Solved {
    pub result: GrahamResult,
    /// `None` for the trivial cases (`n <= 1` or square).
    pub eliminator: Option<Gf2Eliminator>,
    /// Particular solution as insertion positions into the eliminator.
    pub particular_positions: BitVec,
}

pub(crate) fn solve_system(n: u64, sieve: &SpfSieve) -> Result<Solved> {
    let bound = upper_bound(n);
    if bound > sieve.limit() {
        return Err(Error::OutOfRange {
            value: bound,
            limit: sieve.limit(),
        });
    }
    if n <= 1 || is_square(n) {
        return Ok(Solved {
            result: GrahamResult {
                n,
                g: n,
                nullity: 0,
                bound_used: bound,
                particular: CorrespondingSequence { terms: vec![n] },
            },
            eliminator: None,
            particular_positions: BitVec::new(),
        });
    }

    let mut elim = Gf2Eliminator::new();
    let mut residual = Residual::new(&sieve.exponent_vector(n)?);
    let mut r = n;
    while !residual.is_zero() {
        r += 1;
        if r > sieve.limit() {
            return Err(Error::OutOfRange {
                value: r,
                limit: sieve.limit(),
            });
        }
        elim.insert_column(&sieve.exponent_vector(r)?, r)?;
        elim.refine(&mut residual);
    }
    assert!(r <= bound, "g({n}) = {r} exceeds bound {bound}");

    let positions = residual_positions(&elim, &residual, n);
    let mut terms = vec![n];
    terms.extend(positions.iter_ones().map(|p| n + 1 + p as u64));
    Ok(Solved {
        result: GrahamResult {
            n,
            g: r,
            nullity: elim.nullity(),
            bound_used: bound,
            particular: CorrespondingSequence { terms },
        },
        eliminator: Some(elim),
        particular_positions: positions,
    })
}

fn residual_positions(elim: &Gf2Eliminator, residual: &Residual, n: u64) -> BitVec {
    let ids = elim.residual_ids(residual).expect("residual is reduced to zero");
    BitVec::from_ones(ids.into_iter().map(|id| (id - n - 1) as usize))
}

pub fn compute_g(n: u64, sieve: &SpfSieve) -> Result<GrahamResult> {
    solve_system(n, sieve).map(|s| s.result)
}

/// Greatest `n` admitting a square-product sequence from `n` to `k`.
///
/// Returns `None` for prime `k`: no such sequence can end at a prime.
pub fn compute_gbar(k: u64, sieve: &SpfSieve) -> Result<Option<u64>> {
    if k <= 1 {
        return Ok(Some(k));
    }
    if k > sieve.limit() {
        return Err(Error::OutOfRange {
            value: k,
            limit: sieve.limit(),
        });
    }
    if sieve.is_prime(k) {
        return Ok(None);
    }
    if is_square(k) {
        return Ok(Some(k));
    }
    let vk = sieve.exponent_vector(k)?;
    let mut elim = Gf2Eliminator::new();
    for n in (1..k).rev() {
        let vn = sieve.exponent_vector(n)?;
        if elim.in_span(&(&vn ^ &vk)) {
            return Ok(Some(n));
        }
        elim.insert_column(&vn, n)?;
    }
    Ok(None)
}

pub fn count_sequences(n: u64, sieve: &SpfSieve) -> Result<SequenceCount> {
    compute_g(n, sieve).map(|r| SequenceCount { nullity: r.nullity })
}

/// All `2^N` corresponding sequences for `g(n)`, lexicographically ordered.
pub fn enumerate_sequences(
    n: u64,
    sieve: &SpfSieve,
    max_nullity: usize,
) -> Result<Vec<CorrespondingSequence>> {
    let solved = solve_system(n, sieve)?;
    let Some(elim) = solved.eliminator else {
        return Ok(vec![solved.result.particular]);
    };
    let nullity = elim.nullity();
    if nullity > max_nullity {
        return Err(Error::CapacityExceeded {
            what: "nullity",
            actual: nullity as u64,
            cap: max_nullity as u64,
        });
    }
    let null = elim.null_combinations();
    let mut current = solved.particular_positions.clone();
    let mut out = Vec::with_capacity(1 << nullity);
    // Gray-code walk over the null space
    for step in 0u64..(1u64 << nullity) {
        if step > 0 {
            current.xor_assign(&null[step.trailing_zeros() as usize]);
        }
        let mut terms = vec![n];
        terms.extend(current.iter_ones().map(|p| n + 1 + p as u64));
        out.push(CorrespondingSequence { terms });
    }
    out.sort_unstable();
    Ok(out)
}

/// Whether no proper non-empty subsequence of `seq` has square product.
///
/// The term vectors sum to zero; the sequence is primitive exactly when that
/// is their only dependency, i.e. rank is `len - 1`.
pub fn is_primitive(seq: &CorrespondingSequence, sieve: &SpfSieve) -> Result<bool> {
    let mut elim = Gf2Eliminator::new();
    for &t in seq.terms() {
        elim.insert_column(&sieve.exponent_vector(t)?, t)?;
    }
    Ok(elim.rank() + 1 == seq.len())
}

pub fn count_primitive(n: u64, sieve: &SpfSieve, max_nullity: usize) -> Result<u64> {
    let mut count = 0;
    for seq in enumerate_sequences(n, sieve, max_nullity)? {
        if is_primitive(&seq, sieve)? {
            count += 1;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn sieve() -> SpfSieve {
        SpfSieve::for_range(6000).unwrap()
    }

    fn product_is_square(terms: &[u64]) -> bool {
        let p: BigUint = terms.iter().map(|&t| BigUint::from(t)).product();
        let r = p.sqrt();
        &r * &r == p
    }

    #[test]
    fn upper_bounds() {
        assert_eq!(upper_bound(5), 10);
        assert_eq!(upper_bound(8), 15);
        assert_eq!(upper_bound(9), 9);
        assert_eq!(upper_bound(0), 0);
        assert_eq!(upper_bound(2), 8);
        assert_eq!(upper_bound(3), 12);
        assert_eq!(upper_bound(12), 21);
    }

    #[test]
    fn small_g_values() {
        let s = sieve();
        assert_eq!(compute_g(2, &s).unwrap().g, 6);
        let r8 = compute_g(8, &s).unwrap();
        assert_eq!(r8.g, 15);
        assert_eq!(r8.particular.terms(), &[8, 10, 12, 15]);
        assert_eq!(compute_g(0, &s).unwrap().g, 0);
        assert_eq!(compute_g(4, &s).unwrap().g, 4);
        assert_eq!(compute_g(5301, &s).unwrap().g, 5375);
    }

    #[test]
    fn g_needs_a_large_enough_sieve() {
        let s = SpfSieve::new(20).unwrap();
        assert!(matches!(compute_g(11, &s), Err(Error::OutOfRange { .. })));
        assert!(compute_g(5, &s).is_ok());
    }

    #[test]
    fn result_invariants() {
        let s = sieve();
        for n in 0..=400 {
            let r = compute_g(n, &s).unwrap();
            assert!(r.n <= r.g && r.g <= r.bound_used, "{r:?}");
            assert_eq!(r.particular.first(), n);
            assert_eq!(r.particular.last(), r.g);
            assert!(product_is_square(r.particular.terms()), "{r:?}");
            assert_eq!(r.g == n, n <= 1 || is_square(n));
        }
    }

    #[test]
    fn gbar_values() {
        let s = sieve();
        assert_eq!(compute_gbar(6, &s).unwrap(), Some(2));
        assert_eq!(compute_gbar(9, &s).unwrap(), Some(9));
        assert_eq!(compute_gbar(7, &s).unwrap(), None);
        assert_eq!(compute_gbar(0, &s).unwrap(), Some(0));
        assert_eq!(compute_gbar(1, &s).unwrap(), Some(1));
        assert_eq!(compute_gbar(15, &s).unwrap(), Some(8));
        assert!(compute_gbar(s.limit() + 1, &s).is_err());
    }

    #[test]
    fn f_values() {
        let s = sieve();
        assert_eq!(compute_f(8, &s).unwrap(), 18);
        assert_eq!(compute_f(4, &s).unwrap(), 9);
        assert_eq!(compute_f(7, &s).unwrap(), 28);
        assert_eq!(compute_f(1, &s).unwrap(), 4);
        assert!(matches!(compute_f(0, &s), Err(Error::InvalidArgument(_))));
        // beyond the sieve falls back to trial division
        assert_eq!(compute_f(2 * 1_000_003, &s).unwrap(), 8 * 1_000_003);
    }

    #[test]
    fn wilson_witnesses() {
        let s = sieve();
        assert_eq!(wilson_sequence(12, &s).unwrap().terms(), &[12, 14, 18, 21]);
        assert_eq!(wilson_sequence(8, &s).unwrap().terms(), &[8, 10, 12, 15]);
        assert_eq!(wilson_sequence(2, &s).unwrap().terms(), &[2, 3, 4, 6]);
        assert!(matches!(wilson_sequence(16, &s), Err(Error::InvalidArgument(_))));
        assert!(matches!(wilson_sequence(1, &s), Err(Error::InvalidArgument(_))));
        for n in 2..3000 {
            if is_square(n) {
                continue;
            }
            let w = wilson_sequence(n, &s).unwrap();
            assert!(product_is_square(w.terms()), "{n}");
            assert_eq!(w.first(), n);
            let d = s.squarefree_decompose(n).unwrap();
            if d.m > 1 {
                assert!(w.last() < compute_f(n, &s).unwrap());
            }
        }
    }

    #[test]
    fn counts() {
        let s = sieve();
        let c = count_sequences(11, &s).unwrap();
        assert_eq!((c.nullity, c.exact()), (3, Some(8)));
        let c = count_sequences(13, &s).unwrap();
        assert_eq!((c.nullity, c.exact()), (4, Some(16)));
        let c = count_sequences(4, &s).unwrap();
        assert_eq!((c.nullity, c.exact()), (0, Some(1)));
        assert_eq!(SequenceCount { nullity: 70 }.to_string(), "2^70");
        assert_eq!(SequenceCount { nullity: 62 }.exact(), Some(1 << 62));
    }

    #[test]
    fn enumerations() {
        let s = sieve();
        let two: Vec<_> = enumerate_sequences(2, &s, 20)
            .unwrap()
            .into_iter()
            .map(|q| q.terms().to_vec())
            .collect();
        assert_eq!(two, vec![vec![2, 3, 4, 6], vec![2, 3, 6]]);
        let four = enumerate_sequences(4, &s, 20).unwrap();
        assert_eq!(four.len(), 1);
        assert_eq!(four[0].terms(), &[4]);
    }

    #[test]
    fn enumeration_respects_cap() {
        let s = sieve();
        let err = enumerate_sequences(17, &s, 5).unwrap_err();
        assert_eq!(
            err,
            Error::CapacityExceeded {
                what: "nullity",
                actual: 6,
                cap: 5
            }
        );
        assert_eq!(enumerate_sequences(17, &s, 6).unwrap().len(), 64);
    }

    #[test]
    fn every_solution_uses_g() {
        let s = sieve();
        for n in 2..=200 {
            let g = compute_g(n, &s).unwrap().g;
            let seqs = match enumerate_sequences(n, &s, 16) {
                Err(Error::CapacityExceeded { .. }) => continue,
                other => other.unwrap(),
            };
            assert_eq!(seqs.len(), 1 << count_sequences(n, &s).unwrap().nullity);
            for q in &seqs {
                assert_eq!(q.first(), n);
                assert_eq!(q.last(), g);
                assert!(q.terms().windows(2).all(|w| w[0] < w[1]));
                assert!(product_is_square(q.terms()));
            }
        }
    }

    #[test]
    fn primitive_counts() {
        let s = sieve();
        assert_eq!(count_primitive(4, &s, 20).unwrap(), 1);
        assert_eq!(count_primitive(2, &s, 20).unwrap(), 1);
        assert!(count_primitive(17, &s, 5).is_err());
    }

    #[test]
    fn primitive_matches_subset_products() {
        let s = sieve();
        for n in 2..=40 {
            for seq in enumerate_sequences(n, &s, 20).unwrap() {
                let t = seq.terms();
                let proper_square = (1u32..(1 << t.len()) - 1).any(|mask| {
                    let sub: Vec<u64> = (0..t.len())
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| t[i])
                        .collect();
                    product_is_square(&sub)
                });
                assert_eq!(is_primitive(&seq, &s).unwrap(), !proper_square, "{seq}");
            }
        }
    }

    #[test]
    fn primitive_count_for_eleven() {
        // oracle: every proper subset of each of the 8 sequences, by exact products
        let s = sieve();
        let expected = enumerate_sequences(11, &s, 20)
            .unwrap()
            .iter()
            .filter(|q| {
                let t = q.terms();
                !(1u32..(1 << t.len()) - 1).any(|mask| {
                    let sub: Vec<u64> = (0..t.len())
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| t[i])
                        .collect();
                    product_is_square(&sub)
                })
            })
            .count() as u64;
        assert_eq!(expected, 3);
        assert_eq!(count_primitive(11, &s, 20).unwrap(), expected);
    }

    #[test]
    fn squarefree_split_matches_sieve() {
        let s = sieve();
        for n in 1..=5000 {
            assert_eq!(squarefree_split(n), s.squarefree_decompose(n).unwrap());
        }
    }
}
