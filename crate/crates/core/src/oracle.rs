//! Exhaustive reference implementations.
//!
//! Nothing here touches the sieve or the eliminator: numbers are factored by
//! trial division, candidate sets are enumerated in full, and every hit is
//! confirmed by an exact big-integer root. They are meant for small inputs
//! only and refuse windows wider than [`MAX_WINDOW`].

use num_bigint::BigUint;
use num_integer::{Integer, Roots};

use crate::error::{Error, Result};

/// Widest `(n, hard_cap]` window searched.
pub const MAX_WINDOW: u64 = 30;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteG {
    pub g: u64,
    pub witness: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteStats {
    pub g: u64,
    /// Shortest corresponding sequence.
    pub min_length: usize,
    /// Number of corresponding sequences.
    pub count: u64,
}

fn trial_factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn is_perfect_power(product: &BigUint, m: u32) -> bool {
    let root = product.nth_root(m);
    root.pow(m) == *product
}

fn product(terms: &[u64]) -> BigUint {
    terms.iter().map(|&t| BigUint::from(t)).product()
}

/// Exponent vectors mod `m` of a window of integers, over a shared local
/// numbering of the primes involved.
struct Window {
    values: Vec<u64>,
    exps: Vec<Vec<u8>>,
}

impl Window {
    fn new(values: Vec<u64>, m: u32) -> Self {
        let mut primes: Vec<u64> = Vec::new();
        let factored: Vec<Vec<(u64, u32)>> = values.iter().map(|&v| trial_factor(v)).collect();
        for f in &factored {
            for &(p, _) in f {
                if !primes.contains(&p) {
                    primes.push(p);
                }
            }
        }
        let exps = factored
            .iter()
            .map(|f| {
                let mut e = vec![0u8; primes.len()];
                for &(p, k) in f {
                    let i = primes.iter().position(|&q| q == p).unwrap();
                    e[i] = (k % m) as u8;
                }
                e
            })
            .collect();
        Self { values, exps }
    }

    fn parity_masks(&self) -> Vec<Vec<u64>> {
        self.exps
            .iter()
            .map(|e| {
                let mut words = vec![0u64; e.len().div_ceil(64).max(1)];
                for (i, &x) in e.iter().enumerate() {
                    if x == 1 {
                        words[i / 64] |= 1 << (i % 64);
                    }
                }
                words
            })
            .collect()
    }
}

fn check_window(n: u64, hard_cap: u64) -> Result<()> {
    if hard_cap < n {
        return Err(Error::InvalidArgument(format!(
            "hard cap {hard_cap} is below n = {n}"
        )));
    }
    if hard_cap - n > MAX_WINDOW {
        return Err(Error::CapacityExceeded {
            what: "search window",
            actual: hard_cap - n,
            cap: MAX_WINDOW,
        });
    }
    Ok(())
}

fn not_found(n: u64, hard_cap: u64) -> Error {
    Error::CapacityExceeded {
        what: "search bound",
        actual: hard_cap,
        cap: hard_cap - n,
    }
}

/// Visit every subset of `masks` (Gray-code order) together with the XOR of
/// its members, starting from `start`.
fn for_each_subset(masks: &[Vec<u64>], start: &[u64], mut visit: impl FnMut(u64, &[u64])) {
    let mut acc = start.to_vec();
    visit(0, &acc);
    let mut subset = 0u64;
    for step in 1u64..(1u64 << masks.len()) {
        let bit = step.trailing_zeros() as usize;
        subset ^= 1 << bit;
        for (a, b) in acc.iter_mut().zip(&masks[bit]) {
            *a ^= *b;
        }
        visit(subset, &acc);
    }
}

fn pick(values: &[u64], subset: u64) -> impl Iterator<Item = u64> + '_ {
    values
        .iter()
        .enumerate()
        .filter(move |(i, _)| subset >> i & 1 == 1)
        .map(|(_, &v)| v)
}

/// Least `k` such that `n` times some subset of `(n, k)` times `k` is square.
pub fn brute_g(n: u64, hard_cap: u64) -> Result<BruteG> {
    check_window(n, hard_cap)?;
    if n == 0 || n.sqrt() * n.sqrt() == n {
        return Ok(BruteG {
            g: n,
            witness: vec![n],
        });
    }
    let window = Window::new((n..=hard_cap).collect(), 2);
    let masks = window.parity_masks();
    for k in n + 1..=hard_cap {
        let top = (k - n) as usize;
        let mut start = masks[0].clone();
        for (a, b) in start.iter_mut().zip(&masks[top]) {
            *a ^= *b;
        }
        let middle = &masks[1..top];
        let mut hit = None;
        for_each_subset(middle, &start, |subset, acc| {
            if hit.is_none() && acc.iter().all(|&w| w == 0) {
                hit = Some(subset);
            }
        });
        if let Some(subset) = hit {
            let mut witness = vec![n];
            witness.extend(pick(&window.values[1..top], subset));
            witness.push(k);
            assert!(is_perfect_power(&product(&witness), 2), "{witness:?}");
            return Ok(BruteG { g: k, witness });
        }
    }
    Err(not_found(n, hard_cap))
}

/// `g(n)`, the shortest corresponding sequence and the number of them, all
/// by listing every subset of `(n, g(n)]`.
pub fn brute_stats(n: u64, hard_cap: u64) -> Result<BruteStats> {
    let BruteG { g, .. } = brute_g(n, hard_cap)?;
    if g == n {
        return Ok(BruteStats {
            g,
            min_length: 1,
            count: 1,
        });
    }
    let window = Window::new((n..=g).collect(), 2);
    let masks = window.parity_masks();
    let tail = &window.values[1..];
    let mut min_length = usize::MAX;
    let mut count = 0u64;
    for_each_subset(&masks[1..], &masks[0], |subset, acc| {
        if acc.iter().all(|&w| w == 0) {
            let mut terms = vec![n];
            terms.extend(pick(tail, subset));
            assert!(is_perfect_power(&product(&terms), 2), "{terms:?}");
            count += 1;
            min_length = min_length.min(terms.len());
        }
    });
    Ok(BruteStats {
        g,
        min_length,
        count,
    })
}

pub fn brute_t(n: u64, hard_cap: u64) -> Result<usize> {
    brute_stats(n, hard_cap).map(|s| s.min_length)
}

pub fn brute_count(n: u64, hard_cap: u64) -> Result<u64> {
    brute_stats(n, hard_cap).map(|s| s.count)
}

/// Least `k > n` with `nk` square, by scanning.
pub fn brute_f(n: u64, hard_cap: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidArgument("f(0) is undefined".into()));
    }
    for k in n + 1..=hard_cap {
        let p = n as u128 * k as u128;
        let r = p.sqrt();
        if r * r == p {
            return Ok(k);
        }
    }
    Err(not_found(n, hard_cap))
}

/// Least `k` such that a weakly increasing sequence from `n` to `k`, with no
/// value repeated `m` or more times, has a perfect `m`-th power product.
/// `n` itself may repeat too.
pub fn brute_g_m(n: u64, m: u32, hard_cap: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("power must be at least 2, got {m}")));
    }
    check_window(n, hard_cap)?;
    let states = (m as f64).log2() * (hard_cap - n + 1) as f64;
    if states > MAX_WINDOW as f64 {
        return Err(Error::CapacityExceeded {
            what: "multiset states (log2)",
            actual: states.ceil() as u64,
            cap: MAX_WINDOW,
        });
    }
    if n == 0 {
        return Ok(0);
    }
    let window = Window::new((n..=hard_cap).collect(), m);
    let width = window.exps[0].len();
    for k in n..=hard_cap {
        let top = (k - n) as usize;
        let mut acc = vec![0u8; width];
        let mut mult = vec![0u32; top + 1];
        if multiset_search(&window, m, top, 0, &mut acc, &mut mult) {
            let mut terms = Vec::new();
            for (i, &c) in mult.iter().enumerate() {
                terms.extend(std::iter::repeat_n(window.values[i], c as usize));
            }
            assert!(is_perfect_power(&product(&terms), m), "{terms:?}");
            return Ok(k);
        }
    }
    Err(not_found(n, hard_cap))
}

fn multiset_search(
    w: &Window,
    m: u32,
    top: usize,
    i: usize,
    acc: &mut Vec<u8>,
    mult: &mut [u32],
) -> bool {
    if i > top {
        return acc.iter().all(|&x| x == 0);
    }
    // first and last value must appear at least once
    let lo = if i == 0 || i == top { 1 } else { 0 };
    for c in lo..m {
        let saved = acc.clone();
        for (a, &e) in acc.iter_mut().zip(&w.exps[i]) {
            *a = ((*a as u32 + c * e as u32) % m) as u8;
        }
        mult[i] = c;
        if multiset_search(w, m, top, i + 1, acc, mult) {
            return true;
        }
        *acc = saved;
        mult[i] = 0;
    }
    false
}

/// Least `k` such that some increasing sequence `n < ... < k` has a square
/// least common multiple.
pub fn brute_lcm_variant(n: u64, hard_cap: u64) -> Result<u64> {
    check_window(n, hard_cap)?;
    if n.sqrt() * n.sqrt() == n {
        return Ok(n);
    }
    for k in n + 1..=hard_cap {
        let middle: Vec<u64> = (n + 1..k).collect();
        let base = BigUint::from(n).lcm(&BigUint::from(k));
        if lcm_search(&middle, 0, &base) {
            return Ok(k);
        }
    }
    Err(not_found(n, hard_cap))
}

fn lcm_search(middle: &[u64], i: usize, acc: &BigUint) -> bool {
    if i == middle.len() {
        return is_perfect_power(acc, 2);
    }
    lcm_search(middle, i + 1, acc) || lcm_search(middle, i + 1, &acc.lcm(&BigUint::from(middle[i])))
}
