//! Minimum length `T(n)` of a corresponding sequence for `g(n)`.
//!
//! Corresponding sequences are the particular solution XOR the null space
//! of `v(n+1), ..., v(g)`. Columns outside the support of every null vector
//! take the same value in all of them, so they are fixed in or fixed out.
//! What remains is a minimum-weight search over the free columns, done as
//! an iterative-deepening DFS that settles primes from largest to smallest:
//! every free column is assigned to the largest prime with odd exponent in
//! it, and at each prime's stage we pick a subset of its columns that
//! leaves that prime with even parity.

use crate::bits::BitVec;
use crate::error::Result;
use crate::sieve::SpfSieve;

use super::{solve_system, Solved};

pub fn min_length(n: u64, sieve: &SpfSieve) -> Result<usize> {
    let solved = solve_system(n, sieve)?;
    Ok(min_length_of(&solved, sieve))
}

pub(crate) fn min_length_of(solved: &Solved, sieve: &SpfSieve) -> usize {
    let Some(elim) = &solved.eliminator else {
        return 1;
    };
    let n = solved.result.n;
    let id_of = |pos: usize| n + 1 + pos as u64;
    let vector = |pos: usize| sieve.exponent_vector(id_of(pos)).expect("column in sieve range");

    let mut free = BitVec::new();
    for c in elim.null_combinations() {
        for p in c.iter_ones() {
            free.set(p, true);
        }
    }

    let mut target = sieve.exponent_vector(n).expect("n in sieve range");
    let mut fixed_in = 0usize;
    let mut upper = 0usize;
    for p in solved.particular_positions.iter_ones() {
        if free.get(p) {
            upper += 1;
        } else {
            fixed_in += 1;
            target.xor_assign(&vector(p));
        }
    }

    // zero columns (squares) never shorten a solution
    let columns: Vec<BitVec> = free
        .iter_ones()
        .map(|p| vector(p).into_bits())
        .filter(|v| !v.is_zero())
        .collect();
    1 + fixed_in + MinWeight::new(&columns, target.bits()).solve(upper)
}

/// Fixed-width bitset over the local prime numbering.
#[derive(Clone, Debug)]
struct Mask(Vec<u64>);

impl Mask {
    fn zero(words: usize) -> Self {
        Self(vec![0; words])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        (self.0[i / 64] >> (i % 64)) & 1 == 1
    }

    fn xor(&mut self, other: &Mask) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a ^= *b;
        }
    }

    fn ones_from(&self, start: usize) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .skip(start / 64)
            .flat_map(move |(wi, &w)| {
                let mut rest = if wi == start / 64 {
                    w & (!0u64 << (start % 64))
                } else {
                    w
                };
                std::iter::from_fn(move || {
                    if rest == 0 {
                        return None;
                    }
                    let tz = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * 64 + tz)
                })
            })
    }
}

/// Smallest number of columns XOR-ing to a target.
///
/// Primes are renumbered locally so that index 0 is the largest prime; a
/// column's stage is its smallest local index.
struct MinWeight {
    stages: usize,
    /// Columns grouped by stage.
    groups: Vec<Vec<Mask>>,
    /// Last stage at which some column touches each local prime.
    last_stage: Vec<Option<usize>>,
    /// Most primes at least as large as local prime `k` that one column can
    /// toggle.
    reach: Vec<usize>,
    target: Mask,
}

impl MinWeight {
    fn new(columns: &[BitVec], target: &BitVec) -> Self {
        let mut globals: Vec<usize> = columns
            .iter()
            .flat_map(|c| c.iter_ones())
            .chain(target.iter_ones())
            .collect();
        globals.sort_unstable_by(|a, b| b.cmp(a));
        globals.dedup();
        let stages = globals.len();
        let words = stages.div_ceil(64).max(1);
        let local = |g: usize| {
            globals
                .binary_search_by(|probe| g.cmp(probe))
                .expect("global index registered")
        };
        let to_mask = |v: &BitVec| {
            let mut m = Mask::zero(words);
            for g in v.iter_ones() {
                m.set(local(g));
            }
            m
        };

        let mut groups = vec![Vec::new(); stages];
        let mut last_stage = vec![None; stages];
        let mut reach = vec![0usize; stages];
        for c in columns {
            let mask = to_mask(c);
            let ones: Vec<usize> = mask.ones_from(0).collect();
            let stage = ones[0];
            for (count, &k) in ones.iter().enumerate() {
                last_stage[k] = Some(last_stage[k].map_or(stage, |s: usize| s.max(stage)));
                reach[k] = reach[k].max(count + 1);
            }
            groups[stage].push(mask);
        }
        // a column clearing i primes >= p_k also clears at most i primes >= p_j for j > k
        for k in 1..stages {
            reach[k] = reach[k].max(reach[k - 1]);
        }
        Self {
            stages,
            groups,
            last_stage,
            reach,
            target: to_mask(target),
        }
    }

    /// `upper` is the weight of a known solution.
    fn solve(&self, upper: usize) -> usize {
        let mut state = self.target.clone();
        let Some(start) = self.lower_bound(&state, 0) else {
            unreachable!("a known solution exists");
        };
        for budget in start..upper {
            if self.stage(0, &mut state, budget) {
                return budget;
            }
        }
        upper
    }

    /// Columns still needed to clear the odd primes at or after `stage`, or
    /// `None` if some odd prime can no longer be cleared.
    fn lower_bound(&self, state: &Mask, stage: usize) -> Option<usize> {
        let mut lb = 0;
        for (seen, k) in state.ones_from(stage).enumerate() {
            match self.last_stage[k] {
                Some(last) if last >= stage => {}
                _ => return None,
            }
            lb = lb.max((seen + 1).div_ceil(self.reach[k]));
        }
        Some(lb)
    }

    /// Invariant: every local prime before `stage` has even parity in `state`.
    fn stage(&self, mut stage: usize, state: &mut Mask, budget: usize) -> bool {
        while stage < self.stages && self.groups[stage].is_empty() {
            if state.get(stage) {
                return false;
            }
            stage += 1;
        }
        if stage == self.stages {
            return true;
        }
        match self.lower_bound(state, stage) {
            Some(lb) if lb <= budget => {}
            _ => return false,
        }
        self.pick(stage, 0, state, budget)
    }

    fn pick(&self, stage: usize, from: usize, state: &mut Mask, budget: usize) -> bool {
        let group = &self.groups[stage];
        if from == group.len() {
            return !state.get(stage) && self.stage(stage + 1, state, budget);
        }
        if self.pick(stage, from + 1, state, budget) {
            return true;
        }
        if budget == 0 {
            return false;
        }
        state.xor(&group[from]);
        let found = self.pick(stage, from + 1, state, budget - 1);
        state.xor(&group[from]);
        found
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_min(columns: &[BitVec], target: &BitVec) -> Option<usize> {
        (0u32..1 << columns.len())
            .filter(|mask| {
                let mut acc = target.clone();
                for (i, c) in columns.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        acc.xor_assign(c);
                    }
                }
                acc.is_zero()
            })
            .map(|m| m.count_ones() as usize)
            .min()
    }

    #[test]
    fn min_weight_matches_exhaustive_search() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let bits = rng.gen_range(1..12);
            let ncols = rng.gen_range(1..12);
            let columns: Vec<BitVec> = (0..ncols)
                .map(|_| BitVec::from_ones((0..bits).filter(|_| rng.gen_bool(0.3))))
                .filter(|c| !c.is_zero())
                .collect();
            // make the target reachable
            let mut target = BitVec::new();
            let mut weight = 0;
            for c in &columns {
                if rng.gen_bool(0.5) {
                    target.xor_assign(c);
                    weight += 1;
                }
            }
            let expected = naive_min(&columns, &target).unwrap();
            let got = MinWeight::new(&columns, &target).solve(weight);
            assert_eq!(got, expected, "{columns:?} -> {target:?}");
        }
    }

    #[test]
    fn small_values() {
        let s = SpfSieve::for_range(6000).unwrap();
        let t = |n| min_length(n, &s).unwrap();
        assert_eq!(t(1), 1);
        assert_eq!(t(0), 1);
        assert_eq!(t(2), 3);
        assert_eq!(t(8), 4);
        assert_eq!(t(14), 5);
        assert_eq!(t(52), 6);
        assert_eq!(t(99), 7);
        assert_eq!(t(589), 8);
        assert_eq!(t(5301), 14);
    }
}
