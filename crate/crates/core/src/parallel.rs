//! Per-n fan-out for range scans.
//!
//! With the `parallel` feature (default) work is spread over the current
//! rayon pool; without it everything runs on the calling thread. Output
//! order is always ascending in n.

use std::ops::RangeInclusive;

#[cfg(feature = "parallel")]
pub fn map_range<T, F>(range: RangeInclusive<u64>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    use rayon::prelude::*;
    range.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_range<T, F>(range: RangeInclusive<u64>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    map_range_sequential(range, f)
}

pub fn map_range_sequential<T, F>(range: RangeInclusive<u64>, f: F) -> Vec<T>
where
    F: Fn(u64) -> T,
{
    range.map(f).collect()
}

/// Like [`map_range`] but stops at the first error (in n order).
pub fn try_map_range<T, E, F>(range: RangeInclusive<u64>, f: F) -> Result<Vec<T>, E>
where
    T: Send,
    E: Send,
    F: Fn(u64) -> Result<T, E> + Sync + Send,
{
    map_range(range, f).into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree() {
        let f = |n: u64| n * n % 17;
        assert_eq!(map_range(0..=5000, f), map_range_sequential(0..=5000, f));
    }

    #[test]
    fn empty_range() {
        #[allow(clippy::reversed_empty_ranges)]
        let out: Vec<u64> = map_range(5..=4, |n| n);
        assert!(out.is_empty());
    }

    #[test]
    fn first_error_wins() {
        let r: Result<Vec<u64>, u64> =
            try_map_range(0..=100, |n| if n % 30 == 29 { Err(n) } else { Ok(n) });
        assert_eq!(r, Err(29));
    }
}
