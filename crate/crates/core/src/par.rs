//! Data-parallel helpers. With the `parallel` feature these run on the
//! current rayon pool; without it they are plain sequential loops. Output
//! order is the index order in both cases.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// `(0..n).map(f).collect()`, possibly in parallel.
pub fn map_range<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// `items.iter().map(f).collect()`, possibly in parallel.
pub fn map_slice<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Sums `values` in fixed chunks of 1024, left to right, so the rounding
/// pattern is the same for every worker count.
pub fn ordered_sum(values: &[f64]) -> f64 {
    values
        .chunks(1024)
        .map(|chunk| chunk.iter().sum::<f64>())
        .fold(0.0, |acc, s| acc + s)
}

/// Number of workers in the active pool (1 without the `parallel` feature).
pub fn current_workers() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}

/// Runs `f` on a dedicated pool of `threads` workers. Sequential builds
/// ignore the thread count.
pub fn with_threads<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    {
        match rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        f()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keeps_index_order() {
        let v = map_range(1000, |i| i * i);
        assert!(v.iter().enumerate().all(|(i, &x)| x == i * i));
        let w = map_slice(&v, |&x| x + 1);
        assert_eq!(w[999], 999 * 999 + 1);
    }

    #[test]
    fn worker_count_does_not_change_sums() {
        let data: Vec<f64> = (0..5000).map(|i| (i as f64).sin() * 1e-3).collect();
        let a = with_threads(1, || ordered_sum(&map_slice(&data, |x| x * 3.0)));
        let b = with_threads(4, || ordered_sum(&map_slice(&data, |x| x * 3.0)));
        assert_eq!(a.to_bits(), b.to_bits());
    }
}
