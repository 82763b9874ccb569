//! Index-parallel map with a sequential fallback.
//!
//! With the `parallel` feature the work is spread over the rayon pool;
//! without it, or when the caller asks for sequential execution, the same
//! closure runs in a plain loop. Output order always follows the index, so
//! reductions over the result are independent of scheduling.

/// Applies `f` to `0..n`, returning results in index order.
pub fn map_indexed<T, F>(n: usize, parallel: bool, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if parallel && n > 1 {
            use rayon::prelude::*;
            return (0..n).into_par_iter().map(f).collect();
        }
    }
    let _ = parallel;
    (0..n).map(f).collect()
}

/// Whether the crate was built with rayon support.
pub const fn available() -> bool {
    cfg!(feature = "parallel")
}
