//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature the helpers use rayon unless the calling
//! thread has selected [`Mode::Sequential`]. Results never depend on the mode.

use std::cell::Cell;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Parallel,
    Sequential,
}

thread_local! {
    static MODE: Cell<Mode> = const { Cell::new(Mode::Parallel) };
}

pub fn mode() -> Mode {
    if cfg!(feature = "parallel") {
        MODE.with(|m| m.get())
    } else {
        Mode::Sequential
    }
}

/// Runs `f` with the given mode on the current thread, restoring the old one.
pub fn with_mode<T>(mode: Mode, f: impl FnOnce() -> T) -> T {
    let old = MODE.with(|m| m.replace(mode));
    let out = f();
    MODE.with(|m| m.set(old));
    out
}

/// First (by index) `Some` produced by `f`.
pub fn find_map_first<T, R, F>(items: &[T], f: F) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode() == Mode::Parallel {
        use rayon::prelude::*;
        return items.par_iter().find_map_first(f);
    }
    items.iter().find_map(f)
}

/// Order-preserving map.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode() == Mode::Parallel {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}
