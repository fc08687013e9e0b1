//! Per-thread operation counters used by the benchmark report.
//!
//! Counting never influences results; the counters only observe.

use std::cell::Cell;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCounters {
    /// Scalar multiplications in `Z/NZ`.
    pub mulmods: u64,
    pub gcds: u64,
    /// Largest polynomial degree fed to a product or evaluation routine.
    pub max_poly_degree: u64,
}

thread_local! {
    static COUNTERS: Cell<OpCounters> = const { Cell::new(OpCounters { mulmods: 0, gcds: 0, max_poly_degree: 0 }) };
}

pub fn reset() {
    COUNTERS.with(|c| c.set(OpCounters::default()));
}

pub fn snapshot() -> OpCounters {
    COUNTERS.with(|c| c.get())
}

#[inline]
pub(crate) fn count_mulmods(n: u64) {
    COUNTERS.with(|c| {
        let mut v = c.get();
        v.mulmods += n;
        c.set(v);
    });
}

#[inline]
pub(crate) fn count_gcd() {
    COUNTERS.with(|c| {
        let mut v = c.get();
        v.gcds += 1;
        c.set(v);
    });
}

pub(crate) fn note_degree(deg: usize) {
    COUNTERS.with(|c| {
        let mut v = c.get();
        v.max_poly_degree = v.max_poly_degree.max(deg as u64);
        c.set(v);
    });
}
