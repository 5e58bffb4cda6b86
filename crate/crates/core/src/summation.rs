//! Compensated accumulation with a fixed reduction order.
//!
//! Every mode sum in the crate goes through [`CompensatedSum`], fed in
//! ascending mode order. Parallel kernels produce one partial per outer
//! index and combine the partials sequentially, so results do not depend
//! on the number of worker threads.

/// Error-free transformation: `a + b = s + e` exactly.
#[inline]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// Neumaier-style running sum carrying the rounding error in a second word.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompensatedSum {
    hi: f64,
    lo: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let (s, e) = two_sum(self.hi, value);
        self.hi = s;
        self.lo += e;
    }

    /// Merge another accumulator, keeping both of its words.
    pub fn merge(&mut self, other: &Self) {
        self.add(other.hi);
        self.lo += other.lo;
    }

    pub fn value(&self) -> f64 {
        self.hi + self.lo
    }

    /// Unevaluated pair `(hi, lo)` with `value ~ hi + lo`.
    pub fn parts(&self) -> (f64, f64) {
        (self.hi, self.lo)
    }
}

impl Extend<f64> for CompensatedSum {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for v in iter {
            self.add(v);
        }
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Self::new();
        acc.extend(iter);
        acc
    }
}

/// Compensated sum of an iterator, in iteration order.
pub fn compensated<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<CompensatedSum>().value()
}

/// Combine per-chunk partials in their given (ascending) order.
pub fn reduce_ordered(partials: &[CompensatedSum]) -> f64 {
    let mut total = CompensatedSum::new();
    for p in partials {
        total.merge(p);
    }
    total.value()
}
