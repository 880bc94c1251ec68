//! Compensated (Kahan-Babuska-Neumaier) accumulation.

/// Running sum that recycles the rounding error of every addition, plus a
/// companion sum of absolute values for noise-floor estimates.
#[derive(Clone, Copy, Debug, Default)]
pub struct KahanSum {
    sum: f64,
    compensation: f64,
    abs_sum: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
        self.abs_sum += value.abs();
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }

    /// Sum of `|value|` over everything added; the roundoff noise floor
    /// of [`value`](Self::value) is a few ulps of this.
    #[inline]
    pub fn abs_value(&self) -> f64 {
        self.abs_sum
    }
}
