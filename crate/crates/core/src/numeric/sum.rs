/// Compensated (Kahan–Babuška–Neumaier) summation that also tracks the
/// magnitude sum needed to bound cancellation.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
    abs_sum: f64,
    max_abs: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
        self.abs_sum += x.abs();
        self.max_abs = self.max_abs.max(x.abs());
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }

    /// Sum of the absolute values of the added terms.
    pub fn abs_sum(&self) -> f64 {
        self.abs_sum
    }

    pub fn max_abs(&self) -> f64 {
        self.max_abs
    }

    /// Relative rounding-error bound `eps * sum|x_i| / |sum x_i|`; infinite when the sum is zero.
    pub fn cancellation_bound(&self) -> f64 {
        let v = self.value().abs();
        if v == 0.0 {
            f64::INFINITY
        } else {
            2.0 * f64::EPSILON * self.abs_sum / v
        }
    }
}

/// Streaming log-sum-exp over positive terms given by their logarithms.
#[derive(Debug, Clone, Copy)]
pub struct LogSum {
    shift: f64,
    scaled: f64,
}

impl Default for LogSum {
    fn default() -> Self {
        LogSum {
            shift: f64::NEG_INFINITY,
            scaled: 0.0,
        }
    }
}

impl LogSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_ln(&mut self, ln_x: f64) {
        if ln_x == f64::NEG_INFINITY {
            return;
        }
        if ln_x > self.shift {
            self.scaled = self.scaled * (self.shift - ln_x).exp() + 1.0;
            self.shift = ln_x;
        } else {
            self.scaled += (ln_x - self.shift).exp();
        }
    }

    /// Logarithm of the accumulated sum (`-inf` when empty).
    pub fn ln(&self) -> f64 {
        if self.scaled == 0.0 {
            f64::NEG_INFINITY
        } else {
            self.shift + self.scaled.ln()
        }
    }
}
