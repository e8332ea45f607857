//! Compensated accumulators backing every series computation in the crate.
//!
//! Partial sums run up to 10^7 terms, so naive accumulation would eat the
//! digits the 1e-12 contracts elsewhere rely on. All series go through
//! [`NeumaierSum`]; power sums that could overflow go through [`LogExpSum`].

/// Kahan–Babuška–Neumaier compensated summation.
#[derive(Clone, Copy, Debug, Default)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl From<f64> for NeumaierSum {
    fn from(value: f64) -> Self {
        Self {
            sum: value,
            comp: 0.0,
        }
    }
}

/// Streaming max-shifted exponential sum: accumulates `ln Σ exp(x_k)`
/// without overflow, one exponent at a time.
///
/// The running sum is kept as `exp(shift) · Σ exp(x_k - shift)` with the
/// shift equal to the largest exponent seen so far; when a new maximum
/// arrives the accumulated sum is rescaled once.
#[derive(Clone, Copy, Debug)]
pub struct LogExpSum {
    shift: f64,
    scaled: NeumaierSum,
    count: u64,
}

impl LogExpSum {
    pub fn new() -> Self {
        Self {
            shift: f64::NEG_INFINITY,
            scaled: NeumaierSum::new(),
            count: 0,
        }
    }

    #[inline]
    pub fn add(&mut self, exponent: f64) {
        if self.count == 0 {
            self.shift = exponent;
            self.scaled = NeumaierSum::from(1.0);
        } else if exponent <= self.shift {
            self.scaled.add((exponent - self.shift).exp());
        } else {
            let rescaled = self.scaled.value() * (self.shift - exponent).exp();
            self.scaled = NeumaierSum::from(rescaled);
            self.scaled.add(1.0);
            self.shift = exponent;
        }
        self.count += 1;
    }

    /// `ln Σ exp(x_k)`; negative infinity before the first `add`.
    #[inline]
    pub fn log_sum(&self) -> f64 {
        if self.count == 0 {
            f64::NEG_INFINITY
        } else {
            self.shift + self.scaled.value().ln()
        }
    }

    pub fn count(&self) -> u64 {
        self.count
    }
}

impl Default for LogExpSum {
    fn default() -> Self {
        Self::new()
    }
}

/// Batch max-shifted `ln Σ exp(x_k)` over a slice; one pass for the max,
/// one compensated pass for the sum.
pub fn log_sum_exp(exponents: &[f64]) -> f64 {
    debug_assert!(!exponents.is_empty());
    let shift = exponents.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if shift == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let mut acc = NeumaierSum::new();
    for &x in exponents {
        acc.add((x - shift).exp());
    }
    shift + acc.value().ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neumaier_recovers_cancelled_digits() {
        let mut s = NeumaierSum::new();
        for x in [1e200, 0.1, 0.2, 0.3, -1e200] {
            s.add(x);
        }
        assert!((s.value() - 0.6).abs() < 1e-15);
    }

    #[test]
    fn neumaier_harmonic_matches_reference() {
        // H_10 = 7381/2520
        let mut s = NeumaierSum::new();
        for k in 1..=10u32 {
            s.add(1.0 / f64::from(k));
        }
        assert!((s.value() - 7381.0 / 2520.0).abs() < 1e-15);
    }

    #[test]
    fn streaming_lse_matches_batch() {
        let xs: Vec<f64> = (0..50).map(|k| (k as f64) * 13.7 - 300.0).collect();
        let mut stream = LogExpSum::new();
        for &x in &xs {
            stream.add(x);
        }
        let batch = log_sum_exp(&xs);
        assert!((stream.log_sum() - batch).abs() <= 1e-12 * batch.abs());
    }

    #[test]
    fn lse_handles_huge_exponents() {
        // ln(e^900 + e^899) = 900 + ln(1 + e^-1)
        let v = log_sum_exp(&[900.0, 899.0]);
        let expected = 900.0 + (1.0 + (-1.0f64).exp()).ln();
        assert!((v - expected).abs() < 1e-12);
    }

    #[test]
    fn lse_increasing_exponent_stream_rescales() {
        let xs: Vec<f64> = (1..=2000).map(|k| (k as f64).ln() * 2.0).collect();
        let mut stream = LogExpSum::new();
        for &x in &xs {
            stream.add(x);
        }
        let batch = log_sum_exp(&xs);
        assert!((stream.log_sum() - batch).abs() <= 1e-12 * batch.abs());
    }
}
