//! Streaming averaging operator: consume a sequence, emit
//! `M(a₁,…,aₙ)` for every n at O(1) amortized cost per element.
//!
//! [`PrefixState`] keeps mean-specific compensated accumulators:
//! quasi-arithmetic means keep `Σ f(aₖ)`, power means and Gini means keep
//! their power sums in the log domain (max-shifted, so decaying sequences
//! with large exponents never overflow mid-stream), and the Gini p = q
//! branch keeps the softmax-weighted pair behind `Σ aₖ^p` and
//! `Σ aₖ^p ln aₖ`. After n pushes `current()` matches the batch
//! [`eval`](crate::means::eval) of the prefix to relative 1e-12.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::means::{MeanSpec, GINI_DEGENERATE_GAP};
use crate::sum::{LogExpSum, NeumaierSum};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// A finite or lazily generated positive sequence.
#[derive(Clone, Debug, PartialEq)]
pub enum SequenceSpec {
    /// Fixed list of positive values; pulling past the end is an error.
    Explicit {
        values: Vec<f64>,
        /// Path the values were loaded from, if any (kept for re-serialization).
        source: Option<String>,
    },
    /// aₙ = 1/n. Not summable.
    Harmonic,
    /// aₙ = c·rⁿ⁻¹ with c > 0, 0 < r < 1.
    Geometric { scale: f64, ratio: f64 },
    /// aₙ = c·n^(−β) with c > 0, β > 1.
    PowerLaw { scale: f64, exponent: f64 },
    /// aₙ = N²/n².
    ScaledSquares { size: u64 },
    /// aₙ = 1/n up to the cutoff, then δ·2^(−(n−N)): a harmonic head with a
    /// summable, negligible tail that stays inside the domain.
    TruncatedHarmonic { cutoff: u64, delta: f64 },
}

impl SequenceSpec {
    pub fn explicit(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Parameter(
                "explicit sequence must be non-empty".into(),
            ));
        }
        for (i, &v) in values.iter().enumerate() {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Domain(format!(
                    "explicit sequence entry {} (index {i}) must be strictly positive and finite",
                    v
                )));
            }
        }
        Ok(SequenceSpec::Explicit {
            values,
            source: None,
        })
    }

    pub fn geometric(scale: f64, ratio: f64) -> Result<Self> {
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::Parameter(format!(
                "geometric scale must be > 0, got {scale}"
            )));
        }
        if !(ratio > 0.0 && ratio < 1.0) {
            return Err(Error::Parameter(format!(
                "geometric ratio must lie in (0, 1), got {ratio}"
            )));
        }
        Ok(SequenceSpec::Geometric { scale, ratio })
    }

    pub fn power_law(scale: f64, exponent: f64) -> Result<Self> {
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::Parameter(format!(
                "power-law scale must be > 0, got {scale}"
            )));
        }
        if !(exponent > 1.0 && exponent.is_finite()) {
            return Err(Error::Parameter(format!(
                "power-law exponent must be > 1 for a summable sequence, got {exponent}"
            )));
        }
        Ok(SequenceSpec::PowerLaw { scale, exponent })
    }

    pub fn scaled_squares(size: u64) -> Result<Self> {
        if size == 0 {
            return Err(Error::Parameter("scaled-squares size must be >= 1".into()));
        }
        Ok(SequenceSpec::ScaledSquares { size })
    }

    pub fn truncated_harmonic(cutoff: u64, delta: f64) -> Result<Self> {
        if cutoff == 0 {
            return Err(Error::Parameter(
                "truncated-harmonic cutoff must be >= 1".into(),
            ));
        }
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(Error::Parameter(format!(
                "truncated-harmonic tail delta must be > 0, got {delta}"
            )));
        }
        Ok(SequenceSpec::TruncatedHarmonic { cutoff, delta })
    }

    /// n-th term, 1-based.
    pub fn term(&self, n: u64) -> Result<f64> {
        debug_assert!(n >= 1);
        match self {
            SequenceSpec::Explicit { values, .. } => {
                values.get((n - 1) as usize).copied().ok_or_else(|| {
                    Error::Exhausted(format!(
                        "explicit sequence has {} terms, requested term {n}",
                        values.len()
                    ))
                })
            }
            SequenceSpec::Harmonic => Ok(1.0 / n as f64),
            SequenceSpec::Geometric { scale, ratio } => {
                let v = scale * ratio.powi((n - 1) as i32);
                nonzero_term(v, n)
            }
            SequenceSpec::PowerLaw { scale, exponent } => {
                let v = scale * (n as f64).powf(-exponent);
                nonzero_term(v, n)
            }
            SequenceSpec::ScaledSquares { size } => {
                let s = *size as f64;
                Ok((s / n as f64) * (s / n as f64))
            }
            SequenceSpec::TruncatedHarmonic { cutoff, delta } => {
                if n <= *cutoff {
                    Ok(1.0 / n as f64)
                } else {
                    let v = delta * (-((n - cutoff) as f64)).exp2();
                    nonzero_term(v, n)
                }
            }
        }
    }

    /// Number of terms, when finite.
    pub fn len(&self) -> Option<u64> {
        match self {
            SequenceSpec::Explicit { values, .. } => Some(values.len() as u64),
            _ => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    /// Whether Σ aₙ converges (explicit sequences are finite, hence summable).
    pub fn is_summable(&self) -> bool {
        !matches!(self, SequenceSpec::Harmonic)
    }

    /// Grammar string (`harmonic`, `geometric:<c>,<r>`, ...).
    pub fn describe(&self) -> String {
        match self {
            SequenceSpec::Explicit { values, source } => match source {
                Some(path) => format!("explicit:@{path}"),
                None => {
                    let body: Vec<String> = values.iter().map(|v| format!("{v:?}")).collect();
                    format!("explicit:{}", body.join(","))
                }
            },
            SequenceSpec::Harmonic => "harmonic".into(),
            SequenceSpec::Geometric { scale, ratio } => format!("geometric:{scale:?},{ratio:?}"),
            SequenceSpec::PowerLaw { scale, exponent } => {
                format!("powerlaw:{scale:?},{exponent:?}")
            }
            SequenceSpec::ScaledSquares { size } => format!("scaledsquares:{size}"),
            SequenceSpec::TruncatedHarmonic { cutoff, delta } => {
                format!("truncharmonic:{cutoff},{delta:?}")
            }
        }
    }
}

fn nonzero_term(v: f64, n: u64) -> Result<f64> {
    if v > 0.0 {
        Ok(v)
    } else {
        Err(Error::Domain(format!(
            "sequence term at n={n} underflowed to {v}; shorten the window"
        )))
    }
}

impl std::fmt::Display for SequenceSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.describe())
    }
}

/// Max-shifted softmax accumulator for the equal-parameter Gini branch:
/// keeps `Σ exp(xₖ − shift)` and `Σ exp(xₖ − shift)·wₖ` with the shift
/// tracking the largest exponent, so `Σ aᵏ^p` never overflows.
#[derive(Clone, Copy, Debug)]
struct ShiftedWeightedSum {
    shift: f64,
    den: NeumaierSum,
    num: NeumaierSum,
    count: u64,
}

impl ShiftedWeightedSum {
    fn new() -> Self {
        ShiftedWeightedSum {
            shift: f64::NEG_INFINITY,
            den: NeumaierSum::new(),
            num: NeumaierSum::new(),
            count: 0,
        }
    }

    fn add(&mut self, exponent: f64, weight: f64) {
        if self.count == 0 {
            self.shift = exponent;
            self.den = NeumaierSum::from(1.0);
            self.num = NeumaierSum::from(weight);
        } else if exponent <= self.shift {
            let e = (exponent - self.shift).exp();
            self.den.add(e);
            self.num.add(e * weight);
        } else {
            let scale = (self.shift - exponent).exp();
            self.den = NeumaierSum::from(self.den.value() * scale);
            self.num = NeumaierSum::from(self.num.value() * scale);
            self.den.add(1.0);
            self.num.add(weight);
            self.shift = exponent;
        }
        self.count += 1;
    }

    /// Shift-invariant quotient `Σ exp(xₖ)·wₖ / Σ exp(xₖ)`.
    fn quotient(&self) -> f64 {
        self.num.value() / self.den.value()
    }
}

/// Mean-specific accumulators (see module docs). Power sums are kept in
/// the log domain so decaying sequences with large |exponent| do not
/// overflow mid-stream.
#[derive(Clone, Debug)]
enum Accum {
    /// ln Σ aₖ^α for P_α, α ≠ 0.
    PowerSum { alpha: f64, lse: LogExpSum },
    /// Σ ln aₖ for the geometric mean (P₀ / qa:log).
    LogMean { sum: NeumaierSum },
    /// Log-domain power sums for G_{p,q}, p ≠ q.
    GiniDistinct {
        p: f64,
        q: f64,
        lse_p: LogExpSum,
        lse_q: LogExpSum,
    },
    /// Softmax-weighted log average for G_{p,p}.
    GiniEqual {
        p: f64,
        weighted: ShiftedWeightedSum,
    },
    /// Σ f(aₖ) for a general generator.
    QuasiArithmetic { gen: Generator, sum: NeumaierSum },
}

/// Streaming prefix-mean state. Push terms one at a time; `current()`
/// yields the mean of everything pushed so far.
#[derive(Clone, Debug)]
pub struct PrefixState {
    mean: MeanSpec,
    accum: Accum,
    count: u64,
    min_seen: f64,
    max_seen: f64,
}

impl PrefixState {
    pub fn new(mean: &MeanSpec) -> Self {
        let accum = match mean {
            MeanSpec::Power(alpha) if *alpha == 0.0 => Accum::LogMean {
                sum: NeumaierSum::new(),
            },
            MeanSpec::Power(alpha) => Accum::PowerSum {
                alpha: *alpha,
                lse: LogExpSum::new(),
            },
            MeanSpec::Gini { p, q } => {
                if (p - q).abs() <= GINI_DEGENERATE_GAP {
                    Accum::GiniEqual {
                        p: 0.5 * (p + q),
                        weighted: ShiftedWeightedSum::new(),
                    }
                } else {
                    Accum::GiniDistinct {
                        p: *p,
                        q: *q,
                        lse_p: LogExpSum::new(),
                        lse_q: LogExpSum::new(),
                    }
                }
            }
            MeanSpec::QuasiArithmetic(gen) => match gen {
                Generator::Power(p) => Accum::PowerSum {
                    alpha: *p,
                    lse: LogExpSum::new(),
                },
                Generator::Log => Accum::LogMean {
                    sum: NeumaierSum::new(),
                },
                other => Accum::QuasiArithmetic {
                    gen: other.clone(),
                    sum: NeumaierSum::new(),
                },
            },
        };
        PrefixState {
            mean: mean.clone(),
            accum,
            count: 0,
            min_seen: f64::INFINITY,
            max_seen: f64::NEG_INFINITY,
        }
    }

    pub fn push(&mut self, value: f64) -> Result<()> {
        self.mean.check_entry(value)?;
        match &mut self.accum {
            Accum::PowerSum { alpha, lse } => lse.add(*alpha * value.ln()),
            Accum::LogMean { sum } => sum.add(value.ln()),
            Accum::GiniDistinct { p, q, lse_p, lse_q } => {
                let ln_v = value.ln();
                lse_p.add(*p * ln_v);
                lse_q.add(*q * ln_v);
            }
            Accum::GiniEqual { p, weighted } => {
                let ln_v = value.ln();
                weighted.add(*p * ln_v, ln_v);
            }
            Accum::QuasiArithmetic { gen, sum } => sum.add(gen.forward(value)),
        }
        self.count += 1;
        self.min_seen = self.min_seen.min(value);
        self.max_seen = self.max_seen.max(value);
        Ok(())
    }

    /// `M(a₁,…,aₙ)` over everything pushed so far; `None` before the first push.
    pub fn current(&self) -> Option<f64> {
        if self.count == 0 {
            return None;
        }
        let n = self.count as f64;
        let raw = match &self.accum {
            Accum::PowerSum { alpha, lse } => ((lse.log_sum() - n.ln()) / *alpha).exp(),
            Accum::LogMean { sum } => (sum.value() / n).exp(),
            Accum::GiniDistinct { p, q, lse_p, lse_q } => {
                ((lse_p.log_sum() - lse_q.log_sum()) / (p - q)).exp()
            }
            Accum::GiniEqual { weighted, .. } => weighted.quotient().exp(),
            Accum::QuasiArithmetic { gen, sum } => gen.inverse(sum.value() / n),
        };
        Some(raw.clamp(self.min_seen, self.max_seen))
    }

    pub fn len(&self) -> u64 {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }
}

/// Prefix means of the first `n_max` terms:
/// `(a₁, M(a₁,a₂), M(a₁,a₂,a₃), …)`.
pub fn transform(mean: &MeanSpec, seq: &SequenceSpec, n_max: u64) -> Result<Vec<f64>> {
    mean.validate()?;
    if n_max == 0 {
        return Err(Error::Parameter("transform needs n_max >= 1".into()));
    }
    let mut state = PrefixState::new(mean);
    let mut out = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        state.push(seq.term(n)?)?;
        out.push(state.current().expect("pushed at least one term"));
    }
    Ok(out)
}

/// Conjugated operator for ℓ_p, p > 1: the k-th output is
/// `M(a₁^p, …, a_k^p)^(1/p)`.
pub fn conjugate_transform(
    mean: &MeanSpec,
    p: f64,
    seq: &SequenceSpec,
    n_max: u64,
) -> Result<Vec<f64>> {
    mean.validate()?;
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::Parameter(format!(
            "conjugate transform requires p in (1, +inf), got {p}"
        )));
    }
    if n_max == 0 {
        return Err(Error::Parameter(
            "conjugate transform needs n_max >= 1".into(),
        ));
    }
    let mut state = PrefixState::new(mean);
    let mut out = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        state.push(seq.term(n)?.powf(p))?;
        out.push(
            state
                .current()
                .expect("pushed at least one term")
                .powf(1.0 / p),
        );
    }
    Ok(out)
}

/// Partial Hardy quotient after `n_max` terms.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct HardyRatio {
    /// Σ_{n ≤ n_max} M(a₁,…,aₙ)
    pub partial_operator_sum: f64,
    /// Σ_{n ≤ n_max} aₙ
    pub partial_l1_sum: f64,
    pub ratio: f64,
}

/// Compensated partial sums of the prefix means and of the sequence, and
/// their quotient. The quotient of any finite window is a lower bound for
/// the Hardy constant of the mean.
pub fn hardy_ratio(mean: &MeanSpec, seq: &SequenceSpec, n_max: u64) -> Result<HardyRatio> {
    mean.validate()?;
    if n_max == 0 {
        return Err(Error::Parameter("hardy_ratio needs n_max >= 1".into()));
    }
    let mut state = PrefixState::new(mean);
    let mut operator_sum = NeumaierSum::new();
    let mut l1_sum = NeumaierSum::new();
    for n in 1..=n_max {
        let a = seq.term(n)?;
        state.push(a)?;
        operator_sum.add(state.current().expect("pushed at least one term"));
        l1_sum.add(a);
    }
    let num = operator_sum.value();
    let den = l1_sum.value();
    Ok(HardyRatio {
        partial_operator_sum: num,
        partial_l1_sum: den,
        ratio: num / den,
    })
}

fn window_for(seq: &SequenceSpec, n_max: u64) -> u64 {
    match seq.len() {
        Some(len) => n_max.min(len),
        None => n_max,
    }
}

/// Sequential batch of [`hardy_ratio`] over many sequences; explicit
/// sequences are windowed at `min(n_max, len)`.
pub fn hardy_ratios_seq(
    mean: &MeanSpec,
    seqs: &[SequenceSpec],
    n_max: u64,
) -> Result<Vec<HardyRatio>> {
    seqs.iter()
        .map(|s| hardy_ratio(mean, s, window_for(s, n_max)))
        .collect()
}

/// Parallel batch of [`hardy_ratio`]; output order matches the input.
#[cfg(feature = "parallel")]
pub fn hardy_ratios_par(
    mean: &MeanSpec,
    seqs: &[SequenceSpec],
    n_max: u64,
) -> Result<Vec<HardyRatio>> {
    seqs.par_iter()
        .map(|s| hardy_ratio(mean, s, window_for(s, n_max)))
        .collect()
}

/// Batch of [`hardy_ratio`]; parallel when the `parallel` feature is on.
pub fn hardy_ratios(mean: &MeanSpec, seqs: &[SequenceSpec], n_max: u64) -> Result<Vec<HardyRatio>> {
    #[cfg(feature = "parallel")]
    {
        hardy_ratios_par(mean, seqs, n_max)
    }
    #[cfg(not(feature = "parallel"))]
    {
        hardy_ratios_seq(mean, seqs, n_max)
    }
}
