//! Empirical lower bounds on Hardy constants: maximize the finite-window
//! quotient `Σ M(a₁..aₙ) / Σ aₙ` over parametric sequence families.
//!
//! Any finite-window quotient is a true lower bound for the Hardy
//! constant (append a vanishing tail to see the window inherits the
//! infinite inequality), so the supremum over a family grid is certified
//! up to rounding. The truncated-harmonic family is the canonical
//! near-extremizer for power means; geometric and power-law families are
//! included to expose non-extremal behaviour.

use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::means::MeanSpec;
use crate::stream::{hardy_ratio, transform, PrefixState, SequenceSpec};
use crate::sum::NeumaierSum;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Parametric sequence family searched by the estimator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SequenceFamily {
    /// aₙ = rⁿ⁻¹ over the ratio r ∈ (0, 1).
    #[serde(rename = "geometric_r")]
    GeometricRatio,
    /// aₙ = n^(−β) over the exponent β > 1.
    #[serde(rename = "powerlaw_beta")]
    PowerLawExponent,
    /// Truncated harmonic over the cutoff N, with tail delta 1e-9/N so the
    /// tail stays below the reporting slack.
    #[serde(rename = "truncharmonic_N")]
    TruncatedHarmonicCutoff,
}

impl SequenceFamily {
    pub fn token(&self) -> &'static str {
        match self {
            SequenceFamily::GeometricRatio => "geometric_r",
            SequenceFamily::PowerLawExponent => "powerlaw_beta",
            SequenceFamily::TruncatedHarmonicCutoff => "truncharmonic_N",
        }
    }
}

impl FromStr for SequenceFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "geometric_r" => Ok(SequenceFamily::GeometricRatio),
            "powerlaw_beta" => Ok(SequenceFamily::PowerLawExponent),
            "truncharmonic_N" => Ok(SequenceFamily::TruncatedHarmonicCutoff),
            other => Err(Error::Parse(format!(
                "unknown family '{other}' (expected geometric_r, powerlaw_beta, or truncharmonic_N)"
            ))),
        }
    }
}

impl std::fmt::Display for SequenceFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.token())
    }
}

fn family_sequence(family: SequenceFamily, param: f64) -> Result<SequenceSpec> {
    match family {
        SequenceFamily::GeometricRatio => SequenceSpec::geometric(1.0, param),
        SequenceFamily::PowerLawExponent => SequenceSpec::power_law(1.0, param),
        SequenceFamily::TruncatedHarmonicCutoff => {
            if !(param >= 1.0 && param.is_finite()) {
                return Err(Error::Parameter(format!(
                    "truncated-harmonic cutoff must be >= 1, got {param}"
                )));
            }
            let cutoff = param.round() as u64;
            SequenceSpec::truncated_harmonic(cutoff, 1e-9 / cutoff as f64)
        }
    }
}

/// Summation window for a family member: always covers the sequence's
/// mass, and never runs into subnormal underflow of the tail.
fn effective_window(seq: &SequenceSpec, n_max: u64) -> u64 {
    // Terms below 1e-300 contribute nothing at f64 precision.
    const LN_FLOOR: f64 = -690.0;
    match seq {
        SequenceSpec::Geometric { scale, ratio } => {
            let cap = 1.0 + (LN_FLOOR - scale.ln()) / ratio.ln();
            n_max.min(cap.max(1.0) as u64).max(1)
        }
        SequenceSpec::PowerLaw { scale, exponent } => {
            let cap = ((LN_FLOOR.abs() + scale.ln()) / exponent).exp();
            n_max.min(cap.max(1.0) as u64).max(1)
        }
        SequenceSpec::TruncatedHarmonic { cutoff, .. } => {
            // The window tracks the cutoff so ratios are comparable across
            // the family grid: the harmonic head in full, plus 128 tail
            // terms, which exhaust the delta mass.
            cutoff + 128
        }
        _ => n_max,
    }
}

fn ratio_at(mean: &MeanSpec, family: SequenceFamily, param: f64, n_max: u64) -> Result<(f64, u64)> {
    let seq = family_sequence(family, param)?;
    let window = effective_window(&seq, n_max);
    Ok((hardy_ratio(mean, &seq, window)?.ratio, window))
}

/// Sequential evaluation of the window quotient at every grid parameter.
pub fn ratio_curve_seq(
    mean: &MeanSpec,
    family: SequenceFamily,
    params: &[f64],
    n_max: u64,
) -> Result<Vec<(f64, f64)>> {
    params
        .iter()
        .map(|&p| ratio_at(mean, family, p, n_max).map(|(r, _)| (p, r)))
        .collect()
}

/// Parallel evaluation of the window quotient; output order matches input.
#[cfg(feature = "parallel")]
pub fn ratio_curve_par(
    mean: &MeanSpec,
    family: SequenceFamily,
    params: &[f64],
    n_max: u64,
) -> Result<Vec<(f64, f64)>> {
    params
        .par_iter()
        .map(|&p| ratio_at(mean, family, p, n_max).map(|(r, _)| (p, r)))
        .collect()
}

fn ratio_curve(
    mean: &MeanSpec,
    family: SequenceFamily,
    params: &[f64],
    n_max: u64,
) -> Result<Vec<(f64, f64)>> {
    #[cfg(feature = "parallel")]
    {
        ratio_curve_par(mean, family, params, n_max)
    }
    #[cfg(not(feature = "parallel"))]
    {
        ratio_curve_seq(mean, family, params, n_max)
    }
}

/// Result of a family search.
#[derive(Clone, Debug, Serialize)]
pub struct FamilySearchResult {
    pub family: String,
    pub best_params: Vec<f64>,
    pub best_ratio: f64,
    /// (parameter, ratio) samples, sorted by parameter; includes the
    /// refinement samples, so `best_ratio` is the curve maximum.
    pub ratio_curve: Vec<(f64, f64)>,
    pub n_max_used: u64,
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// One golden-section refinement pass maximizing `f` on `[a, b]` down to
/// the given parameter tolerance; every evaluation is recorded.
fn golden_refine(
    mut f: impl FnMut(f64) -> Result<f64>,
    mut a: f64,
    mut b: f64,
    tol: f64,
    samples: &mut Vec<(f64, f64)>,
) -> Result<()> {
    if b <= a || tol <= 0.0 {
        return Ok(());
    }
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c)?;
    samples.push((c, fc));
    let mut fd = f(d)?;
    samples.push((d, fd));
    while b - a > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c)?;
            samples.push((c, fc));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d)?;
            samples.push((d, fd));
        }
    }
    Ok(())
}

/// Evaluate the window quotient on the grid, refine once around the best
/// grid point by golden section (tolerance: local grid step / 16), and
/// report the supremum found — a certified lower bound on the Hardy
/// constant of `mean`.
pub fn estimate_hardy_lower_bound(
    mean: &MeanSpec,
    family: SequenceFamily,
    param_grid: &[f64],
    n_max: u64,
) -> Result<FamilySearchResult> {
    if param_grid.is_empty() {
        return Err(Error::Parameter(
            "estimator needs a non-empty parameter grid".into(),
        ));
    }
    if n_max < 1000 {
        return Err(Error::Parameter(format!(
            "estimator needs n_max >= 1000, got {n_max}"
        )));
    }
    let mut params = param_grid.to_vec();
    params.sort_by(f64::total_cmp);
    params.dedup();

    let mut curve = ratio_curve(mean, family, &params, n_max)?;
    let best_idx = curve
        .iter()
        .enumerate()
        .max_by(|a, b| a.1 .1.total_cmp(&b.1 .1))
        .map(|(i, _)| i)
        .expect("grid is non-empty");

    if params.len() >= 2 {
        let left = if best_idx > 0 {
            curve[best_idx - 1].0
        } else {
            curve[best_idx].0
        };
        let right = if best_idx + 1 < curve.len() {
            curve[best_idx + 1].0
        } else {
            curve[best_idx].0
        };
        if right > left {
            let step = 0.5 * (right - left);
            golden_refine(
                |p| ratio_at(mean, family, p, n_max).map(|(r, _)| r),
                left,
                right,
                step / 16.0,
                &mut curve,
            )?;
        }
    }

    curve.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (best_param, best_ratio) = curve
        .iter()
        .copied()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .expect("curve is non-empty");
    let n_max_used = curve
        .iter()
        .map(|&(p, _)| {
            family_sequence(family, p)
                .map(|s| effective_window(&s, n_max))
                .unwrap_or(n_max)
        })
        .max()
        .unwrap_or(n_max);

    Ok(FamilySearchResult {
        family: family.token().to_string(),
        best_params: vec![best_param],
        best_ratio,
        ratio_curve: curve,
        n_max_used,
    })
}

/// Reproduction of the quasi-arithmetic counterexample: with the
/// log/affine splice generator and aₙ = N²/n², the first N prefix means
/// already sum past N²·ln N, and the window quotient at n_cut = 100·N
/// exceeds (6/π²)·ln N − 0.1. Both bounds are reported, not asserted.
#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleReport {
    #[serde(rename = "N")]
    pub n: u64,
    pub n_cut: u64,
    #[serde(rename = "partial_sum_N")]
    pub partial_sum_n: f64,
    /// N²·ln N
    pub lower_bound: f64,
    pub meets_partial_bound: bool,
    pub full_ratio: f64,
    /// (6/π²)·ln N
    pub bound_6pi2: f64,
    /// full_ratio ≥ bound_6pi2 − 0.1
    pub meets_ratio_bound: bool,
}

pub fn reproduce_counterexample(n_big: u64) -> Result<CounterexampleReport> {
    if n_big < 2 {
        return Err(Error::Parameter(format!(
            "counterexample needs N >= 2, got {n_big}"
        )));
    }
    let mean = MeanSpec::quasi_arithmetic(Generator::LogLinear);
    let seq = SequenceSpec::scaled_squares(n_big)?;
    let n_cut = 100 * n_big;

    let mut state = PrefixState::new(&mean);
    let mut operator_sum = NeumaierSum::new();
    let mut l1_sum = NeumaierSum::new();
    let mut partial_sum_n = f64::NAN;
    for n in 1..=n_cut {
        let a = seq.term(n)?;
        state.push(a)?;
        operator_sum.add(state.current().expect("pushed at least one term"));
        l1_sum.add(a);
        if n == n_big {
            partial_sum_n = operator_sum.value();
        }
    }

    let nf = n_big as f64;
    let lower_bound = nf * nf * nf.ln();
    let full_ratio = operator_sum.value() / l1_sum.value();
    let bound_6pi2 = 6.0 / (std::f64::consts::PI * std::f64::consts::PI) * nf.ln();
    Ok(CounterexampleReport {
        n: n_big,
        n_cut,
        partial_sum_n,
        lower_bound,
        meets_partial_bound: partial_sum_n >= lower_bound,
        full_ratio,
        bound_6pi2,
        meets_ratio_bound: full_ratio >= bound_6pi2 - 0.1,
    })
}

/// Prefix mean of aₖ = 2^(1−k) under G_{p,q} against the closed-form limit
/// `((1−2^(−q))/(1−2^(−p)))^(1/(p−q))`.
#[derive(Clone, Debug, Serialize)]
pub struct GiniLimitReport {
    pub p: f64,
    pub q: f64,
    pub n: u64,
    pub prefix_mean: f64,
    pub closed_form: f64,
    pub abs_err: f64,
}

pub fn reproduce_gini_limit(p: f64, q: f64, n: u64) -> Result<GiniLimitReport> {
    let in_unit = |x: f64| x > 0.0 && x < 1.0;
    if !in_unit(p) || !in_unit(q) || p == q {
        return Err(Error::Parameter(format!(
            "gini limit needs p, q in (0,1) with p != q, got ({p}, {q})"
        )));
    }
    if n == 0 {
        return Err(Error::Parameter("gini limit needs n >= 1".into()));
    }
    let seq = SequenceSpec::geometric(1.0, 0.5)?;
    let prefix = transform(&MeanSpec::gini(p, q), &seq, n)?;
    let prefix_mean = *prefix.last().expect("n >= 1");
    let closed_form = ((1.0 - (-q).exp2()) / (1.0 - (-p).exp2())).powf(1.0 / (p - q));
    Ok(GiniLimitReport {
        p,
        q,
        n,
        prefix_mean,
        closed_form,
        abs_err: (prefix_mean - closed_form).abs(),
    })
}
