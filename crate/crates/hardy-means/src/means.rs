//! Mean descriptions and batch evaluation.
//!
//! Three families are supported: power means `P_α`, Gini means `G_{p,q}`,
//! and quasi-arithmetic means `QA_f` over a [`Generator`]. Evaluation is
//! overflow-safe (power sums switch to a max-shifted log-domain route when
//! the exponents get large) and every result is clamped into
//! `[min(a), max(a)]`, so internality holds exactly.

use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::sum::{log_sum_exp, NeumaierSum};

/// Exponent-magnitude threshold beyond which power sums move to the
/// log domain: the naive route is used while `|p|·max|ln aᵢ| ≤ 300`,
/// keeping every `aᵢ^p` comfortably inside f64 range.
pub const LOG_ROUTE_THRESHOLD: f64 = 300.0;

/// Below this parameter gap the Gini p≠q formula is a removable
/// singularity with catastrophic cancellation; the p = q branch is
/// evaluated at the midpoint instead.
pub const GINI_DEGENERATE_GAP: f64 = 1e-10;

/// Description of a mean.
#[derive(Clone, Debug, PartialEq)]
pub enum MeanSpec {
    /// Power mean `P_α`; `α = 0` is the geometric mean.
    Power(f64),
    /// Gini mean `G_{p,q}`.
    Gini { p: f64, q: f64 },
    /// Quasi-arithmetic mean over a generator.
    QuasiArithmetic(Generator),
}

impl MeanSpec {
    pub fn power(alpha: f64) -> Self {
        MeanSpec::Power(alpha)
    }

    pub fn gini(p: f64, q: f64) -> Self {
        MeanSpec::Gini { p, q }
    }

    pub fn quasi_arithmetic(gen: Generator) -> Self {
        MeanSpec::QuasiArithmetic(gen)
    }

    /// Grammar string (`power:<alpha>`, `gini:<p>,<q>`, `qa:<label>`).
    pub fn describe(&self) -> String {
        match self {
            MeanSpec::Power(alpha) => format!("power:{alpha:?}"),
            MeanSpec::Gini { p, q } => format!("gini:{p:?},{q:?}"),
            MeanSpec::QuasiArithmetic(gen) => format!("qa:{}", gen.label()),
        }
    }

    /// Open domain the entries must lie in.
    pub fn domain(&self) -> (f64, f64) {
        match self {
            MeanSpec::Power(_) | MeanSpec::Gini { .. } => (0.0, f64::INFINITY),
            MeanSpec::QuasiArithmetic(gen) => gen.domain(),
        }
    }

    /// Reject non-finite exponent parameters.
    pub fn validate(&self) -> Result<()> {
        match self {
            MeanSpec::Power(alpha) if !alpha.is_finite() => Err(Error::Parameter(format!(
                "power mean exponent must be finite, got {alpha}"
            ))),
            MeanSpec::Gini { p, q } if !(p.is_finite() && q.is_finite()) => Err(Error::Parameter(
                format!("gini mean parameters must be finite, got ({p}, {q})"),
            )),
            _ => Ok(()),
        }
    }

    /// Check a single entry against the domain.
    pub fn check_entry(&self, x: f64) -> Result<()> {
        if !x.is_finite() || x <= 0.0 {
            return Err(Error::Domain(format!(
                "mean {} requires strictly positive finite entries, got {x}",
                self.describe()
            )));
        }
        let (lo, hi) = self.domain();
        if x <= lo || x >= hi {
            return Err(Error::Domain(format!(
                "entry {x} lies outside the domain ({lo}, {hi}) of mean {}",
                self.describe()
            )));
        }
        Ok(())
    }
}

impl std::fmt::Display for MeanSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.describe())
    }
}

/// Validate a vector for a mean and return its (min, max).
fn validate(mean: &MeanSpec, entries: &[f64]) -> Result<(f64, f64)> {
    mean.validate()?;
    if entries.is_empty() {
        return Err(Error::Parameter(
            "mean of an empty vector is undefined".into(),
        ));
    }
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &x in entries {
        mean.check_entry(x)?;
        lo = lo.min(x);
        hi = hi.max(x);
    }
    Ok((lo, hi))
}

/// Evaluate `M(a₁,…,aₙ)`.
///
/// The result satisfies `min(a) ≤ eval ≤ max(a)` exactly; entries outside
/// the mean's domain yield [`Error::Domain`].
pub fn eval(mean: &MeanSpec, entries: &[f64]) -> Result<f64> {
    let (lo, hi) = validate(mean, entries)?;
    let raw = match mean {
        MeanSpec::Power(alpha) => power_mean(*alpha, entries),
        MeanSpec::Gini { p, q } => gini_mean(*p, *q, entries),
        MeanSpec::QuasiArithmetic(gen) => qa_mean(gen, entries),
    };
    Ok(raw.clamp(lo, hi))
}

/// Weighted two-variable quasi-arithmetic mean
/// `f⁻¹((w₁·f(a₁) + w₂·f(a₂))/(w₁+w₂))`.
pub fn eval_weighted_qa2(gen: &Generator, a1: f64, a2: f64, w1: f64, w2: f64) -> Result<f64> {
    let mean = MeanSpec::QuasiArithmetic(gen.clone());
    mean.check_entry(a1)?;
    mean.check_entry(a2)?;
    if !(w1 > 0.0 && w2 > 0.0 && w1.is_finite() && w2.is_finite()) {
        return Err(Error::Parameter(format!(
            "weights must be strictly positive and finite, got ({w1}, {w2})"
        )));
    }
    let y = (w1 * gen.forward(a1) + w2 * gen.forward(a2)) / (w1 + w2);
    Ok(gen.inverse(y).clamp(a1.min(a2), a1.max(a2)))
}

fn max_abs_log(entries: &[f64]) -> f64 {
    entries.iter().map(|a| a.ln().abs()).fold(0.0f64, f64::max)
}

fn needs_log_route(exponent: f64, entries: &[f64]) -> bool {
    exponent.abs() * max_abs_log(entries) > LOG_ROUTE_THRESHOLD
}

/// `P_α` without clamping; entries assumed valid.
pub(crate) fn power_mean(alpha: f64, entries: &[f64]) -> f64 {
    let n = entries.len() as f64;
    if alpha == 0.0 {
        let mut s = NeumaierSum::new();
        for &a in entries {
            s.add(a.ln());
        }
        (s.value() / n).exp()
    } else if needs_log_route(alpha, entries) {
        let exps: Vec<f64> = entries.iter().map(|a| alpha * a.ln()).collect();
        ((log_sum_exp(&exps) - n.ln()) / alpha).exp()
    } else {
        let mut s = NeumaierSum::new();
        for &a in entries {
            s.add(a.powf(alpha));
        }
        (s.value() / n).powf(1.0 / alpha)
    }
}

/// Evaluation route for the Gini mean; `Auto` picks the naive route unless
/// the exponents would overflow. Exposed for path-agreement verification.
#[doc(hidden)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GiniRoute {
    Auto,
    Naive,
    LogDomain,
}

/// `G_{p,q}` with an explicit route choice; validates entries. The two
/// routes agree to relative 1e-12 whenever the naive route does not
/// overflow. Exposed for path-agreement verification.
#[doc(hidden)]
pub fn gini_mean_with_route(p: f64, q: f64, entries: &[f64], route: GiniRoute) -> Result<f64> {
    let mean = MeanSpec::gini(p, q);
    let (lo, hi) = validate(&mean, entries)?;
    let raw = if (p - q).abs() <= GINI_DEGENERATE_GAP {
        gini_equal(0.5 * (p + q), entries, route)
    } else {
        gini_distinct(p, q, entries, route)
    };
    Ok(raw.clamp(lo, hi))
}

fn gini_mean(p: f64, q: f64, entries: &[f64]) -> f64 {
    if (p - q).abs() <= GINI_DEGENERATE_GAP {
        gini_equal(0.5 * (p + q), entries, GiniRoute::Auto)
    } else {
        gini_distinct(p, q, entries, GiniRoute::Auto)
    }
}

fn gini_distinct(p: f64, q: f64, entries: &[f64], route: GiniRoute) -> f64 {
    let log_route = match route {
        GiniRoute::Auto => needs_log_route(p, entries) || needs_log_route(q, entries),
        GiniRoute::Naive => false,
        GiniRoute::LogDomain => true,
    };
    if log_route {
        let xs_p: Vec<f64> = entries.iter().map(|a| p * a.ln()).collect();
        let xs_q: Vec<f64> = entries.iter().map(|a| q * a.ln()).collect();
        ((log_sum_exp(&xs_p) - log_sum_exp(&xs_q)) / (p - q)).exp()
    } else {
        let mut sp = NeumaierSum::new();
        let mut sq = NeumaierSum::new();
        for &a in entries {
            sp.add(a.powf(p));
            sq.add(a.powf(q));
        }
        (sp.value() / sq.value()).powf(1.0 / (p - q))
    }
}

/// `G_{p,p} = exp(Σ aᵢ^p ln aᵢ / Σ aᵢ^p)`.
fn gini_equal(p: f64, entries: &[f64], route: GiniRoute) -> f64 {
    let log_route = match route {
        GiniRoute::Auto => needs_log_route(p, entries),
        GiniRoute::Naive => false,
        GiniRoute::LogDomain => true,
    };
    let mut num = NeumaierSum::new();
    let mut den = NeumaierSum::new();
    if log_route {
        // Softmax weights: shift the exponents by their maximum.
        let shift = entries
            .iter()
            .map(|a| p * a.ln())
            .fold(f64::NEG_INFINITY, f64::max);
        for &a in entries {
            let w = (p * a.ln() - shift).exp();
            num.add(w * a.ln());
            den.add(w);
        }
    } else {
        for &a in entries {
            let w = a.powf(p);
            num.add(w * a.ln());
            den.add(w);
        }
    }
    (num.value() / den.value()).exp()
}

/// `QA_f` without clamping; power-like generators delegate to the power
/// mean so that `qa:power:<p>` and `power:<p>` are bit-identical.
fn qa_mean(gen: &Generator, entries: &[f64]) -> f64 {
    match gen {
        Generator::Power(p) => power_mean(*p, entries),
        Generator::Log => power_mean(0.0, entries),
        _ => {
            let mut s = NeumaierSum::new();
            for &a in entries {
                s.add(gen.forward(a));
            }
            gen.inverse(s.value() / entries.len() as f64)
        }
    }
}
