//! Numerical evidence for the necessary conditions that rule out the
//! weak-Hardy property, plus a Mulholland-style domination search.
//!
//! A probe never claims a theorem: the conditions quantify over infinite
//! tails, so every report carries raw evidence (partial sums, growth
//! factors, tail slopes) together with a verdict that is either
//! `consistent_with_not_weak_hardy` or `inconclusive`. Thresholds are
//! engineering choices and are echoed in the report notes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::axioms::{check_axiom, Axiom};
use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::means::{eval, MeanSpec};
use crate::stream::{PrefixState, SequenceSpec};
use crate::sum::NeumaierSum;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// A partial-sum sequence counts as diverging when
/// `S(n_max)/S(n_max/2) ≥ 1 + 1/(2·ln n_max)`: calibrated to logarithmic
/// divergence, the slowest rate among the probed examples.
pub fn partial_sum_divergence_threshold(n_max: u64) -> f64 {
    1.0 + 1.0 / (2.0 * (n_max as f64).ln())
}

/// The ratio sequence bₙ counts as diverging when
/// `b(n_max)/b(n_max/2) ≥ 1 + ln 2/(4·ln n_max)`: bₙ itself can grow as
/// slowly as `(ln n)^(1/2)`, half a decade below the partial-sum rate.
pub fn ratio_divergence_threshold(n_max: u64) -> f64 {
    1.0 + std::f64::consts::LN_2 / (4.0 * (n_max as f64).ln())
}

/// Evidence floor for nearly-increasingness of a finite window.
pub const EPSILON_HAT_FLOOR: f64 = 0.1;

/// Tail-slope threshold for condition-(3) finiteness evidence: the local
/// exponent of `n·tₙ` against `ln ln n` must fall at or below this.
pub const CONDITION3_SLOPE_MAX: f64 = -0.1;

/// Largest ε such that ε·bₘ ≤ bₙ for every m ≤ n in the window:
/// `min over n of bₙ / max_{m ≤ n} bₘ`, computed in one pass.
/// Equals 1 exactly when the sequence is nondecreasing.
pub fn nearly_increasing_epsilon(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::Parameter(
            "nearly_increasing_epsilon needs at least one value".into(),
        ));
    }
    let mut running_max = f64::NEG_INFINITY;
    let mut eps = 1.0f64;
    for &v in values {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::Domain(format!(
                "nearly_increasing_epsilon requires strictly positive values, got {v}"
            )));
        }
        running_max = running_max.max(v);
        eps = eps.min(v / running_max);
    }
    Ok(eps)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeVerdict {
    ConsistentWithNotWeakHardy,
    Inconclusive,
}

/// Growth evidence for Σaₙ (condition 1) and for bₙ (condition 2).
#[derive(Clone, Copy, Debug, Serialize)]
pub struct DivergenceEvidence {
    pub l1_sum_at_half: f64,
    pub l1_sum_at_full: f64,
    pub l1_growth_factor: f64,
    pub l1_diverging: bool,
    pub b_at_half: f64,
    pub b_at_full: f64,
    pub b_growth_factor: f64,
    pub b_diverging: bool,
}

/// Per-s evidence for condition (3): partial sum of `aₙ^(1+s)·Mₙ^(−s)`
/// and the tail slope of `ln(n·tₙ)` against `ln ln n`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ConditionThreeEvidence {
    pub s: f64,
    pub partial_sum: f64,
    pub tail_slope: f64,
    pub supported: bool,
}

/// Least-squares fit of `ln vₙ = ln C + D·ln ln n` over a geometric window.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct LogGrowthFit {
    pub c: f64,
    pub d: f64,
    pub residual: f64,
    pub window: (u64, u64),
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub probe_name: String,
    pub mean: String,
    pub seq: String,
    pub n_max: u64,
    /// Sampled (n, bₙ) pairs on a geometric grid.
    pub ratio_sequence_sample: Vec<(u64, f64)>,
    pub epsilon_hat: f64,
    pub divergence_evidence: DivergenceEvidence,
    pub condition3: Vec<ConditionThreeEvidence>,
    pub fit: Option<LogGrowthFit>,
    pub verdict: ProbeVerdict,
    pub notes: String,
}

/// Distinct geometric sample points in `[lo, hi]`, endpoints included.
fn geometric_indices(lo: u64, hi: u64, count: usize) -> Vec<u64> {
    debug_assert!(lo >= 1 && lo <= hi && count >= 2);
    let (flo, fhi) = (lo as f64, hi as f64);
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let t = i as f64 / (count - 1) as f64;
        let x = (flo.ln() + t * (fhi.ln() - flo.ln())).exp().round() as u64;
        let x = x.clamp(lo, hi);
        if out.last() != Some(&x) {
            out.push(x);
        }
    }
    out
}

/// Ordinary least squares of y against x; returns (slope, intercept, rms residual).
fn linear_fit(xs: &[f64], ys: &[f64]) -> Option<(f64, f64, f64)> {
    let n = xs.len();
    if n < 2 {
        return None;
    }
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let e = y - (slope * x + intercept);
            e * e
        })
        .sum();
    Some((slope, intercept, (rss / nf).sqrt()))
}

fn fit_against_ln_ln_n(points: &[(u64, f64)]) -> Option<LogGrowthFit> {
    let mut xs = Vec::with_capacity(points.len());
    let mut ys = Vec::with_capacity(points.len());
    for &(n, v) in points {
        if n >= 3 && v > 0.0 && v.is_finite() {
            xs.push((n as f64).ln().ln());
            ys.push(v.ln());
        }
    }
    let (slope, intercept, residual) = linear_fit(&xs, &ys)?;
    Some(LogGrowthFit {
        c: intercept.exp(),
        d: slope,
        residual,
        window: (points.first()?.0, points.last()?.0),
    })
}

/// One-pass evidence gathering for the three conditions that rule out the
/// weak-Hardy property: Σaₙ divergent; bₙ = Mₙ/aₙ nearly increasing and
/// divergent; Σ aₙ·bₙ^(−s) finite for some s in `s_grid`.
///
/// The mean is expected homogeneous and monotone; the probe records spot
/// axiom checks in the notes but does not enforce them.
pub fn weak_hardy_exclusion_probe(
    mean: &MeanSpec,
    seq: &SequenceSpec,
    s_grid: &[f64],
    n_max: u64,
) -> Result<ProbeReport> {
    if s_grid.is_empty() {
        return Err(Error::Parameter(
            "weak_hardy_exclusion_probe needs a non-empty s grid".into(),
        ));
    }
    for &s in s_grid {
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::Parameter(format!(
                "condition (3) exponent s must be a positive real, got {s}"
            )));
        }
    }
    if n_max < 16 {
        return Err(Error::Parameter(format!(
            "weak_hardy_exclusion_probe needs n_max >= 16, got {n_max}"
        )));
    }

    let half = n_max / 2;
    let sample_at = geometric_indices(1, n_max, 128);
    let slope_lo = (n_max / 256).max(16).min(n_max);
    let slope_at = geometric_indices(slope_lo, n_max, 24);
    let is_harmonic = matches!(seq, SequenceSpec::Harmonic);
    let fit_at = if is_harmonic && n_max >= 256 {
        geometric_indices((n_max / 100).max(100), n_max, 64)
    } else {
        Vec::new()
    };

    let mut state = PrefixState::new(mean);
    let mut l1 = NeumaierSum::new();
    let mut cond3_sums: Vec<NeumaierSum> = vec![NeumaierSum::new(); s_grid.len()];
    let mut cond3_points: Vec<Vec<(u64, f64)>> = vec![Vec::new(); s_grid.len()];
    let mut b_samples: Vec<(u64, f64)> = Vec::with_capacity(sample_at.len());
    let mut fit_points: Vec<(u64, f64)> = Vec::with_capacity(fit_at.len());

    let mut running_max_b = f64::NEG_INFINITY;
    let mut epsilon_hat = 1.0f64;
    let (mut l1_at_half, mut b_at_half) = (f64::NAN, f64::NAN);
    let (mut sample_i, mut slope_i, mut fit_i) = (0usize, 0usize, 0usize);
    let mut b_full = f64::NAN;

    for n in 1..=n_max {
        let a = seq.term(n)?;
        state.push(a)?;
        let m = state.current().expect("pushed at least one term");
        let b = m / a;
        l1.add(a);

        running_max_b = running_max_b.max(b);
        epsilon_hat = epsilon_hat.min(b / running_max_b);

        for (k, &s) in s_grid.iter().enumerate() {
            let t = a * b.powf(-s);
            cond3_sums[k].add(t);
            if slope_i < slope_at.len() && slope_at[slope_i] == n {
                // ln(n·tₙ) regularized away from zero so underflowed tails
                // register as strong decay rather than poisoning the fit.
                let nt = (n as f64 * t).max(f64::MIN_POSITIVE);
                cond3_points[k].push((n, nt));
            }
        }
        if slope_i < slope_at.len() && slope_at[slope_i] == n {
            slope_i += 1;
        }
        if sample_i < sample_at.len() && sample_at[sample_i] == n {
            b_samples.push((n, b));
            sample_i += 1;
        }
        if fit_i < fit_at.len() && fit_at[fit_i] == n {
            fit_points.push((n, n as f64 * m));
            fit_i += 1;
        }
        if n == half {
            l1_at_half = l1.value();
            b_at_half = b;
        }
        if n == n_max {
            b_full = b;
        }
    }

    let l1_full = l1.value();
    let l1_growth = l1_full / l1_at_half;
    let b_growth = b_full / b_at_half;
    let l1_threshold = partial_sum_divergence_threshold(n_max);
    let b_threshold = ratio_divergence_threshold(n_max);
    let divergence_evidence = DivergenceEvidence {
        l1_sum_at_half: l1_at_half,
        l1_sum_at_full: l1_full,
        l1_growth_factor: l1_growth,
        l1_diverging: l1_growth >= l1_threshold,
        b_at_half,
        b_at_full: b_full,
        b_growth_factor: b_growth,
        b_diverging: b_growth >= b_threshold,
    };

    let condition3: Vec<ConditionThreeEvidence> = s_grid
        .iter()
        .enumerate()
        .map(|(k, &s)| {
            let xs: Vec<f64> = cond3_points[k]
                .iter()
                .map(|&(n, _)| (n as f64).ln().ln())
                .collect();
            let ys: Vec<f64> = cond3_points[k].iter().map(|&(_, nt)| nt.ln()).collect();
            let tail_slope = linear_fit(&xs, &ys).map_or(f64::NAN, |(m, _, _)| m);
            ConditionThreeEvidence {
                s,
                partial_sum: cond3_sums[k].value(),
                tail_slope,
                supported: tail_slope <= CONDITION3_SLOPE_MAX,
            }
        })
        .collect();

    let fit = fit_against_ln_ln_n(&fit_points);

    let cond2_ok = epsilon_hat >= EPSILON_HAT_FLOOR && divergence_evidence.b_diverging;
    let cond3_ok = condition3.iter().any(|c| c.supported);
    let verdict = if divergence_evidence.l1_diverging && cond2_ok && cond3_ok {
        ProbeVerdict::ConsistentWithNotWeakHardy
    } else {
        ProbeVerdict::Inconclusive
    };

    let homog = check_axiom(mean, Axiom::Homogeneity, 32, 0xA11CE)?;
    let monot = check_axiom(mean, Axiom::Monotonicity, 32, 0xA11CE)?;
    let notes = format!(
        "thresholds: l1 growth >= {l1_threshold:.6}, b growth >= {b_threshold:.6}, \
         epsilon_hat >= {EPSILON_HAT_FLOOR}, tail slope <= {CONDITION3_SLOPE_MAX} \
         (engineering choices; conditions quantify over infinite tails). \
         spot axiom checks: homogeneity {}, monotonicity {}",
        if homog.passed { "pass" } else { "FAIL" },
        if monot.passed { "pass" } else { "FAIL" },
    );

    Ok(ProbeReport {
        probe_name: "weak-hardy-exclusion".into(),
        mean: mean.describe(),
        seq: seq.describe(),
        n_max,
        ratio_sequence_sample: b_samples,
        epsilon_hat,
        divergence_evidence,
        condition3,
        fit,
        verdict,
        notes,
    })
}

/// Fit `vₙ = n·M(1, 1/2, …, 1/n)` to `C·(ln n)^D` on a geometric window
/// `[max(100, n_max/100), n_max]` of 64 points.
pub fn log_growth_fit(mean: &MeanSpec, n_max: u64) -> Result<LogGrowthFit> {
    if n_max < 100 {
        return Err(Error::Parameter(format!(
            "log_growth_fit needs n_max >= 100, got {n_max}"
        )));
    }
    let window = geometric_indices((n_max / 100).max(100).min(n_max), n_max, 64);
    let mut state = PrefixState::new(mean);
    let mut points = Vec::with_capacity(window.len());
    let mut w = 0usize;
    for n in 1..=n_max {
        state.push(1.0 / n as f64)?;
        if w < window.len() && window[w] == n {
            points.push((
                n,
                n as f64 * state.current().expect("pushed at least one term"),
            ));
            w += 1;
        }
    }
    fit_against_ln_ln_n(&points).ok_or_else(|| {
        Error::Parameter(format!(
            "log_growth_fit window [{}, {n_max}] has too few distinct points",
            (n_max / 100).max(100)
        ))
    })
}

/// Result of the nearly-increasing check on dₙ = M(n/1, …, n/n).
#[derive(Clone, Debug, Serialize)]
pub struct DSequenceCheck {
    pub mean: String,
    pub n_max: u64,
    /// max over m ≤ n of dₘ/dₙ.
    pub max_violation: f64,
    /// True when `max_violation ≤ 2 + 1e-9`, the bound guaranteed for
    /// homogeneous, monotone, repetition-invariant means.
    pub passed: bool,
    pub d: Vec<f64>,
}

fn d_value(mean: &MeanSpec, n: usize) -> Result<f64> {
    let v: Vec<f64> = (1..=n).map(|k| n as f64 / k as f64).collect();
    eval(mean, &v)
}

/// Compute dₙ = M(n/1, n/2, …, n/n) for n ≤ n_max and the worst ratio
/// dₘ/dₙ over m ≤ n. The check passes when the ratio never exceeds 2
/// (plus 1e-9 rounding slack).
pub fn d_sequence_check(mean: &MeanSpec, n_max: u64) -> Result<DSequenceCheck> {
    if n_max == 0 {
        return Err(Error::Parameter("d_sequence_check needs n_max >= 1".into()));
    }
    let n_max_us = n_max as usize;
    #[cfg(feature = "parallel")]
    let d: Vec<f64> = (1..=n_max_us)
        .into_par_iter()
        .map(|n| d_value(mean, n))
        .collect::<Result<_>>()?;
    #[cfg(not(feature = "parallel"))]
    let d: Vec<f64> = (1..=n_max_us)
        .map(|n| d_value(mean, n))
        .collect::<Result<_>>()?;

    let mut running_max = f64::NEG_INFINITY;
    let mut max_violation = 0.0f64;
    for &dn in &d {
        running_max = running_max.max(dn);
        max_violation = max_violation.max(running_max / dn);
    }
    Ok(DSequenceCheck {
        mean: mean.describe(),
        n_max,
        max_violation,
        passed: max_violation <= 2.0 + 1e-9,
        d,
    })
}

/// Empirical domination constant for one α.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct AlphaDomination {
    pub alpha: f64,
    pub empirical_c: f64,
}

/// Sample vector achieving the per-α maximum of `QA_f(a)/P_α(a)`.
#[derive(Clone, Debug, Serialize)]
pub struct DominationWitness {
    pub alpha: f64,
    pub ratio: f64,
    pub vector: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MulhollandSearch {
    pub generator: String,
    pub entry_range: (f64, f64),
    pub trials: u32,
    pub seed: u64,
    pub per_alpha: Vec<AlphaDomination>,
    /// The α minimizing the empirical constant.
    pub best: AlphaDomination,
    /// Per-α maximizing vectors: the witnesses against domination with any
    /// smaller constant.
    pub violations: Vec<DominationWitness>,
}

/// Empirical search for a Mulholland domination `QA_f ≤ C·P_α`: for each
/// α < 1 the empirical C is the maximum of `QA_f(a)/P_α(a)` over `trials`
/// random vectors (lengths 1–64, entries log-uniform over `entry_range`).
/// Evidence only — bounded C on a window proves nothing about the supremum.
pub fn mulholland_search(
    gen: &Generator,
    alpha_grid: &[f64],
    trials: u32,
    seed: u64,
    entry_range: (f64, f64),
) -> Result<MulhollandSearch> {
    if alpha_grid.is_empty() {
        return Err(Error::Parameter(
            "mulholland_search needs a non-empty alpha grid".into(),
        ));
    }
    for &alpha in alpha_grid {
        if alpha >= 1.0 || !alpha.is_finite() {
            return Err(Error::Parameter(format!(
                "domination exponent alpha must be < 1, got {alpha}"
            )));
        }
    }
    if trials == 0 {
        return Err(Error::Parameter(
            "mulholland_search needs trials >= 1".into(),
        ));
    }
    let (lo, hi) = entry_range;
    if !(lo > 0.0 && lo < hi) || !gen.contains(lo) || !gen.contains(hi) {
        return Err(Error::Parameter(format!(
            "entry range ({lo}, {hi}) must be an interval inside the generator domain {:?}",
            gen.domain()
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vectors: Vec<Vec<f64>> = (0..trials)
        .map(|_| {
            let len = rng.random_range(1..=64usize);
            (0..len)
                .map(|_| {
                    let u: f64 = rng.random();
                    (lo.ln() + u * (hi.ln() - lo.ln())).exp()
                })
                .collect()
        })
        .collect();

    let qa = MeanSpec::quasi_arithmetic(gen.clone());
    let qa_values: Vec<f64> = vectors
        .iter()
        .map(|v| eval(&qa, v))
        .collect::<Result<_>>()?;

    let best_for_alpha = |alpha: f64| -> Result<(f64, usize)> {
        let power = MeanSpec::power(alpha);
        let fold = |acc: (f64, usize), item: (usize, &Vec<f64>)| -> Result<(f64, usize)> {
            let (i, v) = item;
            let ratio = qa_values[i] / eval(&power, v)?;
            // Deterministic argmax: larger ratio wins, ties to lower index.
            Ok(if ratio > acc.0 { (ratio, i) } else { acc })
        };
        #[cfg(feature = "parallel")]
        {
            vectors
                .par_iter()
                .enumerate()
                .try_fold(|| (f64::NEG_INFINITY, usize::MAX), &fold)
                .try_reduce(
                    || (f64::NEG_INFINITY, usize::MAX),
                    |a, b| {
                        Ok(if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                            b
                        } else {
                            a
                        })
                    },
                )
        }
        #[cfg(not(feature = "parallel"))]
        {
            vectors
                .iter()
                .enumerate()
                .try_fold((f64::NEG_INFINITY, usize::MAX), |acc, item| fold(acc, item))
        }
    };

    let mut per_alpha = Vec::with_capacity(alpha_grid.len());
    let mut violations = Vec::with_capacity(alpha_grid.len());
    for &alpha in alpha_grid {
        let (c, idx) = best_for_alpha(alpha)?;
        per_alpha.push(AlphaDomination {
            alpha,
            empirical_c: c,
        });
        violations.push(DominationWitness {
            alpha,
            ratio: c,
            vector: vectors[idx].clone(),
        });
    }
    let best = *per_alpha
        .iter()
        .min_by(|a, b| a.empirical_c.total_cmp(&b.empirical_c))
        .expect("alpha grid is non-empty");

    Ok(MulhollandSearch {
        generator: gen.label(),
        entry_range,
        trials,
        seed,
        per_alpha,
        best,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn epsilon_examples() {
        assert_eq!(nearly_increasing_epsilon(&[1.0, 1.0, 1.0]).unwrap(), 1.0);
        assert_eq!(nearly_increasing_epsilon(&[1.0, 2.0, 4.0]).unwrap(), 1.0);
        assert_eq!(nearly_increasing_epsilon(&[2.0, 1.0]).unwrap(), 0.5);
        assert!(matches!(
            nearly_increasing_epsilon(&[1.0, -1.0]),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            nearly_increasing_epsilon(&[]),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn probe_flags_divergent_harmonic_cases() {
        // bₙ = Hₙ diverges and Σ aₙ·bₙ^{-1} looks finite on the window.
        let r = weak_hardy_exclusion_probe(
            &MeanSpec::power(1.0),
            &SequenceSpec::Harmonic,
            &[1.0],
            10_000,
        )
        .unwrap();
        assert_eq!(r.verdict, ProbeVerdict::ConsistentWithNotWeakHardy);
        assert!(
            r.epsilon_hat > 0.99,
            "H_n is increasing, got {}",
            r.epsilon_hat
        );
        assert!(r.divergence_evidence.l1_diverging);
        assert!(r.divergence_evidence.b_diverging);
        assert!(r.fit.is_some());
    }

    #[test]
    fn probe_gini_harmonic_s2() {
        let r = weak_hardy_exclusion_probe(
            &MeanSpec::gini(1.0, -1.0),
            &SequenceSpec::Harmonic,
            &[1.0, 2.0],
            100_000,
        )
        .unwrap();
        assert_eq!(r.verdict, ProbeVerdict::ConsistentWithNotWeakHardy);
        assert!(r.condition3.iter().any(|c| c.supported));
    }

    #[test]
    fn probe_flags_every_large_power_mean() {
        for alpha in [1.5, 2.0, 3.0] {
            let r = weak_hardy_exclusion_probe(
                &MeanSpec::power(alpha),
                &SequenceSpec::Harmonic,
                &[1.0],
                10_000,
            )
            .unwrap();
            assert_eq!(
                r.verdict,
                ProbeVerdict::ConsistentWithNotWeakHardy,
                "alpha {alpha}"
            );
        }
    }

    #[test]
    fn probe_inconclusive_on_summable_input() {
        // Condition (1) fails: the geometric series converges.
        let r = weak_hardy_exclusion_probe(
            &MeanSpec::power(0.0),
            &SequenceSpec::geometric(1.0, 0.5).unwrap(),
            &[1.0, 2.0],
            1000,
        )
        .unwrap();
        assert_eq!(r.verdict, ProbeVerdict::Inconclusive);
        assert!(!r.divergence_evidence.l1_diverging);
    }

    #[test]
    fn probe_inconclusive_for_hardy_power_mean() {
        // P_1/2 is a Hardy mean: bₙ stays bounded, so condition (2) fails.
        let r = weak_hardy_exclusion_probe(
            &MeanSpec::power(0.5),
            &SequenceSpec::Harmonic,
            &[1.0, 2.0],
            10_000,
        )
        .unwrap();
        assert_eq!(r.verdict, ProbeVerdict::Inconclusive);
        assert!(!r.divergence_evidence.b_diverging);
    }

    #[test]
    fn probe_parameter_validation() {
        let m = MeanSpec::power(1.0);
        let s = SequenceSpec::Harmonic;
        assert!(matches!(
            weak_hardy_exclusion_probe(&m, &s, &[], 1000),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            weak_hardy_exclusion_probe(&m, &s, &[1.0], 8),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            weak_hardy_exclusion_probe(&m, &s, &[-1.0], 1000),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn log_growth_fit_power_one() {
        // vₙ = Hₙ ~ ln n, so D ≈ 1.
        let fit = log_growth_fit(&MeanSpec::power(1.0), 100_000).unwrap();
        assert!((fit.d - 1.0).abs() < 0.1, "D = {}", fit.d);
    }

    #[test]
    fn log_growth_fit_geometric_mean_is_flat() {
        // vₙ = n·(n!)^(-1/n) → e: no log growth. Oracle runs gave
        // D ≈ 0.039 at n_max = 10^4.
        let fit = log_growth_fit(&MeanSpec::power(0.0), 10_000).unwrap();
        assert!(fit.d.abs() < 0.15, "D = {}", fit.d);
        assert!((fit.d - 0.039).abs() < 0.02, "D = {}", fit.d);
    }

    #[test]
    fn d_sequence_examples() {
        let r = d_sequence_check(&MeanSpec::power(1.0), 3).unwrap();
        assert!((r.d[2] - 11.0 / 6.0).abs() < 1e-14);

        let r = d_sequence_check(&MeanSpec::power(0.5), 300).unwrap();
        assert!(r.passed, "max violation {}", r.max_violation);

        let r = d_sequence_check(&MeanSpec::gini(1.0, -1.0), 300).unwrap();
        assert!(r.passed, "max violation {}", r.max_violation);
    }

    #[test]
    fn mulholland_same_mean_gives_exactly_one() {
        let r = mulholland_search(&Generator::power(0.5).unwrap(), &[0.5], 500, 9, (1e-3, 1e3))
            .unwrap();
        assert_eq!(r.best.empirical_c, 1.0);
    }

    #[test]
    fn mulholland_restricted_below_one_is_dominated() {
        // On (0,1) the log/affine splice is a geometric mean, which is
        // pointwise below every P_α with α ≥ 0.
        let r =
            mulholland_search(&Generator::LogLinear, &[0.5, 0.9], 800, 11, (1e-6, 0.999)).unwrap();
        for row in &r.per_alpha {
            assert!(
                row.empirical_c <= 1.0 + 1e-12,
                "alpha {}: {}",
                row.alpha,
                row.empirical_c
            );
        }
    }

    #[test]
    fn mulholland_growing_range_breaks_domination() {
        let mut last = 0.0;
        for hi in [10.0, 100.0, 1000.0] {
            let r = mulholland_search(&Generator::LogLinear, &[0.9], 800, 13, (1e-3, hi)).unwrap();
            assert!(
                r.best.empirical_c > last,
                "hi={hi}: C={} did not grow past {last}",
                r.best.empirical_c
            );
            last = r.best.empirical_c;
        }
    }

    #[test]
    fn mulholland_is_deterministic_given_seed() {
        let run =
            || mulholland_search(&Generator::LogLinear, &[0.5, 0.9], 400, 99, (1e-3, 1e2)).unwrap();
        let (a, b) = (run(), run());
        assert_eq!(a.best.alpha, b.best.alpha);
        assert_eq!(a.best.empirical_c, b.best.empirical_c);
        for (x, y) in a.violations.iter().zip(&b.violations) {
            assert_eq!(x.ratio, y.ratio);
            assert_eq!(x.vector, y.vector);
        }
    }

    #[test]
    fn mulholland_rejects_alpha_at_least_one() {
        assert!(matches!(
            mulholland_search(&Generator::Log, &[1.0], 10, 1, (0.1, 10.0)),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn epsilon_scale_invariance_under_exact_scalings() {
        let b = [3.0, 1.0, 4.0, 1.5, 9.0, 2.6];
        let base = nearly_increasing_epsilon(&b).unwrap();
        for lambda in [0.25, 0.5, 2.0, 1024.0] {
            let scaled: Vec<f64> = b.iter().map(|x| x * lambda).collect();
            assert_eq!(nearly_increasing_epsilon(&scaled).unwrap(), base);
        }
    }
}
