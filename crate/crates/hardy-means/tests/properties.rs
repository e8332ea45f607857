//! Property-based invariants: internality, parameter symmetry and
//! monotonicity of Gini means, repetition invariance, homogeneity,
//! generator round trips, streaming/batch agreement, conjugation
//! consistency, grammar round trips, and the Hardy bound itself.

use proptest::prelude::*;

use hardy_means::classify::{
    classify_gini, classify_power, power_hardy_constant, Answer, HardyConstant,
};
use hardy_means::grammar::{parse_mean, parse_sequence};
use hardy_means::means::{eval, MeanSpec};
use hardy_means::probes::nearly_increasing_epsilon;
use hardy_means::stream::{conjugate_transform, hardy_ratio, transform, PrefixState, SequenceSpec};
use hardy_means::Generator;

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
}

fn entry() -> impl Strategy<Value = f64> {
    // Log-uniform over [1e-2, 1e2].
    (-2.0..2.0f64).prop_map(|e| 10f64.powf(e))
}

fn vector() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(entry(), 1..=48)
}

fn exponent() -> impl Strategy<Value = f64> {
    -3.0..3.0f64
}

/// Gini parameters away from the removable-singularity band, plus exact
/// equality (which takes the dedicated p = q branch).
fn gini_params() -> impl Strategy<Value = (f64, f64)> {
    prop_oneof![
        (exponent(), exponent()).prop_filter("parameter gap", |(p, q)| (p - q).abs() >= 0.05),
        exponent().prop_map(|p| (p, p)),
    ]
}

fn any_mean() -> impl Strategy<Value = MeanSpec> {
    prop_oneof![
        exponent().prop_map(MeanSpec::Power),
        gini_params().prop_map(|(p, q)| MeanSpec::gini(p, q)),
        exponent()
            .prop_filter("nonzero power generator", |p| p.abs() > 1e-3)
            .prop_map(|p| MeanSpec::quasi_arithmetic(Generator::power(p).unwrap())),
        Just(MeanSpec::quasi_arithmetic(Generator::Log)),
        Just(MeanSpec::quasi_arithmetic(Generator::LogLinear)),
    ]
}

proptest! {
    #[test]
    fn internality(mean in any_mean(), v in vector()) {
        let m = eval(&mean, &v).unwrap();
        let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        prop_assert!(m >= lo - 1e-14 && m <= hi + 1e-14, "mean {m} outside [{lo}, {hi}]");
    }

    #[test]
    fn gini_parameter_symmetry((p, q) in gini_params(), v in vector()) {
        let a = eval(&MeanSpec::gini(p, q), &v).unwrap();
        let b = eval(&MeanSpec::gini(q, p), &v).unwrap();
        prop_assert!(rel_close(a, b, 1e-12), "G({p},{q})={a} vs G({q},{p})={b}");
    }

    #[test]
    fn gini_parameter_monotonicity(
        (p, q) in gini_params(),
        (dp, dq) in (0.0..2.0f64, 0.0..2.0f64),
        v in vector(),
    ) {
        // Keep the raised pair out of the cancellation band between the
        // distinct-parameter formula and its p = q limit.
        let gap = ((p + dp) - (q + dq)).abs();
        prop_assume!(gap >= 0.05 || gap <= hardy_means::means::GINI_DEGENERATE_GAP);
        let lowered = eval(&MeanSpec::gini(p, q), &v).unwrap();
        let raised = eval(&MeanSpec::gini(p + dp, q + dq), &v).unwrap();
        prop_assert!(
            lowered <= raised + 1e-12 * raised.abs().max(1.0),
            "G({p},{q})={lowered} > G({},{})={raised}", p + dp, q + dq
        );
    }

    #[test]
    fn repetition_invariance(mean in any_mean(), v in vector(), m in prop::sample::select(vec![2usize, 3, 5])) {
        let base = eval(&mean, &v).unwrap();
        let repeated: Vec<f64> = v.iter().flat_map(|&a| std::iter::repeat_n(a, m)).collect();
        let rep = eval(&mean, &repeated).unwrap();
        prop_assert!(rel_close(base, rep, 1e-12), "{}: {base} vs {rep}", mean.describe());
    }

    #[test]
    fn homogeneity_of_power_and_gini(
        alpha in exponent(),
        (p, q) in gini_params(),
        lambda in 0.1..10.0f64,
        v in vector(),
    ) {
        for mean in [MeanSpec::Power(alpha), MeanSpec::gini(p, q)] {
            let base = eval(&mean, &v).unwrap();
            let scaled: Vec<f64> = v.iter().map(|&a| a * lambda).collect();
            let scaled_eval = eval(&mean, &scaled).unwrap();
            prop_assert!(
                rel_close(scaled_eval, lambda * base, 1e-12),
                "{}: {scaled_eval} vs {}", mean.describe(), lambda * base
            );
        }
    }

    #[test]
    fn generator_round_trip(p in exponent().prop_filter("nonzero", |p| p.abs() > 1e-3), x in entry()) {
        for gen in [Generator::power(p).unwrap(), Generator::Log, Generator::LogLinear] {
            let back = gen.inverse(gen.forward(x));
            prop_assert!(rel_close(back, x, 1e-12), "{:?} at {x}: {back}", gen);
        }
    }

    #[test]
    fn streaming_equals_batch(mean in any_mean(), v in vector()) {
        let mut state = PrefixState::new(&mean);
        for n in 1..=v.len() {
            state.push(v[n - 1]).unwrap();
            let streamed = state.current().unwrap();
            let batch = eval(&mean, &v[..n]).unwrap();
            prop_assert!(
                rel_close(streamed, batch, 1e-12),
                "{} prefix {n}: {streamed} vs {batch}", mean.describe()
            );
        }
    }

    #[test]
    fn conjugation_consistency(mean in any_mean(), v in vector(), p in 1.1..3.0f64) {
        // Bounded-domain generators aside, entries^p must stay in domain;
        // the sampled means all live on (0, inf).
        let seq = SequenceSpec::explicit(v.clone()).unwrap();
        let conj = conjugate_transform(&mean, p, &seq, v.len() as u64).unwrap();
        let powered: Vec<f64> = v.iter().map(|&a| a.powf(p)).collect();
        let pseq = SequenceSpec::explicit(powered).unwrap();
        let direct = transform(&mean, &pseq, v.len() as u64).unwrap();
        for (k, (c, d)) in conj.iter().zip(&direct).enumerate() {
            let expected = d.powf(1.0 / p);
            prop_assert!(
                rel_close(*c, expected, 1e-12),
                "{} prefix {}: {c} vs {expected}", mean.describe(), k + 1
            );
        }
    }

    #[test]
    fn epsilon_scale_invariance(v in prop::collection::vec(entry(), 1..=64), k in -8i32..=8) {
        // Power-of-two scalings are exact in binary floating point.
        let lambda = (2.0f64).powi(k);
        let base = nearly_increasing_epsilon(&v).unwrap();
        let scaled: Vec<f64> = v.iter().map(|&x| x * lambda).collect();
        prop_assert_eq!(nearly_increasing_epsilon(&scaled).unwrap(), base);
    }

    #[test]
    fn grammar_round_trip_mean(mean in any_mean()) {
        let printed = mean.describe();
        let reparsed = parse_mean(&printed).unwrap();
        prop_assert_eq!(&mean, &reparsed, "{}", printed);
        prop_assert_eq!(printed.clone(), reparsed.describe());
    }

    #[test]
    fn grammar_round_trip_sequence(
        choice in 0usize..5,
        c in 0.1..10.0f64,
        r in 0.05..0.95f64,
        beta in 1.1..4.0f64,
        n in 1u64..10_000,
        v in prop::collection::vec(entry(), 1..=8),
    ) {
        let seq = match choice {
            0 => SequenceSpec::Harmonic,
            1 => SequenceSpec::geometric(c, r).unwrap(),
            2 => SequenceSpec::power_law(c, beta).unwrap(),
            3 => SequenceSpec::scaled_squares(n).unwrap(),
            _ => SequenceSpec::explicit(v).unwrap(),
        };
        let printed = seq.describe();
        let reparsed = parse_sequence(&printed).unwrap();
        prop_assert_eq!(&seq, &reparsed, "{}", printed);
    }

    #[test]
    fn hardy_bound_for_power_means(
        alpha in prop_oneof![Just(-1.0), Just(0.0), Just(0.5), -3.0..0.9f64],
        kind in 0usize..3,
        c in 0.1..10.0f64,
        r in 0.05..0.95f64,
        beta in 1.1..4.0f64,
        cutoff in 10u64..2000,
    ) {
        let constant = match power_hardy_constant(alpha) {
            HardyConstant::Finite(h) => h,
            _ => return Ok(()),
        };
        let (seq, window) = match kind {
            0 => {
                let s = SequenceSpec::geometric(c, r).unwrap();
                // Stop before the geometric tail underflows.
                let cap = 1.0 + (-600.0 - c.ln()) / r.ln();
                (s, (cap as u64).clamp(1, 2000))
            }
            1 => (SequenceSpec::power_law(c, beta).unwrap(), 2000),
            _ => (
                SequenceSpec::truncated_harmonic(cutoff, 1e-9 / cutoff as f64).unwrap(),
                cutoff + 128,
            ),
        };
        let r = hardy_ratio(&MeanSpec::Power(alpha), &seq, window).unwrap();
        prop_assert!(
            r.ratio <= constant + 1e-9,
            "P_{alpha} on {}: ratio {} exceeds H = {constant}", seq.describe(), r.ratio
        );
    }
}

/// Cross-module consistency: classifier verdicts against the numerics.
#[test]
fn classification_consistent_with_numerics() {
    let seq = SequenceSpec::truncated_harmonic(10_000, 1e-9).unwrap();
    let window = 10_000 + 128;
    for i in 0..=40 {
        for j in 0..=40 {
            let p = (i - 20) as f64 / 10.0;
            let q = (j - 20) as f64 / 10.0;
            let verdict = classify_gini(p, q);
            assert_eq!(verdict.hardy, verdict.weak_hardy, "({p},{q})");
            if verdict.hardy == Answer::Yes {
                let r = hardy_ratio(&MeanSpec::gini(p, q), &seq, window).unwrap();
                assert!(r.ratio.is_finite(), "({p},{q})");
                if let Some(h) = verdict.hardy_constant.finite_value() {
                    assert!(
                        r.ratio <= h + 1e-9,
                        "({p},{q}): ratio {} exceeds known constant {h}",
                        r.ratio
                    );
                }
            }
        }
    }

    // Inside the non-weak-Hardy wedge the prefix means of 2^(1-k) settle at
    // a strictly positive limit, so the operator sum grows linearly. (The
    // sequence itself underflows past n ≈ 1075.)
    let geo = SequenceSpec::geometric(1.0, 0.5).unwrap();
    let prefix = transform(&MeanSpec::gini(0.3, 0.7), &geo, 1000).unwrap();
    let limit = 0.166_685_974_902_390_57;
    assert!((prefix[999] - limit).abs() < 1e-12);
    let r = hardy_ratio(&MeanSpec::gini(0.3, 0.7), &geo, 1000).unwrap();
    assert!(r.partial_operator_sum > 0.9 * 1000.0 * limit);
}

/// Power-mean classification agrees with the Gini classifier at q = 0 on
/// every shared field.
#[test]
fn power_matches_gini_with_zero_q() {
    for k in -30..=30 {
        let alpha = k as f64 / 10.0;
        let a = classify_power(alpha);
        let b = classify_gini(alpha, 0.0);
        assert_eq!(a.hardy, b.hardy);
        assert_eq!(a.weak_hardy, b.weak_hardy);
        assert_eq!(a.hardy_constant, b.hardy_constant);
        assert_eq!(a.monotone, b.monotone);
    }
}
