//! Closed-form Hardy / weak-Hardy classification.
//!
//! Everything here is table-driven from known criteria:
//!
//! * Power means: `H(P_α) = (1−α)^(−1/α)` for α < 1, α ≠ 0; `e` at α = 0
//!   (Carleman's inequality); `+∞` for α ≥ 1.
//! * Gini means: Hardy iff `min(p,q) ≤ 0` and `max(p,q) < 1`, and the
//!   weak-Hardy property coincides with the Hardy property across the
//!   whole family; monotone iff `pq ≤ 0` (Losonczi's criterion).
//! * Quasi-arithmetic means: `x^p` generators reduce to power means; the
//!   log/affine splice (`qa:paper-example`) is weak-Hardy but not Hardy.
//!   Anything outside the catalog is reported `unknown` rather than
//!   guessed — gather evidence with [`crate::probes`] instead.

use serde::{Serialize, Serializer};

use crate::generator::Generator;
use crate::means::MeanSpec;

/// Three-valued verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

/// Hardy constant: finite value, `+∞`, or not known.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum HardyConstant {
    Finite(f64),
    Infinite,
    Unknown,
}

impl HardyConstant {
    pub fn finite_value(&self) -> Option<f64> {
        match self {
            HardyConstant::Finite(c) => Some(*c),
            _ => None,
        }
    }
}

impl Serialize for HardyConstant {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            HardyConstant::Finite(c) => serializer.serialize_f64(*c),
            HardyConstant::Infinite => serializer.serialize_str("+inf"),
            HardyConstant::Unknown => serializer.serialize_str("unknown"),
        }
    }
}

/// Classification verdict with the criterion it rests on.
#[derive(Clone, Debug, Serialize)]
pub struct ClassificationResult {
    pub mean: String,
    pub hardy: Answer,
    pub weak_hardy: Answer,
    pub hardy_constant: HardyConstant,
    pub monotone: Answer,
    pub rationale: String,
}

/// `(1−α)^(−1/α)` for α < 1, α ≠ 0; `e` at α = 0; `+∞` for α ≥ 1.
pub fn power_hardy_constant(alpha: f64) -> HardyConstant {
    if alpha >= 1.0 {
        HardyConstant::Infinite
    } else if alpha == 0.0 {
        HardyConstant::Finite(std::f64::consts::E)
    } else {
        HardyConstant::Finite((1.0 - alpha).powf(-1.0 / alpha))
    }
}

pub fn classify_power(alpha: f64) -> ClassificationResult {
    let constant = power_hardy_constant(alpha);
    let (hardy, weak_hardy, rationale) = if alpha >= 1.0 {
        (
            Answer::No,
            Answer::No,
            format!(
                "power mean P_{alpha}: not Hardy and not weak-Hardy for alpha >= 1 \
                 (prefix means of a suitable summable sequence are not summable)"
            ),
        )
    } else if alpha == 0.0 {
        (
            Answer::Yes,
            Answer::Yes,
            "geometric mean: Hardy with constant e (Carleman's inequality)".to_string(),
        )
    } else {
        (
            Answer::Yes,
            Answer::Yes,
            format!(
                "power mean P_{alpha}: Hardy with constant (1-alpha)^(-1/alpha) for alpha < 1; \
                 weak-Hardy coincides with Hardy for power means"
            ),
        )
    };
    ClassificationResult {
        mean: MeanSpec::power(alpha).describe(),
        hardy,
        weak_hardy,
        hardy_constant: constant,
        monotone: Answer::Yes,
        rationale,
    }
}

pub fn classify_gini(p: f64, q: f64) -> ClassificationResult {
    let is_hardy = p.min(q) <= 0.0 && p.max(q) < 1.0;
    let monotone = if p * q <= 0.0 {
        Answer::Yes
    } else {
        Answer::No
    };
    let criterion =
        "Gini mean G_{p,q}: Hardy iff min(p,q) <= 0 and max(p,q) < 1; weak-Hardy iff Hardy; \
         monotone iff pq <= 0 (Losonczi)";
    let hardy_constant = if !is_hardy {
        HardyConstant::Infinite
    } else if q == 0.0 {
        // G_{p,0} is the p-th power mean.
        power_hardy_constant(p)
    } else if p == 0.0 {
        power_hardy_constant(q)
    } else {
        // Hardy, but no general closed-form constant is known.
        HardyConstant::Unknown
    };
    let verdict = if is_hardy { Answer::Yes } else { Answer::No };
    ClassificationResult {
        mean: MeanSpec::gini(p, q).describe(),
        hardy: verdict,
        weak_hardy: verdict,
        hardy_constant,
        monotone,
        rationale: format!(
            "{criterion}; here min={}, max={}, pq={}",
            p.min(q),
            p.max(q),
            p * q
        ),
    }
}

pub fn classify_qa(gen: &Generator) -> ClassificationResult {
    let mean_label = MeanSpec::quasi_arithmetic(gen.clone()).describe();
    match gen {
        Generator::Power(p) => {
            let mut r = classify_power(*p);
            r.mean = mean_label;
            r.rationale = format!(
                "generator x^{p} induces the {p}-th power mean; {}",
                r.rationale
            );
            r
        }
        Generator::Log => {
            let mut r = classify_power(0.0);
            r.mean = mean_label;
            r.rationale = format!("log generator induces the geometric mean; {}", r.rationale);
            r
        }
        Generator::LogLinear => ClassificationResult {
            mean: mean_label,
            hardy: Answer::No,
            weak_hardy: Answer::Yes,
            hardy_constant: HardyConstant::Infinite,
            monotone: Answer::Yes,
            rationale: "log below 1 makes the restriction to (0,1] a geometric mean, hence the \
                        mean is weak-Hardy; above 1 it is arithmetic, and sequences N^2/n^2 \
                        drive the Hardy quotient past (6/pi^2) ln N, so no finite Hardy \
                        constant exists"
                .to_string(),
        },
        // An affine image s·f + t generates exactly the same mean as f.
        Generator::Affine { inner, .. } => {
            let mut r = classify_qa(inner);
            r.mean = mean_label;
            r.rationale = format!(
                "affine generator images induce the same mean; {}",
                r.rationale
            );
            r
        }
        // Caller-supplied closures cannot be verified, so nothing is
        // asserted about them, monotonicity included.
        Generator::Custom { .. } => ClassificationResult {
            mean: mean_label,
            hardy: Answer::Unknown,
            weak_hardy: Answer::Unknown,
            hardy_constant: HardyConstant::Unknown,
            monotone: Answer::Unknown,
            rationale: format!(
                "no catalog criterion applies to generator '{}'; run the probes for numerical \
                 evidence",
                gen.label()
            ),
        },
    }
}

/// Dispatch on the mean family.
pub fn classify(mean: &MeanSpec) -> ClassificationResult {
    match mean {
        MeanSpec::Power(alpha) => classify_power(*alpha),
        MeanSpec::Gini { p, q } => classify_gini(*p, *q),
        MeanSpec::QuasiArithmetic(gen) => classify_qa(gen),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_constants_from_the_table() {
        assert_eq!(
            classify_power(0.5).hardy_constant,
            HardyConstant::Finite(4.0)
        );
        assert_eq!(
            classify_power(-1.0).hardy_constant,
            HardyConstant::Finite(2.0)
        );
        let e = classify_power(0.0).hardy_constant.finite_value().unwrap();
        assert!((e - std::f64::consts::E).abs() <= 1e-15);
        for alpha in [1.0, 2.0, 7.5] {
            let r = classify_power(alpha);
            assert_eq!(r.hardy_constant, HardyConstant::Infinite);
            assert_eq!(r.hardy, Answer::No);
            assert_eq!(r.weak_hardy, Answer::No);
        }
    }

    #[test]
    fn gini_classification_examples() {
        let r = classify_gini(0.5, -1.0);
        assert_eq!((r.hardy, r.weak_hardy), (Answer::Yes, Answer::Yes));
        assert_eq!(r.hardy_constant, HardyConstant::Unknown);

        let r = classify_gini(0.3, 0.7);
        assert_eq!((r.hardy, r.weak_hardy), (Answer::No, Answer::No));
        assert_eq!(r.hardy_constant, HardyConstant::Infinite);

        let r = classify_gini(0.5, 0.0);
        assert_eq!(r.hardy_constant, HardyConstant::Finite(4.0));

        // max(p,q) = 1 sits outside the strict Hardy region even though
        // pq <= 0 keeps the mean monotone.
        let r = classify_gini(1.0, -1.0);
        assert_eq!(r.hardy, Answer::No);
        assert_eq!(r.weak_hardy, Answer::No);
        assert_eq!(r.monotone, Answer::Yes);
    }

    #[test]
    fn boundary_max_exactly_one_is_not_weak_hardy() {
        // max(p,q) = 1 with min <= 0: the criterion is strict.
        for (p, q) in [(1.0, -0.5), (1.0, 0.0), (-2.0, 1.0)] {
            let r = classify_gini(p, q);
            assert_eq!(r.hardy, Answer::No, "({p},{q})");
            assert_eq!(r.weak_hardy, Answer::No, "({p},{q})");
        }
    }

    #[test]
    fn gini_zero_zero_is_geometric() {
        let r = classify_gini(0.0, 0.0);
        assert_eq!(r.hardy, Answer::Yes);
        let c = r.hardy_constant.finite_value().unwrap();
        assert!((c - std::f64::consts::E).abs() <= 1e-15);
    }

    #[test]
    fn qa_catalog() {
        let r = classify_qa(&Generator::power(0.5).unwrap());
        assert_eq!(r.hardy_constant, HardyConstant::Finite(4.0));

        let r = classify_qa(&Generator::LogLinear);
        assert_eq!(r.hardy, Answer::No);
        assert_eq!(r.weak_hardy, Answer::Yes);

        let custom = Generator::custom(
            "mystery",
            (0.0, 1.0),
            crate::generator::Monotonicity::Increasing,
            |x| x,
            crate::generator::Inverse::Bisection {
                bracket: (0.0, 1.0),
            },
        )
        .unwrap();
        let r = classify_qa(&custom);
        assert_eq!(r.hardy, Answer::Unknown);
        assert_eq!(r.weak_hardy, Answer::Unknown);
        assert_eq!(r.hardy_constant, HardyConstant::Unknown);
        assert_eq!(r.monotone, Answer::Unknown);
        assert!(r.rationale.contains("probes"));
    }

    #[test]
    fn affine_images_classify_like_their_core() {
        let gen = Generator::affine(-3.0, 1.5, Generator::power(0.5).unwrap()).unwrap();
        let r = classify_qa(&gen);
        assert_eq!(r.hardy_constant, HardyConstant::Finite(4.0));
    }

    #[test]
    fn power_agrees_with_gini_q_zero_everywhere() {
        for k in -40..=40 {
            let alpha = k as f64 / 10.0;
            let a = classify_power(alpha);
            let b = classify_gini(alpha, 0.0);
            assert_eq!(a.hardy, b.hardy, "alpha={alpha}");
            assert_eq!(a.weak_hardy, b.weak_hardy, "alpha={alpha}");
            assert_eq!(a.hardy_constant, b.hardy_constant, "alpha={alpha}");
        }
    }

    #[test]
    fn finite_constant_iff_hardy_on_a_grid() {
        for i in -25..=25 {
            for j in -25..=25 {
                let (p, q) = (i as f64 / 10.0, j as f64 / 10.0);
                let r = classify_gini(p, q);
                assert_eq!(r.hardy, r.weak_hardy);
                let finite = r.hardy_constant.finite_value().is_some();
                if finite {
                    assert_eq!(r.hardy, Answer::Yes);
                }
                if r.hardy == Answer::No {
                    assert_eq!(r.hardy_constant, HardyConstant::Infinite);
                }
            }
        }
    }

    #[test]
    fn json_shape_is_stable() {
        let r = classify_gini(0.3, 0.7);
        let json = serde_json::to_string(&r).unwrap();
        let keys: Vec<&str> = [
            "mean",
            "hardy",
            "weak_hardy",
            "hardy_constant",
            "monotone",
            "rationale",
        ]
        .into_iter()
        .filter(|k| json.contains(&format!("\"{k}\"")))
        .collect();
        assert_eq!(keys.len(), 6, "{json}");
        assert!(json.contains("\"+inf\""));
    }
}
