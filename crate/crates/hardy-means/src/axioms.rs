//! Randomized checkers for the defining properties of means: internality,
//! symmetry, coordinatewise monotonicity, homogeneity, and repetition
//! invariance. A check either passes all trials or returns the first
//! concrete witness (vector plus perturbation) that violates the property.
//!
//! Checks are deterministic given `(trials, seed)`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::means::{eval, MeanSpec};

/// Relative tolerance for equality-style axioms (symmetry, homogeneity,
/// repetition invariance) and for the monotone no-decrease allowance.
pub const AXIOM_REL_TOL: f64 = 1e-12;

/// Absolute slack on the internality comparison.
pub const INTERNALITY_ABS_SLACK: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Internality,
    Symmetry,
    Monotonicity,
    Homogeneity,
    RepetitionInvariance,
}

/// Outcome of an axiom check.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub mean: String,
    pub axiom: Axiom,
    pub trials: u32,
    pub seed: u64,
    pub passed: bool,
    pub witness: Option<AxiomWitness>,
}

/// Concrete counterexample from a failed check: the vector, what was done
/// to it, and the two sides of the violated comparison.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomWitness {
    pub vector: Vec<f64>,
    pub detail: String,
    pub lhs: f64,
    pub rhs: f64,
}

/// Sampling window for random entries: the mean's domain clipped to
/// `[1e-4, 1e4]` with a small interior margin for bounded domains.
fn sample_range(mean: &MeanSpec) -> (f64, f64) {
    let (lo, hi) = mean.domain();
    let margin = if hi.is_finite() {
        (hi - lo) * 1e-6
    } else {
        0.0
    };
    let lo = (lo + margin).max(1e-4);
    let hi = if hi.is_finite() { hi - margin } else { 1e4 };
    (lo, hi.min(1e4).max(lo * 2.0))
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    let u: f64 = rng.random();
    (lo.ln() + u * (hi.ln() - lo.ln())).exp()
}

fn random_vector(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> Vec<f64> {
    let len = rng.random_range(1..=12usize);
    (0..len).map(|_| log_uniform(rng, lo, hi)).collect()
}

/// Run `trials` randomized checks of `axiom` against `mean`.
///
/// Monotonicity bumps one random coordinate upward, homogeneity scales by
/// λ ∈ [0.1, 10], repetition invariance repeats every entry m ∈ {2, 3, 5}
/// times. The report carries the first witness found, if any.
pub fn check_axiom(mean: &MeanSpec, axiom: Axiom, trials: u32, seed: u64) -> Result<AxiomReport> {
    if trials == 0 {
        return Err(Error::Parameter(
            "axiom check needs at least one trial".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = sample_range(mean);
    let mut witness = None;

    for trial in 0..trials {
        let v = random_vector(&mut rng, lo, hi);
        let base = eval(mean, &v)?;
        match axiom {
            Axiom::Internality => {
                let vmin = v.iter().copied().fold(f64::INFINITY, f64::min);
                let vmax = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                if base < vmin - INTERNALITY_ABS_SLACK || base > vmax + INTERNALITY_ABS_SLACK {
                    witness = Some(AxiomWitness {
                        vector: v,
                        detail: format!("eval {base} outside [{vmin}, {vmax}]"),
                        lhs: base,
                        rhs: vmin,
                    });
                }
            }
            Axiom::Symmetry => {
                let mut shuffled = v.clone();
                shuffled.shuffle(&mut rng);
                let permuted = eval(mean, &shuffled)?;
                if !rel_equal(base, permuted) {
                    witness = Some(AxiomWitness {
                        vector: v,
                        detail: format!("shuffled copy {shuffled:?} evaluates differently"),
                        lhs: base,
                        rhs: permuted,
                    });
                }
            }
            Axiom::Monotonicity => {
                let idx = rng.random_range(0..v.len());
                let rel_bump: f64 = rng.random_range(0.01..1.0);
                let mut bumped = v.clone();
                let (_, dom_hi) = mean.domain();
                let target = bumped[idx] * (1.0 + rel_bump);
                bumped[idx] = if dom_hi.is_finite() {
                    // Stay strictly inside a bounded domain.
                    target.min(0.5 * (bumped[idx] + dom_hi))
                } else {
                    target
                };
                if bumped[idx] > v[idx] {
                    let above = eval(mean, &bumped)?;
                    if above < base * (1.0 - AXIOM_REL_TOL) {
                        witness = Some(AxiomWitness {
                            detail: format!(
                                "raising coordinate {idx} from {} to {} lowered the mean",
                                v[idx], bumped[idx]
                            ),
                            vector: v,
                            lhs: above,
                            rhs: base,
                        });
                    }
                }
            }
            Axiom::Homogeneity => {
                let lambda = log_uniform(&mut rng, 0.1, 10.0);
                let scaled: Vec<f64> = v.iter().map(|a| a * lambda).collect();
                // Scaled entries can leave a bounded domain; skip those draws.
                if scaled.iter().all(|&a| mean.check_entry(a).is_ok()) {
                    let scaled_eval = eval(mean, &scaled)?;
                    if !rel_equal(scaled_eval, lambda * base) {
                        witness = Some(AxiomWitness {
                            vector: v,
                            detail: format!("scaling by lambda={lambda} is not homogeneous"),
                            lhs: scaled_eval,
                            rhs: lambda * base,
                        });
                    }
                }
            }
            Axiom::RepetitionInvariance => {
                let m = [2usize, 3, 5][(trial % 3) as usize];
                let mut repeated = Vec::with_capacity(v.len() * m);
                for &a in &v {
                    repeated.extend(std::iter::repeat_n(a, m));
                }
                let rep_eval = eval(mean, &repeated)?;
                if !rel_equal(rep_eval, base) {
                    witness = Some(AxiomWitness {
                        vector: v,
                        detail: format!("{m}-fold repetition evaluates differently"),
                        lhs: rep_eval,
                        rhs: base,
                    });
                }
            }
        }
        if witness.is_some() {
            break;
        }
    }

    Ok(AxiomReport {
        mean: mean.describe(),
        axiom,
        trials,
        seed,
        passed: witness.is_none(),
        witness,
    })
}

fn rel_equal(a: f64, b: f64) -> bool {
    (a - b).abs() <= AXIOM_REL_TOL * a.abs().max(b.abs()).max(1e-300)
}

/// Exhaustive monotonicity witness search for two-entry vectors on a grid
/// over `(0, hi]²` with the given step: returns the first `(x, y)` where
/// raising `x` by one step strictly lowers the mean. Brute-force oracle
/// for means suspected non-monotone.
pub fn grid_monotonicity_witness(
    mean: &MeanSpec,
    hi: f64,
    step: f64,
) -> Result<Option<(Vec<f64>, Vec<f64>)>> {
    if !(step > 0.0 && hi > step) {
        return Err(Error::Parameter(format!(
            "grid search needs 0 < step < hi, got step={step}, hi={hi}"
        )));
    }
    let cells = (hi / step).round() as usize;
    for i in 1..=cells {
        let x = i as f64 * step;
        for j in 1..=cells {
            let y = j as f64 * step;
            let here = eval(mean, &[x, y])?;
            if i < cells {
                let bumped = eval(mean, &[x + step, y])?;
                if bumped < here * (1.0 - 1e-9) {
                    return Ok(Some((vec![x, y], vec![x + step, y])));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::Generator;

    #[test]
    fn internality_always_passes() {
        let r = check_axiom(&MeanSpec::power(0.5), Axiom::Internality, 1000, 7).unwrap();
        assert!(r.passed);
    }

    #[test]
    fn monotone_gini_passes() {
        // pq <= 0 is the monotonicity criterion for Gini means.
        let r = check_axiom(&MeanSpec::gini(1.0, -1.0), Axiom::Monotonicity, 1000, 11).unwrap();
        assert!(r.passed);
    }

    #[test]
    fn non_monotone_gini_found_by_random_trials() {
        let r = check_axiom(&MeanSpec::gini(1.0, 1.0), Axiom::Monotonicity, 1000, 42).unwrap();
        assert!(!r.passed);
        let w = r.witness.expect("failed check carries a witness");
        assert!(w.lhs < w.rhs, "witness comparison not violated: {w:?}");
    }

    #[test]
    fn non_monotone_gini_found_by_grid_search() {
        // pq > 0 means non-monotone; the grid over (0,4]^2 must expose it.
        let w = grid_monotonicity_witness(&MeanSpec::gini(1.0, 1.0), 4.0, 0.01)
            .unwrap()
            .expect("witness must exist for G(1,1)");
        let (before, after) = w;
        let lhs = eval(&MeanSpec::gini(1.0, 1.0), &after).unwrap();
        let rhs = eval(&MeanSpec::gini(1.0, 1.0), &before).unwrap();
        assert!(lhs < rhs, "witness does not violate monotonicity");
    }

    #[test]
    fn symmetry_and_repetition_for_qa() {
        let m = MeanSpec::quasi_arithmetic(Generator::LogLinear);
        assert!(check_axiom(&m, Axiom::Symmetry, 300, 3).unwrap().passed);
        assert!(
            check_axiom(&m, Axiom::RepetitionInvariance, 300, 3)
                .unwrap()
                .passed
        );
    }

    #[test]
    fn homogeneity_holds_for_power_and_gini_only() {
        assert!(
            check_axiom(&MeanSpec::power(0.5), Axiom::Homogeneity, 300, 5)
                .unwrap()
                .passed
        );
        assert!(
            check_axiom(&MeanSpec::gini(0.3, 0.7), Axiom::Homogeneity, 300, 5)
                .unwrap()
                .passed
        );
        // The log/affine splice is not homogeneous; the checker must find
        // a witness.
        let m = MeanSpec::quasi_arithmetic(Generator::LogLinear);
        let r = check_axiom(&m, Axiom::Homogeneity, 300, 5).unwrap();
        assert!(!r.passed);
        assert!(r.witness.is_some());
    }

    #[test]
    fn deterministic_given_seed() {
        let a = check_axiom(&MeanSpec::gini(1.0, 1.0), Axiom::Monotonicity, 200, 42).unwrap();
        let b = check_axiom(&MeanSpec::gini(1.0, 1.0), Axiom::Monotonicity, 200, 42).unwrap();
        assert_eq!(a.passed, b.passed);
        assert_eq!(
            a.witness.as_ref().map(|w| w.vector.clone()),
            b.witness.as_ref().map(|w| w.vector.clone())
        );
    }

    #[test]
    fn zero_trials_rejected() {
        assert!(matches!(
            check_axiom(&MeanSpec::power(1.0), Axiom::Symmetry, 0, 1),
            Err(Error::Parameter(_))
        ));
    }
}
