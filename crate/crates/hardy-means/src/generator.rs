//! Generator functions for quasi-arithmetic means.
//!
//! A generator is a continuous, strictly monotone `f` on an interval with
//! `inf = 0`; the induced mean is `f⁻¹((f(a₁)+…+f(aₙ))/n)`. The builtin
//! catalog covers the power generators `x^p` (`p ≠ 0`), the logarithm
//! (the `p = 0` convention), and the piecewise log/affine splice used by
//! the `qa:paper-example` grammar token. Affine images `s·f + t` generate
//! the same mean as `f` and are provided for composing user generators;
//! fully custom generators fall back to bisection when no closed-form
//! inverse is supplied.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Absolute tolerance for bisection inversion of custom generators.
pub const BISECTION_TOL: f64 = 1e-13;

/// Direction of strict monotonicity on the domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Monotonicity {
    Increasing,
    Decreasing,
}

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Inverse policy for [`Generator::Custom`].
#[derive(Clone)]
pub enum Inverse {
    ClosedForm(RealFn),
    /// Bisection on the bracket to absolute tolerance [`BISECTION_TOL`].
    Bisection {
        bracket: (f64, f64),
    },
}

#[derive(Clone)]
pub enum Generator {
    /// `x ↦ x^p`, `p ≠ 0`, on (0, ∞); generates the p-th power mean.
    Power(f64),
    /// `x ↦ ln x` on (0, ∞); generates the geometric mean.
    Log,
    /// `ln x` on (0, 1], `x − 1` on (1, ∞): geometric behaviour near zero,
    /// arithmetic behaviour at scale. Grammar token `qa:paper-example`.
    LogLinear,
    /// `x ↦ scale·f(x) + offset` with `scale ≠ 0`; same induced mean as `inner`.
    Affine {
        scale: f64,
        offset: f64,
        inner: Box<Generator>,
    },
    /// Caller-supplied strictly monotone function.
    Custom {
        label: String,
        domain: (f64, f64),
        direction: Monotonicity,
        forward: RealFn,
        inverse: Inverse,
    },
}

impl Generator {
    /// Power generator `x^p`; rejects `p = 0` (use [`Generator::Log`] for
    /// the geometric-mean convention) and non-finite exponents.
    pub fn power(p: f64) -> Result<Self> {
        if !p.is_finite() {
            return Err(Error::Parameter(format!(
                "power generator exponent must be finite, got {p}"
            )));
        }
        if p == 0.0 {
            return Err(Error::Parameter(
                "power generator exponent 0 is reserved; use the log generator".into(),
            ));
        }
        Ok(Generator::Power(p))
    }

    /// Affine image `scale·inner + offset`; `scale` must be finite and nonzero.
    pub fn affine(scale: f64, offset: f64, inner: Generator) -> Result<Self> {
        if !scale.is_finite() || scale == 0.0 || !offset.is_finite() {
            return Err(Error::Parameter(format!(
                "affine generator needs finite scale != 0 and finite offset, got scale={scale}, offset={offset}"
            )));
        }
        Ok(Generator::Affine {
            scale,
            offset,
            inner: Box::new(inner),
        })
    }

    /// Custom generator over an open domain `(lo, hi)` with `lo ≥ 0`.
    pub fn custom(
        label: impl Into<String>,
        domain: (f64, f64),
        direction: Monotonicity,
        forward: impl Fn(f64) -> f64 + Send + Sync + 'static,
        inverse: Inverse,
    ) -> Result<Self> {
        let (lo, hi) = domain;
        if !(lo >= 0.0 && lo < hi) {
            return Err(Error::Parameter(format!(
                "custom generator domain must satisfy 0 <= lo < hi, got ({lo}, {hi})"
            )));
        }
        Ok(Generator::Custom {
            label: label.into(),
            domain,
            direction,
            forward: Arc::new(forward),
            inverse,
        })
    }

    /// Grammar-compatible label (the part after `qa:`).
    pub fn label(&self) -> String {
        match self {
            Generator::Power(p) => format!("power:{p:?}"),
            Generator::Log => "log".into(),
            Generator::LogLinear => "paper-example".into(),
            Generator::Affine {
                scale,
                offset,
                inner,
            } => {
                format!("affine:{scale:?},{offset:?}:{}", inner.label())
            }
            Generator::Custom { label, .. } => format!("custom:{label}"),
        }
    }

    /// Open domain interval `(lo, hi)`; `hi` may be infinite.
    pub fn domain(&self) -> (f64, f64) {
        match self {
            Generator::Power(_) | Generator::Log | Generator::LogLinear => (0.0, f64::INFINITY),
            Generator::Affine { inner, .. } => inner.domain(),
            Generator::Custom { domain, .. } => *domain,
        }
    }

    pub fn direction(&self) -> Monotonicity {
        match self {
            Generator::Power(p) => {
                if *p > 0.0 {
                    Monotonicity::Increasing
                } else {
                    Monotonicity::Decreasing
                }
            }
            Generator::Log | Generator::LogLinear => Monotonicity::Increasing,
            Generator::Affine { scale, inner, .. } => {
                if *scale > 0.0 {
                    inner.direction()
                } else {
                    match inner.direction() {
                        Monotonicity::Increasing => Monotonicity::Decreasing,
                        Monotonicity::Decreasing => Monotonicity::Increasing,
                    }
                }
            }
            Generator::Custom { direction, .. } => *direction,
        }
    }

    /// True when `x` lies in the open domain.
    pub fn contains(&self, x: f64) -> bool {
        let (lo, hi) = self.domain();
        x > lo && x < hi && x.is_finite()
    }

    pub fn forward(&self, x: f64) -> f64 {
        match self {
            Generator::Power(p) => x.powf(*p),
            Generator::Log => x.ln(),
            Generator::LogLinear => {
                if x <= 1.0 {
                    x.ln()
                } else {
                    x - 1.0
                }
            }
            Generator::Affine {
                scale,
                offset,
                inner,
            } => scale * inner.forward(x) + offset,
            Generator::Custom { forward, .. } => forward(x),
        }
    }

    pub fn inverse(&self, y: f64) -> f64 {
        match self {
            Generator::Power(p) => y.powf(1.0 / *p),
            Generator::Log => y.exp(),
            Generator::LogLinear => {
                if y <= 0.0 {
                    y.exp()
                } else {
                    y + 1.0
                }
            }
            Generator::Affine {
                scale,
                offset,
                inner,
            } => inner.inverse((y - offset) / scale),
            Generator::Custom {
                forward,
                inverse,
                direction,
                ..
            } => match inverse {
                Inverse::ClosedForm(g) => g(y),
                Inverse::Bisection { bracket } => bisect(|x| forward(x), *direction, *bracket, y),
            },
        }
    }
}

/// Find `x` in `bracket` with `f(x) = y` by bisection; the result is exact
/// to [`BISECTION_TOL`] when `y` lies between the bracket's images,
/// otherwise it saturates at the nearer bracket end.
fn bisect(f: impl Fn(f64) -> f64, direction: Monotonicity, bracket: (f64, f64), y: f64) -> f64 {
    let (mut lo, mut hi) = bracket;
    let rising = direction == Monotonicity::Increasing;
    for _ in 0..200 {
        if hi - lo <= BISECTION_TOL {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let below = if rising { f(mid) < y } else { f(mid) > y };
        if below {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Generator({})", self.label())
    }
}

impl PartialEq for Generator {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Generator::Power(a), Generator::Power(b)) => a == b,
            (Generator::Log, Generator::Log) => true,
            (Generator::LogLinear, Generator::LogLinear) => true,
            (
                Generator::Affine {
                    scale: s1,
                    offset: o1,
                    inner: i1,
                },
                Generator::Affine {
                    scale: s2,
                    offset: o2,
                    inner: i2,
                },
            ) => s1 == s2 && o1 == o2 && i1 == i2,
            // Custom generators compare by label and shape only; closures
            // cannot be compared.
            (
                Generator::Custom {
                    label: l1,
                    domain: d1,
                    direction: m1,
                    ..
                },
                Generator::Custom {
                    label: l2,
                    domain: d2,
                    direction: m2,
                    ..
                },
            ) => l1 == l2 && d1 == d2 && m1 == m2,
            _ => false,
        }
    }
}
