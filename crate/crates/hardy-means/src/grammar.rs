//! Description-string grammar shared by the CLI and config files.
//!
//! Means: `power:<alpha>`, `gini:<p>,<q>`, `qa:power:<p>`, `qa:log`,
//! `qa:paper-example`.
//! Sequences: `explicit:@file.csv` (one positive decimal per line),
//! `explicit:<v1>,<v2>,…`, `harmonic`, `geometric:<c>,<r>`,
//! `powerlaw:<c>,<beta>`, `scaledsquares:<N>`, `truncharmonic:<N>,<delta>`.
//!
//! Parse errors name the offending token. `parse ∘ print` is idempotent:
//! re-parsing a printed description yields the same value.

use std::fs;

use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::means::MeanSpec;
use crate::stream::SequenceSpec;

fn parse_f64(token: &str, what: &str, context: &str) -> Result<f64> {
    let v: f64 = token
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("{context}: invalid {what} '{token}'")))?;
    if !v.is_finite() {
        return Err(Error::Parse(format!(
            "{context}: {what} '{token}' must be finite"
        )));
    }
    Ok(v)
}

fn parse_u64(token: &str, what: &str, context: &str) -> Result<u64> {
    token
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("{context}: invalid {what} '{token}'")))
}

/// Parse a mean description string.
pub fn parse_mean(input: &str) -> Result<MeanSpec> {
    let s = input.trim();
    let context = format!("mean '{s}'");
    if let Some(rest) = s.strip_prefix("power:") {
        return Ok(MeanSpec::Power(parse_f64(rest, "alpha", &context)?));
    }
    if let Some(rest) = s.strip_prefix("gini:") {
        let mut parts = rest.splitn(2, ',');
        let p = parts
            .next()
            .ok_or_else(|| Error::Parse(format!("{context}: missing p")))?;
        let q = parts
            .next()
            .ok_or_else(|| Error::Parse(format!("{context}: expected 'gini:<p>,<q>'")))?;
        return Ok(MeanSpec::Gini {
            p: parse_f64(p, "p", &context)?,
            q: parse_f64(q, "q", &context)?,
        });
    }
    if let Some(rest) = s.strip_prefix("qa:") {
        let gen = match rest {
            "log" => Generator::Log,
            "paper-example" => Generator::LogLinear,
            _ => {
                if let Some(p) = rest.strip_prefix("power:") {
                    let p = parse_f64(p, "generator exponent", &context)?;
                    Generator::power(p).map_err(|e| Error::Parse(format!("{context}: {e}")))?
                } else {
                    return Err(Error::Parse(format!(
                        "{context}: unknown generator '{rest}' (expected power:<p>, log, or paper-example)"
                    )));
                }
            }
        };
        return Ok(MeanSpec::QuasiArithmetic(gen));
    }
    Err(Error::Parse(format!(
        "{context}: unknown mean family (expected power:, gini:, or qa:)"
    )))
}

/// Parse a sequence description string; `explicit:@path` reads the file.
pub fn parse_sequence(input: &str) -> Result<SequenceSpec> {
    let s = input.trim();
    let context = format!("sequence '{s}'");
    if s == "harmonic" {
        return Ok(SequenceSpec::Harmonic);
    }
    if let Some(rest) = s.strip_prefix("explicit:") {
        if let Some(path) = rest.strip_prefix('@') {
            let body = fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("{context}: cannot read '{path}': {e}")))?;
            let mut values = Vec::new();
            for (lineno, line) in body.lines().enumerate() {
                let t = line.trim();
                if t.is_empty() {
                    continue;
                }
                let v = parse_f64(t, &format!("value at line {}", lineno + 1), &context)?;
                values.push(v);
            }
            let mut seq = SequenceSpec::explicit(values)
                .map_err(|e| Error::Parse(format!("{context}: {e}")))?;
            if let SequenceSpec::Explicit { source, .. } = &mut seq {
                *source = Some(path.to_string());
            }
            return Ok(seq);
        }
        let values: Result<Vec<f64>> = rest
            .split(',')
            .map(|t| parse_f64(t, "value", &context))
            .collect();
        return SequenceSpec::explicit(values?)
            .map_err(|e| Error::Parse(format!("{context}: {e}")));
    }
    let two = |rest: &str, names: (&str, &str)| -> Result<(f64, f64)> {
        let mut parts = rest.splitn(2, ',');
        let a = parts
            .next()
            .ok_or_else(|| Error::Parse(format!("{context}: missing {}", names.0)))?;
        let b = parts.next().ok_or_else(|| {
            Error::Parse(format!("{context}: expected '<{}>,<{}>'", names.0, names.1))
        })?;
        Ok((
            parse_f64(a, names.0, &context)?,
            parse_f64(b, names.1, &context)?,
        ))
    };
    if let Some(rest) = s.strip_prefix("geometric:") {
        let (c, r) = two(rest, ("c", "r"))?;
        return SequenceSpec::geometric(c, r).map_err(|e| Error::Parse(format!("{context}: {e}")));
    }
    if let Some(rest) = s.strip_prefix("powerlaw:") {
        let (c, beta) = two(rest, ("c", "beta"))?;
        return SequenceSpec::power_law(c, beta)
            .map_err(|e| Error::Parse(format!("{context}: {e}")));
    }
    if let Some(rest) = s.strip_prefix("scaledsquares:") {
        let n = parse_u64(rest, "N", &context)?;
        return SequenceSpec::scaled_squares(n)
            .map_err(|e| Error::Parse(format!("{context}: {e}")));
    }
    if let Some(rest) = s.strip_prefix("truncharmonic:") {
        let mut parts = rest.splitn(2, ',');
        let n = parts
            .next()
            .ok_or_else(|| Error::Parse(format!("{context}: missing N")))?;
        let delta = parts.next().ok_or_else(|| {
            Error::Parse(format!("{context}: expected 'truncharmonic:<N>,<delta>'"))
        })?;
        let n = parse_u64(n, "N", &context)?;
        let delta = parse_f64(delta, "delta", &context)?;
        return SequenceSpec::truncated_harmonic(n, delta)
            .map_err(|e| Error::Parse(format!("{context}: {e}")));
    }
    Err(Error::Parse(format!(
        "{context}: unknown sequence family (expected explicit:, harmonic, geometric:, powerlaw:, scaledsquares:, or truncharmonic:)"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mean_round_trips() {
        for s in [
            "power:0.5",
            "power:-1.0",
            "gini:0.3,0.7",
            "gini:1.0,-1.0",
            "qa:power:0.5",
            "qa:log",
            "qa:paper-example",
        ] {
            let mean = parse_mean(s).unwrap();
            let printed = mean.describe();
            let reparsed = parse_mean(&printed).unwrap();
            assert_eq!(mean, reparsed, "{s} -> {printed}");
            assert_eq!(printed, parse_mean(&printed).unwrap().describe());
        }
    }

    #[test]
    fn sequence_round_trips() {
        for s in [
            "harmonic",
            "geometric:1.0,0.5",
            "powerlaw:2.0,1.5",
            "scaledsquares:100",
            "truncharmonic:1000,1e-9",
            "explicit:1.0,2.5,0.125",
        ] {
            let seq = parse_sequence(s).unwrap();
            let printed = seq.describe();
            let reparsed = parse_sequence(&printed).unwrap();
            assert_eq!(seq, reparsed, "{s} -> {printed}");
        }
    }

    #[test]
    fn errors_name_the_offending_token() {
        let err = parse_mean("power:abc").unwrap_err();
        assert!(err.to_string().contains("abc"), "{err}");
        let err = parse_mean("gini:0.5").unwrap_err();
        assert!(err.to_string().contains("gini"), "{err}");
        let err = parse_mean("median").unwrap_err();
        assert!(err.to_string().contains("median"), "{err}");
        let err = parse_sequence("geometric:1.0,2.0").unwrap_err();
        assert!(err.to_string().contains("(0, 1)"), "{err}");
        let err = parse_sequence("explicit:1.0,zap").unwrap_err();
        assert!(err.to_string().contains("zap"), "{err}");
    }

    #[test]
    fn explicit_file_loading() {
        let dir = std::env::temp_dir().join("hardy-means-grammar-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("seq.csv");
        std::fs::write(&path, "1.0\n0.5\n\n0.25\n").unwrap();
        let spec = format!("explicit:@{}", path.display());
        let seq = parse_sequence(&spec).unwrap();
        assert_eq!(seq.len(), Some(3));
        assert_eq!(seq.term(3).unwrap(), 0.25);
        // Printed form keeps the file reference.
        assert_eq!(seq.describe(), spec);
    }

    #[test]
    fn non_finite_tokens_rejected() {
        assert!(parse_mean("power:inf").is_err());
        assert!(parse_mean("gini:nan,0.5").is_err());
    }
}
