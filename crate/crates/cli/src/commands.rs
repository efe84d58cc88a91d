use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use perfect_sums::practical::{PanChecker, DEFAULT_PAN_CEILING};
use perfect_sums::representations::DEFAULT_COUNT_CEILING;
use perfect_sums::{
    decompose, make_perfect, mersenne_exponents, predict_count, subset_value, Error,
    RepresentationCounter,
};
use serde_json::{json, Value};

use crate::envelope::{decimal, decimals, subset_json, CommandError};

pub const COUNT_CEILING_VAR: &str = "TOOL_COUNT_CEILING";
pub const PAN_CEILING_VAR: &str = "TOOL_PAN_CEILING";

/// Limits read from the environment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    pub count_ceiling: u32,
    pub pan_ceiling: u64,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            count_ceiling: DEFAULT_COUNT_CEILING,
            pan_ceiling: DEFAULT_PAN_CEILING,
        }
    }
}

fn parse_var<T: FromStr>(name: &str, raw: Option<String>, default: T) -> Result<T, CommandError> {
    match raw {
        None => Ok(default),
        Some(s) => s
            .trim()
            .parse()
            .map_err(|_| CommandError::usage(format!("{name} must be a non-negative integer, got {s:?}"))),
    }
}

impl Config {
    pub fn from_lookup(lookup: impl Fn(&str) -> Option<String>) -> Result<Self, CommandError> {
        Ok(Self {
            count_ceiling: parse_var(COUNT_CEILING_VAR, lookup(COUNT_CEILING_VAR), DEFAULT_COUNT_CEILING)?,
            pan_ceiling: parse_var(PAN_CEILING_VAR, lookup(PAN_CEILING_VAR), DEFAULT_PAN_CEILING)?,
        })
    }

    pub fn from_env() -> Result<Self, CommandError> {
        Self::from_lookup(|k| std::env::var(k).ok())
    }
}

pub fn parse_natural(name: &str, raw: &str) -> Result<BigUint, CommandError> {
    if raw.is_empty() || !raw.bytes().all(|b| b.is_ascii_digit()) {
        return Err(CommandError::usage(format!(
            "--{name} must be a decimal natural number, got {raw:?}"
        )));
    }
    BigUint::parse_bytes(raw.as_bytes(), 10)
        .ok_or_else(|| CommandError::usage(format!("--{name} is not a decimal number: {raw:?}")))
}

pub fn perfect(max_p: u32) -> Result<Value, CommandError> {
    if max_p < 2 {
        return Err(CommandError::usage(format!("--max-p must be at least 2, got {max_p}")));
    }
    let mut rows = Vec::new();
    for p in mersenne_exponents(max_p)? {
        let pn = make_perfect(p)?;
        rows.push(json!({
            "p": p,
            "mersenne_prime": decimal(pn.mersenne_prime()),
            "n": decimal(pn.n()),
        }));
    }
    Ok(json!({ "max_p": max_p, "perfect_numbers": rows }))
}

pub fn decompose_cmd(p: u32, m: &BigUint) -> Result<Value, CommandError> {
    let pn = make_perfect(p)?;
    let d = decompose(m, &pn)?;
    let divisors = d.subset.divisors(&pn);
    let resummed: BigUint = divisors.iter().sum();
    let verified = resummed == *m && subset_value(&d.subset, &pn)? == *m;
    Ok(json!({
        "p": p,
        "n": decimal(pn.n()),
        "m": decimal(m),
        "k": decimal(&d.k),
        "r": decimal(&d.r),
        "divisors": decimals(&divisors),
        "mask": d.subset.to_hex(),
        "verified": verified,
    }))
}

pub fn count(p: u32, m: &BigUint, enumerate: bool, config: &Config) -> Result<Value, CommandError> {
    let pn = make_perfect(p)?;
    let predicted = predict_count(m, &pn)?;
    let counter = RepresentationCounter::with_ceiling(&pn, config.count_ceiling)?;
    let report = counter.count(m, enumerate)?;
    let mut payload = json!({
        "p": p,
        "n": decimal(pn.n()),
        "m": decimal(m),
        "strategy": counter.strategy().name(),
        "counted": report.count,
        "predicted": predicted,
        "agree": report.count == predicted,
    });
    if let Some(subsets) = &report.subsets {
        payload["subsets"] = subsets.iter().map(|s| subset_json(s, &pn)).collect();
    }
    Ok(payload)
}

pub fn check(n: &BigUint, config: &Config) -> Result<Value, CommandError> {
    let checker = PanChecker::new(config.pan_ceiling);
    let small = n.to_u64().ok_or_else(|| Error::Capability {
        what: format!("n = {n}"),
        ceiling: config.pan_ceiling.to_string(),
    })?;
    let report = checker.check(small)?;
    let mut payload = json!({
        "n": decimal(n),
        "panrepresentable": report.is_panrepresentable,
        "perfect": report.is_perfect,
    });
    if let Some(gap) = report.first_gap {
        payload["first_gap"] = json!(gap.to_string());
    }
    if let Some(witness) = &report.witness {
        let target = report.first_gap.map_or(small, |g| g - 1);
        payload["witness"] = json!({
            "m": target.to_string(),
            "divisors": witness.iter().map(u64::to_string).collect::<Vec<_>>(),
        });
    }
    Ok(payload)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn env_overrides() {
        let cfg = Config::from_lookup(|k| match k {
            COUNT_CEILING_VAR => Some("7".into()),
            _ => None,
        })
        .unwrap();
        assert_eq!(cfg.count_ceiling, 7);
        assert_eq!(cfg.pan_ceiling, DEFAULT_PAN_CEILING);

        let bad = Config::from_lookup(|k| (k == PAN_CEILING_VAR).then(|| "lots".into()));
        assert_eq!(bad.unwrap_err().exit_code, 2);
    }

    #[test]
    fn natural_parsing() {
        assert_eq!(parse_natural("m", "0012").unwrap(), BigUint::from(12u32));
        for raw in ["", "-3", "1.5", "0x10", " 4"] {
            assert_eq!(parse_natural("m", raw).unwrap_err().code, "usage", "{raw:?}");
        }
    }

    #[test]
    fn perfect_listing() {
        let v = perfect(11).unwrap();
        let ps: Vec<u64> = v["perfect_numbers"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r["p"].as_u64().unwrap())
            .collect();
        assert_eq!(ps, [2, 3, 5, 7]);
        assert_eq!(perfect(1).unwrap_err().exit_code, 2);
    }

    #[test]
    fn count_respects_configured_ceiling() {
        let cfg = Config {
            count_ceiling: 5,
            ..Config::default()
        };
        let err = count(7, &BigUint::from(3u32), false, &cfg).unwrap_err();
        assert_eq!(err.code, "capability");
        assert!(err.message.contains("p = 5"), "{}", err.message);
    }
}
