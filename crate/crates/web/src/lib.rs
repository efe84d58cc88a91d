//! wasm-bindgen bindings behind `www/index.html`.
//!
//! Each export returns a JSON string; the page parses and draws it. The
//! `*_json` functions hold the logic so they can be tested natively.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use perfect_sums::practical::PanChecker;
use perfect_sums::representations::EXHAUSTIVE_MAX_P;
use perfect_sums::{decompose, make_perfect, predict_count, RepresentationCounter};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest `n` the page will draw a reachability strip for.
pub const MAX_STRIP_N: u64 = 100_000;

fn parse(name: &str, raw: &str) -> Result<BigUint, String> {
    let raw = raw.trim();
    if raw.is_empty() || !raw.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("{name} must be a decimal natural number"));
    }
    BigUint::parse_bytes(raw.as_bytes(), 10).ok_or_else(|| format!("{name} is not a number"))
}

/// Canonical decomposition of `m`, with one entry per divisor bit.
pub fn decompose_json(p: u32, m: &str) -> Result<String, String> {
    let pn = make_perfect(p).map_err(|e| e.to_string())?;
    let m = parse("m", m)?;
    let d = decompose(&m, &pn).map_err(|e| e.to_string())?;
    let bits: Vec<_> = (0..pn.divisor_count())
        .map(|b| {
            json!({
                "divisor": pn.divisor_at_bit(b).unwrap().to_string(),
                "set": d.subset.contains_bit(b),
                "block": if b < p as usize { "power" } else { "prime" },
            })
        })
        .collect();
    Ok(json!({
        "p": p,
        "n": pn.n().to_string(),
        "m": m.to_string(),
        "k": d.k.to_string(),
        "r": d.r.to_string(),
        "mask": d.subset.to_hex(),
        "bits": bits,
    })
    .to_string())
}

/// Counted and predicted multiplicity for every `m` in `[1, n]`.
pub fn profile_json(p: u32) -> Result<String, String> {
    let pn = make_perfect(p).map_err(|e| e.to_string())?;
    if p > EXHAUSTIVE_MAX_P {
        return Err(format!("the profile view enumerates every m and stops at p = {EXHAUSTIVE_MAX_P}"));
    }
    let counter = RepresentationCounter::new(&pn).map_err(|e| e.to_string())?;
    let histogram = counter.histogram().expect("exhaustive tables");
    let n = pn.n().to_u64().expect("small n");
    let mut predicted = Vec::with_capacity(n as usize);
    for m in 1..=n {
        predicted.push(predict_count(&BigUint::from(m), &pn).map_err(|e| e.to_string())?);
    }
    Ok(json!({
        "p": p,
        "n": n,
        "mersenne_prime": pn.mersenne_prime().to_u64(),
        "counted": &histogram[1..],
        "predicted": predicted,
        "total": histogram[1..].iter().sum::<u64>(),
    })
    .to_string())
}

/// Reachability of every `m <= n` plus a witness for `m`, when given.
pub fn check_json(n: &str, m: Option<u64>) -> Result<String, String> {
    let n = parse("n", n)?
        .to_u64()
        .filter(|&v| (1..=MAX_STRIP_N).contains(&v))
        .ok_or_else(|| format!("n must be between 1 and {MAX_STRIP_N} here"))?;
    let checker = PanChecker::default();
    let report = checker.check(n).map_err(|e| e.to_string())?;
    let table = checker.reachability(n).map_err(|e| e.to_string())?;
    let reachable: String = (1..=n)
        .map(|s| if table.is_reachable(s) { '1' } else { '0' })
        .collect();
    let witness = match m {
        Some(m) => checker.represent(m, n).map_err(|e| e.to_string())?,
        None => None,
    };
    Ok(json!({
        "n": n,
        "divisors": table.divisors(),
        "panrepresentable": report.is_panrepresentable,
        "perfect": report.is_perfect,
        "first_gap": report.first_gap,
        "reachable": reachable,
        "m": m,
        "witness": witness,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn decompose_target(p: u32, m: &str) -> Result<String, JsValue> {
    decompose_json(p, m).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn representation_profile(p: u32) -> Result<String, JsValue> {
    profile_json(p).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn check_reachability(n: &str, m: Option<u32>) -> Result<String, JsValue> {
    check_json(n, m.map(u64::from)).map_err(|e| JsValue::from_str(&e))
}
