use serde_json::Value;

use crate::envelope::Envelope;

fn strings(v: &Value) -> Vec<&str> {
    v.as_array()
        .map(|a| a.iter().filter_map(Value::as_str).collect())
        .unwrap_or_default()
}

/// One-screen human summary of an envelope.
pub fn summary(envelope: &Envelope) -> String {
    let r = match &envelope.outcome {
        Ok(r) => r,
        Err(e) => return format!("error [{}]: {}", e.code, e.message),
    };
    match envelope.command.as_str() {
        "perfect" => r["perfect_numbers"]
            .as_array()
            .into_iter()
            .flatten()
            .map(|row| format!("p = {:<4} n = {}", row["p"], row["n"].as_str().unwrap_or("?")))
            .collect::<Vec<_>>()
            .join("\n"),
        "decompose" => format!(
            "{} = {}  (k = {}, r = {}, mask 0x{})",
            r["m"].as_str().unwrap_or("?"),
            strings(&r["divisors"]).join(" + "),
            r["k"].as_str().unwrap_or("?"),
            r["r"].as_str().unwrap_or("?"),
            r["mask"].as_str().unwrap_or("?"),
        ),
        "count" => {
            let mut out = format!(
                "m = {}: counted {}, predicted {} ({})",
                r["m"].as_str().unwrap_or("?"),
                r["counted"],
                r["predicted"],
                if r["agree"] == true { "agree" } else { "DISAGREE" },
            );
            for s in r["subsets"].as_array().into_iter().flatten() {
                out.push_str(&format!("\n  {}", strings(&s["divisors"]).join(" + ")));
            }
            out
        }
        "check" => {
            let n = r["n"].as_str().unwrap_or("?");
            let perfect = if r["perfect"] == true { "perfect" } else { "not perfect" };
            match r["first_gap"].as_str() {
                None => format!("{n}: every m <= {n} is reachable; {perfect}"),
                Some(gap) => format!("{n}: first unreachable m = {gap}; {perfect}"),
            }
        }
        "verify" => r["checks"]
            .as_array()
            .into_iter()
            .flatten()
            .map(|c| {
                format!(
                    "{:<26} {:<20} {}",
                    c["name"].as_str().unwrap_or("?"),
                    c["status"].as_str().unwrap_or("?"),
                    c["detail"].as_str().unwrap_or(""),
                )
            })
            .collect::<Vec<_>>()
            .join("\n"),
        _ => r.to_string(),
    }
}
