//! Single-line `key=value` records.
//!
//! Numbers carry 17 significant digits, enough to round-trip any f64
//! exactly.

/// Format with 17 significant digits.
pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Join `key=value` pairs with single spaces.
pub fn kv_line(pairs: &[(&str, String)]) -> String {
    pairs
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Split a record line back into its pairs.
pub fn parse_kv_line(line: &str) -> Result<Vec<(String, String)>, String> {
    line.split_whitespace()
        .map(|field| {
            field
                .split_once('=')
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .ok_or_else(|| format!("malformed record field `{field}`"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f64_round_trips_exactly() {
        let values = [
            0.0,
            -0.0,
            1.0,
            3.0,
            0.79788456080286536,
            -1.5092924148557805,
            4.2690680090047053e304,
            -1.1449279983879088e-307,
            f64::MIN_POSITIVE,
            std::f64::consts::PI,
        ];
        for v in values {
            let parsed: f64 = format_f64(v).parse().unwrap();
            assert_eq!(parsed.to_bits(), v.to_bits(), "value {v}");
        }
    }

    #[test]
    fn kv_round_trip() {
        let line = kv_line(&[
            ("kind", "raw".to_string()),
            ("nu", format_f64(2.5)),
            ("value_re", format_f64(1.25)),
        ]);
        let pairs = parse_kv_line(&line).unwrap();
        assert_eq!(pairs.len(), 3);
        assert_eq!(pairs[0], ("kind".to_string(), "raw".to_string()));
        assert_eq!(pairs[1].1.parse::<f64>().unwrap(), 2.5);
        assert!(parse_kv_line("novalue").is_err());
    }
}
