//! Number formatting shared by every CSV and JSON emitter.

/// `printf("%.*g")`-style formatting with `sig` significant digits.
pub fn fmt_sig(x: f64, sig: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sig = sig.max(1);
    let sci = format!("{:.*e}", sig - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= sig as i32 {
        format!("{}e{}", trim_zeros(mantissa), exp)
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Default output precision.
pub fn fmt6(x: f64) -> String {
    fmt_sig(x, 6)
}

/// Rounds to six significant digits, for JSON payloads.
pub fn round6(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    fmt6(x).parse().unwrap_or(x)
}

/// K-factor label in dB; Rayleigh is spelled `-inf`.
pub fn fmt_k_db(k_db: f64) -> String {
    fmt6(k_db)
}

/// Parses a dB value, accepting `-inf` (and `-∞`) for Rayleigh fading.
pub fn parse_k_db(s: &str) -> Option<f64> {
    match s.trim() {
        "-inf" | "-Inf" | "-INF" | "-∞" => Some(f64::NEG_INFINITY),
        t => t.parse::<f64>().ok().filter(|v| v.is_finite()),
    }
}
