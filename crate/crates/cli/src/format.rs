use serde_json::Value;

/// `x` rounded to 12 significant digits, without trailing zeros.
pub fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return x.to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (11 - mag).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn sig12_value(x: f64) -> Value {
    sig12(x)
        .parse::<f64>()
        .ok()
        .and_then(serde_json::Number::from_f64)
        .map_or(Value::Null, Value::Number)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(sig12(0.4812118250596034), "0.48121182506");
        assert_eq!(sig12(1.618033988749895), "1.61803398875");
        assert_eq!(sig12(2.0), "2");
        assert_eq!(sig12(0.0), "0");
    }
}
