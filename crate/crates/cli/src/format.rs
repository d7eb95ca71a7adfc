//! Number formatting shared by CSV files and manifests.

/// Shortest decimal text that parses back to the same `f64`.
///
/// Plain notation between `1e-5` and `1e16`, exponent notation outside.
/// Negative zero prints as `0`.
pub fn float(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let a = v.abs();
    if (1e-5..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

pub fn floats(vs: &[f64]) -> String {
    vs.iter().map(|&v| float(v)).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for &v in &[
            0.1,
            -2.5,
            1.0 / 3.0,
            std::f64::consts::PI,
            1e-7,
            3.2e20,
            123456789.0,
            9.999_999_999_999_998e15,
            f64::MIN_POSITIVE,
            f64::MAX,
        ] {
            let s = float(v);
            assert_eq!(s.parse::<f64>().unwrap(), v, "{s}");
        }
        assert_eq!(float(-0.0), "0");
        assert_eq!(float(2.0), "2");
        assert_eq!(float(1e-7), "1e-7");
        assert_eq!(float(0.00125), "0.00125");
    }
}
