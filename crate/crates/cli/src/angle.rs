//! Angle arguments: plain radians (`2.83`) or multiples of π (`0.9pi`,
//! `0.9π`, `pi`, `-0.04*pi`).

use std::f64::consts::PI;

pub fn parse_angle(text: &str) -> Result<f64, String> {
    let t = text.trim();
    let lower = t.to_ascii_lowercase();
    let stripped = lower.strip_suffix("pi").or_else(|| lower.strip_suffix('π')).map(|s| s.trim_end_matches('*').trim());
    let value = match stripped {
        Some("") | Some("+") => PI,
        Some("-") => -PI,
        Some(coeff) => coeff.parse::<f64>().map(|c| c * PI).map_err(|_| bad(t))?,
        None => t.parse::<f64>().map_err(|_| bad(t))?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(bad(t))
    }
}

fn bad(t: &str) -> String {
    format!("invalid angle `{t}`: expected radians or a multiple of pi such as 0.9pi")
}

/// `lo:hi` with both ends parsed by [`parse_angle`].
pub fn parse_angle_range(text: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = text.split_once(':').ok_or_else(|| format!("invalid range `{text}`: expected lo:hi"))?;
    let (lo, hi) = (parse_angle(lo)?, parse_angle(hi)?);
    if lo >= hi {
        return Err(format!("invalid range `{text}`: lower end must be below upper end"));
    }
    Ok((lo, hi))
}

pub fn parse_probability(text: &str) -> Result<f64, String> {
    let p: f64 = text.trim().parse().map_err(|_| format!("invalid probability `{text}`"))?;
    if (0.0..=1.0).contains(&p) {
        Ok(p)
    } else {
        Err(format!("probability `{text}` outside [0, 1]"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        assert_eq!(parse_angle("0.9pi").unwrap(), 0.9 * PI);
        assert_eq!(parse_angle("0.9π").unwrap(), 0.9 * PI);
        assert_eq!(parse_angle("PI").unwrap(), PI);
        assert_eq!(parse_angle("-pi").unwrap(), -PI);
        assert_eq!(parse_angle("-0.04*pi").unwrap(), -0.04 * PI);
        assert_eq!(parse_angle("2.5").unwrap(), 2.5);
        assert_eq!(parse_angle(" 1e-3 ").unwrap(), 1e-3);
    }

    #[test]
    fn rejects_garbage() {
        for t in ["", "abc", "0.9pie", "inf", "NaN", "pi pi"] {
            assert!(parse_angle(t).is_err(), "{t}");
        }
    }

    #[test]
    fn ranges_and_probabilities() {
        assert_eq!(parse_angle_range("0.5pi:pi").unwrap(), (0.5 * PI, PI));
        assert!(parse_angle_range("pi:0.5pi").is_err());
        assert!(parse_angle_range("pi").is_err());
        assert_eq!(parse_probability("0.02").unwrap(), 0.02);
        assert!(parse_probability("1.5").is_err());
        assert!(parse_probability("-0.1").is_err());
    }
}
