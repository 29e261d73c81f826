//! Angle literals: plain decimals or multiples of pi such as `pi/2`,
//! `-3pi/4`, `2*pi`, `0.5`.

use std::f64::consts::PI;

pub fn parse_angle(text: &str) -> Result<f64, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
    if s.is_empty() {
        return Err("empty angle".into());
    }
    let bad = || format!("cannot parse angle {text:?}");
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d.parse::<f64>().map_err(|_| bad())?)),
        None => (s.as_str(), None),
    };
    let value = match num.strip_suffix("pi").or_else(|| num.strip_suffix('π')) {
        Some(coef) => {
            let coef = coef.strip_suffix('*').unwrap_or(coef);
            let k = match coef {
                "" | "+" => 1.0,
                "-" => -1.0,
                c => c.parse::<f64>().map_err(|_| bad())?,
            };
            k * PI
        }
        None => num.parse::<f64>().map_err(|_| bad())?,
    };
    let value = match den {
        Some(0.0) => return Err(format!("zero denominator in angle {text:?}")),
        Some(d) => value / d,
        None => value,
    };
    if !value.is_finite() {
        return Err(bad());
    }
    Ok(value)
}

/// Comma-separated angle list.
pub fn parse_angles(text: &str) -> Result<Vec<f64>, String> {
    text.split(',').map(parse_angle).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn literals() {
        assert_eq!(parse_angle("pi/2").unwrap(), FRAC_PI_2);
        assert_eq!(parse_angle("-pi/4").unwrap(), -PI / 4.0);
        assert_eq!(parse_angle("3pi/2").unwrap(), 3.0 * PI / 2.0);
        assert_eq!(parse_angle("2*pi").unwrap(), 2.0 * PI);
        assert_eq!(parse_angle("PI").unwrap(), PI);
        assert_eq!(parse_angle("0").unwrap(), 0.0);
        assert_eq!(parse_angle("1.5e-1").unwrap(), 0.15);
        assert_eq!(parse_angle(" 1 / 4 ").unwrap(), 0.25);
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "tau", "pi/0", "1/x", "2pie", "nan"] {
            assert!(parse_angle(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn lists() {
        assert_eq!(parse_angles("0,pi").unwrap(), vec![0.0, PI]);
        assert!(parse_angles("0,,pi").is_err());
    }
}
