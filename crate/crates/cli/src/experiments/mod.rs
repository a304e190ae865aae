//! One function per experiment. Each returns a complete [`Report`](crate::Report).

pub mod convex;
pub mod cox;
pub mod dext;
pub mod maj;
pub mod roots;

use orbitcone::{parse_rational, Rational, RationalVector, Vector};

use crate::{CliError, Result};

/// Comma-separated rationals (`p/q` or decimals, converted exactly).
pub fn parse_rationals(s: &str) -> Result<RationalVector> {
    s.split(',')
        .map(|t| parse_rational(t).map_err(CliError::schema))
        .collect::<Result<Vec<Rational>>>()
        .map(Vector)
}

pub fn parse_floats(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| CliError::Schema(format!("`{t}`: {e}"))))
        .collect()
}

pub fn parse_usizes(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| CliError::Schema(format!("`{t}`: {e}"))))
        .collect()
}

pub fn read_file(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Io { path: path.to_path_buf(), message: e.to_string() })
}

pub(crate) fn show(v: &RationalVector) -> String {
    let parts: Vec<String> = v.iter().map(orbitcone::format_rational).collect();
    format!("({})", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use orbitcone::q;

    #[test]
    fn rationals_from_fractions_and_decimals() {
        let v = parse_rationals("1/3, 0.1,-2").unwrap();
        assert_eq!(v.0, vec![q(1, 3), q(1, 10), q(-2, 1)]);
        assert!(parse_rationals("1/0").is_err());
        assert!(parse_rationals("abc").is_err());
    }

    #[test]
    fn numeric_lists() {
        assert_eq!(parse_floats("1, -2.5").unwrap(), vec![1.0, -2.5]);
        assert_eq!(parse_usizes("2,3").unwrap(), vec![2, 3]);
        assert!(parse_usizes("-1").is_err());
    }
}
