//! Parser for the embedded coefficient tables.

use super::{FunctionId, Precision};
use crate::error::{Error, Result};

pub(crate) const DATA: &str = include_str!("coefficients.txt");

/// One `[name precision]` block: kernel coefficients and the tabulated
/// continued-fraction coefficients that follow `***`.
#[derive(Debug, Clone, PartialEq)]
pub struct TableEntry {
    pub id: FunctionId,
    pub precision: Precision,
    pub kernel: Vec<f64>,
    pub jacobi: Vec<f64>,
}

/// Parses a Fortran-style value such as `- 0.2655808794660000D 01`.
pub fn parse_fortran(field: &str) -> Option<f64> {
    let s = field.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest.trim_start()),
        None => (false, s),
    };
    let value: f64 = match body.split_once(['D', 'd']) {
        Some((mantissa, exponent)) => {
            let exp: String = exponent.chars().filter(|c| !c.is_whitespace()).collect();
            format!("{}e{}", mantissa.trim(), exp).parse().ok()?
        }
        None => body.parse().ok()?,
    };
    Some(if neg { -value } else { value })
}

pub fn parse_tables(text: &str) -> Result<Vec<TableEntry>> {
    let mut out: Vec<TableEntry> = Vec::new();
    let mut after_marker = false;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse { line: line_no, message };
        if let Some(header) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            let mut parts = header.split_whitespace();
            let (Some(name), Some(prec), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(err(format!("bad header '{line}'")));
            };
            out.push(TableEntry {
                id: name.parse()?,
                precision: prec.parse()?,
                kernel: Vec::new(),
                jacobi: Vec::new(),
            });
            after_marker = false;
            continue;
        }
        let entry = out.last_mut().ok_or_else(|| err("value before any header".into()))?;
        if line == "***" {
            after_marker = true;
            continue;
        }
        let v = parse_fortran(line).ok_or_else(|| err(format!("bad value '{line}'")))?;
        if after_marker {
            entry.jacobi.push(v);
        } else {
            entry.kernel.push(v);
        }
    }
    for e in &out {
        let want = e.precision.kernel_len();
        if e.kernel.len() != want || e.jacobi.len() != want {
            return Err(Error::Parse {
                line: 0,
                message: format!(
                    "{} {}: expected {want} values per block",
                    e.id.name(),
                    e.precision.name()
                ),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fortran_fields() {
        assert_eq!(parse_fortran("0.3187822082024000D 01"), Some(3.187822082024));
        assert_eq!(parse_fortran("- 0.2655808794660000D 01"), Some(-2.65580879466));
        assert_eq!(parse_fortran("0.7526525036394230D-01"), Some(0.0752652503639423));
        assert_eq!(parse_fortran("0.9196001135281050D -01"), Some(0.0919600113528105));
        assert_eq!(parse_fortran("0.0"), Some(0.0));
        assert_eq!(parse_fortran("D 01"), None);
    }

    #[test]
    fn embedded_tables_complete() {
        let t = parse_tables(DATA).unwrap();
        assert_eq!(t.len(), 12);
    }

    #[test]
    fn malformed_input_reports_line() {
        let e = parse_tables("[lg ordinary]\n0.1D 01\nxyz\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
    }
}
