//! Fixed-precision rendering shared by every output format.

use serde_json::Value;

pub const SIGNIFICANT_DIGITS: usize = 10;

/// Formats `x` with at most 10 significant digits, `%g` style: plain
/// notation for exponents in `[-5, 10)`, scientific otherwise, trailing
/// zeros dropped.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..10).contains(&exp) {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// JSON number carrying the same 10 significant digits as [`fmt_num`].
pub fn json_num(x: f64) -> Value {
    let rounded: f64 = fmt_num(x).parse().unwrap_or(x);
    // Non-finite values have no JSON representation.
    serde_json::Number::from_f64(rounded).map_or(Value::Null, Value::Number)
}

/// Renders rows of cells as left-aligned, space-separated columns.
pub fn table(rows: &[Vec<String>]) -> String {
    let columns = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..columns)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(i, cell)| {
                if i + 1 == row.len() {
                    cell.clone()
                } else {
                    format!("{cell:<width$}", width = widths[i])
                }
            })
            .collect();
        out.push_str(&line.join("  "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ten_significant_digits() {
        assert_eq!(fmt_num(0.0), "0");
        assert_eq!(fmt_num(-0.0), "0");
        assert_eq!(fmt_num(0.5), "0.5");
        assert_eq!(fmt_num(4.0), "4");
        assert_eq!(fmt_num(2.0 / 3.0), "0.6666666667");
        assert_eq!(fmt_num(-0.080602155), "-0.080602155");
        assert_eq!(fmt_num(123456.789012345), "123456.789");
        assert_eq!(fmt_num(1.0 / 3.0 * 1e-7), "3.333333333e-8");
        assert_eq!(fmt_num(6.02214076e23), "6.02214076e23");
        assert_eq!(fmt_num(9.99999999999), "10");
        assert_eq!(fmt_num(1234567890.4), "1234567890");
    }

    #[test]
    fn json_numbers_are_rounded() {
        assert_eq!(json_num(2.0 / 3.0).to_string(), "0.6666666667");
        assert_eq!(json_num(0.5).to_string(), "0.5");
        assert_eq!(json_num(f64::NAN), Value::Null);
    }

    #[test]
    fn table_alignment() {
        let rows = vec![
            vec!["a".to_string(), "1".to_string()],
            vec!["long".to_string(), "2".to_string()],
        ];
        assert_eq!(table(&rows), "a     1\nlong  2\n");
    }
}
